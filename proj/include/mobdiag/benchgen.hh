#ifndef MOBDIAG_BENCHGEN_HH
#define MOBDIAG_BENCHGEN_HH

#include "mobdiag/system.hh"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mobdiag {

struct Instance {
  SystemDescription sd;
  std::vector<Observation> observations;
};

// Buggy CNF encoder family: r observations, k chains of four clauses.
struct EncoderParams {
  std::size_t r = 2;
  std::size_t k = 1;
  std::size_t padding_hard = 0;
  std::size_t padding_soft = 0;
  std::uint64_t seed = 0;
};

struct EncoderSizes {
  std::size_t vars;       // system variables, without selectors
  std::size_t clauses;
  std::size_t components;
};

// V = r + 3k + 9, C = r + 4k + 5, M = 4k + 2 (before padding).
EncoderSizes encoder_sizes(std::size_t r, std::size_t k);

// Closed-form diagnosis count of each of the first r-1 observations:
// 4^k + 4^floor(k/2) + 4^ceil(k/2) + 1 for k >= 2; 5 for k = 1. Returned
// as long double to survive large k.
long double encoder_diagnoses_per_observation(std::size_t k);

// Variable layout: x_1..x_{r-1}, y2a, then (y_pb, y_pc, y_pd) per group,
// then t21a, w41a, w42a, s31a, u41a, u42a, t41a, z41a, z42a, then padding.
// Components: group p owns ids 4(p-1)+1..4p, then the two final clauses
// 4k+1 (u41a) and 4k+2 (u42a), then padding components.
Instance gen_buggy_encoder(const EncoderParams& params);

// The two final components of the encoder family.
ComponentSet encoder_final_components(std::size_t k);

struct Gate {
  enum class Kind { And, Nand, Or, Nor, Not, Buff, Xor, Xnor };
  std::string output;
  Kind kind;
  std::vector<std::string> inputs;
};

struct Netlist {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Gate> gates;
};

class NetlistError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Lines: INPUT(name), OUTPUT(name), name = KIND(a, b, ...); '#' comments.
Netlist parse_netlist(std::string_view text);

struct EncodedNetlist {
  SystemDescription sd;
  std::map<std::string, Var> signal_var;
};

// One component per gate, in topological order. Inputs take variables
// first in declaration order, then gate outputs in component order.
EncodedNetlist encode_netlist(const Netlist& netlist);

// Builds an observation from signal values.
Observation make_observation(const EncodedNetlist& enc, int id,
                             const std::vector<std::pair<std::string, bool>>& values);

// C17 with NAND components z1..z4, o1, o2 and the five failing observations
// 15, 27, 34, 46, 52 over <i1..i5, o1, o2>.
Instance gen_c17();
extern const char* const kC17Netlist;

struct RandomParams {
  std::size_t components = 6; // at most 12
  std::size_t vars = 6;
  std::size_t observations = 2; // at most 4
  std::uint64_t seed = 0;
  std::size_t max_attempts = 10000;
};

// Random clause groups with every observation failing for the empty
// candidate and the all-abnormal candidate consistent.
Instance gen_random_instance(const RandomParams& params);

} // namespace mobdiag

#endif
