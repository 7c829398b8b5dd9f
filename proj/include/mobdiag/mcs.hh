#ifndef MOBDIAG_MCS_HH
#define MOBDIAG_MCS_HH

#include "mobdiag/cardinality.hh"
#include "mobdiag/formula.hh"
#include "mobdiag/solver.hh"

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace mobdiag {

using Clock = std::chrono::steady_clock;

// A minimal correction subset, as ascending soft-clause indices, with a
// model of hard plus every soft clause outside it.
struct McsResult {
  std::vector<std::size_t> mcs;
  Assignment model;
};

struct EnumerationLimits {
  std::optional<std::size_t> max_count;
  std::optional<Clock::time_point> deadline;
};

struct EnumerationOutcome {
  std::size_t count = 0;
  bool exhausted = false; // every MCS was emitted
  std::uint64_t sat_calls = 0;
};

using McsSink = std::function<void(const McsResult&)>;

// LBX-style linear search over one incremental solver. Each soft clause c
// is stored as (c v -s) under a fresh selector s; blocking clauses over
// selectors accumulate as hard clauses across calls.
class LbxSolver {
public:
  explicit LbxSolver(const WcnfInstance& instance);

  // nullopt when hard clauses plus blocking clauses are unsatisfiable.
  std::optional<McsResult> extract();
  // Requires one soft clause of mcs to be satisfied from now on, excluding
  // mcs and all of its supersets.
  void block(const std::vector<std::size_t>& mcs);

  std::uint64_t sat_calls() const { return sat_calls_; }
  std::size_t num_soft() const { return soft_.size(); }

  // Minimum-cardinality correction set under the current blocking clauses,
  // searching bounds upward from the last optimum found.
  std::optional<McsResult> extract_min_cardinality();

private:
  std::vector<bool> satisfied_softs(const Assignment& model) const;

  Solver solver_;
  std::vector<Clause> soft_;
  std::vector<Lit> selectors_;
  std::unique_ptr<AtMostEncoder> relaxed_bound_;
  std::size_t lower_bound_ = 0;
  std::uint64_t sat_calls_ = 0;
};

std::optional<McsResult> extract_mcs(const WcnfInstance& instance);

// Emits MCSes in discovery order until exhaustion or a limit is hit.
EnumerationOutcome enumerate_mcs(const WcnfInstance& instance, const EnumerationLimits& limits, const McsSink& sink);

// Emits MCSes in non-decreasing cardinality: all of size b before any of
// size b+1.
EnumerationOutcome enumerate_mcs_by_cardinality(const WcnfInstance& instance, const EnumerationLimits& limits,
                                                const McsSink& sink);

} // namespace mobdiag

#endif
