#ifndef MOBDIAG_IO_HH
#define MOBDIAG_IO_HH

#include "mobdiag/system.hh"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mobdiag {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Group CNF:
//   c <free text>            comment
//   c comp <id> <name>       optional component name
//   p mbd V C M              header: system variables, clauses, components
//   g l1 ... ln 0            clause of group g (0 = background)
// Selectors are not written; Ab(c) is V + c on load.
struct MbdFile {
  SystemDescription sd;
  std::vector<std::string> comments;
  std::size_t dropped_tautologies = 0;
};

MbdFile parse_mbd(std::string_view text);
std::string write_mbd(const SystemDescription& sd, const std::vector<std::string>& comments = {});

// One observation per line, signed literals terminated by 0. A preceding
// "c obs <id>" line sets the id; otherwise ids count up from 1.
std::vector<Observation> parse_obs(std::string_view text, Var num_system_vars);
std::string write_obs(const std::vector<Observation>& observations);

struct StatsRecord {
  std::string instance;
  std::string engine;
  std::optional<std::size_t> r;
  std::optional<std::size_t> k;
  std::size_t vars = 0;
  std::size_t clauses = 0;
  std::size_t diagnoses = 0;
  std::size_t explanations = 0;
  std::uint64_t sat_calls = 0;
  double elapsed_s = 0;
  bool exhausted = false; // the enumeration ran to completion
  std::optional<long double> percent_enumerated;
};

extern const char* const kStatsHeader;
std::string write_stats(const std::vector<StatsRecord>& records);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace mobdiag

#endif
