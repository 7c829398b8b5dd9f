#ifndef MOBDIAG_HITTING_SET_HH
#define MOBDIAG_HITTING_SET_HH

#include "mobdiag/cardinality.hh"
#include "mobdiag/solver.hh"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mobdiag {

using ComponentId = std::uint32_t; // 1-based
using ComponentSet = std::vector<ComponentId>; // ascending, no duplicates

enum class Minimality { Subset, Cardinality };

// Raised when an empty explanation is recorded: some observation stays
// inconsistent even with every component abnormal.
class NoDiagnosisError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Explanations and blocked diagnoses over components 1..universe, kept as
// clauses over one pick variable per component in an incremental solver.
// A pick variable for component c is solver variable c.
class ExplanationStore {
public:
  explicit ExplanationStore(std::size_t universe);

  // Adds the covering clause OR_{c in expl} pick(c). Duplicates are ignored.
  void add_explanation(const ComponentSet& expl);
  // Adds OR_{c in diag} -pick(c): diag and its supersets are excluded.
  void block_diagnosis(const ComponentSet& diag);

  std::optional<ComponentSet> next_min_hs(Minimality mode);

  std::size_t universe() const { return universe_; }
  const std::vector<ComponentSet>& explanations() const { return sets_; }
  const std::vector<ComponentSet>& blocked() const { return blocked_; }
  std::uint64_t sat_calls() const { return sat_calls_; }

private:
  void check_members(const ComponentSet& s) const;
  ComponentSet minimize(ComponentSet hs) const;

  std::size_t universe_;
  Solver solver_;
  std::vector<ComponentSet> sets_;
  std::vector<ComponentSet> blocked_;
  std::vector<std::vector<std::size_t>> occurrences_; // component -> explanation indices
  std::unique_ptr<AtMostEncoder> bound_;
  std::size_t lower_bound_ = 0;
  std::uint64_t sat_calls_ = 0;
};

} // namespace mobdiag

#endif
