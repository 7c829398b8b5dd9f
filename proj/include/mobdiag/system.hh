#ifndef MOBDIAG_SYSTEM_HH
#define MOBDIAG_SYSTEM_HH

#include "mobdiag/formula.hh"
#include "mobdiag/hitting_set.hh"
#include "mobdiag/solver.hh"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobdiag {

using Diagnosis = ComponentSet;

class MalformedObservation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// A system under the weak fault model. Variables 1..num_system_vars describe
// the system; component c (1-based) owns selector Ab(c) = num_system_vars + c.
// Every clause of a component group is stored as (F v Ab(c)); background
// clauses in hard_indices carry no selector.
struct SystemDescription {
  CnfFormula base;
  Var num_system_vars = 0;
  std::vector<std::vector<std::size_t>> clause_groups; // indexed by component - 1
  std::vector<std::size_t> hard_indices;
  std::vector<std::string> component_names;            // indexed by component - 1

  std::size_t num_components() const { return clause_groups.size(); }
  Lit ab(ComponentId c) const { return pos(num_system_vars + c); }
  ComponentSet components() const;
  const std::string& name(ComponentId c) const { return component_names.at(c - 1); }

  // Group of clause i (0 = background), and the clause without its selector.
  ComponentId group_of(std::size_t clause_index) const;
  Clause original_clause(std::size_t clause_index) const;

  bool operator==(const SystemDescription& o) const {
    return base == o.base && num_system_vars == o.num_system_vars && clause_groups == o.clause_groups &&
           hard_indices == o.hard_indices;
  }
};

// Collects clauses per group and lays out selectors after the system
// variables. Clauses are normalized; tautologies are dropped and counted.
class SystemBuilder {
public:
  explicit SystemBuilder(Var num_system_vars) : num_system_vars_(num_system_vars) {}

  ComponentId add_component(std::string name = {});
  void add_clause(ComponentId group, Clause clause); // group 0 = background
  std::size_t dropped_tautologies() const { return dropped_tautologies_; }
  std::size_t num_components() const { return names_.size(); }
  SystemDescription build() const;

private:
  Var num_system_vars_;
  std::vector<std::string> names_;
  std::vector<std::pair<ComponentId, Clause>> clauses_;
  std::size_t dropped_tautologies_ = 0;
};

struct Observation {
  int id = 0;
  std::vector<Lit> units;
  bool operator==(const Observation&) const = default;
};

struct Explanation {
  ComponentSet components;
  int witness_obs = 0;
};

// Throws MalformedObservation for unknown variables, selector variables or
// a complementary pair.
void validate_observation(const SystemDescription& sd, const Observation& obs);

ComponentSet set_difference(const ComponentSet& a, const ComponentSet& b);
bool intersects(const ComponentSet& a, const ComponentSet& b);
bool is_subset(const ComponentSet& a, const ComponentSet& b);

// One clause database for the whole system; deltas and observations are
// applied purely through assumptions.
class ConsistencyChecker {
public:
  explicit ConsistencyChecker(const SystemDescription& sd);

  // Assumes Ab(c) for c in delta, -Ab(c) otherwise, plus the observation.
  SatResult check(const ComponentSet& delta, const Observation& obs);
  bool consistent(const ComponentSet& delta, const Observation& obs) { return check(delta, obs).is_sat(); }

  // Minimal set of components, disjoint from delta, that cannot all be
  // healthy under obs. Requires check(delta, obs) to be Unsat.
  Explanation extract_explanation(const ComponentSet& delta, const Observation& obs);
  Explanation extract_explanation(const ComponentSet& delta, const Observation& obs, const SatResult& failed);

  // Only the listed components are healthy; all others are unconstrained.
  bool healthy_consistent(const ComponentSet& healthy, const Observation& obs);

  const SystemDescription& system() const { return sd_; }
  std::uint64_t sat_calls() const { return sat_calls_; }

private:
  ComponentSet healthy_in_core(const std::vector<Lit>& core) const;

  const SystemDescription& sd_;
  Solver solver_;
  std::uint64_t sat_calls_ = 0;
};

// Consistent with every observation and no single removal stays consistent.
bool verify_diagnosis(ConsistencyChecker& checker, const ComponentSet& delta,
                      const std::vector<Observation>& observations);

// The observation is inconsistent with exactly these components healthy and
// consistent once any one of them is made abnormal.
bool verify_explanation(ConsistencyChecker& checker, const Explanation& expl,
                        const std::vector<Observation>& observations);

// One replica of the system per observation with selectors shared. Layout:
// Ab(c) becomes variable c; system variable v of replica i (0-based)
// becomes M + i*V + v. Observation units are hard units; the soft clauses
// are the units (-Ab(c)) in component order.
WcnfInstance build_aggregate(const SystemDescription& sd, const std::vector<Observation>& observations);

// MaxSAT view of a single observation: system plus observation as hard,
// (-Ab(c)) as soft, selectors keep their system numbering.
WcnfInstance single_observation_instance(const SystemDescription& sd, const Observation& obs);

} // namespace mobdiag

#endif
