#ifndef MOBDIAG_ORACLE_HH
#define MOBDIAG_ORACLE_HH

// Exhaustive reference procedures for small instances. They share no code
// with the incremental solver so they can serve as independent checks.

#include "mobdiag/system.hh"

#include <span>
#include <stdexcept>
#include <vector>

namespace mobdiag {

class OracleCapExceeded : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Plain DPLL with unit propagation by clause scanning.
bool dpll_satisfiable(const CnfFormula& f, std::span<const Lit> units);

// All subset-minimal diagnoses across every observation, by enumerating all
// 2^M component subsets. Refuses instances with more than cap components.
std::vector<Diagnosis> brute_force_diagnoses(const SystemDescription& sd, const std::vector<Observation>& observations,
                                             std::size_t cap = 15);

// Subset-minimal explanations over all observations (minimal conflicts of
// each observation, then minimized across observations).
std::vector<ComponentSet> brute_force_explanations(const SystemDescription& sd,
                                                   const std::vector<Observation>& observations, std::size_t cap = 15);

// Subset-minimal hitting sets of sets over 1..universe, by enumeration.
std::vector<ComponentSet> brute_force_minimal_hitting_sets(const std::vector<ComponentSet>& sets,
                                                           std::size_t universe);

// Keeps only subset-minimal members, sorted by (size, lexicographic).
std::vector<ComponentSet> minimal_elements(std::vector<ComponentSet> sets);

} // namespace mobdiag

#endif
