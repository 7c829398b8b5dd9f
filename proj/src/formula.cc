#include "mobdiag/formula.hh"

#include <algorithm>

namespace mobdiag {

Lit Lit::from_dimacs(int value) {
  if (value == 0)
    throw MalformedLiteral("literal 0 is a terminator, not a literal");
  return value > 0 ? Lit(static_cast<Var>(value), true) : Lit(static_cast<Var>(-static_cast<long>(value)), false);
}

std::string to_string(Lit l) {
  return std::to_string(l.to_dimacs());
}

std::optional<Clause> normalize_clause(Clause clause) {
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 1; i < clause.size(); ++i)
    if (clause[i] == ~clause[i - 1])
      return std::nullopt;
  return clause;
}

void CnfFormula::add(Clause c) {
  for (Lit l : c)
    num_vars = std::max(num_vars, l.var());
  clauses.push_back(std::move(c));
}

Var WcnfInstance::num_vars() const {
  Var n = hard.num_vars;
  for (const auto& s : soft)
    for (Lit l : s.clause)
      n = std::max(n, l.var());
  return n;
}

void Assignment::set(Var v, bool value) {
  if (v == 0)
    throw MalformedLiteral("variable index 0 is reserved");
  if (v >= values_.size())
    values_.resize(v + 1, kUnset);
  values_[v] = value ? 1 : 0;
}

bool Assignment::value(Var v) const {
  if (!is_set(v))
    throw IncompleteAssignment("variable " + std::to_string(v) + " is unassigned");
  return values_[v] == 1;
}

bool eval_clause(std::span<const Lit> clause, const Assignment& a) {
  return std::any_of(clause.begin(), clause.end(), [&](Lit l) { return a.value(l); });
}

bool eval_formula(const CnfFormula& f, const Assignment& a) {
  bool sat = true;
  // Scan every clause so an incomplete assignment is always reported.
  for (const auto& c : f.clauses) {
    bool clause_sat = false;
    for (Lit l : c)
      clause_sat = a.value(l) || clause_sat;
    sat = sat && clause_sat;
  }
  return sat;
}

} // namespace mobdiag
