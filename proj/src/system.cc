#include "mobdiag/system.hh"

#include <algorithm>
#include <iterator>
#include <unordered_set>

namespace mobdiag {

ComponentSet SystemDescription::components() const {
  ComponentSet all(num_components());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = static_cast<ComponentId>(i + 1);
  return all;
}

ComponentId SystemDescription::group_of(std::size_t clause_index) const {
  for (std::size_t c = 0; c < clause_groups.size(); ++c)
    if (std::binary_search(clause_groups[c].begin(), clause_groups[c].end(), clause_index))
      return static_cast<ComponentId>(c + 1);
  return 0;
}

Clause SystemDescription::original_clause(std::size_t clause_index) const {
  Clause c = base.clauses.at(clause_index);
  std::erase_if(c, [this](Lit l) { return l.var() > num_system_vars; });
  return c;
}

ComponentId SystemBuilder::add_component(std::string name) {
  auto id = static_cast<ComponentId>(names_.size() + 1);
  names_.push_back(name.empty() ? "c" + std::to_string(id) : std::move(name));
  return id;
}

void SystemBuilder::add_clause(ComponentId group, Clause clause) {
  if (group > names_.size())
    throw std::out_of_range("clause group " + std::to_string(group) + " has no component");
  for (Lit l : clause)
    if (l.var() > num_system_vars_)
      throw std::out_of_range("literal " + to_string(l) + " exceeds the system variable range");
  auto normalized = normalize_clause(std::move(clause));
  if (!normalized) {
    ++dropped_tautologies_;
    return;
  }
  clauses_.emplace_back(group, std::move(*normalized));
}

SystemDescription SystemBuilder::build() const {
  SystemDescription sd;
  sd.num_system_vars = num_system_vars_;
  sd.component_names = names_;
  sd.clause_groups.resize(names_.size());
  sd.base.num_vars = num_system_vars_ + static_cast<Var>(names_.size());
  for (const auto& [group, clause] : clauses_) {
    std::size_t index = sd.base.clauses.size();
    Clause stored = clause;
    if (group == 0) {
      sd.hard_indices.push_back(index);
    } else {
      stored.push_back(sd.ab(group));
      sd.clause_groups[group - 1].push_back(index);
    }
    sd.base.clauses.push_back(std::move(stored));
  }
  return sd;
}

void validate_observation(const SystemDescription& sd, const Observation& obs) {
  std::unordered_set<Lit> seen;
  for (Lit l : obs.units) {
    if (l.var() > sd.num_system_vars)
      throw MalformedObservation("observation " + std::to_string(obs.id) + " refers to unknown variable " +
                                 std::to_string(l.var()));
    if (seen.contains(~l))
      throw MalformedObservation("observation " + std::to_string(obs.id) + " assigns variable " +
                                 std::to_string(l.var()) + " both ways");
    seen.insert(l);
  }
}

ComponentSet set_difference(const ComponentSet& a, const ComponentSet& b) {
  ComponentSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool intersects(const ComponentSet& a, const ComponentSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j)
      return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

bool is_subset(const ComponentSet& a, const ComponentSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ConsistencyChecker::ConsistencyChecker(const SystemDescription& sd) : sd_(sd) {
  solver_.add_formula(sd.base);
}

SatResult ConsistencyChecker::check(const ComponentSet& delta, const Observation& obs) {
  validate_observation(sd_, obs);
  std::vector<Lit> assumptions(obs.units.begin(), obs.units.end());
  assumptions.reserve(obs.units.size() + sd_.num_components());
  std::size_t d = 0;
  for (ComponentId c = 1; c <= sd_.num_components(); ++c) {
    while (d < delta.size() && delta[d] < c)
      ++d;
    if (d == delta.size() || delta[d] != c)
      assumptions.push_back(~sd_.ab(c));
  }
  for (ComponentId c : delta) {
    if (c == 0 || c > sd_.num_components())
      throw std::out_of_range("component " + std::to_string(c) + " does not exist");
    assumptions.push_back(sd_.ab(c));
  }
  ++sat_calls_;
  return solver_.solve(assumptions);
}

bool ConsistencyChecker::healthy_consistent(const ComponentSet& healthy, const Observation& obs) {
  std::vector<Lit> assumptions(obs.units.begin(), obs.units.end());
  for (ComponentId c : healthy)
    assumptions.push_back(~sd_.ab(c));
  ++sat_calls_;
  return solver_.solve(assumptions).is_sat();
}

ComponentSet ConsistencyChecker::healthy_in_core(const std::vector<Lit>& core) const {
  ComponentSet out;
  for (Lit l : core)
    if (!l.positive() && l.var() > sd_.num_system_vars)
      out.push_back(l.var() - sd_.num_system_vars);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Explanation ConsistencyChecker::extract_explanation(const ComponentSet& delta, const Observation& obs) {
  return extract_explanation(delta, obs, check(delta, obs));
}

Explanation ConsistencyChecker::extract_explanation(const ComponentSet& delta, const Observation& obs,
                                                    const SatResult& failed) {
  if (failed.is_sat())
    throw ContractError("extract_explanation requires an inconsistent candidate");

  // Deletion over the core, ascending. A member whose removal restores
  // consistency stays; otherwise the candidate shrinks to the new core,
  // which keeps every member already shown necessary.
  ComponentSet candidate = healthy_in_core(failed.core());
  std::size_t i = 0;
  std::vector<Lit> assumptions;
  while (i < candidate.size()) {
    assumptions.assign(obs.units.begin(), obs.units.end());
    for (std::size_t j = 0; j < candidate.size(); ++j)
      if (j != i)
        assumptions.push_back(~sd_.ab(candidate[j]));
    ++sat_calls_;
    SatResult r = solver_.solve(assumptions);
    if (r.is_sat()) {
      ++i;
    } else {
      ComponentSet rest = candidate;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      ComponentSet refined = healthy_in_core(r.core());
      std::vector<ComponentId> next;
      std::set_intersection(rest.begin(), rest.end(), refined.begin(), refined.end(), std::back_inserter(next));
      candidate = std::move(next);
    }
  }
  Explanation e{std::move(candidate), obs.id};
  if (intersects(e.components, delta))
    throw ContractError("explanation overlaps the failed candidate");
  return e;
}

bool verify_diagnosis(ConsistencyChecker& checker, const ComponentSet& delta,
                      const std::vector<Observation>& observations) {
  for (const auto& obs : observations)
    if (!checker.consistent(delta, obs))
      return false;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    ComponentSet smaller = delta;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
    bool all_pass = std::all_of(observations.begin(), observations.end(),
                                [&](const Observation& o) { return checker.consistent(smaller, o); });
    if (all_pass)
      return false;
  }
  return true;
}

bool verify_explanation(ConsistencyChecker& checker, const Explanation& expl,
                        const std::vector<Observation>& observations) {
  auto it = std::find_if(observations.begin(), observations.end(),
                         [&](const Observation& o) { return o.id == expl.witness_obs; });
  if (it == observations.end())
    return false;
  if (checker.healthy_consistent(expl.components, *it))
    return false;
  for (std::size_t i = 0; i < expl.components.size(); ++i) {
    ComponentSet smaller = expl.components;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
    if (!checker.healthy_consistent(smaller, *it))
      return false;
  }
  return true;
}

WcnfInstance build_aggregate(const SystemDescription& sd, const std::vector<Observation>& observations) {
  const Var m = static_cast<Var>(sd.num_components());
  const Var v_sys = sd.num_system_vars;
  auto rename = [&](Lit l, std::size_t replica) {
    if (l.var() > v_sys)
      return Lit(l.var() - v_sys, l.positive());
    return Lit(m + static_cast<Var>(replica) * v_sys + l.var(), l.positive());
  };

  WcnfInstance w;
  w.hard.num_vars = m + static_cast<Var>(observations.size()) * v_sys;
  std::size_t unit_count = 0;
  for (const auto& o : observations)
    unit_count += o.units.size();
  w.hard.clauses.reserve(observations.size() * sd.base.clauses.size() + unit_count);
  for (std::size_t i = 0; i < observations.size(); ++i) {
    validate_observation(sd, observations[i]);
    for (const auto& c : sd.base.clauses) {
      Clause renamed;
      renamed.reserve(c.size());
      for (Lit l : c)
        renamed.push_back(rename(l, i));
      w.hard.clauses.push_back(std::move(renamed));
    }
    for (Lit u : observations[i].units)
      w.hard.clauses.push_back({rename(u, i)});
  }
  w.soft.reserve(m);
  for (Var c = 1; c <= m; ++c)
    w.soft.push_back({{neg(c)}, 1});
  return w;
}

WcnfInstance single_observation_instance(const SystemDescription& sd, const Observation& obs) {
  validate_observation(sd, obs);
  WcnfInstance w;
  w.hard = sd.base;
  for (Lit u : obs.units)
    w.hard.clauses.push_back({u});
  for (ComponentId c = 1; c <= sd.num_components(); ++c)
    w.soft.push_back({{~sd.ab(c)}, 1});
  return w;
}

} // namespace mobdiag
