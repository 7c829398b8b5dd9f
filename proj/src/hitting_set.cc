#include "mobdiag/hitting_set.hh"

#include <algorithm>
#include <cassert>
#include <string>

namespace mobdiag {

ExplanationStore::ExplanationStore(std::size_t universe) : universe_(universe), occurrences_(universe + 1) {
  solver_.ensure_vars(static_cast<Var>(universe));
}

void ExplanationStore::check_members(const ComponentSet& s) const {
  for (ComponentId c : s)
    if (c == 0 || c > universe_)
      throw std::out_of_range("component " + std::to_string(c) + " outside universe");
}

void ExplanationStore::add_explanation(const ComponentSet& expl) {
  if (expl.empty())
    throw NoDiagnosisError("empty explanation: an observation is inconsistent with all components abnormal");
  check_members(expl);
  if (std::find(sets_.begin(), sets_.end(), expl) != sets_.end())
    return;
  Clause cover;
  cover.reserve(expl.size());
  for (ComponentId c : expl) {
    cover.push_back(pos(c));
    occurrences_[c].push_back(sets_.size());
  }
  sets_.push_back(expl);
  solver_.add_clause(std::move(cover));
}

void ExplanationStore::block_diagnosis(const ComponentSet& diag) {
  check_members(diag);
  Clause c;
  c.reserve(diag.size());
  for (ComponentId id : diag)
    c.push_back(neg(id));
  blocked_.push_back(diag);
  solver_.add_clause(std::move(c));
}

// Drops members in ascending order while every explanation stays hit.
// Blocking clauses only forbid picks, so removals never violate them.
ComponentSet ExplanationStore::minimize(ComponentSet hs) const {
  std::vector<std::size_t> hits(sets_.size(), 0);
  for (ComponentId c : hs)
    for (std::size_t e : occurrences_[c])
      ++hits[e];
  ComponentSet kept;
  for (ComponentId c : hs) {
    bool needed = std::any_of(occurrences_[c].begin(), occurrences_[c].end(),
                              [&](std::size_t e) { return hits[e] == 1; });
    if (needed) {
      kept.push_back(c);
    } else {
      for (std::size_t e : occurrences_[c])
        --hits[e];
    }
  }
  return kept;
}

std::optional<ComponentSet> ExplanationStore::next_min_hs(Minimality mode) {
  auto picked = [this](const Assignment& model) {
    ComponentSet hs;
    for (ComponentId c = 1; c <= universe_; ++c)
      if (model.value(static_cast<Var>(c)))
        hs.push_back(c);
    return hs;
  };

  if (mode == Minimality::Subset) {
    ++sat_calls_;
    SatResult r = solver_.solve();
    if (r.is_unsat())
      return std::nullopt;
    return minimize(picked(r.model()));
  }

  if (!bound_) {
    std::vector<Lit> picks;
    for (ComponentId c = 1; c <= universe_; ++c)
      picks.push_back(pos(c));
    bound_ = std::make_unique<AtMostEncoder>(solver_, std::move(picks));
  }
  for (std::size_t b = lower_bound_;; ++b) {
    Lit act = bound_->activator(b);
    ++sat_calls_;
    SatResult r = solver_.solve({act});
    if (r.is_unsat()) {
      if (r.core().empty())
        return std::nullopt;
      continue;
    }
    lower_bound_ = b;
    ComponentSet hs = picked(r.model());
    assert(hs.size() == b);
    return hs;
  }
}

} // namespace mobdiag
