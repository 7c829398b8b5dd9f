#include "mobdiag/mcs.hh"

#include <cassert>

namespace mobdiag {

LbxSolver::LbxSolver(const WcnfInstance& instance) {
  solver_.add_formula(instance.hard);
  solver_.ensure_vars(instance.num_vars());
  soft_.reserve(instance.soft.size());
  selectors_.reserve(instance.soft.size());
  for (const auto& s : instance.soft) {
    Lit sel = pos(solver_.new_var());
    Clause guarded = s.clause;
    guarded.push_back(~sel);
    solver_.add_clause(std::move(guarded));
    soft_.push_back(s.clause);
    selectors_.push_back(sel);
  }
}

std::vector<bool> LbxSolver::satisfied_softs(const Assignment& model) const {
  std::vector<bool> sat(soft_.size());
  for (std::size_t i = 0; i < soft_.size(); ++i)
    sat[i] = eval_clause(soft_[i], model);
  return sat;
}

std::optional<McsResult> LbxSolver::extract() {
  ++sat_calls_;
  SatResult r = solver_.solve();
  if (r.is_unsat())
    return std::nullopt;

  Assignment model = r.model();
  std::vector<bool> sat = satisfied_softs(model);
  std::vector<Lit> assumptions;
  for (std::size_t i = 0; i < soft_.size(); ++i)
    if (sat[i])
      assumptions.push_back(selectors_[i]);

  for (std::size_t i = 0; i < soft_.size(); ++i) {
    if (sat[i])
      continue;
    assumptions.push_back(selectors_[i]);
    ++sat_calls_;
    SatResult t = solver_.solve(assumptions);
    if (t.is_unsat()) {
      assumptions.pop_back();
      continue;
    }
    sat[i] = true;
    model = t.model();
    for (std::size_t j = i + 1; j < soft_.size(); ++j) {
      if (!sat[j] && eval_clause(soft_[j], model)) {
        sat[j] = true;
        assumptions.push_back(selectors_[j]);
      }
    }
  }

  McsResult result;
  for (std::size_t i = 0; i < soft_.size(); ++i)
    if (!sat[i])
      result.mcs.push_back(i);
  result.model = std::move(model);
  return result;
}

void LbxSolver::block(const std::vector<std::size_t>& mcs) {
  Clause c;
  c.reserve(mcs.size());
  for (std::size_t i : mcs)
    c.push_back(selectors_[i]);
  solver_.add_clause(std::move(c));
}

std::optional<McsResult> LbxSolver::extract_min_cardinality() {
  if (!relaxed_bound_) {
    std::vector<Lit> relaxed;
    relaxed.reserve(selectors_.size());
    for (Lit s : selectors_)
      relaxed.push_back(~s);
    relaxed_bound_ = std::make_unique<AtMostEncoder>(solver_, std::move(relaxed));
  }
  for (std::size_t bound = lower_bound_;; ++bound) {
    Lit act = relaxed_bound_->activator(bound);
    ++sat_calls_;
    SatResult r = solver_.solve({act});
    if (r.is_unsat()) {
      if (r.core().empty())
        return std::nullopt;
      continue;
    }
    lower_bound_ = bound;
    McsResult result;
    std::vector<bool> sat = satisfied_softs(r.model());
    for (std::size_t i = 0; i < soft_.size(); ++i)
      if (!sat[i])
        result.mcs.push_back(i);
    assert(result.mcs.size() == bound);
    result.model = r.model();
    return result;
  }
}

std::optional<McsResult> extract_mcs(const WcnfInstance& instance) {
  LbxSolver lbx(instance);
  return lbx.extract();
}

namespace {

template <typename Extract>
EnumerationOutcome enumerate_with(LbxSolver& lbx, const EnumerationLimits& limits, const McsSink& sink,
                                  Extract extract) {
  EnumerationOutcome out;
  for (;;) {
    if (limits.max_count && out.count >= *limits.max_count)
      break;
    if (limits.deadline && Clock::now() >= *limits.deadline)
      break;
    std::optional<McsResult> r = extract(lbx);
    if (!r) {
      out.exhausted = true;
      break;
    }
    ++out.count;
    if (sink)
      sink(*r);
    lbx.block(r->mcs);
  }
  out.sat_calls = lbx.sat_calls();
  return out;
}

} // namespace

EnumerationOutcome enumerate_mcs(const WcnfInstance& instance, const EnumerationLimits& limits, const McsSink& sink) {
  LbxSolver lbx(instance);
  return enumerate_with(lbx, limits, sink, [](LbxSolver& s) { return s.extract(); });
}

EnumerationOutcome enumerate_mcs_by_cardinality(const WcnfInstance& instance, const EnumerationLimits& limits,
                                                const McsSink& sink) {
  LbxSolver lbx(instance);
  return enumerate_with(lbx, limits, sink, [](LbxSolver& s) { return s.extract_min_cardinality(); });
}

} // namespace mobdiag
