#include "mobdiag/cardinality.hh"

namespace mobdiag {

Lit AtMostEncoder::activator(std::size_t bound) {
  if (auto it = activators_.find(bound); it != activators_.end())
    return it->second;

  Lit act = pos(solver_.new_var());
  activators_.emplace(bound, act);
  const std::size_t n = lits_.size();
  auto guarded = [&](Clause c) {
    c.push_back(~act);
    solver_.add_clause(std::move(c));
  };

  if (bound >= n)
    return act;
  if (bound == 0) {
    for (Lit x : lits_)
      guarded({~x});
    return act;
  }

  // reg[i][j] <=> at least j+1 of lits_[0..i] are true (upper direction only).
  std::vector<std::vector<Lit>> reg(n - 1, std::vector<Lit>(bound));
  for (auto& row : reg)
    for (auto& r : row)
      r = pos(solver_.new_var());

  guarded({~lits_[0], reg[0][0]});
  for (std::size_t j = 1; j < bound; ++j)
    guarded({~reg[0][j]});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    guarded({~lits_[i], reg[i][0]});
    guarded({~reg[i - 1][0], reg[i][0]});
    for (std::size_t j = 1; j < bound; ++j) {
      guarded({~lits_[i], ~reg[i - 1][j - 1], reg[i][j]});
      guarded({~reg[i - 1][j], reg[i][j]});
    }
    guarded({~lits_[i], ~reg[i - 1][bound - 1]});
  }
  guarded({~lits_[n - 1], ~reg[n - 2][bound - 1]});
  return act;
}

} // namespace mobdiag
