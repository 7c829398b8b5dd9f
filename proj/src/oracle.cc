#include "mobdiag/oracle.hh"

#include <algorithm>
#include <cstdint>
#include <string>

namespace mobdiag {

namespace {

class Dpll {
public:
  explicit Dpll(const CnfFormula& f) : f_(f), value_(f.num_vars + 1, -1) {}

  bool assume(Lit l) {
    ensure(l.var());
    int want = l.positive() ? 1 : 0;
    if (value_[l.var()] == -1) {
      value_[l.var()] = static_cast<std::int8_t>(want);
      return true;
    }
    return value_[l.var()] == want;
  }

  bool run() {
    if (!propagate())
      return false;
    Var branch = 0;
    for (Var v = 1; v < value_.size(); ++v)
      if (value_[v] == -1) {
        branch = v;
        break;
      }
    if (branch == 0)
      return true;
    for (std::int8_t val : {std::int8_t{0}, std::int8_t{1}}) {
      auto saved = value_;
      value_[branch] = val;
      if (run())
        return true;
      value_ = std::move(saved);
    }
    return false;
  }

private:
  void ensure(Var v) {
    if (v >= value_.size())
      value_.resize(v + 1, -1);
  }

  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : f_.clauses) {
        int unassigned = 0;
        Lit last;
        bool sat = false;
        for (Lit l : c) {
          ensure(l.var());
          std::int8_t v = value_[l.var()];
          if (v == -1) {
            ++unassigned;
            last = l;
          } else if ((v == 1) == l.positive()) {
            sat = true;
            break;
          }
        }
        if (sat)
          continue;
        if (unassigned == 0)
          return false;
        if (unassigned == 1) {
          value_[last.var()] = last.positive() ? 1 : 0;
          changed = true;
        }
      }
    }
    return true;
  }

  const CnfFormula& f_;
  std::vector<std::int8_t> value_;
};

void require_cap(const SystemDescription& sd, std::size_t cap) {
  if (sd.num_components() > cap)
    throw OracleCapExceeded("brute force refuses " + std::to_string(sd.num_components()) +
                            " components (cap " + std::to_string(cap) + ")");
}

ComponentSet mask_to_set(std::uint64_t mask, std::size_t m) {
  ComponentSet s;
  for (std::size_t i = 0; i < m; ++i)
    if (mask & (std::uint64_t{1} << i))
      s.push_back(static_cast<ComponentId>(i + 1));
  return s;
}

// healthy_mask bit i set means component i+1 assumed healthy; all others
// are assumed abnormal.
bool consistent_with(const SystemDescription& sd, const Observation& obs, std::uint64_t healthy_mask) {
  std::vector<Lit> units = obs.units;
  for (std::size_t i = 0; i < sd.num_components(); ++i) {
    Lit ab = sd.ab(static_cast<ComponentId>(i + 1));
    units.push_back((healthy_mask >> i) & 1U ? ~ab : ab);
  }
  return dpll_satisfiable(sd.base, units);
}

} // namespace

bool dpll_satisfiable(const CnfFormula& f, std::span<const Lit> units) {
  Dpll d(f);
  for (Lit u : units)
    if (!d.assume(u))
      return false;
  return d.run();
}

std::vector<ComponentSet> minimal_elements(std::vector<ComponentSet> sets) {
  std::sort(sets.begin(), sets.end(), [](const ComponentSet& a, const ComponentSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<ComponentSet> kept;
  for (auto& s : sets) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const ComponentSet& k) { return is_subset(k, s); });
    if (!dominated)
      kept.push_back(std::move(s));
  }
  return kept;
}

std::vector<Diagnosis> brute_force_diagnoses(const SystemDescription& sd, const std::vector<Observation>& observations,
                                             std::size_t cap) {
  require_cap(sd, cap);
  const std::size_t m = sd.num_components();
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  std::vector<char> ok(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    const std::uint64_t healthy = full & ~mask;
    ok[mask] = std::all_of(observations.begin(), observations.end(),
                           [&](const Observation& o) { return consistent_with(sd, o, healthy); });
  }
  std::vector<Diagnosis> out;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    if (!ok[mask])
      continue;
    bool minimal = true;
    for (std::size_t i = 0; i < m && minimal; ++i)
      if ((mask >> i) & 1U)
        minimal = !ok[mask & ~(std::uint64_t{1} << i)];
    if (minimal)
      out.push_back(mask_to_set(mask, m));
  }
  return minimal_elements(std::move(out));
}

std::vector<ComponentSet> brute_force_explanations(const SystemDescription& sd,
                                                   const std::vector<Observation>& observations, std::size_t cap) {
  require_cap(sd, cap);
  const std::size_t m = sd.num_components();
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  std::vector<ComponentSet> conflicts;
  for (const auto& obs : observations) {
    std::vector<char> bad(std::size_t{1} << m);
    for (std::uint64_t healthy = 0; healthy <= full; ++healthy)
      bad[healthy] = !consistent_with(sd, obs, healthy);
    for (std::uint64_t healthy = 0; healthy <= full; ++healthy) {
      if (!bad[healthy])
        continue;
      bool minimal = true;
      for (std::size_t i = 0; i < m && minimal; ++i)
        if ((healthy >> i) & 1U)
          minimal = !bad[healthy & ~(std::uint64_t{1} << i)];
      if (minimal)
        conflicts.push_back(mask_to_set(healthy, m));
    }
  }
  return minimal_elements(std::move(conflicts));
}

std::vector<ComponentSet> brute_force_minimal_hitting_sets(const std::vector<ComponentSet>& sets,
                                                           std::size_t universe) {
  std::vector<ComponentSet> hitting;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe); ++mask) {
    ComponentSet candidate = mask_to_set(mask, universe);
    if (std::all_of(sets.begin(), sets.end(), [&](const ComponentSet& s) { return intersects(s, candidate); }))
      hitting.push_back(std::move(candidate));
  }
  return minimal_elements(std::move(hitting));
}

} // namespace mobdiag
