#include "mobdiag/solver.hh"

#include <algorithm>
#include <cassert>

namespace mobdiag {

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClaDecay = 0.999;
constexpr int kRestartBase = 100;

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i)
    r *= y;
  return r;
}

} // namespace

SatResult SatResult::sat(Assignment model) {
  SatResult r;
  r.sat_ = true;
  r.model_ = std::move(model);
  return r;
}

SatResult SatResult::unsat(std::vector<Lit> core) {
  SatResult r;
  r.sat_ = false;
  r.core_ = std::move(core);
  return r;
}

Var Solver::new_var() {
  Var v = num_vars() + 1;
  assigns_.push_back(kUndef);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  phase_.push_back(0);
  seen_.push_back(0);
  activity_.push_back(0.0);
  heap_index_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v;
}

void Solver::ensure_vars(Var n) {
  while (num_vars() < n)
    new_var();
}

void Solver::add_formula(const CnfFormula& f) {
  ensure_vars(f.num_vars);
  for (const auto& c : f.clauses)
    add_clause(c);
}

bool Solver::add_clause(Clause clause) {
  cancel_until(0);
  for (Lit l : clause)
    ensure_vars(l.var());
  if (!ok_)
    return false;
  auto normalized = normalize_clause(std::move(clause));
  ++num_original_;
  if (!normalized)
    return true;
  Clause& c = *normalized;
  std::size_t j = 0;
  for (Lit l : c) {
    std::int8_t v = value(l);
    if (v == kTrue)
      return true;
    if (v == kUndef)
      c[j++] = l;
  }
  c.resize(j);
  if (c.empty()) {
    ok_ = false;
    return false;
  }
  if (c.size() == 1) {
    enqueue(c[0], kNoReason);
    if (propagate() != kNoReason)
      ok_ = false;
    return ok_;
  }
  CRef cr = alloc_clause(c, false);
  originals_.push_back(cr);
  attach(cr);
  return true;
}

Solver::CRef Solver::alloc_clause(std::span<const Lit> lits, bool learnt) {
  CRef cr = static_cast<CRef>(arena_.size());
  arena_.push_back(static_cast<std::uint32_t>(lits.size()));
  arena_.push_back(learnt ? kLearnt : 0);
  arena_.push_back(std::bit_cast<std::uint32_t>(0.0f));
  for (Lit l : lits)
    arena_.push_back(l.code());
  return cr;
}

void Solver::attach(CRef c) {
  Lit c0 = clit(c, 0), c1 = clit(c, 1);
  watches_[(~c0).code()].push_back({c, c1});
  watches_[(~c1).code()].push_back({c, c0});
}

void Solver::enqueue(Lit p, CRef from) {
  Var v = p.var();
  assigns_[v - 1] = p.positive() ? kTrue : kFalse;
  level_[v - 1] = decision_level();
  reason_[v - 1] = from;
  trail_.push_back(p);
}

Solver::CRef Solver::propagate() {
  CRef confl = kNoReason;
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = ~p;
    auto& ws = watches_[p.code()];
    ++stats_.propagations;
    std::size_t i = 0, j = 0, n = ws.size();
    while (i < n) {
      Lit blocker = ws[i].blocker;
      if (value(blocker) == kTrue) {
        ws[j++] = ws[i++];
        continue;
      }
      CRef cr = ws[i].cref;
      if (clit(cr, 0) == false_lit) {
        set_clit(cr, 0, clit(cr, 1));
        set_clit(cr, 1, false_lit);
      }
      ++i;
      Lit first = clit(cr, 0);
      Watcher w{cr, first};
      if (first != blocker && value(first) == kTrue) {
        ws[j++] = w;
        continue;
      }
      bool moved = false;
      std::uint32_t size = csize(cr);
      for (std::uint32_t k = 2; k < size; ++k) {
        Lit lk = clit(cr, k);
        if (value(lk) != kFalse) {
          set_clit(cr, 1, lk);
          set_clit(cr, k, false_lit);
          watches_[(~lk).code()].push_back(w);
          moved = true;
          break;
        }
      }
      if (moved)
        continue;
      ws[j++] = w;
      if (value(first) == kFalse) {
        confl = cr;
        qhead_ = trail_.size();
        while (i < n)
          ws[j++] = ws[i++];
      } else {
        enqueue(first, cr);
      }
    }
    ws.resize(j);
    if (confl != kNoReason)
      break;
  }
  return confl;
}

void Solver::analyze(CRef confl, std::vector<Lit>& learnt, int& bt_level) {
  int path_count = 0;
  bool have_p = false;
  Lit p;
  learnt.clear();
  learnt.push_back(Lit()); // slot for the asserting literal
  std::size_t index = trail_.size();

  do {
    assert(confl != kNoReason);
    if (clearnt(confl))
      cla_bump(confl);
    std::uint32_t size = csize(confl);
    for (std::uint32_t j = have_p ? 1 : 0; j < size; ++j) {
      Lit q = clit(confl, j);
      Var v = q.var();
      if (!seen_[v - 1] && level(v) > 0) {
        var_bump(v);
        seen_[v - 1] = 1;
        if (level(v) >= decision_level())
          ++path_count;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[trail_[--index].var() - 1]) {
    }
    p = trail_[index];
    have_p = true;
    confl = reason(p.var());
    seen_[p.var() - 1] = 0;
    --path_count;
  } while (path_count > 0);
  learnt[0] = ~p;

  // Drop literals whose reason is already covered by the clause.
  std::vector<Lit> to_clear(learnt.begin() + 1, learnt.end());
  std::size_t j = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    CRef r = reason(learnt[i].var());
    if (r == kNoReason) {
      learnt[j++] = learnt[i];
      continue;
    }
    std::uint32_t size = csize(r);
    for (std::uint32_t k = 1; k < size; ++k) {
      Var v = clit(r, k).var();
      if (!seen_[v - 1] && level(v) > 0) {
        learnt[j++] = learnt[i];
        break;
      }
    }
  }
  learnt.resize(j);
  for (Lit l : to_clear)
    seen_[l.var() - 1] = 0;

  if (learnt.size() == 1) {
    bt_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (level(learnt[i].var()) > level(learnt[max_i].var()))
        max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level(learnt[1].var());
  }
}

// p is an assumption currently assigned false; collects the assumptions
// responsible for that.
void Solver::analyze_final(Lit p, std::vector<Lit>& core) {
  core.clear();
  core.push_back(p);
  if (decision_level() == 0)
    return;
  seen_[p.var() - 1] = 1;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
    Var x = trail_[i].var();
    if (!seen_[x - 1])
      continue;
    CRef r = reason(x);
    if (r == kNoReason) {
      core.push_back(trail_[i]);
    } else {
      std::uint32_t size = csize(r);
      for (std::uint32_t k = 1; k < size; ++k) {
        Var v = clit(r, k).var();
        if (level(v) > 0)
          seen_[v - 1] = 1;
      }
    }
    seen_[x - 1] = 0;
  }
  seen_[p.var() - 1] = 0;
}

void Solver::cancel_until(int lvl) {
  if (decision_level() <= lvl)
    return;
  for (std::size_t c = trail_.size(); c-- > static_cast<std::size_t>(trail_lim_[lvl]);) {
    Var x = trail_[c].var();
    assigns_[x - 1] = kUndef;
    reason_[x - 1] = kNoReason;
    phase_[x - 1] = trail_[c].positive() ? 1 : 0;
    heap_insert(x);
  }
  qhead_ = static_cast<std::size_t>(trail_lim_[lvl]);
  trail_.resize(qhead_);
  trail_lim_.resize(static_cast<std::size_t>(lvl));
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    Var v = heap_pop();
    if (value(v) == kUndef)
      return Lit(v, phase_[v - 1] != 0);
  }
  return Lit::from_code(0xFFFFFFFFu);
}

bool Solver::locked(CRef c) {
  Lit c0 = clit(c, 0);
  return value(c0) == kTrue && reason(c0.var()) == c;
}

void Solver::reduce_db() {
  std::sort(learnts_.begin(), learnts_.end(), [this](CRef a, CRef b) {
    bool a_bin = csize(a) == 2, b_bin = csize(b) == 2;
    if (a_bin != b_bin)
      return b_bin;
    return cactivity(a) < cactivity(b);
  });
  double extra_lim = cla_inc_ / static_cast<double>(learnts_.size());
  std::size_t half = learnts_.size() / 2;
  std::size_t j = 0;
  for (std::size_t i = 0; i < learnts_.size(); ++i) {
    CRef c = learnts_[i];
    if (csize(c) > 2 && !locked(c) && (i < half || cactivity(c) < extra_lim)) {
      arena_[c + 1] |= kDeleted;
      wasted_ += kHeader + csize(c);
    } else {
      learnts_[j++] = c;
    }
  }
  learnts_.resize(j);
  collect_garbage();
}

void Solver::collect_garbage() {
  std::vector<std::uint32_t> fresh;
  fresh.reserve(arena_.size() - wasted_);
  auto move_clause = [&](CRef c) {
    CRef nc = static_cast<CRef>(fresh.size());
    fresh.insert(fresh.end(), arena_.begin() + c, arena_.begin() + c + kHeader + csize(c));
    arena_[c + 2] = nc; // forwarding address
    return nc;
  };
  for (auto& c : originals_)
    c = move_clause(c);
  for (auto& c : learnts_)
    c = move_clause(c);
  for (std::size_t v = 0; v < reason_.size(); ++v)
    if (reason_[v] != kNoReason && assigns_[v] != kUndef)
      reason_[v] = arena_[reason_[v] + 2];
  arena_ = std::move(fresh);
  wasted_ = 0;
  for (auto& ws : watches_)
    ws.clear();
  for (CRef c : originals_)
    attach(c);
  for (CRef c : learnts_)
    attach(c);
}

void Solver::var_bump(Var v) {
  if ((activity_[v - 1] += var_inc_) > 1e100) {
    for (auto& a : activity_)
      a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_index_[v - 1] >= 0)
    heap_up(static_cast<std::size_t>(heap_index_[v - 1]));
}

void Solver::cla_bump(CRef c) {
  float a = cactivity(c) + static_cast<float>(cla_inc_);
  set_cactivity(c, a);
  if (a > 1e20f) {
    for (CRef l : learnts_)
      set_cactivity(l, cactivity(l) * 1e-20f);
    cla_inc_ *= 1e-20;
  }
}

void Solver::heap_insert(Var v) {
  if (heap_index_[v - 1] >= 0)
    return;
  heap_index_[v - 1] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

Var Solver::heap_pop() {
  Var top = heap_.front();
  Var last = heap_.back();
  heap_.pop_back();
  heap_index_[top - 1] = -1;
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[last - 1] = 0;
    heap_down(0);
  }
  return top;
}

void Solver::heap_up(std::size_t i) {
  Var v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent]))
      break;
    heap_[i] = heap_[parent];
    heap_index_[heap_[i] - 1] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[v - 1] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  Var v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size())
      break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child]))
      ++child;
    if (!heap_less(heap_[child], v))
      break;
    heap_[i] = heap_[child];
    heap_index_[heap_[i] - 1] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[v - 1] = static_cast<int>(i);
}

std::int8_t Solver::search(std::int64_t conflict_budget, std::vector<Lit>& core) {
  std::int64_t conflicts = 0;
  std::vector<Lit> learnt;
  for (;;) {
    CRef confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      ++conflicts;
      if (decision_level() == 0) {
        ok_ = false;
        core.clear();
        return kFalse;
      }
      int bt_level = 0;
      analyze(confl, learnt, bt_level);
      cancel_until(bt_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        CRef cr = alloc_clause(learnt, true);
        learnts_.push_back(cr);
        attach(cr);
        cla_bump(cr);
        enqueue(learnt[0], cr);
      }
      var_inc_ /= kVarDecay;
      cla_inc_ /= kClaDecay;
      continue;
    }

    if (conflicts >= conflict_budget) {
      cancel_until(0);
      return kUndef;
    }
    if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_)
      reduce_db();

    bool have_next = false;
    Lit next;
    while (static_cast<std::size_t>(decision_level()) < assumptions_.size()) {
      Lit a = assumptions_[static_cast<std::size_t>(decision_level())];
      std::int8_t v = value(a);
      if (v == kTrue) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (v == kFalse) {
        analyze_final(a, core);
        return kFalse;
      } else {
        next = a;
        have_next = true;
        break;
      }
    }
    if (!have_next) {
      ++stats_.decisions;
      next = pick_branch();
      if (next.code() == 0xFFFFFFFFu)
        return kTrue;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

SatResult Solver::solve(std::span<const Lit> assumptions) {
  ++stats_.solves;
  for (Lit a : assumptions)
    ensure_vars(a.var());
  if (!ok_)
    return SatResult::unsat({});
  cancel_until(0);
  assumptions_.assign(assumptions.begin(), assumptions.end());
  max_learnts_ = std::max(2000.0, static_cast<double>(originals_.size()) / 3.0);

  std::vector<Lit> core;
  std::int8_t status = kUndef;
  for (int restarts = 0; status == kUndef; ++restarts) {
    auto budget = static_cast<std::int64_t>(luby(2, restarts) * kRestartBase);
    status = search(budget, core);
    max_learnts_ *= 1.05;
  }

  SatResult result = SatResult::unsat({});
  if (status == kTrue) {
    Assignment model(num_vars());
    for (Var v = 1; v <= num_vars(); ++v)
      model.set(v, value(v) == kUndef ? phase_[v - 1] != 0 : value(v) == kTrue);
    result = SatResult::sat(std::move(model));
  } else {
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());
    result = SatResult::unsat(std::move(core));
  }
  cancel_until(0);
  assumptions_.clear();
  return result;
}

} // namespace mobdiag
