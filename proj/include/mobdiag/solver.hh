#ifndef MOBDIAG_SOLVER_HH
#define MOBDIAG_SOLVER_HH

#include "mobdiag/formula.hh"

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace mobdiag {

// Outcome of one solve call. Sat carries a total model; Unsat carries a
// subset of the assumptions that is unsatisfiable together with the clauses
// (empty when the clauses alone are unsatisfiable). Cores are not minimized.
class SatResult {
public:
  static SatResult sat(Assignment model);
  static SatResult unsat(std::vector<Lit> core);

  bool is_sat() const { return sat_; }
  bool is_unsat() const { return !sat_; }
  const Assignment& model() const { return model_; }
  const std::vector<Lit>& core() const { return core_; }

private:
  bool sat_ = false;
  Assignment model_;
  std::vector<Lit> core_;
};

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
};

// Incremental CDCL solver: two-watched literals, first-UIP learning with
// local minimization, VSIDS, phase saving, Luby restarts. Assumptions are
// decided one per level ahead of free decisions.
class Solver {
public:
  Solver() = default;
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;
  Solver(Solver&&) = default;
  Solver& operator=(Solver&&) = default;

  Var new_var();
  void ensure_vars(Var n);
  Var num_vars() const { return static_cast<Var>(assigns_.size()); }

  // Returns false once the clause database is unsatisfiable on its own.
  // Literals over unknown variables extend the variable range.
  bool add_clause(Clause clause);
  bool add_clause(std::initializer_list<Lit> lits) { return add_clause(Clause(lits)); }
  void add_formula(const CnfFormula& f);

  SatResult solve(std::span<const Lit> assumptions = {});
  SatResult solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  bool okay() const { return ok_; }
  const SolverStats& stats() const { return stats_; }
  std::size_t num_original_clauses() const { return num_original_; }

private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = 0xFFFFFFFFu;
  static constexpr std::int8_t kFalse = 0, kTrue = 1, kUndef = 2;

  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  // Arena layout per clause: [size, flags, activity-bits, lit codes...].
  static constexpr std::uint32_t kHeader = 3;
  static constexpr std::uint32_t kLearnt = 1, kDeleted = 2;

  std::uint32_t csize(CRef c) const { return arena_[c]; }
  bool clearnt(CRef c) const { return arena_[c + 1] & kLearnt; }
  Lit clit(CRef c, std::uint32_t i) const { return Lit::from_code(arena_[c + kHeader + i]); }
  void set_clit(CRef c, std::uint32_t i, Lit p) { arena_[c + kHeader + i] = p.code(); }
  float cactivity(CRef c) const { return std::bit_cast<float>(arena_[c + 2]); }
  void set_cactivity(CRef c, float a) { arena_[c + 2] = std::bit_cast<std::uint32_t>(a); }

  std::int8_t value(Var v) const { return assigns_[v - 1]; }
  std::int8_t value(Lit p) const {
    std::int8_t a = assigns_[p.var() - 1];
    return a == kUndef ? kUndef : static_cast<std::int8_t>(a ^ static_cast<std::int8_t>(p.code() & 1U));
  }
  int level(Var v) const { return level_[v - 1]; }
  CRef reason(Var v) const { return reason_[v - 1]; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  CRef alloc_clause(std::span<const Lit> lits, bool learnt);
  void attach(CRef c);
  void enqueue(Lit p, CRef from);
  CRef propagate();
  void analyze(CRef confl, std::vector<Lit>& learnt, int& bt_level);
  void analyze_final(Lit p, std::vector<Lit>& core);
  void cancel_until(int lvl);
  Lit pick_branch();
  std::int8_t search(std::int64_t conflict_budget, std::vector<Lit>& core);
  void reduce_db();
  void collect_garbage();
  bool locked(CRef c);

  void var_bump(Var v);
  void cla_bump(CRef c);

  // Binary max-heap of unassigned variables keyed by activity.
  void heap_insert(Var v);
  Var heap_pop();
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  bool heap_less(Var a, Var b) const { return activity_[a - 1] > activity_[b - 1]; }

  bool ok_ = true;
  std::vector<std::uint32_t> arena_;
  std::uint64_t wasted_ = 0;
  std::vector<CRef> originals_;
  std::vector<CRef> learnts_;
  std::size_t num_original_ = 0;

  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<char> phase_;
  std::vector<char> seen_;
  std::vector<double> activity_;
  std::vector<Var> heap_;
  std::vector<int> heap_index_;

  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<Lit> assumptions_;

  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  double max_learnts_ = 0;

  SolverStats stats_;
};

} // namespace mobdiag

#endif
