#ifndef MOBDIAG_FORMULA_HH
#define MOBDIAG_FORMULA_HH

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobdiag {

using Var = std::uint32_t;

class MalformedLiteral : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class IncompleteAssignment : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Literal over a 1-based variable. Encoded as 2*(var-1) + (negative ? 1 : 0)
// so that literal codes index dense arrays directly.
class Lit {
public:
  constexpr Lit() = default;
  constexpr Lit(Var var, bool positive) : code_(2 * (var - 1) + (positive ? 0U : 1U)) {
    if (var == 0)
      throw MalformedLiteral("variable index 0 is reserved");
  }

  static Lit from_dimacs(int value);
  static constexpr Lit from_code(std::uint32_t code) {
    Lit l;
    l.code_ = code;
    return l;
  }

  constexpr Var var() const { return code_ / 2 + 1; }
  constexpr bool positive() const { return (code_ & 1U) == 0; }
  constexpr std::uint32_t code() const { return code_; }
  int to_dimacs() const { return positive() ? static_cast<int>(var()) : -static_cast<int>(var()); }

  constexpr Lit operator~() const { return from_code(code_ ^ 1U); }
  friend constexpr auto operator<=>(Lit, Lit) = default;

private:
  std::uint32_t code_ = 0;
};

inline Lit pos(Var v) { return Lit(v, true); }
inline Lit neg(Var v) { return Lit(v, false); }

std::string to_string(Lit l);

using Clause = std::vector<Lit>;

// Sorted by variable, positive before negative, without duplicates.
// Returns nullopt when the clause contains a complementary pair.
std::optional<Clause> normalize_clause(Clause clause);

struct CnfFormula {
  Var num_vars = 0;
  std::vector<Clause> clauses;

  void add(Clause c);
  bool operator==(const CnfFormula&) const = default;
};

struct SoftClause {
  Clause clause;
  std::uint64_t weight = 1;
  bool operator==(const SoftClause&) const = default;
};

// Partial MaxSAT instance. Soft weights are always 1 here.
struct WcnfInstance {
  CnfFormula hard;
  std::vector<SoftClause> soft;

  std::uint64_t top_weight() const { return soft.size() + 1; }
  Var num_vars() const;
};

// Total truth assignment, index 0 unused.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(Var num_vars) : values_(num_vars + 1, kUnset) {}

  Var num_vars() const { return values_.empty() ? 0 : static_cast<Var>(values_.size() - 1); }
  void set(Var v, bool value);
  bool is_set(Var v) const { return v < values_.size() && values_[v] != kUnset; }
  bool value(Var v) const;
  bool value(Lit l) const { return value(l.var()) == l.positive(); }

private:
  static constexpr std::int8_t kUnset = -1;
  std::vector<std::int8_t> values_;
};

bool eval_clause(std::span<const Lit> clause, const Assignment& a);
bool eval_formula(const CnfFormula& f, const Assignment& a);

} // namespace mobdiag

template <> struct std::hash<mobdiag::Lit> {
  std::size_t operator()(mobdiag::Lit l) const noexcept { return std::hash<std::uint32_t>{}(l.code()); }
};

#endif
