#ifndef MOBDIAG_CARDINALITY_HH
#define MOBDIAG_CARDINALITY_HH

#include "mobdiag/solver.hh"

#include <map>
#include <vector>

namespace mobdiag {

// Sequential-counter encodings of "at most b of lits are true", one per
// bound, each guarded by its own activation literal. Encodings are built on
// first request and kept; assuming activator(b) enforces the bound.
class AtMostEncoder {
public:
  AtMostEncoder(Solver& solver, std::vector<Lit> lits) : solver_(solver), lits_(std::move(lits)) {}

  Lit activator(std::size_t bound);
  std::size_t size() const { return lits_.size(); }

private:
  Solver& solver_;
  std::vector<Lit> lits_;
  std::map<std::size_t, Lit> activators_;
};

} // namespace mobdiag

#endif
