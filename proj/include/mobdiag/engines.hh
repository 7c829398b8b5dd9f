#ifndef MOBDIAG_ENGINES_HH
#define MOBDIAG_ENGINES_HH

#include "mobdiag/hitting_set.hh"
#include "mobdiag/mcs.hh"
#include "mobdiag/system.hh"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace mobdiag {

struct EngineConfig {
  Minimality mode = Minimality::Subset;
  std::optional<std::size_t> max_diagnoses;    // K; unbounded when empty
  std::optional<double> time_budget_s;         // unbounded when empty
  std::uint64_t seed = 0;                      // offsets the first observation scanned
  std::optional<std::size_t> max_explanations; // safety valve, off by default
};

struct RunStats {
  std::size_t diagnoses_emitted = 0;
  std::size_t explanations_found = 0;
  std::uint64_t sat_calls = 0;
  std::size_t iterations = 0; // candidate hitting sets checked
  double elapsed_seconds = 0;
  bool complete = false;         // every minimal diagnosis was produced
  bool budget_exhausted = false; // time budget or explanation cap hit
  bool no_diagnosis = false;     // some observation cannot be repaired
  std::size_t dropped_observations = 0;
};

using DiagnosisSink = std::function<void(const Diagnosis&)>;

// Implicit hitting-set dualization over a single copy of the system.
// Each iteration asks the store for a minimal hitting set of the known
// explanations; it is either confirmed against every observation (and then
// reported and blocked) or refuted by one observation, which yields a new
// minimal explanation.
class IhsdEngine {
public:
  IhsdEngine(const SystemDescription& sd, std::vector<Observation> observations, EngineConfig config);

  RunStats run(const DiagnosisSink& sink);

  const ExplanationStore& store() const { return store_; }
  const std::vector<Explanation>& explanations() const { return explanations_; }
  const std::vector<Observation>& failing_observations() const { return observations_; }
  ConsistencyChecker& checker() { return checker_; }

private:
  const SystemDescription& sd_;
  std::vector<Observation> observations_;
  EngineConfig config_;
  ConsistencyChecker checker_;
  ExplanationStore store_;
  std::vector<Explanation> explanations_;
  std::size_t dropped_ = 0;
};

RunStats ihsd_enumerate(const SystemDescription& sd, const std::vector<Observation>& observations,
                        const EngineConfig& config, const DiagnosisSink& sink);

struct SeparateResult {
  std::map<int, std::vector<Diagnosis>> per_obs;
  std::map<int, bool> exhausted;
  RunStats stats;

  bool all_exhausted() const;
  std::size_t total_emitted() const;
};

// Enumerates every diagnosis of every observation independently (LBX over
// the single-observation MaxSAT instance). The time budget is shared by all
// observations; max_diagnoses applies per observation.
SeparateResult separate_enumerate(const SystemDescription& sd, const std::vector<Observation>& observations,
                                  const EngineConfig& config);

struct Assembly {
  std::vector<Diagnosis> diagnoses; // sorted by (size, lexicographic)
  bool partial = false;             // inputs incomplete: result may be wrong
};

// Subset-minimal elements of {D_1 u ... u D_r}, merged one observation at a
// time with subsumption pruning after each merge.
Assembly assemble(const std::vector<std::vector<Diagnosis>>& per_obs, bool all_exhausted);
Assembly assemble(const SeparateResult& separate);

// Diagnoses of the aggregated MaxSAT formula: MCS enumeration in subset
// mode, bound-by-bound optimal enumeration in cardinality mode.
RunStats aggregated_enumerate(const SystemDescription& sd, const std::vector<Observation>& observations,
                              const EngineConfig& config, const DiagnosisSink& sink);

} // namespace mobdiag

#endif
