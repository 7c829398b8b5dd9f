#include "mobdiag/engines.hh"

#include "mobdiag/oracle.hh"

#include <algorithm>

namespace mobdiag {

namespace {

std::optional<Clock::time_point> deadline_for(const EngineConfig& config, Clock::time_point start) {
  if (!config.time_budget_s)
    return std::nullopt;
  return start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*config.time_budget_s));
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Diagnosis to_components(const std::vector<std::size_t>& soft_indices) {
  Diagnosis d;
  d.reserve(soft_indices.size());
  for (std::size_t i : soft_indices)
    d.push_back(static_cast<ComponentId>(i + 1));
  return d;
}

} // namespace

IhsdEngine::IhsdEngine(const SystemDescription& sd, std::vector<Observation> observations, EngineConfig config)
    : sd_(sd), config_(config), checker_(sd), store_(sd.num_components()) {
  for (auto& obs : observations) {
    if (checker_.consistent({}, obs))
      ++dropped_;
    else
      observations_.push_back(std::move(obs));
  }
}

RunStats IhsdEngine::run(const DiagnosisSink& sink) {
  const auto start = Clock::now();
  const auto deadline = deadline_for(config_, start);
  RunStats stats;
  stats.dropped_observations = dropped_;
  const std::size_t n = observations_.size();
  std::size_t next_obs = n == 0 ? 0 : static_cast<std::size_t>(config_.seed % n);

  for (;;) {
    if (deadline && Clock::now() >= *deadline) {
      stats.budget_exhausted = true;
      break;
    }
    if (config_.max_explanations && explanations_.size() >= *config_.max_explanations) {
      stats.budget_exhausted = true;
      break;
    }
    std::optional<ComponentSet> hs = store_.next_min_hs(config_.mode);
    if (!hs) {
      stats.complete = true;
      break;
    }
    ++stats.iterations;

    bool refuted = false;
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t i = (next_obs + t) % n;
      SatResult r = checker_.check(*hs, observations_[i]);
      if (r.is_sat())
        continue;
      Explanation e = checker_.extract_explanation(*hs, observations_[i], r);
      if (e.components.empty()) {
        stats.no_diagnosis = true;
        break;
      }
      store_.add_explanation(e.components);
      explanations_.push_back(std::move(e));
      ++stats.explanations_found;
      next_obs = (i + 1) % n;
      refuted = true;
      break;
    }
    if (stats.no_diagnosis)
      break;
    if (refuted)
      continue;

    ++stats.diagnoses_emitted;
    if (sink)
      sink(*hs);
    store_.block_diagnosis(*hs);
    if (config_.max_diagnoses && stats.diagnoses_emitted >= *config_.max_diagnoses)
      break;
  }

  stats.sat_calls = checker_.sat_calls() + store_.sat_calls();
  stats.elapsed_seconds = seconds_since(start);
  return stats;
}

RunStats ihsd_enumerate(const SystemDescription& sd, const std::vector<Observation>& observations,
                        const EngineConfig& config, const DiagnosisSink& sink) {
  IhsdEngine engine(sd, observations, config);
  return engine.run(sink);
}

bool SeparateResult::all_exhausted() const {
  return std::all_of(exhausted.begin(), exhausted.end(), [](const auto& kv) { return kv.second; });
}

std::size_t SeparateResult::total_emitted() const {
  std::size_t total = 0;
  for (const auto& [id, diags] : per_obs)
    total += diags.size();
  return total;
}

SeparateResult separate_enumerate(const SystemDescription& sd, const std::vector<Observation>& observations,
                                  const EngineConfig& config) {
  const auto start = Clock::now();
  SeparateResult result;
  EnumerationLimits limits{config.max_diagnoses, deadline_for(config, start)};
  for (const auto& obs : observations) {
    auto& diags = result.per_obs[obs.id];
    WcnfInstance w = single_observation_instance(sd, obs);
    EnumerationOutcome out =
        enumerate_mcs(w, limits, [&](const McsResult& m) { diags.push_back(to_components(m.mcs)); });
    result.exhausted[obs.id] = out.exhausted;
    result.stats.sat_calls += out.sat_calls;
    result.stats.diagnoses_emitted += out.count;
    if (out.exhausted && out.count == 0)
      result.stats.no_diagnosis = true;
  }
  result.stats.complete = result.all_exhausted();
  result.stats.budget_exhausted = !result.stats.complete && limits.deadline && Clock::now() >= *limits.deadline;
  result.stats.elapsed_seconds = seconds_since(start);
  return result;
}

Assembly assemble(const std::vector<std::vector<Diagnosis>>& per_obs, bool all_exhausted) {
  std::vector<Diagnosis> acc{Diagnosis{}};
  for (const auto& options : per_obs) {
    std::vector<Diagnosis> merged;
    merged.reserve(acc.size() * options.size());
    for (const auto& a : acc) {
      for (const auto& d : options) {
        Diagnosis u;
        std::set_union(a.begin(), a.end(), d.begin(), d.end(), std::back_inserter(u));
        merged.push_back(std::move(u));
      }
    }
    acc = minimal_elements(std::move(merged));
  }
  return Assembly{minimal_elements(std::move(acc)), !all_exhausted};
}

Assembly assemble(const SeparateResult& separate) {
  std::vector<std::vector<Diagnosis>> per_obs;
  per_obs.reserve(separate.per_obs.size());
  for (const auto& [id, diags] : separate.per_obs)
    per_obs.push_back(diags);
  return assemble(per_obs, separate.all_exhausted());
}

RunStats aggregated_enumerate(const SystemDescription& sd, const std::vector<Observation>& observations,
                              const EngineConfig& config, const DiagnosisSink& sink) {
  const auto start = Clock::now();
  RunStats stats;
  WcnfInstance w = build_aggregate(sd, observations);
  EnumerationLimits limits{config.max_diagnoses, deadline_for(config, start)};
  auto emit = [&](const McsResult& m) {
    if (sink)
      sink(to_components(m.mcs));
  };
  EnumerationOutcome out = config.mode == Minimality::Subset ? enumerate_mcs(w, limits, emit)
                                                             : enumerate_mcs_by_cardinality(w, limits, emit);
  stats.diagnoses_emitted = out.count;
  stats.sat_calls = out.sat_calls;
  stats.iterations = out.count;
  stats.complete = out.exhausted;
  stats.no_diagnosis = out.exhausted && out.count == 0;
  stats.budget_exhausted = !out.exhausted && !(config.max_diagnoses && out.count >= *config.max_diagnoses);
  stats.elapsed_seconds = seconds_since(start);
  return stats;
}

} // namespace mobdiag
