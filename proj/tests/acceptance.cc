// Acceptance checks A1-A7. One PASS/FAIL line each; exit status 1 if any fails.

#include "mobdiag/benchgen.hh"
#include "mobdiag/cli.hh"
#include "mobdiag/engines.hh"
#include "mobdiag/oracle.hh"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

using namespace mobdiag;
namespace fs = std::filesystem;

namespace {

using Seconds = std::chrono::duration<double>;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << " " << detail << std::endl;
  if (!ok)
    ++failures;
}

template <class F> double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return Seconds(std::chrono::steady_clock::now() - t0).count();
}

std::set<Diagnosis> as_set(const std::vector<Diagnosis>& v) { return {v.begin(), v.end()}; }

std::string join(const Diagnosis& d) {
  std::string s;
  for (auto c : d)
    s += (s.empty() ? "" : " ") + std::to_string(c);
  return s;
}

// Shared by A3, A4 and A6.
std::vector<Instance> random_suite() {
  std::vector<Instance> out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    RandomParams p;
    p.components = 2 + i % 9;
    p.vars = 3 + (i / 9) % 6;
    p.observations = 1 + i % 3;
    p.seed = 1000 + i;
    out.push_back(gen_random_instance(p));
  }
  return out;
}

// Single diagnosis through the CLI, within 10 s per run.
void a1() {
  fs::path dir = fs::temp_directory_path() / "mobdiag_a1";
  fs::remove_all(dir);
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t n : {10, 50, 100, 200, 300}) {
    std::ostringstream sink, err;
    std::string nn = std::to_string(n);
    run_cli({"generate", "encoder", "--r", nn, "--k", nn, "-o", dir.string()}, sink, err);
    std::string stem = (dir / ("encoder_r" + nn + "_k" + nn)).string();
    std::ostringstream out;
    int code = 0;
    double t = timed([&] {
      code = run_cli({"diagnose", "--engine", "ihsd", "--minimality", "subset", stem + ".mbd", stem + ".obs"}, out, err);
    });
    bool run_ok = code == 0 && out.str() == join(encoder_final_components(n)) + "\n" && t <= 10.0;
    ok = ok && run_ok;
    detail << " (" << n << "," << n << "):" << t << "s" << (run_ok ? "" : "!");
  }
  fs::remove_all(dir);
  report("A1", ok, "ihsd returns only the two final components, each run <= 10 s;" + detail.str());
}

// Closed-form counts for t_1, cross-checked with the brute-force oracle.
void a2() {
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t k : {2, 3, 4}) {
    Instance inst = gen_buggy_encoder({.r = 3, .k = k});
    Observation t1 = inst.observations.front();
    SeparateResult sep = separate_enumerate(inst.sd, {t1}, {});
    const auto& got = sep.per_obs.at(t1.id);
    auto oracle = brute_force_diagnoses(inst.sd, {t1}, 4 * k + 2);
    auto expected = static_cast<std::size_t>(encoder_diagnoses_per_observation(k));
    bool k_ok = sep.all_exhausted() && got.size() == expected && as_set(got) == as_set(oracle) &&
                oracle.size() == expected;
    ok = ok && k_ok;
    detail << " k=" << k << ":" << got.size() << "/" << oracle.size() << "/" << expected;
  }
  report("A2", ok, "t_1 counts separate/oracle/closed form;" + detail.str());
}

// All three engines agree with the oracle on 200 random instances.
void a3(const std::vector<Instance>& suite) {
  std::size_t agree = 0;
  double t = timed([&] {
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const Instance& inst = suite[i];
      auto expected = as_set(brute_force_diagnoses(inst.sd, inst.observations));
      std::vector<Diagnosis> ihsd, agg;
      EngineConfig config;
      config.seed = i;
      ihsd_enumerate(inst.sd, inst.observations, config, [&](const Diagnosis& d) { ihsd.push_back(d); });
      aggregated_enumerate(inst.sd, inst.observations, config, [&](const Diagnosis& d) { agg.push_back(d); });
      Assembly sep = assemble(separate_enumerate(inst.sd, inst.observations, config));
      if (as_set(ihsd) == expected && ihsd.size() == expected.size() && as_set(agg) == expected &&
          agg.size() == expected.size() && as_set(sep.diagnoses) == expected && !sep.partial)
        ++agree;
    }
  });
  std::ostringstream detail;
  detail << agree << "/" << suite.size() << " instances match, " << t << "s";
  report("A3", agree == suite.size() && t <= 300.0, "ihsd, aggregated and separate+assemble equal the oracle; " +
                                                        detail.str());
}

// First cardinality-mode diagnosis has minimum size.
void a4(const std::vector<Instance>& suite) {
  std::size_t agree = 0;
  for (const Instance& inst : suite) {
    auto expected = brute_force_diagnoses(inst.sd, inst.observations);
    std::size_t best = expected.front().size();
    for (const auto& d : expected)
      best = std::min(best, d.size());
    EngineConfig config;
    config.mode = Minimality::Cardinality;
    config.max_diagnoses = 1;
    std::vector<Diagnosis> ihsd, agg;
    ihsd_enumerate(inst.sd, inst.observations, config, [&](const Diagnosis& d) { ihsd.push_back(d); });
    aggregated_enumerate(inst.sd, inst.observations, config, [&](const Diagnosis& d) { agg.push_back(d); });
    if (ihsd.size() == 1 && ihsd[0].size() == best && agg.size() == 1 && agg[0].size() == best)
      ++agree;
  }
  report("A4", agree == suite.size(),
         "first cardinality-mode diagnosis has minimum size (ihsd and aggregated); " + std::to_string(agree) + "/" +
             std::to_string(suite.size()));
}

// Generator sizes and aggregate growth.
void a5() {
  bool sizes_ok = true;
  std::size_t checked = 0;
  std::vector<std::size_t> rs, ks;
  for (std::size_t r = 10; r <= 300; r += 10)
    rs.push_back(r);
  for (std::size_t k = 2; k <= 9; ++k)
    ks.push_back(k);
  for (std::size_t k = 10; k <= 300; k += 10)
    ks.push_back(k);
  for (std::size_t r : rs)
    for (std::size_t k : ks) {
      Instance inst = gen_buggy_encoder({.r = r, .k = k});
      sizes_ok = sizes_ok && inst.sd.num_system_vars == r + 3 * k + 9 && inst.sd.base.clauses.size() == r + 4 * k + 5 &&
                 inst.sd.num_components() == 4 * k + 2;
      ++checked;
    }

  bool agg_ok = true;
  double ratio = 0;
  for (auto [r, k] : {std::pair<std::size_t, std::size_t>{10, 10}, {50, 20}, {100, 100}}) {
    Instance inst = gen_buggy_encoder({.r = r, .k = k});
    const std::size_t V = inst.sd.base.num_vars; // system variables plus selectors
    const std::size_t M = inst.sd.num_components();
    WcnfInstance agg = build_aggregate(inst.sd, inst.observations);
    agg_ok = agg_ok && agg.num_vars() == r * (V - M) + M;
    if (r == 100 && k == 100)
      ratio = static_cast<double>(agg.num_vars()) / static_cast<double>(V);
  }
  std::ostringstream detail;
  detail << checked << " grid instances sized exactly: " << (sizes_ok ? "yes" : "no")
         << "; aggregate vars = r(V-M)+M: " << (agg_ok ? "yes" : "no") << "; (100,100) aggregate/ihsd vars = "
         << ratio;
  report("A5", sizes_ok && agg_ok && ratio > 50.0, detail.str());
}

// Diagnoses valid and minimal, explanations minimal conflicts, every
// diagnosis hits every stored explanation.
void a6(const std::vector<Instance>& suite) {
  std::size_t violations = 0, diagnoses = 0, explanations = 0;
  auto audit = [&](const Instance& inst, Minimality mode, std::uint64_t seed) {
    EngineConfig config;
    config.mode = mode;
    config.seed = seed;
    IhsdEngine engine(inst.sd, inst.observations, config);
    std::vector<Diagnosis> emitted;
    engine.run([&](const Diagnosis& d) { emitted.push_back(d); });
    for (const auto& d : emitted) {
      ++diagnoses;
      if (!verify_diagnosis(engine.checker(), d, inst.observations))
        ++violations;
      for (const auto& e : engine.explanations())
        if (!intersects(d, e.components))
          ++violations;
    }
    for (const auto& e : engine.explanations()) {
      ++explanations;
      if (!verify_explanation(engine.checker(), e, inst.observations))
        ++violations;
    }
    std::vector<Diagnosis> agg;
    aggregated_enumerate(inst.sd, inst.observations, config, [&](const Diagnosis& d) { agg.push_back(d); });
    for (const auto& d : agg) {
      ++diagnoses;
      if (!verify_diagnosis(engine.checker(), d, inst.observations))
        ++violations;
    }
  };
  for (std::size_t i = 0; i < suite.size(); ++i)
    for (auto mode : {Minimality::Subset, Minimality::Cardinality})
      audit(suite[i], mode, i);
  audit(gen_c17(), Minimality::Subset, 0);
  audit(gen_c17(), Minimality::Cardinality, 0);
  for (std::size_t k : {2, 5, 20})
    audit(gen_buggy_encoder({.r = 20, .k = k}), Minimality::Subset, 0);
  std::ostringstream detail;
  detail << violations << " violations over " << diagnoses << " diagnoses and " << explanations << " explanations";
  report("A6", violations == 0 && diagnoses > 0 && explanations > 0, detail.str());
}

// Separate enumeration cannot exhaust t_1 at k = 12 in 60 s; IHSD finishes.
void a7() {
  Instance inst = gen_buggy_encoder({.r = 10, .k = 12});
  EngineConfig budget;
  budget.time_budget_s = 60.0;
  SeparateResult sep = separate_enumerate(inst.sd, inst.observations, budget);
  const int t1 = inst.observations.front().id;
  bool t1_open = !sep.exhausted.at(t1);
  std::vector<Diagnosis> ihsd;
  RunStats stats = ihsd_enumerate(inst.sd, inst.observations, {}, [&](const Diagnosis& d) { ihsd.push_back(d); });
  bool ihsd_ok = stats.complete && stats.elapsed_seconds <= 10.0 && ihsd == std::vector<Diagnosis>{encoder_final_components(12)};
  std::ostringstream detail;
  detail << "separate: " << sep.per_obs.at(t1).size() << " of " << encoder_diagnoses_per_observation(12)
         << " t_1 diagnoses in " << sep.stats.elapsed_seconds << "s, exhausted=" << (t1_open ? "no" : "yes")
         << "; ihsd complete in " << stats.elapsed_seconds << "s";
  report("A7", t1_open && ihsd_ok, detail.str());
}

} // namespace

int main() {
  std::vector<Instance> suite = random_suite();
  a1();
  a2();
  a3(suite);
  a4(suite);
  a5();
  a6(suite);
  a7();
  return failures == 0 ? 0 : 1;
}
