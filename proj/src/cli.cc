#include "mobdiag/cli.hh"

#include "mobdiag/benchgen.hh"
#include "mobdiag/engines.hh"
#include "mobdiag/io.hh"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <regex>
#include <sstream>

namespace mobdiag {

namespace {

namespace fs = std::filesystem;

struct DiagnoseOptions {
  std::string engine = "ihsd";
  std::string minimality = "subset";
  std::size_t max_diags = 0;
  double timeout = 600;
  std::string stats;
  std::string system;
  std::string observations;
};

struct EncoderOptions {
  std::size_t r = 10;
  std::size_t k = 10;
  std::size_t pad_hard = 0;
  std::size_t pad_soft = 0;
  std::uint64_t seed = 0;
  std::string dir = ".";
};

struct BenchOptions {
  std::string grid = "r=10:30:10;k=2:4:1";
  std::string engines = "ihsd";
  std::string stats;
  double timeout = 600;
};

struct CheckOptions {
  std::string system;
  std::string observations;
  std::string delta;
};

std::string format_diagnosis(const Diagnosis& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i > 0)
      s += ' ';
    s += std::to_string(d[i]);
  }
  return s;
}

// Family parameters recorded by `generate encoder`.
void read_family(const std::vector<std::string>& comments, std::optional<std::size_t>& r,
                 std::optional<std::size_t>& k) {
  static const std::regex pattern(R"(^\s*encoder r=(\d+) k=(\d+))");
  for (const auto& c : comments) {
    std::smatch m;
    if (std::regex_search(c, m, pattern)) {
      r = std::stoul(m[1]);
      k = std::stoul(m[2]);
    }
  }
}

std::optional<long double> percent_for(const std::optional<std::size_t>& r, const std::optional<std::size_t>& k,
                                       std::size_t emitted) {
  if (!r || !k)
    return std::nullopt;
  long double expected = static_cast<long double>(*r - 1) * encoder_diagnoses_per_observation(*k) + 1.0L;
  return 100.0L * static_cast<long double>(emitted) / expected;
}

ComponentSet parse_delta(const std::string& text, std::size_t m) {
  ComponentSet delta;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty())
      continue;
    if (item.front() == 'c')
      item.erase(0, 1);
    std::size_t used = 0;
    unsigned long id = std::stoul(item, &used);
    if (used != item.size() || id == 0 || id > m)
      throw std::invalid_argument("bad component '" + item + "'");
    delta.push_back(static_cast<ComponentId>(id));
  }
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  return delta;
}

struct Loaded {
  MbdFile mbd;
  std::vector<Observation> observations;
};

Loaded load(const std::string& system, const std::string& observations) {
  Loaded l;
  l.mbd = parse_mbd(read_file(system));
  l.observations = parse_obs(read_file(observations), l.mbd.sd.num_system_vars);
  return l;
}

struct RunOutcome {
  std::vector<Diagnosis> diagnoses;
  StatsRecord record;
  int code = exit_code::kSuccess;
  bool unsound_banner = false;
};

RunOutcome run_engine(const std::string& engine, const SystemDescription& sd, const std::vector<Observation>& obs,
                      const EngineConfig& config, const std::function<void(const Diagnosis&)>& stream) {
  RunOutcome o;
  o.record.engine = engine;
  o.record.vars = sd.base.num_vars;
  o.record.clauses = sd.base.clauses.size();
  auto collect = [&](const Diagnosis& d) {
    o.diagnoses.push_back(d);
    if (stream)
      stream(d);
  };
  RunStats stats;
  if (engine == "ihsd") {
    stats = ihsd_enumerate(sd, obs, config, collect);
  } else if (engine == "aggregated") {
    std::size_t units = 0;
    for (const auto& x : obs)
      units += x.units.size();
    o.record.vars = sd.num_components() + obs.size() * sd.num_system_vars;
    o.record.clauses = obs.size() * sd.base.clauses.size() + units;
    stats = aggregated_enumerate(sd, obs, config, collect);
  } else if (engine == "separate") {
    SeparateResult sep = separate_enumerate(sd, obs, config);
    stats = sep.stats;
    o.record.diagnoses = sep.total_emitted();
    Assembly a = assemble(sep);
    for (const auto& d : a.diagnoses)
      collect(d);
    o.unsound_banner = a.partial;
  } else {
    throw CLI::ValidationError("--engine", "unknown engine '" + engine + "'");
  }
  if (engine != "separate")
    o.record.diagnoses = stats.diagnoses_emitted;
  o.record.explanations = stats.explanations_found;
  o.record.sat_calls = stats.sat_calls;
  o.record.elapsed_s = stats.elapsed_seconds;
  o.record.exhausted = stats.complete;
  if (stats.no_diagnosis)
    o.code = exit_code::kNoDiagnosis;
  else if (stats.budget_exhausted || o.unsound_banner)
    o.code = exit_code::kPartial;
  return o;
}

EngineConfig make_config(const std::string& minimality, std::size_t max_diags, double timeout) {
  EngineConfig config;
  if (minimality == "subset")
    config.mode = Minimality::Subset;
  else if (minimality == "cardinality")
    config.mode = Minimality::Cardinality;
  else
    throw CLI::ValidationError("--minimality", "expected subset or cardinality");
  if (max_diags > 0)
    config.max_diagnoses = max_diags;
  if (timeout > 0)
    config.time_budget_s = timeout;
  return config;
}

int cmd_diagnose(const DiagnoseOptions& opt, std::ostream& out, std::ostream& err) {
  Loaded in = load(opt.system, opt.observations);
  EngineConfig config = make_config(opt.minimality, opt.max_diags, opt.timeout);
  for (const auto& o : in.observations)
    validate_observation(in.mbd.sd, o);

  // Streaming engines print as they go; separate prints after assembly.
  const bool stream = opt.engine != "separate";
  RunOutcome run = run_engine(opt.engine, in.mbd.sd, in.observations, config,
                              stream ? std::function<void(const Diagnosis&)>(
                                           [&](const Diagnosis& d) { out << format_diagnosis(d) << '\n'; })
                                     : nullptr);
  if (!stream)
    for (const auto& d : run.diagnoses)
      out << format_diagnosis(d) << '\n';
  out.flush();

  run.record.instance = fs::path(opt.system).stem().string();
  read_family(in.mbd.comments, run.record.r, run.record.k);
  if (opt.engine == "separate")
    run.record.percent_enumerated = percent_for(run.record.r, run.record.k, run.record.diagnoses);
  if (!opt.stats.empty())
    write_file(opt.stats, write_stats({run.record}));

  if (run.unsound_banner)
    err << "WARNING: per-observation enumeration incomplete; assembled diagnoses are possibly unsound\n";
  if (run.code == exit_code::kNoDiagnosis)
    err << "no diagnosis exists: an observation is inconsistent even with every component abnormal\n";
  else if (run.code == exit_code::kPartial && !run.unsound_banner)
    err << "budget exhausted: diagnosis list may be incomplete\n";
  err << "c " << run.diagnoses.size() << " diagnoses, " << run.record.explanations << " explanations, "
      << run.record.sat_calls << " SAT calls, " << run.record.elapsed_s << " s\n";
  return run.code;
}

int cmd_check(const CheckOptions& opt, std::ostream& out) {
  Loaded in = load(opt.system, opt.observations);
  ComponentSet delta = parse_delta(opt.delta, in.mbd.sd.num_components());
  ConsistencyChecker checker(in.mbd.sd);
  bool valid = std::all_of(in.observations.begin(), in.observations.end(),
                           [&](const Observation& o) { return checker.consistent(delta, o); });
  if (!valid) {
    out << "INVALID\n";
    return exit_code::kNotMinimal;
  }
  if (!verify_diagnosis(checker, delta, in.observations)) {
    out << "VALID NON-MINIMAL\n";
    return exit_code::kNotMinimal;
  }
  out << "VALID MINIMAL\n";
  return exit_code::kSuccess;
}

void write_instance(const Instance& inst, const fs::path& dir, const std::string& stem,
                    const std::vector<std::string>& comments, std::ostream& out) {
  fs::create_directories(dir);
  fs::path mbd = dir / (stem + ".mbd");
  fs::path obs = dir / (stem + ".obs");
  write_file(mbd.string(), write_mbd(inst.sd, comments));
  write_file(obs.string(), write_obs(inst.observations));
  out << mbd.string() << '\n' << obs.string() << '\n';
}

int cmd_generate_encoder(const EncoderOptions& opt, std::ostream& out) {
  EncoderParams p{opt.r, opt.k, opt.pad_hard, opt.pad_soft, opt.seed};
  Instance inst = gen_buggy_encoder(p);
  std::string stem = "encoder_r" + std::to_string(opt.r) + "_k" + std::to_string(opt.k);
  std::vector<std::string> comments = {"encoder r=" + std::to_string(opt.r) + " k=" + std::to_string(opt.k)};
  if (opt.pad_hard > 0 || opt.pad_soft > 0) {
    stem += "_ph" + std::to_string(opt.pad_hard) + "_ps" + std::to_string(opt.pad_soft);
    comments.push_back("padding hard=" + std::to_string(opt.pad_hard) + " soft=" + std::to_string(opt.pad_soft) +
                       " seed=" + std::to_string(opt.seed));
  }
  write_instance(inst, opt.dir, stem, comments, out);
  return exit_code::kSuccess;
}

int cmd_generate_netlist(const std::string& path, const std::string& dir, std::ostream& out) {
  EncodedNetlist enc = encode_netlist(parse_netlist(read_file(path)));
  std::vector<std::string> comments;
  for (const auto& [signal, var] : enc.signal_var)
    comments.push_back("signal " + signal + " " + std::to_string(var));
  fs::create_directories(dir);
  fs::path mbd = fs::path(dir) / (fs::path(path).stem().string() + ".mbd");
  write_file(mbd.string(), write_mbd(enc.sd, comments));
  out << mbd.string() << '\n';
  return exit_code::kSuccess;
}

// "r=A:B:S[,A:B:S...];k=..." or "full" for the 1140-instance evaluation grid.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> parse_grid(const std::string& spec) {
  if (spec == "full")
    return parse_grid("r=10:300:10;k=2:9:1,10:300:10");
  std::vector<std::size_t> rs, ks;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--grid", "expected r=... and k=...");
    std::string key = part.substr(0, eq);
    auto& target = key == "r" ? rs : key == "k" ? ks : throw CLI::ValidationError("--grid", "unknown axis " + key);
    std::stringstream ranges(part.substr(eq + 1));
    std::string range;
    while (std::getline(ranges, range, ',')) {
      std::size_t a = 0, b = 0, step = 1;
      char c1 = 0, c2 = 0;
      std::istringstream rs_in(range);
      if (!(rs_in >> a))
        throw CLI::ValidationError("--grid", "bad range '" + range + "'");
      b = a;
      if (rs_in >> c1 && !(c1 == ':' && rs_in >> b && (!(rs_in >> c2) || (c2 == ':' && rs_in >> step))))
        throw CLI::ValidationError("--grid", "bad range '" + range + "'");
      if (step == 0 || b < a)
        throw CLI::ValidationError("--grid", "bad range '" + range + "'");
      for (std::size_t v = a; v <= b; v += step)
        target.push_back(v);
    }
  }
  if (rs.empty() || ks.empty())
    throw CLI::ValidationError("--grid", "both r and k need values");
  return {rs, ks};
}

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
  auto [rs, ks] = parse_grid(opt.grid);
  std::vector<std::string> engines;
  std::stringstream ss(opt.engines);
  std::string e;
  while (std::getline(ss, e, ','))
    engines.push_back(e);

  std::vector<StatsRecord> records;
  int code = exit_code::kSuccess;
  EngineConfig config = make_config("subset", 0, opt.timeout);
  for (std::size_t r : rs) {
    for (std::size_t k : ks) {
      Instance inst = gen_buggy_encoder({r, k, 0, 0, 0});
      for (const auto& engine : engines) {
        StatsRecord rec;
        if (engine == "separate") {
          // Enumeration only: the assembly step is not timed.
          SeparateResult sep = separate_enumerate(inst.sd, inst.observations, config);
          rec.engine = engine;
          rec.vars = inst.sd.base.num_vars;
          rec.clauses = inst.sd.base.clauses.size();
          rec.diagnoses = sep.total_emitted();
          rec.sat_calls = sep.stats.sat_calls;
          rec.elapsed_s = sep.stats.elapsed_seconds;
          rec.exhausted = sep.all_exhausted();
          rec.percent_enumerated = percent_for(r, k, rec.diagnoses);
        } else {
          rec = run_engine(engine, inst.sd, inst.observations, config, nullptr).record;
        }
        rec.instance = "encoder_r" + std::to_string(r) + "_k" + std::to_string(k);
        rec.r = r;
        rec.k = k;
        if (!rec.exhausted)
          code = exit_code::kPartial;
        out << rec.instance << ' ' << engine << ' ' << rec.diagnoses << ' ' << rec.elapsed_s << ' '
            << (rec.exhausted ? "complete" : "incomplete") << '\n';
        records.push_back(std::move(rec));
      }
    }
  }
  if (!opt.stats.empty())
    write_file(opt.stats, write_stats(records));
  return code;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-observation model-based diagnosis", "mobdiag"};
  app.require_subcommand(1);

  DiagnoseOptions diag;
  auto* diagnose = app.add_subcommand("diagnose", "enumerate minimal diagnoses for all observations");
  diagnose->add_option("--engine", diag.engine, "ihsd | aggregated | separate")
      ->check(CLI::IsMember({"ihsd", "aggregated", "separate"}));
  diagnose->add_option("--minimality", diag.minimality, "subset | cardinality")
      ->check(CLI::IsMember({"subset", "cardinality"}));
  diagnose->add_option("--max-diags", diag.max_diags, "stop after K diagnoses (0 = all)");
  diagnose->add_option("--timeout", diag.timeout, "time budget in seconds (0 = none)");
  diagnose->add_option("--stats", diag.stats, "write a CSV statistics row");
  diagnose->add_option("system", diag.system, "system description (.mbd)")->required();
  diagnose->add_option("observations", diag.observations, "observations (.obs)")->required();

  auto* generate = app.add_subcommand("generate", "write benchmark instances");
  generate->require_subcommand(1);
  EncoderOptions enc;
  auto* encoder = generate->add_subcommand("encoder", "buggy CNF encoder family");
  encoder->add_option("--r", enc.r, "number of observations")->check(CLI::Range(2UL, 1UL << 24));
  encoder->add_option("--k", enc.k, "number of four-clause groups")->check(CLI::Range(1UL, 1UL << 24));
  encoder->add_option("--pad-hard", enc.pad_hard, "satisfiable background filler clauses");
  encoder->add_option("--pad-soft", enc.pad_soft, "satisfiable filler components");
  encoder->add_option("--seed", enc.seed, "filler seed");
  encoder->add_option("-o,--out", enc.dir, "output directory");
  std::string c17_dir = ".";
  auto* c17 = generate->add_subcommand("c17", "C17 circuit with five failing observations");
  c17->add_option("-o,--out", c17_dir, "output directory");
  std::string netlist_path, netlist_dir = ".";
  auto* netlist = generate->add_subcommand("netlist", "encode a gate netlist");
  netlist->add_option("netlist", netlist_path, "netlist file")->required();
  netlist->add_option("-o,--out", netlist_dir, "output directory");

  CheckOptions chk;
  auto* check = app.add_subcommand("check", "verify that a component set is a minimal diagnosis");
  check->add_option("system", chk.system)->required();
  check->add_option("observations", chk.observations)->required();
  check->add_option("--delta", chk.delta, "comma-separated component ids, e.g. c3,c7")->required();

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "run engines over an encoder grid");
  bench_cmd->add_option("--grid", bench.grid, "r=A:B:S[,..];k=A:B:S[,..] or 'full'");
  bench_cmd->add_option("--engines", bench.engines, "comma-separated engines");
  bench_cmd->add_option("--stats", bench.stats, "CSV output");
  bench_cmd->add_option("--timeout", bench.timeout, "per-run budget in seconds");

  std::vector<std::string> argv_store{"mobdiag"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store)
    argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return exit_code::kUsage;
  }

  try {
    if (*diagnose)
      return cmd_diagnose(diag, out, err);
    if (*check)
      return cmd_check(chk, out);
    if (*bench_cmd)
      return cmd_bench(bench, out);
    if (*encoder)
      return cmd_generate_encoder(enc, out);
    if (*c17) {
      write_instance(gen_c17(), c17_dir, "c17", {"c17"}, out);
      return exit_code::kSuccess;
    }
    if (*netlist)
      return cmd_generate_netlist(netlist_path, netlist_dir, out);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kParse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::kParse;
  } catch (const NetlistError& e) {
    err << "netlist error: " << e.what() << '\n';
    return exit_code::kParse;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kParse;
  }
  return exit_code::kUsage;
}

} // namespace mobdiag
