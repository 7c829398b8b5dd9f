#include "mobdiag/io.hh"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mobdiag {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t)
    out.push_back(t);
  return out;
}

long long to_int(const std::string& s, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

// Reads "l1 ... ln 0" starting at tokens[first].
Clause read_literals(const std::vector<std::string>& toks, std::size_t first, std::size_t line, Var max_var) {
  if (toks.size() <= first || toks.back() != "0")
    throw ParseError(line, "missing 0 terminator");
  Clause c;
  for (std::size_t i = first; i + 1 < toks.size(); ++i) {
    long long v = to_int(toks[i], line);
    if (v == 0)
      throw ParseError(line, "0 before the end of the line");
    if (static_cast<unsigned long long>(v < 0 ? -v : v) > max_var)
      throw ParseError(line, "variable " + toks[i] + " out of range");
    c.push_back(Lit::from_dimacs(static_cast<int>(v)));
  }
  return c;
}

} // namespace

MbdFile parse_mbd(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  long long V = 0, C = 0, M = 0, seen_clauses = 0;
  std::optional<SystemBuilder> builder;
  std::map<long long, std::string> names;
  MbdFile file;

  while (std::getline(in, raw)) {
    ++line;
    auto toks = tokens(raw);
    if (toks.empty())
      continue;
    if (toks[0] == "c") {
      if (toks.size() == 4 && toks[1] == "comp")
        names[to_int(toks[2], line)] = toks[3];
      else
        file.comments.push_back(raw.size() > 2 ? raw.substr(2) : std::string());
      continue;
    }
    if (toks[0] == "p") {
      if (have_header)
        throw ParseError(line, "duplicate header");
      if (toks.size() != 5 || toks[1] != "mbd")
        throw ParseError(line, "expected 'p mbd V C M'");
      V = to_int(toks[2], line);
      C = to_int(toks[3], line);
      M = to_int(toks[4], line);
      if (V < 0 || C < 0 || M < 0)
        throw ParseError(line, "negative count in header");
      builder.emplace(static_cast<Var>(V));
      for (long long c = 1; c <= M; ++c) {
        auto it = names.find(c);
        builder->add_component(it == names.end() ? std::string() : it->second);
      }
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError(line, "clause before header");
    long long group = to_int(toks[0], line);
    if (group < 0 || group > M)
      throw ParseError(line, "group " + toks[0] + " out of range");
    Clause c = read_literals(toks, 1, line, static_cast<Var>(V));
    ++seen_clauses;
    if (seen_clauses > C)
      throw ParseError(line, "more clauses than declared");
    builder->add_clause(static_cast<ComponentId>(group), std::move(c));
  }
  if (!have_header)
    throw ParseError(line, "missing 'p mbd' header");
  if (seen_clauses != C)
    throw ParseError(line, "declared " + std::to_string(C) + " clauses, found " + std::to_string(seen_clauses));
  file.sd = builder->build();
  file.dropped_tautologies = builder->dropped_tautologies();
  return file;
}

std::string write_mbd(const SystemDescription& sd, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments)
    out << "c " << c << '\n';
  for (ComponentId c = 1; c <= sd.num_components(); ++c)
    if (sd.name(c) != "c" + std::to_string(c))
      out << "c comp " << c << ' ' << sd.name(c) << '\n';
  out << "p mbd " << sd.num_system_vars << ' ' << sd.base.clauses.size() << ' ' << sd.num_components() << '\n';
  std::vector<ComponentId> group(sd.base.clauses.size(), 0);
  for (std::size_t c = 0; c < sd.clause_groups.size(); ++c)
    for (std::size_t i : sd.clause_groups[c])
      group[i] = static_cast<ComponentId>(c + 1);
  for (std::size_t i = 0; i < sd.base.clauses.size(); ++i) {
    out << group[i];
    for (Lit l : sd.original_clause(i))
      out << ' ' << l.to_dimacs();
    out << " 0\n";
  }
  return out.str();
}

std::vector<Observation> parse_obs(std::string_view text, Var num_system_vars) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  int pending_id = 0;
  bool has_pending = false;
  int next_id = 1;
  std::vector<Observation> out;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = tokens(raw);
    if (toks.empty())
      continue;
    if (toks[0] == "c") {
      if (toks.size() == 3 && toks[1] == "obs") {
        pending_id = static_cast<int>(to_int(toks[2], line));
        has_pending = true;
      }
      continue;
    }
    Observation o;
    o.id = has_pending ? pending_id : next_id;
    has_pending = false;
    next_id = o.id + 1;
    o.units = read_literals(toks, 0, line, num_system_vars);
    for (std::size_t i = 0; i < o.units.size(); ++i)
      for (std::size_t j = i + 1; j < o.units.size(); ++j)
        if (o.units[i] == ~o.units[j])
          throw ParseError(line, "complementary literals on one observation");
    out.push_back(std::move(o));
  }
  return out;
}

std::string write_obs(const std::vector<Observation>& observations) {
  std::ostringstream out;
  for (const auto& o : observations) {
    out << "c obs " << o.id << '\n';
    for (Lit l : o.units)
      out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

const char* const kStatsHeader =
    "instance,engine,r,k,vars,clauses,diagnoses,explanations,sat_calls,elapsed_s,exhausted,percent_enumerated";

std::string write_stats(const std::vector<StatsRecord>& records) {
  std::ostringstream out;
  out << kStatsHeader << '\n';
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& r : records) {
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.6f", r.elapsed_s);
    std::string percent;
    if (r.percent_enumerated) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6Lg", *r.percent_enumerated);
      percent = buf;
    }
    out << r.instance << ',' << r.engine << ',' << opt(r.r) << ',' << opt(r.k) << ',' << r.vars << ','
        << r.clauses << ',' << r.diagnoses << ',' << r.explanations << ',' << r.sat_calls << ',' << elapsed << ','
        << (r.exhausted ? 1 : 0) << ',' << percent << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << contents;
}

} // namespace mobdiag
