#include "mobdiag/benchgen.hh"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>
#include <sstream>

namespace mobdiag {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

Gate::Kind parse_kind(const std::string& word, std::size_t line) {
  static const std::map<std::string, Gate::Kind> kinds = {
      {"AND", Gate::Kind::And}, {"NAND", Gate::Kind::Nand}, {"OR", Gate::Kind::Or},    {"NOR", Gate::Kind::Nor},
      {"NOT", Gate::Kind::Not}, {"BUFF", Gate::Kind::Buff}, {"BUF", Gate::Kind::Buff}, {"XOR", Gate::Kind::Xor},
      {"XNOR", Gate::Kind::Xnor},
  };
  auto it = kinds.find(upper(word));
  if (it == kinds.end())
    throw NetlistError("line " + std::to_string(line) + ": unknown gate kind '" + word + "'");
  return it->second;
}

// Splits "NAME(a, b, c)" into NAME and the argument list.
std::pair<std::string, std::vector<std::string>> split_call(const std::string& s, std::size_t line) {
  auto open = s.find('(');
  auto close = s.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw NetlistError("line " + std::to_string(line) + ": expected NAME(...)");
  std::vector<std::string> args;
  std::stringstream ss(s.substr(open + 1, close - open - 1));
  std::string arg;
  while (std::getline(ss, arg, ','))
    if (auto t = trim(arg); !t.empty())
      args.push_back(t);
  return {trim(s.substr(0, open)), args};
}

void encode_gate(SystemBuilder& b, ComponentId id, const Gate& g, Var out, const std::vector<Var>& in) {
  auto add = [&](Clause c) { b.add_clause(id, std::move(c)); };
  switch (g.kind) {
  case Gate::Kind::And:
  case Gate::Kind::Nand: {
    const bool inverted = g.kind == Gate::Kind::Nand;
    Lit o(out, !inverted); // o means "all inputs true"
    for (Var a : in)
      add({~o, pos(a)});
    Clause big{o};
    for (Var a : in)
      big.push_back(neg(a));
    add(std::move(big));
    break;
  }
  case Gate::Kind::Or:
  case Gate::Kind::Nor: {
    const bool inverted = g.kind == Gate::Kind::Nor;
    Lit o(out, !inverted); // o means "some input true"
    for (Var a : in)
      add({o, neg(a)});
    Clause big{~o};
    for (Var a : in)
      big.push_back(pos(a));
    add(std::move(big));
    break;
  }
  case Gate::Kind::Not:
    add({pos(out), pos(in[0])});
    add({neg(out), neg(in[0])});
    break;
  case Gate::Kind::Buff:
    add({neg(out), pos(in[0])});
    add({pos(out), neg(in[0])});
    break;
  case Gate::Kind::Xor:
  case Gate::Kind::Xnor: {
    // One clause per input pattern, forcing the output to its parity.
    const bool inverted = g.kind == Gate::Kind::Xnor;
    for (std::uint32_t bits = 0; bits < (1U << in.size()); ++bits) {
      Clause c;
      bool parity = inverted;
      for (std::size_t i = 0; i < in.size(); ++i) {
        const bool v = (bits >> i) & 1U;
        parity ^= v;
        c.push_back(Lit(in[i], !v));
      }
      c.push_back(Lit(out, parity));
      add(std::move(c));
    }
    break;
  }
  }
}

} // namespace

Netlist parse_netlist(std::string_view text) {
  Netlist n;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::string s = trim(raw);
    if (s.empty())
      continue;
    if (auto eq = s.find('='); eq != std::string::npos) {
      Gate g;
      g.output = trim(s.substr(0, eq));
      auto [kind, args] = split_call(trim(s.substr(eq + 1)), line);
      g.kind = parse_kind(kind, line);
      g.inputs = std::move(args);
      const bool unary = g.kind == Gate::Kind::Not || g.kind == Gate::Kind::Buff;
      if (g.output.empty() || g.inputs.empty() || (unary && g.inputs.size() != 1) ||
          ((g.kind == Gate::Kind::Xor || g.kind == Gate::Kind::Xnor) && g.inputs.size() > 10))
        throw NetlistError("line " + std::to_string(line) + ": bad gate definition");
      n.gates.push_back(std::move(g));
      continue;
    }
    auto [head, args] = split_call(s, line);
    if (args.size() != 1)
      throw NetlistError("line " + std::to_string(line) + ": expected a single signal");
    if (upper(head) == "INPUT")
      n.inputs.push_back(args[0]);
    else if (upper(head) == "OUTPUT")
      n.outputs.push_back(args[0]);
    else
      throw NetlistError("line " + std::to_string(line) + ": unknown directive '" + head + "'");
  }
  return n;
}

EncodedNetlist encode_netlist(const Netlist& netlist) {
  std::map<std::string, std::size_t> driver; // signal -> gate index
  std::set<std::string> inputs(netlist.inputs.begin(), netlist.inputs.end());
  for (std::size_t g = 0; g < netlist.gates.size(); ++g) {
    const auto& out = netlist.gates[g].output;
    if (inputs.contains(out) || !driver.emplace(out, g).second)
      throw NetlistError("signal '" + out + "' is defined more than once");
  }
  auto defined = [&](const std::string& s) { return inputs.contains(s) || driver.contains(s); };
  for (const auto& g : netlist.gates)
    for (const auto& a : g.inputs)
      if (!defined(a))
        throw NetlistError("signal '" + a + "' is used but never defined");
  for (const auto& o : netlist.outputs)
    if (!defined(o))
      throw NetlistError("output '" + o + "' is never defined");

  // Kahn's algorithm, always taking the lowest-index ready gate.
  const std::size_t n = netlist.gates.size();
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<std::size_t>> users(n);
  for (std::size_t g = 0; g < n; ++g)
    for (const auto& a : netlist.gates[g].inputs)
      if (auto it = driver.find(a); it != driver.end()) {
        ++pending[g];
        users[it->second].push_back(g);
      }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t g = 0; g < n; ++g)
    if (pending[g] == 0)
      ready.push(g);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t g = ready.top();
    ready.pop();
    order.push_back(g);
    for (std::size_t u : users[g])
      if (--pending[u] == 0)
        ready.push(u);
  }
  if (order.size() != n) {
    // Walk back through unresolved drivers until a signal repeats.
    std::size_t g = 0;
    while (pending[g] == 0)
      ++g;
    std::vector<std::string> path;
    std::map<std::size_t, std::size_t> position;
    while (!position.contains(g)) {
      position[g] = path.size();
      path.push_back(netlist.gates[g].output);
      for (const auto& a : netlist.gates[g].inputs)
        if (auto it = driver.find(a); it != driver.end() && pending[it->second] != 0) {
          g = it->second;
          break;
        }
    }
    std::string cycle;
    for (std::size_t i = position[g]; i < path.size(); ++i)
      cycle += path[i] + " <- ";
    cycle += netlist.gates[g].output;
    throw NetlistError("combinational cycle: " + cycle);
  }

  EncodedNetlist enc;
  Var next = 0;
  for (const auto& s : netlist.inputs)
    enc.signal_var[s] = ++next;
  for (std::size_t g : order)
    enc.signal_var[netlist.gates[g].output] = ++next;

  SystemBuilder b(next);
  for (std::size_t g : order) {
    const Gate& gate = netlist.gates[g];
    ComponentId id = b.add_component(gate.output);
    std::vector<Var> in;
    for (const auto& a : gate.inputs)
      in.push_back(enc.signal_var.at(a));
    encode_gate(b, id, gate, enc.signal_var.at(gate.output), in);
  }
  enc.sd = b.build();
  return enc;
}

Observation make_observation(const EncodedNetlist& enc, int id,
                             const std::vector<std::pair<std::string, bool>>& values) {
  Observation o;
  o.id = id;
  for (const auto& [signal, value] : values) {
    auto it = enc.signal_var.find(signal);
    if (it == enc.signal_var.end())
      throw MalformedObservation("unknown signal '" + signal + "'");
    o.units.push_back(Lit(it->second, value));
  }
  return o;
}

} // namespace mobdiag
