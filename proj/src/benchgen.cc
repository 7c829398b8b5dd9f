#include "mobdiag/benchgen.hh"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace mobdiag {

EncoderSizes encoder_sizes(std::size_t r, std::size_t k) {
  return {r + 3 * k + 9, r + 4 * k + 5, 4 * k + 2};
}

long double encoder_diagnoses_per_observation(std::size_t k) {
  auto p4 = [](std::size_t e) { return std::pow(4.0L, static_cast<long double>(e)); };
  // (4^odd + 1)(4^even + 1): break every odd chain or f41, every even chain
  // or f42. With no even chain f42 is never needed.
  if (k / 2 == 0)
    return p4((k + 1) / 2) + 1.0L;
  return p4(k) + p4(k / 2) + p4((k + 1) / 2) + 1.0L;
}

ComponentSet encoder_final_components(std::size_t k) {
  return {static_cast<ComponentId>(4 * k + 1), static_cast<ComponentId>(4 * k + 2)};
}

Instance gen_buggy_encoder(const EncoderParams& params) {
  const std::size_t r = params.r;
  const std::size_t k = params.k;
  if (r < 2 || k < 1)
    throw std::invalid_argument("encoder family needs r >= 2 and k >= 1");

  const Var base_vars = static_cast<Var>(encoder_sizes(r, k).vars);
  auto x = [](std::size_t j) { return static_cast<Var>(j); };
  const Var y2a = static_cast<Var>(r);
  auto chain = [&](std::size_t p, std::size_t slot) { return static_cast<Var>(r + 1 + 3 * (p - 1) + slot); };
  const Var t21a = static_cast<Var>(r + 3 * k + 1);
  const Var w41a = t21a + 1, w42a = t21a + 2, s31a = t21a + 3, u41a = t21a + 4, u42a = t21a + 5;
  const Var t41a = t21a + 6, z41a = t21a + 7, z42a = t21a + 8;

  const std::size_t padding = params.padding_hard + params.padding_soft;
  const Var pool = padding == 0 ? 0 : static_cast<Var>(std::max<std::size_t>(3, padding / 2 + 2));
  SystemBuilder b(base_vars + pool);

  for (std::size_t j = 1; j < r; ++j)
    b.add_clause(0, {neg(x(j)), pos(y2a)});
  b.add_clause(0, {neg(s31a), pos(w41a)});
  b.add_clause(0, {neg(s31a), pos(w42a)});
  b.add_clause(0, {neg(w41a), pos(u41a)});
  b.add_clause(0, {neg(w42a), pos(u42a)});

  for (std::size_t p = 1; p <= k; ++p) {
    const Var yb = chain(p, 0), yc = chain(p, 1), yd = chain(p, 2);
    const Var w = p % 2 == 1 ? w41a : w42a;
    const std::string g = "g" + std::to_string(p) + ".";
    b.add_clause(b.add_component(g + "1"), {neg(y2a), neg(t21a), pos(yb)});
    b.add_clause(b.add_component(g + "2"), {neg(yb), neg(t21a), pos(yc)});
    b.add_clause(b.add_component(g + "3"), {neg(yc), neg(t21a), pos(yd)});
    b.add_clause(b.add_component(g + "4"), {neg(yd), neg(t21a), pos(w)});
  }
  b.add_clause(b.add_component("f41"), {neg(u41a), neg(t41a), pos(z41a)});
  b.add_clause(b.add_component("f42"), {neg(u42a), neg(t41a), pos(z42a)});

  // Filler over fresh variables: distinct variables, first literal positive,
  // so all-true satisfies every filler clause.
  if (padding > 0) {
    std::mt19937_64 rng(params.seed);
    auto filler = [&]() {
      const std::size_t len = 2 + rng() % 2;
      std::set<Var> vars;
      while (vars.size() < len)
        vars.insert(base_vars + 1 + static_cast<Var>(rng() % pool));
      Clause c;
      bool first = true;
      for (Var v : vars) {
        c.push_back(Lit(v, first || rng() % 2 == 0));
        first = false;
      }
      return c;
    };
    for (std::size_t i = 0; i < params.padding_hard; ++i)
      b.add_clause(0, filler());
    for (std::size_t i = 0; i < params.padding_soft; ++i)
      b.add_clause(b.add_component("pad" + std::to_string(i + 1)), filler());
  }

  Instance inst{b.build(), {}};
  for (std::size_t j = 1; j <= r; ++j) {
    Observation o;
    o.id = static_cast<int>(j);
    for (std::size_t i = 1; i < r; ++i)
      o.units.push_back(Lit(x(i), i == j));
    o.units.push_back(Lit(s31a, j == r));
    o.units.push_back(pos(t21a));
    o.units.push_back(pos(t41a));
    o.units.push_back(neg(z41a));
    o.units.push_back(neg(z42a));
    inst.observations.push_back(std::move(o));
  }
  return inst;
}

Instance gen_c17() {
  enum : Var { i1 = 1, i2, i3, i4, i5, z1, z2, z3, z4, o1, o2 };
  SystemBuilder b(11);
  auto nand = [&](const char* name, Var out, Var a, Var c) {
    ComponentId id = b.add_component(name);
    b.add_clause(id, {pos(out), pos(a)});
    b.add_clause(id, {pos(out), pos(c)});
    b.add_clause(id, {neg(out), neg(a), neg(c)});
  };
  nand("z1", z1, i1, i3);
  nand("z2", z2, i3, i4);
  nand("z3", z3, i2, z2);
  nand("z4", z4, z2, i5);
  nand("o1", o1, z1, z3);
  nand("o2", o2, z3, z4);

  Instance inst{b.build(), {}};
  const std::vector<std::pair<int, std::vector<int>>> rows = {
      {15, {1, 0, 0, 0, 0, 1, 0}}, {27, {0, 1, 0, 1, 0, 0, 1}}, {34, {0, 0, 0, 1, 0, 0, 1}},
      {46, {0, 0, 1, 1, 0, 1, 1}}, {52, {1, 1, 1, 0, 0, 0, 0}},
  };
  const Var columns[] = {i1, i2, i3, i4, i5, o1, o2};
  for (const auto& [id, values] : rows) {
    Observation o;
    o.id = id;
    for (std::size_t c = 0; c < values.size(); ++c)
      o.units.push_back(Lit(columns[c], values[c] == 1));
    inst.observations.push_back(std::move(o));
  }
  return inst;
}

const char* const kC17Netlist = R"(# c17
INPUT(i1)
INPUT(i2)
INPUT(i3)
INPUT(i4)
INPUT(i5)
OUTPUT(o1)
OUTPUT(o2)
z1 = NAND(i1, i3)
z2 = NAND(i3, i4)
z3 = NAND(i2, z2)
z4 = NAND(z2, i5)
o1 = NAND(z1, z3)
o2 = NAND(z3, z4)
)";

Instance gen_random_instance(const RandomParams& params) {
  if (params.components == 0 || params.components > 12 || params.observations == 0 || params.observations > 4 ||
      params.vars < 2)
    throw std::invalid_argument("random instance bounds: 1..12 components, 1..4 observations, >= 2 vars");
  std::mt19937_64 rng(params.seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const Var nv = static_cast<Var>(params.vars);

  auto random_clause = [&]() {
    const std::size_t len = std::min<std::size_t>(2 + below(2), nv);
    std::set<Var> vars;
    while (vars.size() < len)
      vars.insert(static_cast<Var>(1 + below(nv)));
    Clause c;
    for (Var v : vars)
      c.push_back(Lit(v, below(2) == 0));
    return c;
  };

  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    SystemBuilder b(nv);
    for (std::size_t c = 0; c < params.components; ++c) {
      ComponentId id = b.add_component();
      const std::size_t n_clauses = 1 + below(2);
      for (std::size_t j = 0; j < n_clauses; ++j)
        b.add_clause(id, random_clause());
    }
    if (below(4) == 0)
      b.add_clause(0, random_clause());
    Instance inst{b.build(), {}};

    for (std::size_t i = 0; i < params.observations; ++i) {
      Observation o;
      o.id = static_cast<int>(i + 1);
      for (Var v = 1; v <= nv; ++v)
        if (below(4) != 0)
          o.units.push_back(Lit(v, below(2) == 0));
      inst.observations.push_back(std::move(o));
    }

    ConsistencyChecker checker(inst.sd);
    const ComponentSet all = inst.sd.components();
    bool good = std::all_of(inst.observations.begin(), inst.observations.end(), [&](const Observation& o) {
      return !checker.consistent({}, o) && checker.consistent(all, o);
    });
    if (good)
      return inst;
  }
  throw std::runtime_error("gen_random_instance: no valid instance within the attempt cap");
}

} // namespace mobdiag
