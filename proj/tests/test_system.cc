#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mobdiag/benchgen.hh"
#include "mobdiag/oracle.hh"
#include "mobdiag/system.hh"

using namespace mobdiag;

namespace {

const Observation& obs_with_id(const Instance& inst, int id) {
  for (const auto& o : inst.observations)
    if (o.id == id)
      return o;
  throw std::out_of_range("no observation " + std::to_string(id));
}

} // namespace

TEST_CASE("builder appends selectors") {
  SystemBuilder b(2);
  ComponentId c = b.add_component("inv");
  b.add_clause(0, {pos(1)});
  b.add_clause(c, {neg(1), pos(2)});
  b.add_clause(c, {pos(2), neg(2)});
  SystemDescription sd = b.build();
  CHECK(b.dropped_tautologies() == 1);
  CHECK(sd.num_components() == 1);
  CHECK(sd.ab(1) == pos(3));
  CHECK(sd.base.num_vars == 3);
  REQUIRE(sd.base.clauses.size() == 2);
  CHECK(sd.hard_indices == std::vector<std::size_t>{0});
  CHECK(sd.group_of(1) == 1);
  CHECK(sd.original_clause(1) == Clause{neg(1), pos(2)});
  CHECK(sd.base.clauses[1] == Clause{neg(1), pos(2), pos(3)});
  CHECK(sd.name(1) == "inv");
  CHECK_THROWS(b.add_clause(1, {pos(3)}));
  CHECK_THROWS(b.add_clause(2, {pos(1)}));
}

TEST_CASE("observation validation") {
  Instance c17 = gen_c17();
  CHECK_NOTHROW(validate_observation(c17.sd, c17.observations[0]));
  CHECK_THROWS_AS(validate_observation(c17.sd, {1, {pos(12)}}), MalformedObservation);
  CHECK_THROWS_AS(validate_observation(c17.sd, {1, {pos(1), neg(1)}}), MalformedObservation);
  ConsistencyChecker chk(c17.sd);
  CHECK_THROWS_AS(chk.check({}, {1, {pos(40)}}), MalformedObservation);
}

TEST_CASE("C17 consistency") {
  Instance c17 = gen_c17();
  ConsistencyChecker chk(c17.sd);
  const Observation& o15 = obs_with_id(c17, 15);
  REQUIRE(c17.sd.name(5) == "o1");
  CHECK(chk.check({}, o15).is_unsat());
  CHECK(chk.check({5}, o15).is_sat());
  for (const auto& o : c17.observations) {
    CHECK_FALSE(chk.consistent({}, o));
    CHECK(chk.consistent(c17.sd.components(), o));
  }
}

TEST_CASE("C17 single observation diagnoses") {
  Instance c17 = gen_c17();
  const Observation& o15 = obs_with_id(c17, 15);
  auto diags = brute_force_diagnoses(c17.sd, {o15});
  ConsistencyChecker chk(c17.sd);
  CHECK(std::find(diags.begin(), diags.end(), Diagnosis{5}) != diags.end());
  for (const auto& d : diags)
    CHECK(verify_diagnosis(chk, d, {o15}));
}

TEST_CASE("explanations on the encoder") {
  Instance inst = gen_buggy_encoder({.r = 3, .k = 2});
  ConsistencyChecker chk(inst.sd);
  const Observation& last = inst.observations.back();
  auto all = brute_force_explanations(inst.sd, {last});
  Explanation e = chk.extract_explanation({}, last);
  CHECK(e.witness_obs == last.id);
  CHECK(is_subset(e.components, encoder_final_components(2)));
  CHECK(std::find(all.begin(), all.end(), e.components) != all.end());
  CHECK(verify_explanation(chk, e, {last}));
}

TEST_CASE("explanation disjoint from the candidate") {
  Instance inst = gen_buggy_encoder({.r = 3, .k = 3});
  ConsistencyChecker chk(inst.sd);
  const Observation& first = inst.observations.front();
  Explanation e1 = chk.extract_explanation({}, first);
  ComponentSet delta = {e1.components.front()};
  REQUIRE(chk.check(delta, first).is_unsat());
  Explanation e2 = chk.extract_explanation(delta, first);
  CHECK_FALSE(intersects(e2.components, delta));
  CHECK(verify_explanation(chk, e2, {first}));
  CHECK_THROWS_AS(chk.extract_explanation(inst.sd.components(), first), ContractError);
}

TEST_CASE("component contradicting the observation") {
  SystemBuilder b(1);
  ComponentId c = b.add_component();
  b.add_clause(c, {pos(1)});
  SystemDescription sd = b.build();
  ConsistencyChecker chk(sd);
  Observation o{1, {neg(1)}};
  CHECK(chk.extract_explanation({}, o).components == ComponentSet{1});
}

TEST_CASE("aggregate layout") {
  Instance inst = gen_buggy_encoder({.r = 10, .k = 10});
  const auto& sd = inst.sd;
  auto sz = encoder_sizes(10, 10);
  CHECK(sz.vars == 49);
  CHECK(sz.clauses == 55);
  CHECK(sz.components == 42);
  const std::size_t M = sd.num_components();
  const std::size_t V = sd.base.num_vars; // system variables plus selectors
  WcnfInstance agg = build_aggregate(sd, inst.observations);
  std::size_t units = 0;
  for (const auto& o : inst.observations)
    units += o.units.size();
  CHECK(agg.num_vars() == 10 * (V - M) + M);
  CHECK(agg.hard.clauses.size() == 10 * sd.base.clauses.size() + units);
  CHECK(agg.soft.size() == M);

  WcnfInstance one = build_aggregate(sd, {inst.observations[0]});
  CHECK(one.num_vars() == V);
  CHECK(one.soft.size() == M);
}

TEST_CASE("duplicate observations add nothing") {
  Instance c17 = gen_c17();
  const Observation& o = c17.observations[1];
  Observation copy = o;
  copy.id = 99;
  CHECK(brute_force_diagnoses(c17.sd, {o, copy}) == brute_force_diagnoses(c17.sd, {o}));
}

TEST_CASE("verify_diagnosis on the encoder") {
  Instance inst = gen_buggy_encoder({.r = 4, .k = 3});
  ConsistencyChecker chk(inst.sd);
  ComponentSet fin = encoder_final_components(3);
  CHECK(verify_diagnosis(chk, fin, inst.observations));
  ComponentSet bigger = {1, fin[0], fin[1]};
  CHECK_FALSE(verify_diagnosis(chk, bigger, inst.observations));
  CHECK_FALSE(verify_diagnosis(chk, {}, inst.observations));
}

TEST_CASE("brute-force oracle") {
  SUBCASE("encoder k=2") {
    Instance inst = gen_buggy_encoder({.r = 3, .k = 2});
    CHECK(brute_force_diagnoses(inst.sd, {inst.observations[0]}).size() == 25);
    auto all = brute_force_diagnoses(inst.sd, inst.observations);
    REQUIRE(all.size() == 1);
    CHECK(all[0] == encoder_final_components(2));
  }
  SUBCASE("no failing observation") {
    Instance c17 = gen_c17();
    // Healthy C17 under inputs 0: z1..z4 = 1, so both outputs are 0.
    Observation ok{1, {neg(1), neg(2), neg(3), neg(4), neg(5), neg(10), neg(11)}};
    auto diags = brute_force_diagnoses(c17.sd, {ok});
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].empty());
  }
  SUBCASE("cap") {
    Instance inst = gen_buggy_encoder({.r = 3, .k = 4});
    CHECK_THROWS_AS(brute_force_diagnoses(inst.sd, inst.observations, 10), OracleCapExceeded);
  }
}

TEST_CASE("set helpers") {
  CHECK(set_difference({1, 2, 3}, {2}) == ComponentSet{1, 3});
  CHECK(intersects({1, 4}, {4, 5}));
  CHECK_FALSE(intersects({1}, {2}));
  CHECK(is_subset({2}, {1, 2}));
  CHECK_FALSE(is_subset({3}, {1, 2}));
  CHECK(minimal_elements({{1, 2}, {1}, {2, 3}, {1}}) == std::vector<ComponentSet>{{1}, {2, 3}});
}

TEST_CASE("aggregate at the top of the grid") {
  Instance inst = gen_buggy_encoder({.r = 500, .k = 2000});
  WcnfInstance agg = build_aggregate(inst.sd, inst.observations);
  CHECK(agg.num_vars() >= 3000000);
  CHECK(agg.num_vars() == 500 * (inst.sd.base.num_vars - inst.sd.num_components()) + inst.sd.num_components());
}
