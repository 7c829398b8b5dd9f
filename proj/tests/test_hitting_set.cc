#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mobdiag/hitting_set.hh"
#include "mobdiag/oracle.hh"

#include <random>
#include <set>

using namespace mobdiag;

namespace {

bool hits_all(const ComponentSet& hs, const std::vector<ComponentSet>& sets) {
  return std::all_of(sets.begin(), sets.end(), [&](const ComponentSet& s) {
    return std::any_of(s.begin(), s.end(), [&](ComponentId c) { return std::binary_search(hs.begin(), hs.end(), c); });
  });
}

std::vector<ComponentSet> drain(ExplanationStore& store, Minimality mode) {
  std::vector<ComponentSet> out;
  while (auto hs = store.next_min_hs(mode)) {
    out.push_back(*hs);
    store.block_diagnosis(*hs);
  }
  return out;
}

} // namespace

TEST_CASE("singleton explanation is always hit") {
  ExplanationStore store(4);
  store.add_explanation({1});
  for (int i = 0; i < 5; ++i) {
    auto hs = store.next_min_hs(Minimality::Subset);
    if (!hs)
      break;
    CHECK(std::binary_search(hs->begin(), hs->end(), 1U));
    store.block_diagnosis(*hs);
  }
}

TEST_CASE("two-element explanation") {
  ExplanationStore store(2);
  store.add_explanation({1, 2});
  auto got = drain(store, Minimality::Cardinality);
  std::set<ComponentSet> s(got.begin(), got.end());
  CHECK(s == std::set<ComponentSet>{{1}, {2}});
}

TEST_CASE("empty explanation is fatal") {
  ExplanationStore store(3);
  CHECK_THROWS_AS(store.add_explanation({}), NoDiagnosisError);
}

TEST_CASE("blocking") {
  SUBCASE("only hitting set blocked") {
    ExplanationStore store(1);
    store.add_explanation({1});
    store.block_diagnosis({1});
    CHECK_FALSE(store.next_min_hs(Minimality::Subset));
  }
  SUBCASE("one of two") {
    ExplanationStore store(2);
    store.add_explanation({1, 2});
    store.block_diagnosis({1});
    CHECK(store.next_min_hs(Minimality::Subset) == ComponentSet{2});
  }
  SUBCASE("unique hitting set blocked") {
    ExplanationStore store(2);
    store.add_explanation({1});
    store.add_explanation({2});
    store.block_diagnosis({1, 2});
    CHECK_FALSE(store.next_min_hs(Minimality::Subset));
    CHECK_FALSE(store.next_min_hs(Minimality::Cardinality));
  }
}

TEST_CASE("forced hitting set in both modes") {
  for (auto mode : {Minimality::Subset, Minimality::Cardinality}) {
    ExplanationStore store(2);
    store.add_explanation({1});
    store.add_explanation({2});
    CHECK(store.next_min_hs(mode) == ComponentSet{1, 2});
  }
}

TEST_CASE("cardinality minimum") {
  ExplanationStore store(3);
  store.add_explanation({1, 2});
  store.add_explanation({2, 3});
  CHECK(store.next_min_hs(Minimality::Cardinality) == ComponentSet{2});
  store.block_diagnosis({2});
  auto next = store.next_min_hs(Minimality::Cardinality);
  REQUIRE(next);
  CHECK(next->size() == 2);
  CHECK(hits_all(*next, store.explanations()));
  CHECK(*next != ComponentSet{2});
}

TEST_CASE("empty store yields the empty set") {
  ExplanationStore store(3);
  CHECK(store.next_min_hs(Minimality::Subset) == ComponentSet{});
  store.block_diagnosis({});
  CHECK_FALSE(store.next_min_hs(Minimality::Subset));
}

TEST_CASE("out of range component") {
  ExplanationStore store(3);
  CHECK_THROWS(store.add_explanation({4}));
}

// Exhaustive drain against the brute-force minimal hitting sets.
TEST_CASE("random families") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + rng() % 9;
    const std::size_t m = 1 + rng() % 6;
    std::vector<ComponentSet> sets;
    for (std::size_t i = 0; i < m; ++i) {
      ComponentSet s;
      for (ComponentId c = 1; c <= n; ++c)
        if (rng() % 3 == 0)
          s.push_back(c);
      if (s.empty())
        s.push_back(static_cast<ComponentId>(1 + rng() % n));
      sets.push_back(s);
    }
    auto expected = brute_force_minimal_hitting_sets(sets, n);
    std::set<ComponentSet> want(expected.begin(), expected.end());

    for (auto mode : {Minimality::Subset, Minimality::Cardinality}) {
      ExplanationStore store(n);
      for (const auto& s : sets)
        store.add_explanation(s);
      auto got = drain(store, mode);
      CHECK(std::set<ComponentSet>(got.begin(), got.end()) == want);
      CHECK(got.size() == want.size());
      if (mode == Minimality::Cardinality) {
        for (std::size_t i = 1; i < got.size(); ++i)
          CHECK(got[i - 1].size() <= got[i].size());
        CHECK(got.front().size() == expected.front().size());
      }
    }
  }
}

// Interleaving: explanations arrive after some hitting sets were blocked.
TEST_CASE("incremental additions") {
  ExplanationStore store(4);
  store.add_explanation({1, 2});
  auto a = store.next_min_hs(Minimality::Subset);
  REQUIRE(a);
  store.add_explanation({3, 4});
  auto b = store.next_min_hs(Minimality::Subset);
  REQUIRE(b);
  CHECK(b->size() == 2);
  CHECK(hits_all(*b, store.explanations()));
}
