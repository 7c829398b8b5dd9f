#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mobdiag/benchgen.hh"
#include "mobdiag/io.hh"

using namespace mobdiag;

TEST_CASE("one component") {
  MbdFile f = parse_mbd("p mbd 1 1 1\n1 1 0\n");
  CHECK(f.sd.num_components() == 1);
  CHECK(f.sd.original_clause(0) == Clause{pos(1)});
  CHECK(f.sd.base.clauses[0] == Clause{pos(1), pos(2)});
  CHECK(f.sd.ab(1) == pos(2));
}

TEST_CASE("background and component clauses") {
  MbdFile f = parse_mbd("p mbd 2 2 1\n0 1 0\n1 -1 2 0\n");
  CHECK(f.sd.hard_indices == std::vector<std::size_t>{0});
  CHECK(f.sd.base.clauses[0] == Clause{pos(1)});
  CHECK(f.sd.original_clause(1) == Clause{neg(1), pos(2)});
}

TEST_CASE("malformed input reports the line") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_mbd(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("p mbd 1 2 1\n1 1 0\n") > 0);        // clause count mismatch
  CHECK(line_of("p mbd 1 1 1\n2 1 0\n") == 2);       // unknown component
  CHECK(line_of("p mbd 1 1 1\n1 3 0\n") == 2);       // variable out of range
  CHECK(line_of("p mbd 1 1 1\n1 1\n") == 2);         // no terminator
  CHECK(line_of("1 1 0\n") == 1);                     // clause before header
  CHECK(line_of("c note\np mbd 1 1 x\n") == 2);      // bad header
}

TEST_CASE("round trip") {
  for (const Instance& inst : {gen_c17(), gen_buggy_encoder({.r = 5, .k = 3, .padding_hard = 4, .padding_soft = 3})}) {
    std::string mbd = write_mbd(inst.sd, {"hello"});
    MbdFile back = parse_mbd(mbd);
    CHECK(back.sd == inst.sd);
    CHECK(back.sd.component_names == inst.sd.component_names);
    CHECK(back.comments == std::vector<std::string>{"hello"});
    auto obs = parse_obs(write_obs(inst.observations), inst.sd.num_system_vars);
    CHECK(obs == inst.observations);
  }
}

TEST_CASE("observation parsing") {
  auto obs = parse_obs("c first\n1 -2 0\n\n-1 0\n", 2);
  REQUIRE(obs.size() == 2);
  CHECK(obs[0].id == 1);
  CHECK(obs[1].id == 2);
  CHECK(obs[0].units == std::vector<Lit>{pos(1), neg(2)});
  CHECK_THROWS_AS(parse_obs("1 -1 0\n", 2), ParseError);
  CHECK_THROWS_AS(parse_obs("3 0\n", 2), ParseError);
  CHECK_THROWS_AS(parse_obs("1 2\n", 2), ParseError);
  auto named = parse_obs("c obs 15\n1 0\nc obs 27\n2 0\n", 2);
  CHECK(named[0].id == 15);
  CHECK(named[1].id == 27);
}

TEST_CASE("stats csv") {
  StatsRecord ihsd{.instance = "encoder_r10_k2", .engine = "ihsd", .r = 10, .k = 2, .vars = 35, .clauses = 23,
                   .diagnoses = 1, .explanations = 4, .sat_calls = 58, .elapsed_s = 0.5, .exhausted = true};
  StatsRecord sep = ihsd;
  sep.engine = "separate";
  sep.diagnoses = 226;
  sep.percent_enumerated = 100.0L;
  StatsRecord killed = sep;
  killed.diagnoses = 0;
  killed.exhausted = false;
  killed.percent_enumerated = 0.0L;
  std::string csv = write_stats({ihsd, sep, killed});
  std::istringstream in(csv);
  std::string header, a, b, c;
  std::getline(in, header);
  std::getline(in, a);
  std::getline(in, b);
  std::getline(in, c);
  CHECK(header == kStatsHeader);
  CHECK(a == "encoder_r10_k2,ihsd,10,2,35,23,1,4,58,0.500000,1,");
  CHECK(b.substr(b.rfind(',') + 1) == "100");
  CHECK(c.substr(c.rfind(',') + 1) == "0");
  CHECK(c.find(",0,0") != std::string::npos);
}
