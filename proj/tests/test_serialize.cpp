#include <catch2/catch_amalgamated.hpp>

#include "wkpyramid/serialize.hpp"

using namespace wkp;

TEST_CASE("JSON export") {
  SECTION("WKP_(1,1) is K_2") {
    const auto j = to_json(build_wkp(1, 1));
    CHECK(j["family"] == "WKP");
    CHECK(j["vertices"] == Json::array({"(0,(1))", "(1,(0))"}));
    CHECK(j["edges"] == Json::array({Json::array({0, 1})}));
  }
  SECTION("WKP_(2,2) lists 10 edges with i < j") {
    const auto j = to_json(build_wkp(2, 2));
    CHECK(j["edges"].size() == 10);
    for (const auto& e : j["edges"]) CHECK(e[0].get<int>() < e[1].get<int>());
    CHECK(j["C"] == 2);
    CHECK(j["L"] == 2);
  }
}

TEST_CASE("DOT export is deterministic") {
  const auto dot = to_dot(build_wkp(2, 2));
  CHECK(dot == to_dot(build_wkp(2, 2)));
  CHECK_THAT(dot, Catch::Matchers::StartsWith("graph \"WKP_(2,2)\" {"));
  CHECK_THAT(dot, Catch::Matchers::ContainsSubstring("0 [label=\"(0,(1))\"];"));
  CHECK_THAT(dot, Catch::Matchers::ContainsSubstring("0 -- 1;"));
}

TEST_CASE("exports parse back to the same adjacency") {
  for (auto fam : {Family::WK, Family::WKP})
    for (auto [C, L] : std::vector<std::pair<std::uint32_t, unsigned>>{{1, 1}, {3, 2}, {2, 4}, {12, 1}, {11, 2}}) {
      const auto g = build(fam, C, L);
      for (auto fmt : {GraphFormat::Json, GraphFormat::Dot}) {
        const auto text = export_graph(g, fmt);
        const auto back = fmt == GraphFormat::Json ? graph_from_json(text) : graph_from_dot(text);
        CHECK(back.family() == g.family());
        CHECK(back.addresses() == g.addresses());
        CHECK(back.edges() == g.edges());
      }
    }
}

TEST_CASE("readers reject foreign or damaged input") {
  const std::vector<std::string> bad_json{
      "{",
      R"js({"family":"WKP","C":2,"L":1,"vertices":["(1,(0))"],"edges":[]})js",
      R"js({"family":"WKP","C":1,"L":1,"vertices":["(0,(1))","(1,(0))"],"edges":[[0,0]]})js",
      R"js({"family":"WKP","C":1,"L":1,"vertices":["(0,(1))","(1,(0))"],"edges":[[0,5]]})js",
      R"js({"family":"WKP","C":1,"L":1,"vertices":["(0,(1))","(1,(0))"],"edges":[[0]]})js",
  };
  for (const auto& text : bad_json) {
    INFO(text);
    CHECK_THROWS_AS(graph_from_json(text), DomainError);
  }
  CHECK_THROWS_AS(graph_from_dot("graph g {\n 0 -- 1;\n}\n"), DomainError);
}

TEST_CASE("trace JSON") {
  const auto g = build_wkp(3, 2);
  const auto t = propagate_fixpoint(g, 1, std::vector<Vertex>{g.ordinal(g.parse("(1,(1))")), g.ordinal(g.parse("(1,(2))"))});
  const auto j = trace_to_json(g, t);
  CHECK(j["k"] == 1);
  CHECK(j["seed"] == Json::array({"(1,(1))", "(1,(2))"}));
  CHECK(j["rounds"].size() == t.rounds.size());
  CHECK(j["rounds"].back().size() == 13);
  CHECK(j["radius"] == 3);

  const auto stuck = trace_to_json(g, propagate_fixpoint(g, 1, std::vector<Vertex>{0}));
  CHECK(stuck["radius"].is_null());
}

TEST_CASE("exact result JSON") {
  const auto g = build_wkp(3, 2);
  const auto j = exact_to_json(g, 1, min_kpds(g, 1));
  CHECK(j["gamma"] == 2);
  CHECK(j["witness"].size() == 2);
  CHECK(j["radius"] == 3);
  CHECK(j["exhausted"] == true);
  CHECK(j["checks_performed"] == 13 + 78);
}
