#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "wkpyramid/constructions.hpp"
#include "wkpyramid/reference.hpp"

using namespace wkp;

namespace {

std::vector<std::string> labels(const PyramidGraph& g, const std::vector<Vertex>& set) {
  std::vector<std::string> out;
  for (auto v : set) out.push_back(g.label(v));
  return out;
}

bool oracle_kpds(const PyramidGraph& g, unsigned k, const std::vector<Vertex>& set) {
  return reference::radius(g, k, reference::NaiveSet(set.begin(), set.end())).has_value();
}

}  // namespace

TEST_CASE("regime_of") {
  CHECK(regime_of(5, 2, 1) == Regime::Level2);
  CHECK(regime_of(1, 7, 1) == Regime::TrivialOne);
  CHECK(regime_of(3, 4, 2) == Regime::KEqCMinus1Upper);
  CHECK(regime_of(4, 1, 2) == Regime::TrivialOne);
  CHECK(regime_of(3, 3, 3) == Regime::TrivialOne);
  CHECK(regime_of(4, 3, 2) == Regime::General);
  CHECK(regime_of(2, 2, 1) == Regime::Level2);
  CHECK(regime_of(2, 3, 1) == Regime::KEqCMinus1Upper);
  CHECK_THROWS_AS(regime_of(3, 3, 0), RegimeError);
}

TEST_CASE("regimes are exclusive and cover every (C, L, k)") {
  for (std::uint32_t C = 1; C <= 7; ++C)
    for (unsigned L = 1; L <= 6; ++L)
      for (unsigned k = 1; k <= C + 2; ++k) {
        const bool trivial = C == 1 || L == 1 || k >= C;
        const bool level2 = L == 2 && C >= 2 && k <= C - 1;
        const bool general = L >= 3 && C >= 3 && k <= C - 2;
        const bool kc1 = L >= 3 && C >= 2 && k == C - 1;
        const auto r = regime_of(C, L, k);
        // precedence: the trivial regime wins over level2/kc1 where they overlap in form
        CHECK(int(trivial) + int(!trivial && level2) + int(!trivial && general) + int(!trivial && kc1) == 1);
        if (trivial) CHECK(r == Regime::TrivialOne);
        else if (level2) CHECK(r == Regime::Level2);
        else if (general) CHECK(r == Regime::General);
        else CHECK(r == Regime::KEqCMinus1Upper);
      }
}

TEST_CASE("gamma_formula") {
  CHECK(gamma_formula(5, 2, 1) == GammaValue{4, true});
  CHECK(gamma_formula(3, 3, 1) == GammaValue{3, true});
  CHECK(gamma_formula(2, 5, 1) == GammaValue{2, false});
  CHECK(gamma_formula(4, 3, 1) == GammaValue{8, true});
  CHECK(gamma_formula(5, 4, 2) == GammaValue{50, true});
  CHECK(gamma_formula(3, 9, 2) == GammaValue{4, false});
  CHECK(gamma_formula(1, 9, 1) == GammaValue{1, true});
}

TEST_CASE("construct_trivial") {
  for (auto [C, L, k] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{3, 4, 3}, {1, 5, 1}, {4, 1, 1}}) {
    const auto g = build_wkp(C, L);
    const auto s = construct_trivial(g, k);
    CHECK(labels(g, s) == std::vector<std::string>{"(0,(1))"});
    CHECK(is_kpds(g, k, s));
  }
  CHECK_THROWS_AS(construct_trivial(build_wkp(3, 2), 1), RegimeError);
}

TEST_CASE("construct_level2") {
  const auto g5 = build_wkp(5, 2);
  CHECK(labels(g5, construct_level2(g5, 1)) ==
        std::vector<std::string>{"(1,(1))", "(1,(2))", "(1,(3))", "(1,(4))"});

  const auto g3 = build_wkp(3, 2);
  CHECK(labels(g3, construct_level2(g3, 2)) == std::vector<std::string>{"(1,(2))"});

  const auto g2 = build_wkp(2, 2);
  const auto s = construct_level2(g2, 1);
  CHECK(labels(g2, s) == std::vector<std::string>{"(1,(1))"});
  CHECK(oracle_kpds(g2, 1, s));

  for (std::uint32_t C = 2; C <= 6; ++C) {
    const auto g = build_wkp(C, 2);
    for (unsigned k = 1; k < C; ++k) {
      const auto set = construct_level2(g, k);
      CHECK(set.size() == C - k);
      CHECK(oracle_kpds(g, k, set));
    }
  }
  CHECK_THROWS_AS(construct_level2(build_wkp(3, 3), 1), RegimeError);
  CHECK_THROWS_AS(construct_level2(build_wkp(3, 2), 3), RegimeError);
}

TEST_CASE("Hamiltonian cycles of WK_(C,m)") {
  CHECK(ham_cycle_wk(3, 1).order == std::vector<DigitString>{{0}, {1}, {2}});
  for (std::uint32_t C = 3; C <= 5; ++C)
    for (unsigned m = 1; m <= 3; ++m) {
      INFO("C=" << C << " m=" << m);
      const auto cycle = ham_cycle_wk(C, m);
      CHECK(cycle.order.size() == wk_order(C, m));
      CHECK(is_hamiltonian_cycle(build_wk(C, m), cycle));
    }
  CHECK(ham_cycle_wk(4, 2).order.size() == 16);
  CHECK_THROWS_AS(ham_cycle_wk(2, 2), DomainError);
}

TEST_CASE("Hamiltonian paths join the requested extremes") {
  for (std::uint32_t C = 2; C <= 4; ++C)
    for (unsigned m = 1; m <= 3; ++m) {
      const auto wk = build_wk(C, m);
      for (Digit a = 0; a < C; ++a)
        for (Digit b = 0; b < C; ++b) {
          if (a == b) continue;
          const auto path = ham_path_wk(C, m, a, b);
          REQUIRE(path.size() == wk.order());
          CHECK(path.front() == DigitString(m, a));
          CHECK(path.back() == DigitString(m, b));
          std::set<DigitString> seen(path.begin(), path.end());
          CHECK(seen.size() == path.size());
          for (std::size_t i = 0; i + 1 < path.size(); ++i)
            CHECK(wk.adjacent(wk.ordinal(Address{m, path[i]}), wk.ordinal(Address{m, path[i + 1]})));
        }
    }
}

TEST_CASE("is_hamiltonian_cycle rejects broken orders") {
  auto cycle = ham_cycle_wk(3, 2);
  const auto wk = build_wk(3, 2);
  std::swap(cycle.order[1], cycle.order[4]);
  CHECK_FALSE(is_hamiltonian_cycle(wk, cycle));
  cycle = ham_cycle_wk(3, 2);
  cycle.order.pop_back();
  CHECK_FALSE(is_hamiltonian_cycle(wk, cycle));
}

TEST_CASE("construct_general") {
  SECTION("(3,3,1): one level-2 vertex per block") {
    const auto g = build_wkp(3, 3);
    const auto s = construct_general(g, 1);
    CHECK(s.size() == 3);
    for (auto v : s) CHECK(g.address(v).level == 2);
    CHECK(oracle_kpds(g, 1, s));
  }
  SECTION("(4,3,1): two per block") {
    const auto g = build_wkp(4, 3);
    const auto s = construct_general(g, 1);
    CHECK(s.size() == 8);
    CHECK(oracle_kpds(g, 1, s));
  }
  SECTION("(4,3,2)") {
    const auto g = build_wkp(4, 3);
    const auto s = construct_general(g, 2);
    CHECK(s.size() == 4);
    CHECK(oracle_kpds(g, 2, s));
  }
  SECTION("incoming and outgoing cliques differ in every block") {
    for (auto [C, L, k] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{3, 3, 1}, {3, 4, 1}, {4, 4, 2}, {5, 3, 1}}) {
      const auto g = build_wkp(C, L);
      for (const auto& b : general_blocks(g, k)) {
        CHECK(b.incoming_clique != b.outgoing_clique);
        CHECK(b.chosen.size() == C - k - 1);
      }
    }
  }
  SECTION("size formula over the desk-scale sweep") {
    for (std::uint32_t C = 3; C <= 5; ++C)
      for (unsigned L = 3; L <= 4; ++L) {
        if (wkp_order(C, L) > 2000) continue;
        const auto g = build_wkp(C, L);
        for (unsigned k = 1; k + 2 <= C; ++k) {
          INFO("C=" << C << " L=" << L << " k=" << k);
          const auto s = construct_general(g, k);
          CHECK(s.size() == (C - k - 1) * wk_order(C, L - 2));
          CHECK(oracle_kpds(g, k, s));
        }
      }
  }
  SECTION("wrong regime") {
    CHECK_THROWS_AS(construct_general(build_wkp(3, 3), 2), RegimeError);
    CHECK_THROWS_AS(construct_general(build_wkp(3, 2), 1), RegimeError);
  }
}

TEST_CASE("construct_kc1") {
  SECTION("case L = 3m") {
    const auto g = build_wkp(2, 3);
    CHECK(labels(g, construct_kc1(g)) == std::vector<std::string>{"(0,(1))", "(2,(00))"});
  }
  SECTION("case L = 3m+1") {
    const auto g = build_wkp(3, 4);
    CHECK(labels(g, construct_kc1(g)) == std::vector<std::string>{"(1,(0))", "(3,(000))"});
  }
  SECTION("case L = 3m+2") {
    const auto g = build_wkp(2, 5);
    CHECK(labels(g, construct_kc1(g)) == std::vector<std::string>{"(1,(0))", "(4,(0000))"});
  }
  SECTION("size ceil((L+1)/3) and validity") {
    for (std::uint32_t C = 2; C <= 5; ++C)
      for (unsigned L = 3; L <= 8; ++L) {
        if (wkp_order(C, L) > 2000) continue;
        const auto g = build_wkp(C, L);
        const auto [s, which] = construct_kc1_case(g);
        CHECK(s.size() == (L + 3) / 3);
        CHECK(which == static_cast<int>(L % 3 == 0 ? 1 : L % 3 == 1 ? 2 : 3));
        CHECK(oracle_kpds(g, C - 1, s));
      }
  }
  SECTION("wrong regime") {
    CHECK_THROWS_AS(construct_kc1(build_wkp(3, 2)), RegimeError);
    CHECK_THROWS_AS(construct_kc1(build_wkp(1, 4)), RegimeError);
  }
}

TEST_CASE("construct dispatches and tags provenance") {
  const std::vector<std::tuple<unsigned, unsigned, unsigned, std::string>> cases{
      {3, 4, 3, "trivial-apex"}, {5, 2, 1, "level2"}, {3, 2, 2, "level2"},
      {4, 3, 1, "general-hamiltonian"}, {2, 3, 1, "kc1-case1"}, {3, 4, 2, "kc1-case2"}, {2, 5, 1, "kc1-case3"}};
  for (const auto& [C, L, k, tag] : cases) {
    const auto g = build_wkp(C, L);
    const auto cert = construct(g, k);
    CHECK(cert.provenance == tag);
    CHECK(cert.is_kpds);
    const auto formula = gamma_formula(C, L, k);
    CHECK(cert.set.size() == formula.value);
  }
  const auto g = build_wkp(5, 2);
  CHECK(construct(g, 1).radius == 3);
  CHECK_THROWS_AS(construct(build_wk(3, 2), 1), DomainError);
}
