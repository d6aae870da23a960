#include <catch2/catch_amalgamated.hpp>

#include "wkpyramid/exact.hpp"
#include "wkpyramid/invariants.hpp"
#include "wkpyramid/propagation.hpp"
#include "wkpyramid/reference.hpp"

using namespace wkp;

namespace {

std::vector<Vertex> ids(const PyramidGraph& g, std::initializer_list<const char*> labels) {
  std::vector<Vertex> out;
  for (const char* l : labels) out.push_back(g.ordinal(g.parse(l)));
  return out;
}

reference::NaiveSet naive(const VertexSet& s) {
  const auto v = s.to_vector();
  return {v.begin(), v.end()};
}

/// Every subset of size <= max_size, in lexicographic order.
std::vector<std::vector<Vertex>> seeds_up_to(std::size_t n, unsigned max_size) {
  std::vector<std::vector<Vertex>> out{{}};
  for (unsigned s = 1; s <= max_size; ++s) {
    auto c = combinatorics::unrank(n, s, 0);
    do out.push_back(c);
    while (combinatorics::next(c, n));
  }
  return out;
}

std::vector<Vertex> level1_set(const PyramidGraph& g, unsigned k) {
  std::vector<Vertex> out;
  for (Digit i = k; i < g.C(); ++i) out.push_back(g.ordinal(Address{1, {i}}));
  return out;
}

}  // namespace

TEST_CASE("closed_neighborhood") {
  const auto g = build_wkp(5, 2);
  const Vertex apex = g.ordinal(Address::apex());
  const auto n = closed_neighborhood(g, std::vector<Vertex>{apex});
  CHECK(n.size() == 6);
  CHECK(n.contains(apex));
  for (Digit d = 0; d < 5; ++d) CHECK(n.contains(g.ordinal(Address{1, {d}})));

  CHECK(closed_neighborhood(g, std::vector<Vertex>{}).empty());
  CHECK(closed_neighborhood(g, VertexSet::full(g.order())).is_full());
  CHECK_THROWS_AS(closed_neighborhood(g, std::vector<Vertex>{31}), DomainError);
}

TEST_CASE("propagate_round") {
  SECTION("k = 0 never adds a lone unmonitored neighbour") {
    const auto g = build_wkp(1, 3);  // path apex-(1,(0))-(2,(00))-(3,(000))
    const auto p = closed_neighborhood(g, std::vector<Vertex>{0});
    CHECK(propagate_round(g, 0, p) == p);
    CHECK(propagate_round(g, 1, p).size() == 3);
  }
  SECTION("WKP_(5,2), k=1, first round after the level-1 set") {
    const auto g = build_wkp(5, 2);
    const auto p0 = closed_neighborhood(g, level1_set(g, 1));
    const auto p1 = propagate_round(g, 1, p0);
    VertexSet added(g.order());
    p1.for_each([&](Vertex v) {
      if (!p0.contains(v)) added.insert(v);
    });
    const auto want = ids(g, {"(2,(01))", "(2,(02))", "(2,(03))", "(2,(04))"});
    CHECK(added == VertexSet::of(g.order(), want));
  }
  SECTION("full set is a fixpoint") {
    const auto g = build_wkp(3, 2);
    const auto all = VertexSet::full(g.order());
    CHECK(propagate_round(g, 1, all) == all);
  }
  SECTION("rounds are simultaneous, not cascading") {
    // On the path P_5 seeded at one end with k=1, one round adds exactly
    // one vertex even though the newly added vertex could fire at once.
    const auto g = build_wkp(1, 4);
    const auto p0 = closed_neighborhood(g, std::vector<Vertex>{0});
    CHECK(p0.size() == 2);
    CHECK(propagate_round(g, 1, p0).size() == 3);
  }
}

TEST_CASE("propagate_round agrees with the set-comprehension oracle") {
  for (auto [C, L] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 2}, {2, 3}, {4, 2}}) {
    const auto g = build_wkp(C, L);
    for (const auto& seed : seeds_up_to(g.order(), 2))
      for (unsigned k = 0; k <= C + 1; ++k) {
        auto p = closed_neighborhood(g, seed);
        for (int step = 0; step < 4; ++step) {
          const auto fast = propagate_round(g, k, p);
          CHECK(naive(fast) == reference::round(g, k, naive(p)));
          p = fast;
        }
      }
  }
}

TEST_CASE("propagate_fixpoint trace") {
  SECTION("WKP_(C,2), k >= C, apex: two rounds") {
    for (std::uint32_t C = 2; C <= 5; ++C) {
      const auto g = build_wkp(C, 2);
      const auto t = propagate_fixpoint(g, C, std::vector<Vertex>{0});
      REQUIRE(t.rounds.size() == 2);
      CHECK(t.rounds[0].size() == C + 1);
      CHECK(t.rounds[1].is_full());
      CHECK(t.radius() == 2);
    }
  }
  SECTION("empty seed stalls at the empty set") {
    const auto g = build_wkp(3, 2);
    const auto t = propagate_fixpoint(g, 1, std::vector<Vertex>{});
    REQUIRE(t.rounds.size() == 2);
    CHECK(t.rounds[0].empty());
    CHECK(t.rounds[1].empty());
    CHECK_FALSE(t.radius().has_value());
    for (auto s : t.first_step) CHECK(s == kNeverMonitored);
  }
  SECTION("WKP_(5,2), k=1, level-1 set reaches V at P^2") {
    const auto g = build_wkp(5, 2);
    const auto t = propagate_fixpoint(g, 1, level1_set(g, 1));
    REQUIRE(t.rounds.size() == 3);
    CHECK(t.rounds[0].size() == 26);
    CHECK(t.rounds[1].size() == 30);
    CHECK(t.rounds[2].is_full());
    CHECK(t.first_step[g.ordinal(g.parse("(2,(00))"))] == 2);
    CHECK(t.first_step[g.ordinal(g.parse("(0,(1))"))] == 0);
  }
  SECTION("trace rounds equal iterated propagate_round and the oracle") {
    for (auto [C, L] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 2}, {2, 3}, {3, 3}}) {
      const auto g = build_wkp(C, L);
      for (const auto& seed : seeds_up_to(g.order(), 2))
        for (unsigned k = 0; k <= C; ++k) {
          const auto t = propagate_fixpoint(g, k, seed);
          const auto slow = reference::rounds(g, k, reference::NaiveSet(seed.begin(), seed.end()));
          REQUIRE(t.rounds.size() == slow.size());
          for (std::size_t i = 0; i < slow.size(); ++i) CHECK(naive(t.rounds[i]) == slow[i]);
          const auto problem = check_trace_invariants(g, t);
          INFO(problem.value_or(""));
          CHECK_FALSE(problem.has_value());
        }
    }
  }
}

TEST_CASE("is_kpds") {
  const auto g = build_wkp(3, 2);
  CHECK(is_kpds(g, 1, ids(g, {"(1,(1))", "(1,(2))"})));
  CHECK_FALSE(is_kpds(g, 1, ids(g, {"(0,(1))"})));
  CHECK(is_kpds(g, 0, VertexSet::full(g.order()).to_vector()));
  CHECK(is_kpds(g, 3, ids(g, {"(0,(1))"})));
}

TEST_CASE("radius_of_set") {
  for (std::uint32_t C = 2; C <= 4; ++C) {
    const auto g = build_wkp(C, 2);
    CHECK(radius_of_set(g, C, std::vector<Vertex>{0}) == 2);
    CHECK(radius_of_set(g, C + 3, std::vector<Vertex>{0}) == 2);
  }
  const auto g5 = build_wkp(5, 2);
  CHECK(radius_of_set(g5, 1, VertexSet::full(g5.order()).to_vector()) == 1);
  CHECK(radius_of_set(g5, 1, level1_set(g5, 1)) == 3);
  CHECK_FALSE(radius_of_set(g5, 1, std::vector<Vertex>{0}).has_value());
}

TEST_CASE("k = 0 is domination") {
  for (auto [C, L] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 2}, {2, 3}, {2, 2}}) {
    const auto g = build_wkp(C, L);
    for (const auto& seed : seeds_up_to(g.order(), 3))
      CHECK(is_kpds(g, 0, seed) == closed_neighborhood(g, seed).is_full());
  }
}

TEST_CASE("seed and k monotonicity") {
  for (auto [C, L] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 2}, {2, 3}}) {
    const auto g = build_wkp(C, L);
    for (const auto& seed : seeds_up_to(g.order(), 2))
      for (unsigned k = 0; k <= C; ++k) {
        const auto base = propagate_fixpoint(g, k, seed).rounds.back();
        CHECK(base.is_subset_of(propagate_fixpoint(g, k + 1, seed).rounds.back()));
        for (Vertex v = 0; v < g.order(); ++v) {
          auto bigger = seed;
          bigger.push_back(v);
          CHECK(base.is_subset_of(propagate_fixpoint(g, k, bigger).rounds.back()));
        }
      }
  }
}

TEST_CASE("engine reuse gives the same answer as a fresh engine") {
  const auto g = build_wkp(3, 3);
  Propagator engine(g, 1);
  for (const auto& seed : seeds_up_to(g.order(), 2)) {
    const auto a = engine.run(seed);
    CHECK(a == Propagator(g, 1).run(seed));
  }
}

TEST_CASE("certify") {
  const auto g = build_wkp(5, 2);
  const auto cert = certify(g, 1, level1_set(g, 1), "level2");
  CHECK(cert.is_kpds);
  CHECK(cert.radius == 3);
  CHECK(cert.provenance == "level2");
  CHECK(cert.trace.rounds.size() == 3);
}
