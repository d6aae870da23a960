#pragma once

#include <optional>
#include <string>

#include "wkpyramid/propagation.hpp"
#include "wkpyramid/topology.hpp"

namespace wkp {

/// Checks vertex count, symmetry, irreflexivity and the degree profile of a
/// generated graph. Returns a description of the first violation.
inline std::optional<std::string> check_graph_invariants(const PyramidGraph& g) {
  const auto name = std::string(to_string(g.family())) + "_(" + std::to_string(g.C()) + "," +
                    std::to_string(g.L()) + ")";
  const std::uint64_t C = g.C();
  const auto expected = g.family() == Family::WKP ? wkp_order(C, g.L()) : wk_order(C, g.L());
  if (g.order() != expected)
    return name + ": " + std::to_string(g.order()) + " vertices, expected " + std::to_string(expected);

  for (Vertex v = 0; v < g.order(); ++v) {
    for (Vertex u : g.neighbors(v)) {
      if (u == v) return name + ": loop at " + g.label(v);
      if (!g.adjacent(u, v)) return name + ": edge " + g.label(v) + "-" + g.label(u) + " is one-way";
    }
    const auto& a = g.address(v);
    std::uint64_t want = 0;
    if (g.family() == Family::WK) {
      want = a.is_extreme() ? C - 1 : C;
    } else if (a.is_apex()) {
      want = C;
    } else if (a.level < g.L()) {
      want = a.is_extreme() ? 2 * C : 2 * C + 1;
    } else {
      want = a.is_extreme() ? C : C + 1;
    }
    if (g.degree(v) != want)
      return name + ": " + g.label(v) + " has degree " + std::to_string(g.degree(v)) + ", expected " +
             std::to_string(want);
  }
  return std::nullopt;
}

/// Checks that a trace starts at N[seed], grows monotonically, and ends
/// either at V or with two equal rounds, and that first_step agrees.
inline std::optional<std::string> check_trace_invariants(const PyramidGraph& g, const MonitorTrace& t) {
  if (t.rounds.empty()) return "trace has no rounds";
  if (t.rounds.front() != closed_neighborhood(g, t.seed)) return "round 0 is not N[seed]";
  for (std::size_t i = 0; i + 1 < t.rounds.size(); ++i)
    if (!t.rounds[i].is_subset_of(t.rounds[i + 1]))
      return "round " + std::to_string(i) + " is not contained in round " + std::to_string(i + 1);
  const bool full = t.rounds.back().is_full();
  const bool stalled = t.rounds.size() >= 2 && t.rounds[t.rounds.size() - 2] == t.rounds.back();
  if (!full && !stalled) return "trace ends neither covered nor stalled";
  if (t.rounds.size() > g.order() + 1) return "trace longer than |V| rounds";
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto s = t.first_step[v];
    for (std::size_t i = 0; i < t.rounds.size(); ++i)
      if (t.rounds[i].contains(v) != (s != kNeverMonitored && i >= s))
        return "first_step of " + g.label(v) + " disagrees with the rounds";
  }
  return std::nullopt;
}

}  // namespace wkp
