#pragma once

// Deliberately naive second implementation of the monitoring process and
// of minimum k-PDS search. It shares nothing with Propagator or the
// ranked level scan beyond the graph's adjacency rows, and exists so the
// fast paths can be checked against it.

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "wkpyramid/errors.hpp"
#include "wkpyramid/topology.hpp"

namespace wkp::reference {

using NaiveSet = std::set<Vertex>;

inline NaiveSet closed_neighborhood(const PyramidGraph& g, const NaiveSet& s) {
  NaiveSet out;
  for (Vertex v : s) {
    out.insert(v);
    for (Vertex u : g.neighbors(v)) out.insert(u);
  }
  return out;
}

/// { N[v] : v in P, |N[v] \ P| <= k } unioned with P, by set comprehension.
inline NaiveSet round(const PyramidGraph& g, unsigned k, const NaiveSet& p) {
  NaiveSet out = p;
  for (Vertex v : p) {
    const NaiveSet nv = reference::closed_neighborhood(g, NaiveSet{v});
    std::size_t outside = 0;
    for (Vertex u : nv) outside += p.count(u) ? 0 : 1;
    if (outside <= k) out.insert(nv.begin(), nv.end());
  }
  return out;
}

/// All rounds P^0, P^1, ... up to the first repeat or full coverage.
inline std::vector<NaiveSet> rounds(const PyramidGraph& g, unsigned k, const NaiveSet& seed) {
  std::vector<NaiveSet> out{closed_neighborhood(g, seed)};
  while (out.back().size() != g.order()) {
    auto next = round(g, k, out.back());
    const bool stalled = next == out.back();
    out.push_back(std::move(next));
    if (stalled) break;
  }
  return out;
}

inline std::optional<std::size_t> radius(const PyramidGraph& g, unsigned k, const NaiveSet& seed) {
  const auto r = rounds(g, k, seed);
  if (r.back().size() != g.order()) return std::nullopt;
  return r.size();
}

struct BruteForce {
  unsigned gamma = 0;
  std::size_t radius = 0;
  std::uint64_t optimal_sets = 0;
};

/// Minimum k-PDS size, its radius and the number of optimal sets by
/// walking all 2^n subsets.
inline BruteForce brute_force(const PyramidGraph& g, unsigned k) {
  const auto n = g.order();
  if (n > 20) throw DomainError("brute force oracle is limited to 20 vertices");
  BruteForce best;
  best.gamma = static_cast<unsigned>(n) + 1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto size = static_cast<unsigned>(std::popcount(mask));
    if (size > best.gamma) continue;
    NaiveSet s;
    for (Vertex v = 0; v < n; ++v)
      if (mask & (1u << v)) s.insert(v);
    const auto r = radius(g, k, s);
    if (!r) continue;
    if (size < best.gamma) best = {size, *r, 0};
    if (size == best.gamma) {
      ++best.optimal_sets;
      best.radius = std::min(best.radius, *r);
    }
  }
  return best;
}

}  // namespace wkp::reference
