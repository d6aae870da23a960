#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wkpyramid/address.hpp"
#include "wkpyramid/errors.hpp"
#include "wkpyramid/vertex_set.hpp"

namespace wkp {

enum class Family { WK, WKP };

inline std::string_view to_string(Family f) { return f == Family::WK ? "WK" : "WKP"; }

inline Family parse_family(std::string_view text) {
  if (text == "WK" || text == "wk") return Family::WK;
  if (text == "WKP" || text == "wkp") return Family::WKP;
  throw DomainError("unknown graph family '" + std::string(text) + "' (expected WK or WKP)");
}

inline constexpr std::size_t kDefaultMaxVertices = 100'000;

struct BuildOptions {
  std::size_t max_vertices = kDefaultMaxVertices;
};

/// Undirected edge between two vertex ordinals, stored with u < v.
struct EdgeRef {
  Vertex u = 0;
  Vertex v = 0;

  static EdgeRef of(Vertex a, Vertex b) { return a < b ? EdgeRef{a, b} : EdgeRef{b, a}; }
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

namespace detail {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return b > kSaturated - a ? kSaturated : a + b;
}
inline std::uint64_t sat_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

/// Partner of a digit string under the bridge rule: with trailing run b^t
/// preceded by c != b, the partner swaps to c^t preceded by b. Extreme
/// strings (t == length) have no partner.
inline std::optional<std::vector<Digit>> bridge_partner(const std::vector<Digit>& d) {
  const std::size_t r = d.size();
  if (r < 2) return std::nullopt;
  const Digit b = d[r - 1];
  std::size_t t = 1;
  while (t < r && d[r - 1 - t] == b) ++t;
  if (t == r) return std::nullopt;
  const std::size_t pos = r - 1 - t;
  const Digit c = d[pos];
  std::vector<Digit> out = d;
  out[pos] = b;
  for (std::size_t i = pos + 1; i < r; ++i) out[i] = c;
  return out;
}

}  // namespace detail

/// Vertex count of WK_(C,L): C^L (saturating).
inline std::uint64_t wk_order(std::uint64_t C, unsigned L) { return detail::sat_pow(C, L); }

/// Vertex count of WKP_(C,L): 1 + sum_{r=1..L} C^r (saturating).
inline std::uint64_t wkp_order(std::uint64_t C, unsigned L) {
  std::uint64_t n = 1;
  for (unsigned r = 1; r <= L; ++r) n = detail::sat_add(n, detail::sat_pow(C, r));
  return n;
}

/// Immutable WK-recursive mesh or WK-pyramid. Vertices are numbered in
/// canonical order (ascending level, then lexicographic digits), so the
/// ordinal of an address is computed arithmetically. Adjacency is stored
/// in compressed rows with each row sorted.
class PyramidGraph {
 public:
  Family family() const noexcept { return family_; }
  std::uint32_t C() const noexcept { return C_; }
  unsigned L() const noexcept { return L_; }

  std::size_t order() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const {
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  const Address& address(Vertex v) const { return vertices_.at(v); }
  const std::vector<Address>& addresses() const noexcept { return vertices_; }
  std::string label(Vertex v) const { return to_string(vertices_.at(v), C_); }

  /// Lowest level present: 0 (the apex) for WKP, L for WK.
  unsigned min_level() const noexcept { return family_ == Family::WKP ? 0 : L_; }

  /// Ordinal range [first, last) of the vertices at level r.
  std::pair<Vertex, Vertex> level_range(unsigned r) const {
    if (r < min_level() || r > L_) throw DomainError("level " + std::to_string(r) + " not in graph");
    const auto first = level_offset(r);
    const auto count = r == 0 ? 1 : detail::sat_pow(C_, r);
    return {static_cast<Vertex>(first), static_cast<Vertex>(first + count)};
  }

  std::optional<Vertex> find(const Address& a) const {
    if (a.level < min_level() || a.level > L_ || a.digits.size() != a.level) return std::nullopt;
    std::uint64_t value = 0;
    for (Digit d : a.digits) {
      if (d >= C_) return std::nullopt;
      value = value * C_ + d;
    }
    return static_cast<Vertex>(level_offset(a.level) + value);
  }

  Vertex ordinal(const Address& a) const {
    if (auto v = find(a)) return *v;
    throw DomainError("address " + to_string(a, C_) + " is not a vertex of " +
                      std::string(to_string(family_)) + "_(" + std::to_string(C_) + "," +
                      std::to_string(L_) + ")");
  }

  Address parse(std::string_view text) const {
    auto a = parse_address(text, C_, L_);
    ordinal(a);
    return a;
  }

  /// Every edge once, u < v, sorted.
  std::vector<EdgeRef> edges() const {
    std::vector<EdgeRef> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.push_back({u, v});
    return out;
  }

  /// Canonical vertex list for (family, C, L).
  static std::vector<Address> canonical_vertices(Family family, std::uint32_t C, unsigned L) {
    std::vector<Address> out;
    if (family == Family::WKP) out.push_back(Address::apex());
    const unsigned first = family == Family::WKP ? 1 : L;
    for (unsigned r = first; r <= L; ++r) {
      Address a;
      a.level = r;
      a.digits.assign(r, 0);
      const auto count = detail::sat_pow(C, r);
      for (std::uint64_t i = 0; i < count; ++i) {
        out.push_back(a);
        for (std::size_t p = r; p-- > 0;) {
          if (++a.digits[p] < C) break;
          a.digits[p] = 0;
        }
      }
    }
    return out;
  }

  /// Assembles a graph from the canonical vertex list and an explicit edge
  /// list (used by the readers). Rejects loops, out-of-range endpoints and
  /// vertex lists that are not canonical for (family, C, L).
  static PyramidGraph from_edges(Family family, std::uint32_t C, unsigned L,
                                 std::vector<Address> vertices,
                                 std::span<const EdgeRef> edges) {
    check_parameters(family, C, L, {});
    if (vertices != canonical_vertices(family, C, L))
      throw DomainError("vertex list is not the canonical order for the stated family/C/L");
    PyramidGraph g(family, C, L);
    g.vertices_ = std::move(vertices);
    std::vector<std::vector<Vertex>> adj(g.vertices_.size());
    for (const auto& e : edges) {
      if (e.u == e.v) throw DomainError("self-loop at ordinal " + std::to_string(e.u));
      if (e.u >= adj.size() || e.v >= adj.size())
        throw DomainError("edge endpoint out of range");
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    g.compress(adj);
    return g;
  }

  static void check_parameters(Family family, std::uint32_t C, unsigned L, BuildOptions opts) {
    if (C < 1) throw DomainError("C must be >= 1, got " + std::to_string(C));
    if (L < 1) throw DomainError("L must be >= 1, got " + std::to_string(L));
    const auto n = family == Family::WKP ? wkp_order(C, L) : wk_order(C, L);
    if (opts.max_vertices != 0 && n > opts.max_vertices)
      throw DomainError(std::string(to_string(family)) + "_(" + std::to_string(C) + "," +
                        std::to_string(L) + ") would have " +
                        (n == detail::kSaturated ? std::string("too many") : std::to_string(n)) +
                        " vertices, above the cap of " + std::to_string(opts.max_vertices));
    if (n > std::numeric_limits<Vertex>::max())
      throw DomainError("graph too large for 32-bit vertex ordinals");
  }

  friend PyramidGraph build_wk(std::uint32_t C, unsigned L, BuildOptions opts);
  friend PyramidGraph build_wkp(std::uint32_t C, unsigned L, BuildOptions opts);

 private:
  PyramidGraph(Family family, std::uint32_t C, unsigned L) : family_(family), C_(C), L_(L) {
    level_offsets_.assign(L + 1, 0);
    if (family == Family::WKP) {
      std::uint64_t off = 1;
      for (unsigned r = 1; r <= L; ++r) {
        level_offsets_[r] = off;
        off = detail::sat_add(off, detail::sat_pow(C, r));
      }
    }
  }

  std::uint64_t level_offset(unsigned r) const { return level_offsets_[r]; }

  void compress(std::vector<std::vector<Vertex>>& adj) {
    offsets_.assign(adj.size() + 1, 0);
    for (std::size_t v = 0; v < adj.size(); ++v) {
      auto& row = adj[v];
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      offsets_[v + 1] = offsets_[v] + row.size();
    }
    neighbors_.clear();
    neighbors_.reserve(offsets_.back());
    for (const auto& row : adj) neighbors_.insert(neighbors_.end(), row.begin(), row.end());
  }

  /// Adds the within-level edges (sibling clique and bridge) of level r.
  void add_mesh_edges(unsigned r, std::vector<std::vector<Vertex>>& adj) const {
    const auto [first, last] = level_range(r);
    for (Vertex v = first; v < last; ++v) {
      const auto& a = vertices_[v];
      Address sib = a;
      for (Digit d = 0; d < C_; ++d) {
        if (d == a.digits.back()) continue;
        sib.digits.back() = d;
        adj[v].push_back(ordinal(sib));
      }
      if (auto partner = detail::bridge_partner(a.digits))
        adj[v].push_back(ordinal(Address{r, std::move(*partner)}));
    }
  }

  Family family_;
  std::uint32_t C_;
  unsigned L_;
  std::vector<std::uint64_t> level_offsets_;
  std::vector<Address> vertices_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
};

/// WK_(C,L): C^L vertices, each joined to its C-1 siblings (same prefix)
/// and, unless extreme, to one bridge partner.
inline PyramidGraph build_wk(std::uint32_t C, unsigned L, BuildOptions opts = {}) {
  PyramidGraph::check_parameters(Family::WK, C, L, opts);
  PyramidGraph g(Family::WK, C, L);
  g.vertices_ = PyramidGraph::canonical_vertices(Family::WK, C, L);
  std::vector<std::vector<Vertex>> adj(g.vertices_.size());
  g.add_mesh_edges(L, adj);
  g.compress(adj);
  return g;
}

/// WKP_(C,L): levels 1..L each induce WK_(C,r); every vertex at level r < L
/// has C children at level r+1; the apex is joined to all of level 1.
inline PyramidGraph build_wkp(std::uint32_t C, unsigned L, BuildOptions opts = {}) {
  PyramidGraph::check_parameters(Family::WKP, C, L, opts);
  PyramidGraph g(Family::WKP, C, L);
  g.vertices_ = PyramidGraph::canonical_vertices(Family::WKP, C, L);
  std::vector<std::vector<Vertex>> adj(g.vertices_.size());
  for (unsigned r = 1; r <= L; ++r) g.add_mesh_edges(r, adj);
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto& a = g.vertices_[v];
    if (a.level == L) continue;
    Address child{a.level + 1, a.digits};
    child.digits.push_back(0);
    for (Digit d = 0; d < C; ++d) {
      child.digits.back() = d;
      const auto c = g.ordinal(child);
      adj[v].push_back(c);
      adj[c].push_back(v);
    }
  }
  g.compress(adj);
  return g;
}

inline PyramidGraph build(Family family, std::uint32_t C, unsigned L, BuildOptions opts = {}) {
  return family == Family::WK ? build_wk(C, L, opts) : build_wkp(C, L, opts);
}

/// Parses a bare digit string such as "01" (or "10.3" when C > 10).
inline std::vector<Digit> parse_digits(std::string_view text, std::uint32_t C) {
  detail::AddressScanner sc(text);
  auto digits = detail::parse_digit_string(text, sc, C > 10);
  for (Digit d : digits)
    if (d >= C) sc.fail("digit " + std::to_string(d) + " is not below C=" + std::to_string(C));
  return digits;
}

/// Extreme vertices: repeated-digit addresses at every level >= 1.
inline std::vector<Address> extreme_vertices(const PyramidGraph& g) {
  std::vector<Address> out;
  for (unsigned r = std::max(1u, g.min_level()); r <= g.L(); ++r)
    for (Digit a = 0; a < g.C(); ++a) out.push_back(Address{r, std::vector<Digit>(r, a)});
  std::sort(out.begin(), out.end());
  return out;
}

/// V_w: the C^2 level-L vertices (L, w i j) whose address starts with w.
/// They induce a copy of WK_(C,2).
inline std::vector<Address> gw_subgraph(const PyramidGraph& g, const std::vector<Digit>& w) {
  if (g.L() < 2) throw DomainError("G_w blocks need L >= 2");
  if (w.size() != g.L() - 2)
    throw DomainError("block prefix must have L-2 = " + std::to_string(g.L() - 2) + " digits, got " +
                      std::to_string(w.size()));
  for (Digit d : w)
    if (d >= g.C()) throw DomainError("block prefix digit " + std::to_string(d) + " not below C");
  std::vector<Address> out;
  out.reserve(std::size_t{g.C()} * g.C());
  Address a{g.L(), w};
  a.digits.resize(g.L());
  for (Digit i = 0; i < g.C(); ++i)
    for (Digit j = 0; j < g.C(); ++j) {
      a.digits[g.L() - 2] = i;
      a.digits[g.L() - 1] = j;
      out.push_back(a);
    }
  return out;
}

/// The C-clique at level r whose members share the (r-1)-digit prefix.
inline std::vector<Address> clique_members(const PyramidGraph& g, unsigned r,
                                           const std::vector<Digit>& prefix) {
  if (r < std::max(1u, g.min_level()) || r > g.L())
    throw DomainError("clique level " + std::to_string(r) + " not in graph");
  if (prefix.size() != r - 1)
    throw DomainError("clique prefix must have r-1 = " + std::to_string(r - 1) + " digits");
  for (Digit d : prefix)
    if (d >= g.C()) throw DomainError("clique prefix digit " + std::to_string(d) + " not below C");
  std::vector<Address> out;
  Address a{r, prefix};
  a.digits.push_back(0);
  for (Digit j = 0; j < g.C(); ++j) {
    a.digits.back() = j;
    out.push_back(a);
  }
  return out;
}

inline std::size_t induced_edge_count(const PyramidGraph& g, const std::vector<Address>& members) {
  VertexSet in(g.order());
  for (const auto& a : members) in.insert(g.ordinal(a));
  std::size_t twice = 0;
  in.for_each([&](Vertex u) {
    for (Vertex v : g.neighbors(u))
      if (in.contains(v)) ++twice;
  });
  return twice / 2;
}

/// The level-L edge joining blocks V_w and V_w2, found by scanning all
/// candidate pairs. Absent when the contracted blocks are not adjacent.
inline std::optional<EdgeRef> crossing_edge(const PyramidGraph& g, const std::vector<Digit>& w,
                                            const std::vector<Digit>& w2) {
  if (g.L() < 3) throw DomainError("crossing edges need L >= 3");
  if (w == w2) throw DomainError("crossing edge needs two distinct blocks");
  const auto a = gw_subgraph(g, w);
  const auto b = gw_subgraph(g, w2);
  std::optional<EdgeRef> found;
  for (const auto& x : a) {
    const auto u = g.ordinal(x);
    for (const auto& y : b) {
      const auto v = g.ordinal(y);
      if (!g.adjacent(u, v)) continue;
      if (found) throw ConsistencyError("more than one edge between two G_w blocks");
      found = EdgeRef::of(u, v);
    }
  }
  return found;
}

}  // namespace wkp
