#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wkpyramid/errors.hpp"
#include "wkpyramid/propagation.hpp"
#include "wkpyramid/topology.hpp"

namespace wkp {

enum class Regime {
  TrivialOne,         // C = 1 or L = 1 or k >= C
  Level2,             // L = 2, C >= 2, 1 <= k <= C-1
  General,            // L >= 3, C >= 3, 1 <= k <= C-2
  KEqCMinus1Upper,    // L >= 3, C >= 2, k = C-1
};

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::TrivialOne: return "TRIVIAL_ONE";
    case Regime::Level2: return "LEVEL2";
    case Regime::General: return "GENERAL";
    case Regime::KEqCMinus1Upper: return "K_EQ_C_MINUS_1_UPPER";
  }
  return "?";
}

inline Regime regime_of(std::uint32_t C, unsigned L, unsigned k) {
  if (C < 1 || L < 1) throw DomainError("C and L must be >= 1");
  if (k == 0) throw RegimeError("k = 0 is plain domination; the regime table covers k >= 1");
  if (C == 1 || L == 1 || k >= C) return Regime::TrivialOne;
  if (L == 2) return Regime::Level2;
  if (k == C - 1) return Regime::KEqCMinus1Upper;
  return Regime::General;
}

/// gamma_{P,k}(WKP_(C,L)) from the closed formula: an exact value, or an
/// upper bound in the k = C-1, L >= 3 regime.
struct GammaValue {
  std::uint64_t value = 0;
  bool exact = true;

  friend bool operator==(const GammaValue&, const GammaValue&) = default;
};

inline GammaValue gamma_formula(std::uint32_t C, unsigned L, unsigned k) {
  switch (regime_of(C, L, k)) {
    case Regime::TrivialOne: return {1, true};
    case Regime::Level2: return {std::uint64_t{C} - k, true};
    case Regime::General:
      return {detail::sat_mul(std::uint64_t{C} - k - 1, detail::sat_pow(C, L - 2)), true};
    case Regime::KEqCMinus1Upper: return {(std::uint64_t{L} + 1 + 2) / 3, false};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Hamiltonian orders of WK_(C,m)

using DigitString = std::vector<Digit>;

/// Cyclic order of all C^m digit strings; cyclically consecutive entries
/// are adjacent in WK_(C,m).
struct HamCycle {
  std::uint32_t C = 0;
  unsigned m = 0;
  std::vector<DigitString> order;
};

/// Hamiltonian path of WK_(C,m) from the extreme vertex from^m to to^m.
/// Sub-meshes are visited as from, the rest ascending, to; each one is
/// crossed by a recursive path between the extremes facing its
/// predecessor and successor.
inline std::vector<DigitString> ham_path_wk(std::uint32_t C, unsigned m, Digit from, Digit to) {
  if (C < 2 || m < 1) throw DomainError("Hamiltonian path needs C >= 2 and m >= 1");
  if (from == to || from >= C || to >= C) throw DomainError("path endpoints must be distinct digits below C");

  std::vector<Digit> blocks{from};
  for (Digit d = 0; d < C; ++d)
    if (d != from && d != to) blocks.push_back(d);
  blocks.push_back(to);

  std::vector<DigitString> out;
  if (m == 1) {
    for (Digit d : blocks) out.push_back({d});
    return out;
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Digit entry = i == 0 ? from : blocks[i - 1];
    const Digit exit = i + 1 == blocks.size() ? to : blocks[i + 1];
    for (auto& tail : ham_path_wk(C, m - 1, entry, exit)) {
      DigitString s{blocks[i]};
      s.insert(s.end(), tail.begin(), tail.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

/// Hamiltonian cycle of WK_(C,m): sub-meshes 0, 1, ..., C-1 in turn, joined
/// by the bridge between sub-meshes i and i+1.
inline HamCycle ham_cycle_wk(std::uint32_t C, unsigned m) {
  if (C < 3) throw DomainError("WK_(C,m) has no Hamiltonian cycle for C < 3");
  if (m < 1) throw DomainError("m must be >= 1");
  HamCycle cycle{C, m, {}};
  if (m == 1) {
    for (Digit d = 0; d < C; ++d) cycle.order.push_back({d});
    return cycle;
  }
  for (Digit i = 0; i < C; ++i) {
    const Digit pred = (i + C - 1) % C;
    const Digit succ = (i + 1) % C;
    for (auto& tail : ham_path_wk(C, m - 1, pred, succ)) {
      DigitString s{i};
      s.insert(s.end(), tail.begin(), tail.end());
      cycle.order.push_back(std::move(s));
    }
  }
  return cycle;
}

/// Checks a cyclic order against the adjacency of `wk` (which must be
/// WK_(C,m)): every vertex exactly once, consecutive entries adjacent.
inline bool is_hamiltonian_cycle(const PyramidGraph& wk, const HamCycle& cycle) {
  if (wk.family() != Family::WK || wk.C() != cycle.C || wk.L() != cycle.m) return false;
  if (cycle.order.size() != wk.order()) return false;
  VertexSet seen(wk.order());
  std::vector<Vertex> ids;
  for (const auto& s : cycle.order) {
    const auto v = wk.find(Address{cycle.m, s});
    if (!v || seen.contains(*v)) return false;
    seen.insert(*v);
    ids.push_back(*v);
  }
  if (ids.size() < 3) return false;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!wk.adjacent(ids[i], ids[(i + 1) % ids.size()])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

namespace detail {

inline void require_wkp(const PyramidGraph& g) {
  if (g.family() != Family::WKP) throw DomainError("constructions apply to WKP graphs only");
}

inline void require_regime(const PyramidGraph& g, unsigned k, Regime want, std::string_view what) {
  const auto got = regime_of(g.C(), g.L(), k);
  if (got != want)
    throw RegimeError(std::string(what) + " needs regime " + std::string(to_string(want)) +
                      ", but (C,L,k)=(" + std::to_string(g.C()) + "," + std::to_string(g.L()) + "," +
                      std::to_string(k) + ") is " + std::string(to_string(got)));
}

inline void require_verified(const PyramidGraph& g, unsigned k, std::span<const Vertex> set,
                             std::string_view what) {
  if (!is_kpds(g, k, set))
    throw ConsistencyError(std::string(what) + " produced a set that is not a " + std::to_string(k) +
                           "-PDS of WKP_(" + std::to_string(g.C()) + "," + std::to_string(g.L()) + ")");
}

}  // namespace detail

/// {apex}. Valid whenever C = 1, L = 1 or k >= C.
inline std::vector<Vertex> construct_trivial(const PyramidGraph& g, unsigned k) {
  detail::require_wkp(g);
  detail::require_regime(g, k, Regime::TrivialOne, "construct_trivial");
  return {g.ordinal(Address::apex())};
}

/// {(1,(i)) : k <= i <= C-1}, the C-k level-1 vertices with the largest
/// digits. Covers k = C-1 at L = 2 as well.
inline std::vector<Vertex> construct_level2(const PyramidGraph& g, unsigned k) {
  detail::require_wkp(g);
  detail::require_regime(g, k, Regime::Level2, "construct_level2");
  std::vector<Vertex> out;
  for (Digit i = k; i < g.C(); ++i) out.push_back(g.ordinal(Address{1, {i}}));
  return out;
}

/// Per-block record of the general construction, kept for diagnostics.
struct GeneralBlock {
  DigitString w;
  EdgeRef incoming;            // x x' with x' in this block
  EdgeRef outgoing;            // y' y'' with y' in this block
  Digit incoming_clique = 0;   // i' where x' = (L, w i' i')
  Digit outgoing_clique = 0;   // j  where y' = (L, w j j)
  std::vector<Vertex> chosen;  // (L-1, w j) followed by the extra level-L vertices
};

/// Threads the G_w blocks of level L along a Hamiltonian cycle of the
/// contracted WK_(C,L-2). For each block: the parent of the outgoing
/// crossing endpoint y' = (L, w j j), plus one vertex from each of the
/// C-k-2 lowest cliques other than those of x' and y'. Each extra vertex is
/// the lowest clique member that is not extreme in the block.
inline std::vector<GeneralBlock> general_blocks(const PyramidGraph& g, unsigned k) {
  detail::require_wkp(g);
  detail::require_regime(g, k, Regime::General, "construct_general");
  const auto C = g.C();
  const auto L = g.L();
  const auto cycle = ham_cycle_wk(C, L - 2);
  const auto n = cycle.order.size();

  auto endpoint_in = [&](const EdgeRef& e, const DigitString& w) -> const Address& {
    for (Vertex v : {e.u, e.v}) {
      const auto& a = g.address(v);
      if (std::equal(w.begin(), w.end(), a.digits.begin())) return a;
    }
    throw ConsistencyError("crossing edge has no endpoint in its block");
  };
  auto repeated_pair = [&](const Address& a) {
    const auto i = a.digits[L - 2];
    if (a.digits[L - 1] != i)
      throw ConsistencyError("crossing edge endpoint " + to_string(a, C) + " is not of the form (L,(w a a))");
    return i;
  };
  auto crossing = [&](const DigitString& a, const DigitString& b) {
    auto e = crossing_edge(g, a, b);
    if (!e) throw ConsistencyError("consecutive blocks of the Hamiltonian order share no edge");
    return *e;
  };

  std::vector<GeneralBlock> blocks;
  blocks.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    GeneralBlock b;
    b.w = cycle.order[p];
    const auto& prev = cycle.order[(p + n - 1) % n];
    const auto& next = cycle.order[(p + 1) % n];
    b.incoming = crossing(prev, b.w);
    b.outgoing = crossing(b.w, next);
    b.incoming_clique = repeated_pair(endpoint_in(b.incoming, b.w));
    b.outgoing_clique = repeated_pair(endpoint_in(b.outgoing, b.w));
    if (b.incoming_clique == b.outgoing_clique)
      throw ConsistencyError("incoming and outgoing crossing edges of block " + render_digits(b.w, C) +
                             " attach to the same clique");

    Address parent{L - 1, b.w};
    parent.digits.push_back(b.outgoing_clique);
    b.chosen.push_back(g.ordinal(parent));

    unsigned extra = C - k - 2;
    for (Digit t = 0; t < C && extra > 0; ++t) {
      if (t == b.incoming_clique || t == b.outgoing_clique) continue;
      Address pick{L, b.w};
      pick.digits.push_back(t);
      pick.digits.push_back(t == 0 ? 1 : 0);
      b.chosen.push_back(g.ordinal(pick));
      --extra;
    }
    if (extra != 0) throw ConsistencyError("not enough admissible cliques in block " + render_digits(b.w, C));
    blocks.push_back(std::move(b));
  }
  return blocks;
}

inline std::vector<Vertex> construct_general(const PyramidGraph& g, unsigned k) {
  std::vector<Vertex> out;
  for (const auto& b : general_blocks(g, k)) out.insert(out.end(), b.chosen.begin(), b.chosen.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  const auto want = gamma_formula(g.C(), g.L(), k).value;
  if (out.size() != want)
    throw ConsistencyError("general construction has " + std::to_string(out.size()) + " vertices, expected " +
                           std::to_string(want));
  detail::require_verified(g, k, out, "construct_general");
  return out;
}

/// The three residue cases of L mod 3 for k = C-1; returns the set and the
/// case number (1: L=3m, 2: L=3m+1, 3: L=3m+2).
inline std::pair<std::vector<Vertex>, int> construct_kc1_case(const PyramidGraph& g) {
  detail::require_wkp(g);
  if (g.C() < 2) throw RegimeError("construct_kc1 needs C >= 2");
  const unsigned k = g.C() - 1;
  detail::require_regime(g, k, Regime::KEqCMinus1Upper, "construct_kc1");
  const unsigned L = g.L();
  const unsigned m = L / 3;
  auto zeros = [&](unsigned r) { return g.ordinal(Address{r, std::vector<Digit>(r, 0)}); };

  std::vector<Vertex> out;
  int which = 0;
  switch (L % 3) {
    case 0:
      for (unsigned i = 1; i <= m; ++i) out.push_back(zeros(3 * i - 1));
      out.push_back(g.ordinal(Address::apex()));
      which = 1;
      break;
    case 1:
      for (unsigned i = 1; i <= m; ++i) out.push_back(zeros(3 * i));
      out.push_back(zeros(1));
      which = 2;
      break;
    default:
      for (unsigned i = 1; i <= m + 1; ++i) out.push_back(zeros(3 * i - 2));
      which = 3;
      break;
  }
  std::sort(out.begin(), out.end());
  detail::require_verified(g, k, out, "construct_kc1");
  return {std::move(out), which};
}

inline std::vector<Vertex> construct_kc1(const PyramidGraph& g) { return construct_kc1_case(g).first; }

/// Picks the construction for the regime of (C, L, k) and certifies it.
/// Provenance tags: trivial-apex, level2, general-hamiltonian, kc1-case{1,2,3}.
inline PdsCertificate construct(const PyramidGraph& g, unsigned k) {
  detail::require_wkp(g);
  std::vector<Vertex> set;
  std::string tag;
  switch (regime_of(g.C(), g.L(), k)) {
    case Regime::TrivialOne:
      set = construct_trivial(g, k);
      tag = "trivial-apex";
      break;
    case Regime::Level2:
      set = construct_level2(g, k);
      tag = "level2";
      break;
    case Regime::General:
      set = construct_general(g, k);
      tag = "general-hamiltonian";
      break;
    case Regime::KEqCMinus1Upper: {
      auto [s, which] = construct_kc1_case(g);
      set = std::move(s);
      tag = "kc1-case" + std::to_string(which);
      break;
    }
  }
  auto cert = certify(g, k, std::move(set), std::move(tag));
  if (!cert.is_kpds) throw ConsistencyError("construction " + cert.provenance + " failed verification");
  return cert;
}

}  // namespace wkp
