#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wkpyramid/errors.hpp"
#include "wkpyramid/topology.hpp"
#include "wkpyramid/vertex_set.hpp"

namespace wkp {

/// first_step value of a vertex the process never reaches.
inline constexpr std::size_t kNeverMonitored = std::numeric_limits<std::size_t>::max();

/// The monitored sets P^0 ⊆ P^1 ⊆ ... ⊆ P^{i0} of one seed. The process
/// stops at the first round covering every vertex or, when it stalls, one
/// round after the last change (so the final two rounds are equal).
struct MonitorTrace {
  unsigned k = 0;
  std::vector<Vertex> seed;
  std::vector<VertexSet> rounds;
  std::vector<std::size_t> first_step;

  bool covers_all() const { return !rounds.empty() && rounds.back().is_full(); }

  /// 1 + the first round index at which every vertex is monitored.
  std::optional<std::size_t> radius() const {
    if (!covers_all()) return std::nullopt;
    return rounds.size();
  }
};

namespace detail {

inline void check_seed(const PyramidGraph& g, std::span<const Vertex> seed) {
  for (Vertex v : seed)
    if (v >= g.order())
      throw DomainError("vertex ordinal " + std::to_string(v) + " out of range (order " +
                        std::to_string(g.order()) + ")");
}

}  // namespace detail

inline VertexSet closed_neighborhood(const PyramidGraph& g, std::span<const Vertex> seed) {
  detail::check_seed(g, seed);
  VertexSet out(g.order());
  for (Vertex v : seed) {
    out.insert(v);
    for (Vertex u : g.neighbors(v)) out.insert(u);
  }
  return out;
}

inline VertexSet closed_neighborhood(const PyramidGraph& g, const VertexSet& seed) {
  return closed_neighborhood(g, seed.to_vector());
}

/// One simultaneous round: the union of N[v] over every v in P with at most
/// k members of N[v] outside P. Counts are taken against P as given, never
/// against vertices added earlier in the same round.
inline VertexSet propagate_round(const PyramidGraph& g, unsigned k, const VertexSet& monitored) {
  if (monitored.universe() != g.order()) throw DomainError("vertex set universe does not match graph");
  VertexSet next = monitored;
  monitored.for_each([&](Vertex v) {
    std::size_t missing = 0;
    for (Vertex u : g.neighbors(v))
      if (!monitored.contains(u)) ++missing;
    if (missing == 0 || missing > k) return;
    for (Vertex u : g.neighbors(v)) next.insert(u);
  });
  return next;
}

/// Reusable propagation engine. Keeps, per vertex, the number of members of
/// its closed neighborhood that are still unmonitored; a round first
/// freezes the set of firing vertices, then applies their additions.
/// Buffers are reused between runs, so one engine per thread.
class Propagator {
 public:
  Propagator(const PyramidGraph& g, unsigned k)
      : g_(&g), k_(k), step_(g.order()), missing_(g.order()) {}

  const PyramidGraph& graph() const noexcept { return *g_; }
  unsigned k() const noexcept { return k_; }

  /// Runs the process to its end. Returns the index i0 of the first round
  /// with P^{i0} = V, or nullopt if it stalls short of V.
  std::optional<std::size_t> run(std::span<const Vertex> seed) {
    const auto& g = *g_;
    const std::size_t n = g.order();
    for (std::size_t v = 0; v < n; ++v) {
      step_[v] = kNeverMonitored;
      missing_[v] = static_cast<std::uint32_t>(g.degree(static_cast<Vertex>(v)) + 1);
    }
    monitored_count_ = 0;
    active_.clear();
    fresh_.clear();

    for (Vertex s : seed) {
      mark(s, 0);
      for (Vertex u : g.neighbors(s)) mark(u, 0);
    }
    active_.swap(fresh_);
    last_round_ = 0;

    for (std::size_t round = 0;; ++round) {
      if (monitored_count_ == n) {
        last_round_ = round;
        return round;
      }
      firing_.clear();
      std::size_t keep = 0;
      for (Vertex v : active_) {
        if (missing_[v] == 0) continue;
        active_[keep++] = v;
        if (missing_[v] <= k_) firing_.push_back(v);
      }
      active_.resize(keep);
      if (firing_.empty()) {
        last_round_ = round + 1;
        return std::nullopt;
      }
      fresh_.clear();
      for (Vertex v : firing_)
        for (Vertex u : g.neighbors(v)) mark(u, round + 1);
      active_.insert(active_.end(), fresh_.begin(), fresh_.end());
    }
  }

  /// Step at which each vertex entered the monitored set, from the last run.
  const std::vector<std::size_t>& first_step() const noexcept { return step_; }

  /// Index of the last recorded round of the last run (a stalled run
  /// records one extra, unchanged round).
  std::size_t last_round() const noexcept { return last_round_; }

 private:
  void mark(Vertex u, std::size_t round) {
    if (step_[u] != kNeverMonitored) return;
    step_[u] = round;
    ++monitored_count_;
    fresh_.push_back(u);
    --missing_[u];
    for (Vertex w : g_->neighbors(u)) --missing_[w];
  }

  const PyramidGraph* g_;
  unsigned k_;
  std::vector<std::size_t> step_;
  std::vector<std::uint32_t> missing_;
  std::vector<Vertex> active_;
  std::vector<Vertex> fresh_;
  std::vector<Vertex> firing_;
  std::size_t monitored_count_ = 0;
  std::size_t last_round_ = 0;
};

inline MonitorTrace propagate_fixpoint(const PyramidGraph& g, unsigned k, std::span<const Vertex> seed) {
  detail::check_seed(g, seed);
  Propagator engine(g, k);
  engine.run(seed);
  MonitorTrace trace;
  trace.k = k;
  trace.seed.assign(seed.begin(), seed.end());
  trace.first_step = engine.first_step();
  const auto last = engine.last_round();
  trace.rounds.assign(last + 1, VertexSet(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto s = trace.first_step[v];
    if (s == kNeverMonitored) continue;
    for (std::size_t i = s; i <= last; ++i) trace.rounds[i].insert(v);
  }
  return trace;
}

inline bool is_kpds(const PyramidGraph& g, unsigned k, std::span<const Vertex> seed) {
  detail::check_seed(g, seed);
  Propagator engine(g, k);
  return engine.run(seed).has_value();
}

/// 1 + min{i : P^i = V}; nullopt (infinite) when the seed is not a k-PDS.
inline std::optional<std::size_t> radius_of_set(const PyramidGraph& g, unsigned k,
                                                std::span<const Vertex> seed) {
  detail::check_seed(g, seed);
  Propagator engine(g, k);
  if (auto i0 = engine.run(seed)) return *i0 + 1;
  return std::nullopt;
}

/// A seed set together with its verification.
struct PdsCertificate {
  std::vector<Vertex> set;
  bool is_kpds = false;
  std::optional<std::size_t> radius;
  MonitorTrace trace;
  std::string provenance = "user";
};

inline PdsCertificate certify(const PyramidGraph& g, unsigned k, std::vector<Vertex> seed,
                              std::string provenance = "user") {
  PdsCertificate cert;
  cert.trace = propagate_fixpoint(g, k, seed);
  cert.is_kpds = cert.trace.covers_all();
  cert.radius = cert.trace.radius();
  cert.set = std::move(seed);
  cert.provenance = std::move(provenance);
  return cert;
}

}  // namespace wkp
