#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "wkpyramid/errors.hpp"
#include "wkpyramid/propagation.hpp"
#include "wkpyramid/topology.hpp"

namespace wkp {

inline constexpr std::uint64_t kDefaultMaxChecks = 10'000'000;

struct SearchProgress {
  unsigned cardinality = 0;
  std::uint64_t done = 0;   // subsets checked at this cardinality
  std::uint64_t total = 0;  // subsets of this cardinality
};

/// Limits of an exhaustive search. A "check" is one propagation run.
struct SearchBudget {
  std::uint64_t max_checks = kDefaultMaxChecks;
  std::optional<unsigned> max_cardinality;
  std::size_t witness_cap = 64;
  unsigned threads = 1;
  std::function<void(const SearchProgress&)> progress;
};

struct ExactResult {
  unsigned gamma = 0;
  /// Lexicographically first optimal sets, at most witness_cap of them.
  std::vector<std::vector<Vertex>> witnesses;
  std::uint64_t witness_count = 0;
  /// Minimum radius over the optimal sets that were enumerated.
  std::size_t radius = 0;
  /// True iff every set of size gamma was enumerated, so `radius` is the
  /// graph's k-propagation radius.
  bool exhausted = false;
  std::uint64_t checks_performed = 0;
};

// ---------------------------------------------------------------------------
// Combinations in lexicographic order

namespace combinatorics {

/// Binomial coefficient, saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > detail::kSaturated) return detail::kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

/// The rank-th s-subset of {0..n-1} in lexicographic order.
inline std::vector<Vertex> unrank(std::uint64_t n, unsigned s, std::uint64_t rank) {
  std::vector<Vertex> out;
  out.reserve(s);
  std::uint64_t c = 0;
  for (unsigned i = 0; i < s; ++i) {
    for (;; ++c) {
      const auto count = binomial(n - c - 1, s - i - 1);
      if (rank < count) break;
      rank -= count;
    }
    out.push_back(static_cast<Vertex>(c++));
  }
  return out;
}

/// Advances to the next s-subset in lexicographic order; false past the end.
inline bool next(std::vector<Vertex>& comb, std::uint64_t n) {
  const std::size_t s = comb.size();
  for (std::size_t i = s; i-- > 0;) {
    if (comb[i] < n - (s - i)) {
      ++comb[i];
      for (std::size_t j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace combinatorics

// ---------------------------------------------------------------------------
// Level scan

namespace detail {

struct LevelScan {
  std::uint64_t checked = 0;
  std::uint64_t successes = 0;
  std::uint64_t flagged = 0;
  std::vector<std::vector<Vertex>> first;
  std::optional<std::size_t> min_radius;
};

struct ScanRequest {
  unsigned cardinality = 0;
  std::uint64_t limit = 0;       // scan ranks [0, limit)
  std::size_t witness_cap = 0;
  bool stop_at_first = false;
  std::function<bool(std::span<const Vertex>)> flag;  // counted among successes
};

inline constexpr std::uint64_t kScanBlock = 4096;

/// Checks the first `limit` s-subsets in lexicographic order. Work is split
/// into fixed rank blocks that workers claim in any order; per-block
/// results are merged by block index, so the outcome does not depend on the
/// thread count (except `checked` when stop_at_first cuts the scan short).
inline LevelScan scan_level(const PyramidGraph& g, unsigned k, const ScanRequest& req, unsigned threads,
                            const std::function<void(const SearchProgress&)>& progress) {
  const std::uint64_t n = g.order();
  const std::uint64_t total = combinatorics::binomial(n, req.cardinality);
  const std::uint64_t blocks = (req.limit + kScanBlock - 1) / kScanBlock;
  std::vector<LevelScan> per_block(blocks);
  std::atomic<std::uint64_t> next_block{0};
  std::atomic<bool> found{false};
  std::atomic<std::uint64_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    Propagator engine(g, k);
    for (;;) {
      if (req.stop_at_first && found.load(std::memory_order_relaxed)) return;
      const auto b = next_block.fetch_add(1);
      if (b >= blocks) return;
      const auto lo = b * kScanBlock;
      const auto hi = std::min(req.limit, lo + kScanBlock);
      auto& out = per_block[b];
      auto comb = combinatorics::unrank(n, req.cardinality, lo);
      for (auto r = lo; r < hi; ++r) {
        ++out.checked;
        if (auto i0 = engine.run(comb)) {
          ++out.successes;
          if (out.first.size() < req.witness_cap) out.first.push_back(comb);
          const auto radius = *i0 + 1;
          if (!out.min_radius || radius < *out.min_radius) out.min_radius = radius;
          if (req.flag && req.flag(comb)) ++out.flagged;
          if (req.stop_at_first) {
            found = true;
            break;
          }
        }
        if (r + 1 < hi) combinatorics::next(comb, n);
      }
      const auto so_far = done.fetch_add(hi - lo) + (hi - lo);
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress({req.cardinality, so_far, total});
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(blocks, 1))));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  LevelScan merged;
  for (auto& b : per_block) {
    merged.checked += b.checked;
    merged.successes += b.successes;
    merged.flagged += b.flagged;
    for (auto& w : b.first)
      if (merged.first.size() < req.witness_cap) merged.first.push_back(std::move(w));
    if (b.min_radius && (!merged.min_radius || *b.min_radius < *merged.min_radius))
      merged.min_radius = b.min_radius;
  }
  return merged;
}

inline unsigned cardinality_ceiling(const PyramidGraph& g, const SearchBudget& budget) {
  const auto n = static_cast<unsigned>(g.order());
  return budget.max_cardinality ? std::min(*budget.max_cardinality, n) : n;
}

inline std::string budget_message(const PyramidGraph& g, unsigned k, unsigned exhausted_below,
                                  std::uint64_t checks) {
  return "search budget exceeded on " + std::string(to_string(g.family())) + "_(" + std::to_string(g.C()) +
         "," + std::to_string(g.L()) + ") with k=" + std::to_string(k) + " after " + std::to_string(checks) +
         " checks; certified gamma > " + std::to_string(exhausted_below);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations

/// Smallest k-PDS by ascending-cardinality exhaustive search. At the first
/// cardinality with a success the whole level is enumerated (budget
/// permitting), which yields every optimal set and the propagation radius.
inline ExactResult min_kpds(const PyramidGraph& g, unsigned k, const SearchBudget& budget = {}) {
  const std::uint64_t n = g.order();
  std::uint64_t checks = 0;
  const unsigned ceiling = detail::cardinality_ceiling(g, budget);
  for (unsigned s = 1; s <= ceiling; ++s) {
    const auto total = combinatorics::binomial(n, s);
    const auto limit = std::min(total, budget.max_checks - checks);
    if (limit == 0) throw BudgetExceeded(detail::budget_message(g, k, s - 1, checks), s - 1);
    detail::ScanRequest req{s, limit, budget.witness_cap, false, {}};
    const auto scan = detail::scan_level(g, k, req, budget.threads, budget.progress);
    checks += scan.checked;
    if (scan.successes > 0) {
      ExactResult r;
      r.gamma = s;
      r.witnesses = std::move(scan.first);
      r.witness_count = scan.successes;
      r.radius = *scan.min_radius;
      r.exhausted = limit == total;
      r.checks_performed = checks;
      return r;
    }
    if (limit < total) throw BudgetExceeded(detail::budget_message(g, k, s - 1, checks), s - 1);
  }
  throw BudgetExceeded(detail::budget_message(g, k, ceiling, checks), ceiling);
}

/// rad_{P,k}(G): minimum radius over all minimum k-PDS.
inline std::size_t propagation_radius(const PyramidGraph& g, unsigned k, const SearchBudget& budget = {}) {
  const auto r = min_kpds(g, k, budget);
  if (!r.exhausted)
    throw BudgetExceeded("search budget exceeded while enumerating every minimum " + std::to_string(k) +
                             "-PDS (gamma = " + std::to_string(r.gamma) + ")",
                         r.gamma - 1);
  return r.radius;
}

/// Outcome of checking all cardinalities below a bound that fit the budget.
struct LowerBoundProbe {
  unsigned bound = 0;
  /// Every set of size <= certified_through was checked; none is a k-PDS
  /// (unless refuted).
  unsigned certified_through = 0;
  bool complete = false;  // all sizes < bound checked
  bool refuted = false;   // a k-PDS of size < bound exists
  std::uint64_t checks_performed = 0;
};

/// Non-throwing lower-bound probe: walks s = 1, 2, ..., bound-1 and stops
/// before the first cardinality whose full level would overrun the budget.
inline LowerBoundProbe probe_lower_bound(const PyramidGraph& g, unsigned k, unsigned bound,
                                         const SearchBudget& budget = {}) {
  LowerBoundProbe probe;
  probe.bound = bound;
  const std::uint64_t n = g.order();
  for (unsigned s = 1; s < bound; ++s) {
    const auto total = combinatorics::binomial(n, s);
    if (total > budget.max_checks - probe.checks_performed) return probe;
    detail::ScanRequest req{s, total, 0, true, {}};
    const auto scan = detail::scan_level(g, k, req, budget.threads, budget.progress);
    probe.checks_performed += scan.checked;
    if (scan.successes > 0) {
      probe.refuted = true;
      return probe;
    }
    probe.certified_through = s;
  }
  probe.complete = true;
  return probe;
}

/// True iff no set of size < bound is a k-PDS.
inline bool verify_lower_bound(const PyramidGraph& g, unsigned k, unsigned bound,
                               const SearchBudget& budget = {}) {
  const auto probe = probe_lower_bound(g, k, bound, budget);
  if (probe.refuted) return false;
  if (probe.complete) return true;
  throw BudgetExceeded(detail::budget_message(g, k, probe.certified_through, probe.checks_performed),
                       probe.certified_through);
}

/// True iff every minimum k-PDS of WKP_(C,2) (C >= 3, 1 <= k <= C-1)
/// contains a level-1 vertex.
inline bool level1_intersection_check(const PyramidGraph& g, unsigned k, const SearchBudget& budget = {}) {
  if (g.family() != Family::WKP || g.L() != 2 || g.C() < 3 || k < 1 || k > g.C() - 1)
    throw RegimeError("level-1 intersection check applies to WKP_(C,2) with C >= 3 and 1 <= k <= C-1");
  const auto gamma = min_kpds(g, k, budget);
  if (!gamma.exhausted)
    throw BudgetExceeded("search budget exceeded while enumerating minimum sets", gamma.gamma - 1);
  const auto [first, last] = g.level_range(1);
  detail::ScanRequest req{gamma.gamma, combinatorics::binomial(g.order(), gamma.gamma), 0, false,
                          [first = first, last = last](std::span<const Vertex> set) {
                            return std::none_of(set.begin(), set.end(),
                                                [&](Vertex v) { return v >= first && v < last; });
                          }};
  const auto scan = detail::scan_level(g, k, req, budget.threads, budget.progress);
  return scan.flagged == 0;
}

}  // namespace wkp
