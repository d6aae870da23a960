#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wkpyramid/constructions.hpp"
#include "wkpyramid/exact.hpp"
#include "wkpyramid/invariants.hpp"
#include "wkpyramid/propagation.hpp"
#include "wkpyramid/reference.hpp"
#include "wkpyramid/serialize.hpp"
#include "wkpyramid/topology.hpp"

namespace wkp::repro {

enum class Status { Match, BoundHolds, SkippedBudget, Mismatch, BoundViolated, Error };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Match: return "match";
    case Status::BoundHolds: return "bound-holds";
    case Status::SkippedBudget: return "skipped-budget";
    case Status::Mismatch: return "mismatch";
    case Status::BoundViolated: return "bound-violated";
    case Status::Error: return "error";
  }
  return "?";
}

struct Row {
  int criterion = 0;
  std::string claim;
  std::string expected;
  std::string computed;
  Status status = Status::Error;
  /// Budget-limited rows may end in skipped-budget without failing.
  bool skip_allowed = false;

  bool passed() const {
    return status == Status::Match || status == Status::BoundHolds ||
           (status == Status::SkippedBudget && skip_allowed);
  }
};

struct Report {
  std::vector<Row> rows;

  bool passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.passed(); });
  }
  bool criterion_passed(int c) const {
    bool any = false;
    for (const auto& r : rows)
      if (r.criterion == c) {
        any = true;
        if (!r.passed()) return false;
      }
    return any;
  }
};

struct Options {
  SearchBudget budget;
  /// Check budget of the partial lower-bound enumeration for WKP_(4,3), k=1.
  std::uint64_t partial_budget = 40'000'000;
};

inline constexpr int kCriteria = 9;

inline std::string_view criterion_title(int c) {
  switch (c) {
    case 1: return "gamma = C-k on WKP_(C,2)";
    case 2: return "gamma = (C-k-1) C^(L-2) for L >= 3";
    case 3: return "gamma = 1 when C = 1, L = 1 or k >= C";
    case 4: return "k = C-1 construction of size ceil((L+1)/3)";
    case 5: return "propagation radius of WKP_(C,2)";
    case 6: return "propagation radius of WKP_(1,L)";
    case 7: return "radius bounds of the constructions";
    case 8: return "minimum sets of WKP_(C,2) meet level 1";
    case 9: return "property suites";
  }
  return "?";
}

namespace detail {

inline std::string params(std::uint32_t C, unsigned L, unsigned k) {
  return "(C,L,k)=(" + std::to_string(C) + "," + std::to_string(L) + "," + std::to_string(k) + ")";
}

inline Row exact_row(int criterion, std::string claim, std::uint64_t expected, std::uint64_t got) {
  return {criterion, std::move(claim), std::to_string(expected), std::to_string(got),
          expected == got ? Status::Match : Status::Mismatch};
}

/// Runs `body`, turning library errors into error/skipped rows.
inline void guarded(Report& report, int criterion, const std::string& claim, bool skip_allowed,
                    const std::function<void()>& body) {
  try {
    body();
  } catch (const BudgetExceeded& ex) {
    report.rows.push_back({criterion, claim, "-", ex.what(), Status::SkippedBudget, skip_allowed});
  } catch (const std::exception& ex) {
    report.rows.push_back({criterion, claim, "-", ex.what(), Status::Error});
  }
}

// --- criterion 9 helpers ------------------------------------------------

inline std::vector<std::vector<Vertex>> small_subsets(std::size_t n, unsigned max_size) {
  std::vector<std::vector<Vertex>> out{{}};
  for (unsigned s = 1; s <= max_size && s <= n; ++s) {
    auto comb = combinatorics::unrank(n, s, 0);
    do out.push_back(comb);
    while (combinatorics::next(comb, n));
  }
  return out;
}

struct PropertyTally {
  std::size_t checked = 0;
  std::optional<std::string> failure;

  void fail(std::string why) {
    if (!failure) failure = std::move(why);
  }
};

inline Row property_row(std::string claim, const PropertyTally& t) {
  return {9, std::move(claim), "holds",
          t.failure ? *t.failure : std::to_string(t.checked) + " cases hold",
          t.failure ? Status::Mismatch : Status::Match};
}

inline std::string seed_text(const PyramidGraph& g, std::span<const Vertex> s) {
  return addresses_json(g, s).dump();
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline void criterion1(Report& report, const Options& opt) {
  const std::vector<std::pair<unsigned, unsigned>> cases{{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}, {5, 4}};
  for (auto [C, k] : cases) {
    const auto claim = "gamma WKP " + detail::params(C, 2, k);
    detail::guarded(report, 1, claim, false, [&] {
      const auto g = build_wkp(C, 2);
      report.rows.push_back(detail::exact_row(1, claim, C - k, min_kpds(g, k, opt.budget).gamma));
    });
  }
}

inline void criterion2(Report& report, const Options& opt) {
  {
    const auto claim = "gamma WKP " + detail::params(3, 3, 1);
    detail::guarded(report, 2, claim, false, [&] {
      const auto g = build_wkp(3, 3);
      report.rows.push_back(detail::exact_row(2, claim, 3, min_kpds(g, 1, opt.budget).gamma));
    });
  }
  const auto g = build_wkp(4, 3);
  {
    const auto claim = "construct_general " + detail::params(4, 3, 1) + " is a verified k-PDS of size";
    detail::guarded(report, 2, claim, false, [&] {
      const auto set = construct_general(g, 1);
      const bool ok = set.size() == 8 && is_kpds(g, 1, set);
      report.rows.push_back({2, claim, "8", std::to_string(set.size()) + (ok ? ", is_kpds" : ", NOT a k-PDS"),
                             ok ? Status::Match : Status::Mismatch});
    });
  }
  {
    const auto claim = "no 1-PDS of WKP_(4,3) below 8 (partial enumeration)";
    detail::guarded(report, 2, claim, true, [&] {
      SearchBudget b = opt.budget;
      b.max_checks = opt.partial_budget;
      const auto probe = probe_lower_bound(g, 1, 8, b);
      Row row{2, claim, ">= 8", "", Status::Match, true};
      if (probe.refuted) {
        row.computed = "a 1-PDS of size " + std::to_string(probe.certified_through + 1) + " exists";
        row.status = Status::BoundViolated;
      } else if (probe.complete) {
        row.computed = "all sizes < 8 exhausted";
        row.status = Status::BoundHolds;
      } else {
        row.computed = "gamma > " + std::to_string(probe.certified_through) + " certified with " +
                       std::to_string(probe.checks_performed) + " checks";
        row.status = Status::SkippedBudget;
      }
      report.rows.push_back(std::move(row));
    });
  }
}

inline void criterion3(Report& report, const Options& opt) {
  const std::vector<std::tuple<unsigned, unsigned, unsigned>> cases{{1, 5, 1}, {4, 1, 2}, {3, 3, 3}, {2, 4, 2}};
  for (auto [C, L, k] : cases) {
    const auto claim = "{apex} is a k-PDS and gamma = 1, " + detail::params(C, L, k);
    detail::guarded(report, 3, claim, false, [&] {
      const auto g = build_wkp(C, L);
      const Vertex apex = g.ordinal(Address::apex());
      const bool apex_ok = is_kpds(g, k, std::vector<Vertex>{apex});
      const auto gamma = min_kpds(g, k, opt.budget).gamma;
      report.rows.push_back({3, claim, "1, true", std::to_string(gamma) + (apex_ok ? ", true" : ", false"),
                             apex_ok && gamma == 1 ? Status::Match : Status::Mismatch});
    });
  }
}

inline void criterion4(Report& report, const Options& opt) {
  const std::vector<std::pair<unsigned, unsigned>> cases{{2, 3}, {2, 4}, {2, 5}, {3, 3}, {3, 4}, {4, 3}};
  for (auto [C, L] : cases) {
    const auto claim = "construct_kc1 size, " + detail::params(C, L, C - 1);
    detail::guarded(report, 4, claim, false, [&] {
      const auto g = build_wkp(C, L);
      const auto set = construct_kc1(g);
      const auto want = (L + 1 + 2) / 3;
      const bool ok = set.size() == want && is_kpds(g, C - 1, set);
      report.rows.push_back({4, claim, std::to_string(want),
                             std::to_string(set.size()) + (is_kpds(g, C - 1, set) ? ", is_kpds" : ", NOT a k-PDS"),
                             ok ? Status::Match : Status::Mismatch});
    });
  }
  // Tightness of the bound is open; record the observed optimum as data.
  for (auto [C, L] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {2, 4}, {3, 3}}) {
    const auto claim = "observed gamma <= ceil((L+1)/3), " + detail::params(C, L, C - 1);
    detail::guarded(report, 4, claim, false, [&] {
      const auto g = build_wkp(C, L);
      const auto gamma = min_kpds(g, C - 1, opt.budget).gamma;
      const auto bound = (L + 1 + 2) / 3;
      report.rows.push_back({4, claim, "<= " + std::to_string(bound), std::to_string(gamma),
                             gamma <= bound ? Status::BoundHolds : Status::BoundViolated});
    });
  }
}

inline void criterion5(Report& report, const Options& opt) {
  const std::vector<std::tuple<unsigned, unsigned, std::size_t>> cases{
      {2, 2, 2}, {3, 3, 2}, {2, 1, 3}, {3, 1, 3}, {3, 2, 3}, {4, 2, 3}};
  for (auto [C, k, want] : cases) {
    const auto claim = "rad WKP " + detail::params(C, 2, k);
    detail::guarded(report, 5, claim, false, [&] {
      const auto g = build_wkp(C, 2);
      report.rows.push_back(detail::exact_row(5, claim, want, propagation_radius(g, k, opt.budget)));
    });
  }
}

inline void criterion6(Report& report, const Options& opt) {
  for (unsigned L = 1; L <= 8; ++L) {
    const auto claim = "rad WKP " + detail::params(1, L, 1) + " = floor((L+1)/2)";
    detail::guarded(report, 6, claim, false, [&] {
      const auto g = build_wkp(1, L);
      report.rows.push_back(detail::exact_row(6, claim, (L + 1) / 2, propagation_radius(g, 1, opt.budget)));
    });
  }
}

inline void criterion7(Report& report, const Options&) {
  const std::vector<std::tuple<unsigned, unsigned, unsigned>> general{{3, 3, 1}, {4, 3, 1}, {4, 3, 2}, {3, 4, 1}};
  for (auto [C, L, k] : general) {
    const auto claim = "rad(construct_general) <= max(5, L-1), " + detail::params(C, L, k);
    detail::guarded(report, 7, claim, false, [&] {
      const auto g = build_wkp(C, L);
      const auto r = radius_of_set(g, k, construct_general(g, k));
      const std::size_t bound = std::max<std::size_t>(5, L - 1);
      report.rows.push_back({7, claim, "<= " + std::to_string(bound), r ? std::to_string(*r) : "inf",
                             r && *r <= bound ? Status::BoundHolds : Status::BoundViolated});
    });
  }
  const std::vector<std::pair<unsigned, unsigned>> apex{{2, 3}, {3, 3}, {2, 4}};
  for (auto [C, L] : apex) {
    const auto claim = "rad({apex}) <= L for k >= C, " + detail::params(C, L, C);
    detail::guarded(report, 7, claim, false, [&] {
      const auto g = build_wkp(C, L);
      const auto r = radius_of_set(g, C, std::vector<Vertex>{g.ordinal(Address::apex())});
      report.rows.push_back({7, claim, "<= " + std::to_string(L), r ? std::to_string(*r) : "inf",
                             r && *r <= L ? Status::BoundHolds : Status::BoundViolated});
    });
  }
}

inline void criterion8(Report& report, const Options& opt) {
  for (auto [C, k] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {3, 2}, {4, 3}}) {
    const auto claim = "every minimum k-PDS meets level 1, " + detail::params(C, 2, k);
    detail::guarded(report, 8, claim, false, [&] {
      const auto g = build_wkp(C, 2);
      const bool ok = level1_intersection_check(g, k, opt.budget);
      report.rows.push_back({8, claim, "true", ok ? "true" : "false", ok ? Status::Match : Status::Mismatch});
    });
  }
}

inline void criterion9(Report& report, const Options& opt) {
  detail::guarded(report, 9, "graph counts, degrees, symmetry (C<=6, L<=5, |V|<=2000)", false, [&] {
    detail::PropertyTally t;
    for (std::uint32_t C = 1; C <= 6; ++C)
      for (unsigned L = 1; L <= 5; ++L)
        for (auto fam : {Family::WK, Family::WKP}) {
          const auto n = fam == Family::WK ? wk_order(C, L) : wkp_order(C, L);
          if (n > 2000) continue;
          const auto g = build(fam, C, L);
          ++t.checked;
          if (auto why = check_graph_invariants(g)) t.fail(*why);
        }
    report.rows.push_back(detail::property_row("graph counts, degrees, symmetry (C<=6, L<=5, |V|<=2000)", t));
  });

  const std::vector<std::pair<unsigned, unsigned>> prop_graphs{{3, 2}, {2, 3}};
  detail::guarded(report, 9, "round, seed and k monotonicity; k=0 is domination", false, [&] {
    detail::PropertyTally rounds, seeds, ks, dom;
    for (auto [C, L] : prop_graphs) {
      const auto g = build_wkp(C, L);
      for (const auto& s : detail::small_subsets(g.order(), 3)) {
        for (unsigned k = 0; k <= C + 1; ++k) {
          const auto t = propagate_fixpoint(g, k, s);
          ++rounds.checked;
          if (auto why = check_trace_invariants(g, t)) rounds.fail(detail::seed_text(g, s) + ": " + *why);
          const auto& fix = t.rounds.back();

          const auto tk1 = propagate_fixpoint(g, k + 1, s);
          ++ks.checked;
          if (!fix.is_subset_of(tk1.rounds.back()))
            ks.fail("k=" + std::to_string(k) + " fixpoint not inside k+1 fixpoint for " + detail::seed_text(g, s));

          for (Vertex v = 0; v < g.order(); ++v) {
            if (std::find(s.begin(), s.end(), v) != s.end()) continue;
            auto bigger = s;
            bigger.push_back(v);
            ++seeds.checked;
            if (!fix.is_subset_of(propagate_fixpoint(g, k, bigger).rounds.back()))
              seeds.fail("adding " + g.label(v) + " to " + detail::seed_text(g, s) + " shrank the fixpoint");
          }
        }
        ++dom.checked;
        if (is_kpds(g, 0, s) != closed_neighborhood(g, s).is_full())
          dom.fail("k=0 disagrees with domination for " + detail::seed_text(g, s));
      }
    }
    report.rows.push_back(detail::property_row("round monotonicity and trace shape", rounds));
    report.rows.push_back(detail::property_row("seed monotonicity", seeds));
    report.rows.push_back(detail::property_row("k monotonicity", ks));
    report.rows.push_back(detail::property_row("k = 0 equals domination", dom));
  });

  detail::guarded(report, 9, "Hamiltonian cycles of WK_(C,m), C in {3,4,5}, m in {1,2,3}", false, [&] {
    detail::PropertyTally t;
    for (std::uint32_t C = 3; C <= 5; ++C)
      for (unsigned m = 1; m <= 3; ++m) {
        ++t.checked;
        if (!is_hamiltonian_cycle(build_wk(C, m), ham_cycle_wk(C, m)))
          t.fail("invalid cycle for (C,m)=(" + std::to_string(C) + "," + std::to_string(m) + ")");
      }
    report.rows.push_back(detail::property_row("Hamiltonian cycles of WK_(C,m), C in {3,4,5}, m in {1,2,3}", t));
  });

  detail::guarded(report, 9, "exact solver equals 2^n enumeration on WKP graphs with <= 12 vertices", false, [&] {
    detail::PropertyTally t;
    for (std::uint32_t C = 1; C <= 11; ++C)
      for (unsigned L = 1; wkp_order(C, L) <= 12; ++L) {
        const auto g = build_wkp(C, L);
        for (unsigned k = 0; k <= C + 1; ++k) {
          const auto fast = min_kpds(g, k, opt.budget);
          const auto slow = reference::brute_force(g, k);
          ++t.checked;
          if (fast.gamma != slow.gamma || fast.radius != slow.radius || fast.witness_count != slow.optimal_sets)
            t.fail(graph_name(g) + " k=" + std::to_string(k) + ": solver (gamma " + std::to_string(fast.gamma) +
                   ", rad " + std::to_string(fast.radius) + ") vs enumeration (gamma " +
                   std::to_string(slow.gamma) + ", rad " + std::to_string(slow.radius) + ")");
        }
      }
    report.rows.push_back(
        detail::property_row("exact solver equals 2^n enumeration on WKP graphs with <= 12 vertices", t));
  });
}

inline void run_criterion(int c, Report& report, const Options& opt) {
  switch (c) {
    case 1: criterion1(report, opt); break;
    case 2: criterion2(report, opt); break;
    case 3: criterion3(report, opt); break;
    case 4: criterion4(report, opt); break;
    case 5: criterion5(report, opt); break;
    case 6: criterion6(report, opt); break;
    case 7: criterion7(report, opt); break;
    case 8: criterion8(report, opt); break;
    case 9: criterion9(report, opt); break;
    default: throw DomainError("no criterion " + std::to_string(c));
  }
}

inline Report check_paper(const Options& opt = {}) {
  Report report;
  for (int c = 1; c <= kCriteria; ++c) run_criterion(c, report, opt);
  return report;
}

inline Json report_to_json(const Report& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"criterion", r.criterion},
                    {"claim", r.claim},
                    {"expected", r.expected},
                    {"computed", r.computed},
                    {"status", std::string(to_string(r.status))}});
  return {{"passed", report.passed()}, {"rows", std::move(rows)}};
}

inline std::string report_to_text(const Report& report) {
  std::string out;
  for (const auto& r : report.rows) {
    out += "[" + std::string(r.passed() ? "ok  " : "FAIL") + "] " + std::to_string(r.criterion) + " | " + r.claim +
           " | expected " + r.expected + " | computed " + r.computed + " | " + std::string(to_string(r.status)) + "\n";
  }
  for (int c = 1; c <= kCriteria; ++c)
    out += "criterion " + std::to_string(c) + " (" + std::string(criterion_title(c)) + "): " +
           (report.criterion_passed(c) ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace wkp::repro
