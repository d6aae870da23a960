#pragma once

// Command-line front end. Kept in a header so the test suite can drive it
// in-process.
//
// Exit codes: 0 ok, 1 check failed or internal error, 2 bad parameters,
// 3 search budget exceeded, 4 parameters outside the operation's regime.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wkpyramid/repro.hpp"
#include "wkpyramid/wkpyramid.hpp"

namespace wkp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitRegime = 4;

struct GraphArgs {
  std::string family = "wkp";
  std::uint32_t C = 0;
  unsigned L = 0;
  std::size_t max_vertices = kDefaultMaxVertices;
};

struct SearchArgs {
  std::uint64_t budget = kDefaultMaxChecks;
  unsigned threads = 1;
  std::optional<unsigned> max_size;

  SearchBudget to_budget() const {
    SearchBudget b;
    b.max_checks = budget;
    b.threads = threads;
    b.max_cardinality = max_size;
    return b;
  }
};

inline void add_graph_options(CLI::App* cmd, GraphArgs& g, bool family = true) {
  cmd->add_option("--C", g.C, "Clique size C (>= 1)")->required();
  cmd->add_option("--L", g.L, "Number of levels L (>= 1)")->required();
  if (family) cmd->add_option("--family", g.family, "Graph family: wk or wkp")->capture_default_str();
  cmd->add_option("--max-vertices", g.max_vertices, "Refuse graphs above this many vertices")
      ->envname("WKP_MAX_VERTICES")
      ->capture_default_str();
}

inline void add_search_options(CLI::App* cmd, SearchArgs& s) {
  cmd->add_option("--budget", s.budget, "Maximum number of propagation checks")
      ->envname("WKP_MAX_CHECKS")
      ->capture_default_str();
  cmd->add_option("--threads", s.threads, "Worker threads for enumeration")->capture_default_str();
  cmd->add_option("--max-size", s.max_size, "Largest seed cardinality to try");
}

inline PyramidGraph make_graph(const GraphArgs& a) {
  return build(parse_family(a.family), a.C, a.L, BuildOptions{a.max_vertices});
}

inline std::vector<Vertex> parse_seed(const PyramidGraph& g, const std::string& literal) {
  std::vector<Vertex> out;
  for (const auto& token : split_address_list(literal)) out.push_back(g.ordinal(g.parse(token)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
}

inline std::string radius_text(const std::optional<std::size_t>& r) { return r ? std::to_string(*r) : "inf"; }

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"WK-recursive mesh and WK-pyramid k-power domination toolkit", "wkpyramid"};
  app.require_subcommand(1);

  GraphArgs graph;
  SearchArgs search;
  unsigned k = 0;
  std::string format;
  std::string output;
  std::string set_literal;
  std::string set_file;

  auto* gen = app.add_subcommand("gen", "Generate a WK or WKP graph as DOT or JSON");
  add_graph_options(gen, graph);
  gen->add_option("--format", format, "dot or json")->default_str("json");
  gen->add_option("--output,-o", output, "Write to this file instead of stdout");

  auto* construct_cmd = app.add_subcommand("construct", "Build and certify the closed-form k-PDS");
  add_graph_options(construct_cmd, graph, false);
  construct_cmd->add_option("--k", k, "Propagation threshold k (>= 1)")->required();
  construct_cmd->add_option("--format", format, "json or text")->default_str("json");
  construct_cmd->add_option("--output,-o", output, "Write to this file instead of stdout");

  auto* verify = app.add_subcommand("verify", "Check whether a seed set is a k-PDS and report its radius");
  add_graph_options(verify, graph);
  verify->add_option("--k", k, "Propagation threshold k (>= 0)")->required();
  auto* set_opt = verify->add_option("--set", set_literal, "Seed addresses, e.g. \"(1,(1)) (1,(2))\"");
  verify->add_option("--set-file", set_file, "File holding the seed addresses")->excludes(set_opt);
  verify->add_option("--format", format, "json or text")->default_str("json");

  auto* exact_cmd = app.add_subcommand("exact", "Minimum k-PDS by exhaustive search");
  add_graph_options(exact_cmd, graph);
  exact_cmd->add_option("--k", k, "Propagation threshold k (>= 0)")->required();
  add_search_options(exact_cmd, search);
  exact_cmd->add_option("--format", format, "json or text")->default_str("json");
  exact_cmd->add_option("--output,-o", output, "Write to this file instead of stdout");

  auto* radius_cmd = app.add_subcommand("radius", "k-propagation radius by exhaustive search");
  add_graph_options(radius_cmd, graph);
  radius_cmd->add_option("--k", k, "Propagation threshold k (>= 0)")->required();
  add_search_options(radius_cmd, search);
  radius_cmd->add_option("--format", format, "json or text")->default_str("text");

  auto* trace_cmd = app.add_subcommand("trace", "Print the monitored sets round by round");
  add_graph_options(trace_cmd, graph);
  trace_cmd->add_option("--k", k, "Propagation threshold k (>= 0)")->required();
  auto* trace_set = trace_cmd->add_option("--set", set_literal, "Seed addresses");
  trace_cmd->add_option("--set-file", set_file, "File holding the seed addresses")->excludes(trace_set);
  trace_cmd->add_option("--output,-o", output, "Write to this file instead of stdout");

  repro::Options repro_opts;
  std::vector<int> criteria;
  auto* check = app.add_subcommand("check-paper", "Run the full reproduction sweep");
  add_search_options(check, search);
  check->add_option("--partial-budget", repro_opts.partial_budget,
                    "Check budget of the partial lower-bound enumeration")
      ->capture_default_str();
  check->add_option("--criterion", criteria, "Only run these criteria (1-9)");
  check->add_option("--format", format, "text or json")->default_str("text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  auto fmt_or = [&](const char* fallback) { return format.empty() ? std::string(fallback) : format; };
  auto check_format = [&](const std::string& f, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
      if (f == a) return;
    throw DomainError("--format " + f + " is not supported by this command");
  };
  auto seed_text = [&] { return set_file.empty() ? set_literal : read_file(set_file); };

  try {
    if (gen->parsed()) {
      const auto f = fmt_or("json");
      check_format(f, {"dot", "json"});
      emit(export_graph(make_graph(graph), parse_graph_format(f)), output, out);
    } else if (construct_cmd->parsed()) {
      const auto f = fmt_or("json");
      check_format(f, {"json", "text"});
      graph.family = "wkp";
      const auto g = make_graph(graph);
      const auto cert = construct(g, k);
      const auto formula = gamma_formula(g.C(), g.L(), k);
      std::string text;
      if (f == "json") {
        auto j = certificate_to_json(g, k, cert);
        j["regime"] = std::string(to_string(regime_of(g.C(), g.L(), k)));
        j["formula"] = {{formula.exact ? "exact" : "upper_bound", formula.value}};
        text = j.dump(2) + "\n";
      } else {
        text = cert.provenance + " size " + std::to_string(cert.set.size()) + " radius " +
               radius_text(cert.radius) + " set " + addresses_json(g, cert.set).dump() + "\n";
      }
      emit(text, output, out);
    } else if (verify->parsed()) {
      const auto f = fmt_or("json");
      check_format(f, {"json", "text"});
      const auto g = make_graph(graph);
      const auto cert = certify(g, k, parse_seed(g, seed_text()));
      if (f == "json") {
        out << certificate_to_json(g, k, cert).dump(2) << "\n";
      } else {
        out << "is_kpds " << (cert.is_kpds ? "true" : "false") << " radius " << radius_text(cert.radius) << "\n";
      }
    } else if (exact_cmd->parsed()) {
      const auto f = fmt_or("json");
      check_format(f, {"json", "text"});
      const auto g = make_graph(graph);
      const auto r = min_kpds(g, k, search.to_budget());
      if (f == "json") {
        emit(exact_to_json(g, k, r).dump(2) + "\n", output, out);
      } else {
        emit("gamma " + std::to_string(r.gamma) + " radius " + std::to_string(r.radius) +
                 (r.exhausted ? "" : " (partial)") + " witness " + addresses_json(g, r.witnesses.front()).dump() +
                 "\n",
             output, out);
      }
    } else if (radius_cmd->parsed()) {
      const auto f = fmt_or("text");
      check_format(f, {"json", "text"});
      const auto g = make_graph(graph);
      const auto r = min_kpds(g, k, search.to_budget());
      if (!r.exhausted) throw BudgetExceeded("search budget exceeded before all minimum sets were seen", r.gamma - 1);
      if (f == "json") {
        out << Json{{"C", g.C()}, {"L", g.L()}, {"k", k}, {"gamma", r.gamma}, {"radius", r.radius}}.dump(2) << "\n";
      } else {
        out << r.radius << "\n";
      }
    } else if (trace_cmd->parsed()) {
      const auto g = make_graph(graph);
      const auto t = propagate_fixpoint(g, k, parse_seed(g, seed_text()));
      emit(trace_to_json(g, t).dump(2) + "\n", output, out);
    } else if (check->parsed()) {
      const auto f = fmt_or("text");
      check_format(f, {"json", "text"});
      repro_opts.budget = search.to_budget();
      repro::Report report;
      if (criteria.empty()) {
        report = repro::check_paper(repro_opts);
      } else {
        for (int c : criteria) repro::run_criterion(c, report, repro_opts);
      }
      out << (f == "json" ? repro::report_to_json(report).dump(2) + "\n" : repro::report_to_text(report));
      return report.passed() ? kExitOk : kExitFailed;
    }
  } catch (const BudgetExceeded& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitBudget;
  } catch (const RegimeError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitRegime;
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

}  // namespace wkp::cli
