#pragma once

#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wkpyramid/constructions.hpp"
#include "wkpyramid/errors.hpp"
#include "wkpyramid/exact.hpp"
#include "wkpyramid/propagation.hpp"
#include "wkpyramid/topology.hpp"

namespace wkp {

using Json = nlohmann::ordered_json;

enum class GraphFormat { Dot, Json };

inline GraphFormat parse_graph_format(std::string_view text) {
  if (text == "dot") return GraphFormat::Dot;
  if (text == "json") return GraphFormat::Json;
  throw DomainError("unknown graph format '" + std::string(text) + "' (expected dot or json)");
}

inline std::string graph_name(const PyramidGraph& g) {
  return std::string(to_string(g.family())) + "_(" + std::to_string(g.C()) + "," + std::to_string(g.L()) + ")";
}

inline Json addresses_json(const PyramidGraph& g, std::span<const Vertex> set) {
  Json out = Json::array();
  for (Vertex v : set) out.push_back(g.label(v));
  return out;
}

inline Json addresses_json(const PyramidGraph& g, const VertexSet& set) {
  return addresses_json(g, set.to_vector());
}

// ---------------------------------------------------------------------------
// Graph export

inline Json to_json(const PyramidGraph& g) {
  Json j;
  j["family"] = std::string(to_string(g.family()));
  j["C"] = g.C();
  j["L"] = g.L();
  Json vertices = Json::array();
  for (Vertex v = 0; v < g.order(); ++v) vertices.push_back(g.label(v));
  j["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  return j;
}

inline std::string to_dot(const PyramidGraph& g) {
  std::ostringstream os;
  os << "graph \"" << graph_name(g) << "\" {\n";
  os << "  graph [family=\"" << to_string(g.family()) << "\", C=" << g.C() << ", L=" << g.L() << "];\n";
  for (Vertex v = 0; v < g.order(); ++v) os << "  " << v << " [label=\"" << g.label(v) << "\"];\n";
  for (const auto& e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string export_graph(const PyramidGraph& g, GraphFormat format) {
  return format == GraphFormat::Dot ? to_dot(g) : to_json(g).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Graph import (round-trip of the two export formats only)

inline PyramidGraph graph_from_json_value(const Json& j) {
  try {
    const auto family = parse_family(j.at("family").get<std::string>());
    const auto C = j.at("C").get<std::uint32_t>();
    const auto L = j.at("L").get<unsigned>();
    std::vector<Address> vertices;
    for (const auto& text : j.at("vertices")) vertices.push_back(parse_address(text.get<std::string>(), C, L));
    std::vector<EdgeRef> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw DomainError("edge entries must be [i, j] pairs");
      edges.push_back(EdgeRef::of(e[0].get<Vertex>(), e[1].get<Vertex>()));
    }
    return PyramidGraph::from_edges(family, C, L, std::move(vertices), edges);
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError(std::string("malformed graph JSON: ") + ex.what());
  }
}

inline PyramidGraph graph_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError(std::string("malformed graph JSON: ") + ex.what());
  }
  return graph_from_json_value(j);
}

/// Reads the DOT dialect written by to_dot.
inline PyramidGraph graph_from_dot(std::string_view text) {
  static const std::regex attrs(R"re(graph\s*\[\s*family="(\w+)",\s*C=(\d+),\s*L=(\d+)\s*\];)re");
  static const std::regex node(R"re((\d+)\s*\[label="([^"]*)"\];)re");
  static const std::regex edge(R"re((\d+)\s*--\s*(\d+);)re");

  std::optional<Family> family;
  std::uint32_t C = 0;
  unsigned L = 0;
  std::vector<std::pair<Vertex, std::string>> labels;
  std::vector<EdgeRef> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_search(line, m, attrs)) {
      family = parse_family(m[1].str());
      C = static_cast<std::uint32_t>(std::stoul(m[2].str()));
      L = static_cast<unsigned>(std::stoul(m[3].str()));
    } else if (std::regex_search(line, m, edge)) {
      edges.push_back(EdgeRef::of(static_cast<Vertex>(std::stoul(m[1].str())),
                                  static_cast<Vertex>(std::stoul(m[2].str()))));
    } else if (std::regex_search(line, m, node)) {
      labels.emplace_back(static_cast<Vertex>(std::stoul(m[1].str())), m[2].str());
    }
  }
  if (!family) throw DomainError("DOT input lacks the graph [family, C, L] attribute line");
  std::vector<Address> vertices(labels.size());
  for (const auto& [id, label] : labels) {
    if (id >= vertices.size()) throw DomainError("DOT node id out of range");
    vertices[id] = parse_address(label, C, L);
  }
  return PyramidGraph::from_edges(*family, C, L, std::move(vertices), edges);
}

// ---------------------------------------------------------------------------
// Results

inline Json radius_json(const std::optional<std::size_t>& radius) {
  return radius ? Json(*radius) : Json(nullptr);
}

inline Json trace_to_json(const PyramidGraph& g, const MonitorTrace& trace) {
  Json j;
  j["k"] = trace.k;
  j["seed"] = addresses_json(g, trace.seed);
  Json rounds = Json::array();
  for (const auto& r : trace.rounds) rounds.push_back(addresses_json(g, r));
  j["rounds"] = std::move(rounds);
  j["radius"] = radius_json(trace.radius());
  return j;
}

inline Json certificate_to_json(const PyramidGraph& g, unsigned k, const PdsCertificate& cert) {
  Json j;
  j["family"] = std::string(to_string(g.family()));
  j["C"] = g.C();
  j["L"] = g.L();
  j["k"] = k;
  j["provenance"] = cert.provenance;
  j["set"] = addresses_json(g, cert.set);
  j["size"] = cert.set.size();
  j["is_kpds"] = cert.is_kpds;
  j["radius"] = radius_json(cert.radius);
  return j;
}

inline Json exact_to_json(const PyramidGraph& g, unsigned k, const ExactResult& r) {
  Json j;
  j["C"] = g.C();
  j["L"] = g.L();
  j["k"] = k;
  j["gamma"] = r.gamma;
  j["witness"] = r.witnesses.empty() ? Json::array() : addresses_json(g, r.witnesses.front());
  j["radius"] = r.radius;
  j["exhausted"] = r.exhausted;
  j["checks_performed"] = r.checks_performed;
  j["witness_count"] = r.witness_count;
  return j;
}

}  // namespace wkp
