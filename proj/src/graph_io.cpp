#include "spt/graph_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace spt {

using nlohmann::json;

LoadedGraph load_graph(const std::string& path, bool auto_normalize) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }

  try {
    if (!doc.contains("version")) throw SchemaValidationError(path + ": missing \"version\"");
    if (doc.at("version").get<int>() != 1)
      throw SchemaVersionMismatch(path + ": unsupported version " + doc.at("version").dump());

    const int n = doc.at("n").get<int>();
    std::vector<WeightedEdge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 3)
        throw SchemaValidationError(path + ": edge entries must be [x, y, weight]");
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    }

    LoadedGraph out;
    out.graph = build_graph(n, edges, auto_normalize);
    out.domain.r = doc.value("r", 0);
    if (doc.contains("clusters"))
      for (const auto& c : doc.at("clusters"))
        out.domain.clusters.push_back(c.get<VertexSet>());

    if (!out.domain.clusters.empty()) {
      try {
        validate_domain_spec(out.graph, out.domain);
      } catch (const InvalidPartition& e) {
        throw SchemaValidationError(path + ": " + e.what());
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw SchemaValidationError(path + ": " + e.what());
  }
}

void save_graph(const PositivePairGraph& g, const DomainSpec& spec,
                const std::string& path) {
  json doc;
  doc["version"] = 1;
  doc["n"] = g.n;
  json edges = json::array();
  for (int x = 0; x < g.n; ++x)
    for (int y = x; y < g.n; ++y)
      if (g.weights(x, y) != 0.0) edges.push_back({x, y, g.weights(x, y)});
  doc["edges"] = std::move(edges);
  doc["clusters"] = spec.clusters;
  doc["r"] = spec.r;

  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump() << "\n";
}

}  // namespace spt
