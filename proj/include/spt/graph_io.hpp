#pragma once

#include <string>

#include "spt/graph.hpp"

namespace spt {

struct LoadedGraph {
  PositivePairGraph graph;
  DomainSpec domain;
};

// JSON file format, version 1:
//   { "version": 1, "n": int,
//     "edges": [[x, y, weight], ...],   unordered pairs, each listed once
//     "clusters": [[indices], ...], "r": int }
// Clusters 0..r-1 are the source classes, r..2r-1 the target classes.
LoadedGraph load_graph(const std::string& path, bool auto_normalize = false);
void save_graph(const PositivePairGraph& g, const DomainSpec& spec,
                const std::string& path);

}  // namespace spt
