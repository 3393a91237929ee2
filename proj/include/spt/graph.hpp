#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spt/errors.hpp"

namespace spt {

// Vertex indices, kept sorted and duplicate-free by the helpers below.
using VertexSet = std::vector<int>;

struct WeightedEdge {
  int x = 0;
  int y = 0;
  double weight = 0.0;
};

// Symmetric edge-weight distribution over n vertices. The weights form a
// probability distribution over ordered pairs (total mass 1); marginals are
// the row sums and must all be positive. Self-loops are allowed and count
// once toward the marginal.
struct PositivePairGraph {
  int n = 0;
  Eigen::MatrixXd weights;
  Eigen::VectorXd marginals;
};

// Partition of the vertices into clusters. The first r clusters are the
// source classes S_1..S_r, the next r are the target classes T_1..T_r;
// any remaining clusters belong to neither domain.
struct DomainSpec {
  std::vector<VertexSet> clusters;
  int r = 0;

  int m() const { return static_cast<int>(clusters.size()); }
  const VertexSet& source_class(int i) const { return clusters.at(i); }
  const VertexSet& target_class(int i) const { return clusters.at(r + i); }
  VertexSet source_union() const;
  VertexSet target_union() const;
};

// Intra-cluster subgraph. Weights are kept raw (not renormalized); the
// marginals are the restricted row sums.
struct RestrictedGraph {
  Eigen::MatrixXd weights;
  Eigen::VectorXd marginals;
  VertexSet vertices;  // original indices
};

// Builds the symmetric weight matrix from an unordered-pair edge list.
// With auto_normalize the weights are rescaled to total ordered-pair mass 1;
// otherwise a mass outside 1 +- 1e-9 raises NotNormalized.
PositivePairGraph build_graph(int n, const std::vector<WeightedEdge>& edges,
                              bool auto_normalize = false);

// Total marginal weight of the set.
double set_weight(const PositivePairGraph& g, const VertexSet& a);

// Sum of weights over all pairs (x in a, y in b). The sets may overlap.
double cut_weight(const PositivePairGraph& g, const VertexSet& a, const VertexSet& b);

// Subgraph on the given vertices, keeping only internal weights.
RestrictedGraph restrict_graph(const PositivePairGraph& g, const VertexSet& a);

VertexSet complement(int n, const VertexSet& a);
bool sets_disjoint(const VertexSet& a, const VertexSet& b);

// Throws SchemaValidationError on out-of-range or duplicate indices.
void check_vertex_set(int n, const VertexSet& a);

// Clusters must be nonempty, pairwise disjoint and cover all vertices;
// 1 <= r and 2r <= number of clusters. Throws InvalidPartition.
void validate_partition(int n, const std::vector<VertexSet>& clusters);
void validate_domain_spec(const PositivePairGraph& g, const DomainSpec& spec);

}  // namespace spt
