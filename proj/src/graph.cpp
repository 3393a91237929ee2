#include "spt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace spt {

namespace {
constexpr double kMassTolerance = 1e-9;
}

VertexSet DomainSpec::source_union() const {
  VertexSet out;
  for (int i = 0; i < r; ++i)
    out.insert(out.end(), clusters[i].begin(), clusters[i].end());
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet DomainSpec::target_union() const {
  VertexSet out;
  for (int i = 0; i < r; ++i)
    out.insert(out.end(), clusters[r + i].begin(), clusters[r + i].end());
  std::sort(out.begin(), out.end());
  return out;
}

void check_vertex_set(int n, const VertexSet& a) {
  std::set<int> seen;
  for (int x : a) {
    if (x < 0 || x >= n)
      throw SchemaValidationError("vertex index " + std::to_string(x) +
                                  " out of range [0, " + std::to_string(n) + ")");
    if (!seen.insert(x).second)
      throw SchemaValidationError("duplicate vertex index " + std::to_string(x));
  }
}

bool sets_disjoint(const VertexSet& a, const VertexSet& b) {
  std::set<int> sa(a.begin(), a.end());
  for (int x : b)
    if (sa.count(x)) return false;
  return true;
}

VertexSet complement(int n, const VertexSet& a) {
  std::vector<bool> in(n, false);
  for (int x : a) in.at(x) = true;
  VertexSet out;
  for (int x = 0; x < n; ++x)
    if (!in[x]) out.push_back(x);
  return out;
}

PositivePairGraph build_graph(int n, const std::vector<WeightedEdge>& edges,
                              bool auto_normalize) {
  if (n < 2) throw DegenerateParams("graph needs at least 2 vertices");

  PositivePairGraph g;
  g.n = n;
  g.weights = Eigen::MatrixXd::Zero(n, n);

  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.x < 0 || e.x >= n || e.y < 0 || e.y >= n)
      throw SchemaValidationError("edge (" + std::to_string(e.x) + ", " +
                                  std::to_string(e.y) + ") out of range");
    if (e.weight < 0.0)
      throw SchemaValidationError("negative edge weight");
    auto key = std::minmax(e.x, e.y);
    if (!seen.insert(key).second)
      throw AsymmetryConflict("pair (" + std::to_string(key.first) + ", " +
                              std::to_string(key.second) + ") supplied more than once");
    g.weights(e.x, e.y) = e.weight;
    g.weights(e.y, e.x) = e.weight;
  }

  double mass = g.weights.sum();
  if (auto_normalize) {
    if (mass <= 0.0) throw NotNormalized("total mass is zero, cannot normalize");
    g.weights /= mass;
  } else if (std::abs(mass - 1.0) > kMassTolerance) {
    throw NotNormalized("ordered-pair mass is " + std::to_string(mass) +
                        ", expected 1 (pass auto_normalize to rescale)");
  }

  g.marginals = g.weights.rowwise().sum();
  for (int x = 0; x < n; ++x)
    if (g.marginals(x) <= 0.0)
      throw NonPositiveMarginal("vertex " + std::to_string(x) + " has zero marginal");
  return g;
}

double set_weight(const PositivePairGraph& g, const VertexSet& a) {
  if (a.empty()) throw EmptySet("set_weight of an empty set");
  check_vertex_set(g.n, a);
  double s = 0.0;
  for (int x : a) s += g.marginals(x);
  return s;
}

double cut_weight(const PositivePairGraph& g, const VertexSet& a, const VertexSet& b) {
  check_vertex_set(g.n, a);
  check_vertex_set(g.n, b);
  double s = 0.0;
  for (int x : a)
    for (int y : b) s += g.weights(x, y);
  return s;
}

RestrictedGraph restrict_graph(const PositivePairGraph& g, const VertexSet& a) {
  if (a.empty()) throw EmptySet("restriction to an empty set");
  check_vertex_set(g.n, a);

  VertexSet verts = a;
  std::sort(verts.begin(), verts.end());
  const int s = static_cast<int>(verts.size());

  RestrictedGraph r;
  r.vertices = verts;
  r.weights.resize(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) r.weights(i, j) = g.weights(verts[i], verts[j]);
  r.marginals = r.weights.rowwise().sum();
  for (int i = 0; i < s; ++i)
    if (r.marginals(i) <= 0.0)
      throw DisconnectedVertexInRestriction(
          "vertex " + std::to_string(verts[i]) + " has no weight inside the restriction");
  return r;
}

void validate_partition(int n, const std::vector<VertexSet>& clusters) {
  if (clusters.empty()) throw InvalidPartition("no clusters given");
  std::vector<int> owner(n, -1);
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].empty())
      throw InvalidPartition("cluster " + std::to_string(i) + " is empty");
    for (int x : clusters[i]) {
      if (x < 0 || x >= n)
        throw InvalidPartition("cluster vertex " + std::to_string(x) + " out of range");
      if (owner[x] != -1)
        throw InvalidPartition("vertex " + std::to_string(x) + " appears in clusters " +
                               std::to_string(owner[x]) + " and " + std::to_string(i));
      owner[x] = static_cast<int>(i);
    }
  }
  for (int x = 0; x < n; ++x)
    if (owner[x] == -1)
      throw InvalidPartition("vertex " + std::to_string(x) + " not covered by any cluster");
}

void validate_domain_spec(const PositivePairGraph& g, const DomainSpec& spec) {
  validate_partition(g.n, spec.clusters);
  if (spec.r < 1) throw InvalidPartition("need at least one class");
  if (2 * spec.r > spec.m())
    throw InvalidPartition("need 2r <= number of clusters, got r = " +
                           std::to_string(spec.r) + " with " +
                           std::to_string(spec.m()) + " clusters");
}

}  // namespace spt
