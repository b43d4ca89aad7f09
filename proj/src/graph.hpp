#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mhaug {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;  // stored with u < v

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected graph with node features, optional labels and
// train/val/test masks. Edges are deduplicated, self-loop free and kept in
// canonical (u < v, lexicographic) order; construction validates all
// invariants and throws std::invalid_argument naming the violated one.
class Graph {
 public:
  Graph(NodeId num_nodes, std::vector<Edge> edges, std::vector<double> features,
        std::size_t feature_dim, std::vector<int> labels, int num_classes,
        std::vector<std::uint8_t> train_mask, std::vector<std::uint8_t> val_mask,
        std::vector<std::uint8_t> test_mask);

  // Structure-only graph: constant single feature, no labels, no masks.
  static Graph structural(NodeId num_nodes, std::vector<Edge> edges);

  NodeId num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::size_t feature_dim() const { return feature_dim_; }
  const std::vector<double>& features() const { return features_; }
  double feature(NodeId i, std::size_t j) const { return features_[i * feature_dim_ + j]; }

  int num_classes() const { return num_classes_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::uint8_t>& train_mask() const { return train_mask_; }
  const std::vector<std::uint8_t>& val_mask() const { return val_mask_; }
  const std::vector<std::uint8_t>& test_mask() const { return test_mask_; }

  // Incident (neighbor, edge index) pairs in CSR layout.
  std::span<const std::pair<NodeId, EdgeId>> neighbors(NodeId i) const {
    return {incidence_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

 private:
  NodeId num_nodes_;
  std::vector<Edge> edges_;
  std::vector<double> features_;
  std::size_t feature_dim_;
  std::vector<int> labels_;
  int num_classes_;
  std::vector<std::uint8_t> train_mask_, val_mask_, test_mask_;

  std::vector<std::size_t> offsets_;                    // size num_nodes + 1
  std::vector<std::pair<NodeId, EdgeId>> incidence_;    // both directions
};

// Per-node k-hop message counts (A+I)^k * 1 of the base graph. Immutable and
// shareable; denominators are >= 1 because of the self-loop.
struct PropagationCache {
  int k = 2;
  std::vector<std::int64_t> base_row_counts;

  static PropagationCache build(const Graph& graph, int k);
};

// One chain state: which edges/nodes are kept plus the cached change ratios.
struct AugmentationState {
  std::vector<std::uint8_t> edge_keep;
  std::vector<std::uint8_t> node_keep;  // the mask m of the node-drop formula
  double delta_e = 0.0;
  double delta_v = 0.0;
  std::vector<double> ego_delta_e;
  std::vector<double> ego_delta_v;

  std::size_t kept_edges() const;
  std::size_t kept_nodes() const;

  static AugmentationState identity(const Graph& graph);
};

// (A'+I)^k * x restricted to kept edges, where x is the all-ones vector
// masked by node_keep (pass empty for all-ones). Exact 64-bit integer counts;
// throws std::overflow_error if k and the degrees make that unsafe.
std::vector<std::int64_t> adjacency_power_row_sums(
    const Graph& graph, std::span<const std::uint8_t> edge_keep, int k,
    std::span<const std::uint8_t> node_mask = {});

// Ego-graph change ratios of Eq-style message counts:
//   ego_delta_e[i] = 1 - (A'^k 1)_i / (A^k 1)_i   (current adjacency)
//   ego_delta_v[i] = 1 - (A^k m)_i / (A^k 1)_i    (original adjacency, mask m)
// Both clamped to [0, 1].
void ego_change_ratios(const Graph& graph, AugmentationState& state,
                       const PropagationCache& cache);

// Full-graph change ratios (exact grid fractions).
std::pair<double, double> full_change_ratios(const Graph& graph,
                                             std::span<const std::uint8_t> edge_keep,
                                             std::span<const std::uint8_t> node_keep);

// Recompute every cached ratio of `state` from its keep vectors.
void refresh_state_ratios(const Graph& graph, AugmentationState& state,
                          const PropagationCache& cache);

// Induced subgraph on the BFS ball of radius k around `center`, nodes
// renumbered in ascending original id; carries features/labels/masks along.
Graph ego_graph_extract(const Graph& graph, NodeId center, int k);

}  // namespace mhaug
