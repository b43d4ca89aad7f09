#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace mhaug {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Graph::Graph(NodeId num_nodes, std::vector<Edge> edges, std::vector<double> features,
             std::size_t feature_dim, std::vector<int> labels, int num_classes,
             std::vector<std::uint8_t> train_mask, std::vector<std::uint8_t> val_mask,
             std::vector<std::uint8_t> test_mask)
    : num_nodes_(num_nodes),
      edges_(std::move(edges)),
      features_(std::move(features)),
      feature_dim_(feature_dim),
      labels_(std::move(labels)),
      num_classes_(num_classes),
      train_mask_(std::move(train_mask)),
      val_mask_(std::move(val_mask)),
      test_mask_(std::move(test_mask)) {
  for (auto& e : edges_) {
    require(e.u != e.v, "graph invariant: self-edge stored");
    if (e.u > e.v) std::swap(e.u, e.v);
    require(e.v < num_nodes_, "graph invariant: edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  require(std::adjacent_find(edges_.begin(), edges_.end()) == edges_.end(),
          "graph invariant: duplicate undirected edge");

  require(features_.size() == static_cast<std::size_t>(num_nodes_) * feature_dim_,
          "graph invariant: feature matrix row count must equal num_nodes");
  require(labels_.size() == num_nodes_, "graph invariant: one label per node");
  require(num_classes_ >= 0, "graph invariant: num_classes must be >= 0");
  for (int lab : labels_)
    require(lab >= -1 && lab < num_classes_, "graph invariant: label out of class range");
  require(train_mask_.size() == num_nodes_ && val_mask_.size() == num_nodes_ &&
              test_mask_.size() == num_nodes_,
          "graph invariant: mask length must equal num_nodes");
  for (NodeId i = 0; i < num_nodes_; ++i)
    require(train_mask_[i] + val_mask_[i] + test_mask_[i] <= 1,
            "graph invariant: masks must be pairwise disjoint");

  offsets_.assign(num_nodes_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (NodeId i = 0; i < num_nodes_; ++i) offsets_[i + 1] += offsets_[i];
  incidence_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    incidence_[cursor[e.u]++] = {e.v, id};
    incidence_[cursor[e.v]++] = {e.u, id};
  }
}

Graph Graph::structural(NodeId num_nodes, std::vector<Edge> edges) {
  return Graph(num_nodes, std::move(edges), std::vector<double>(num_nodes, 1.0), 1,
               std::vector<int>(num_nodes, -1), 0,
               std::vector<std::uint8_t>(num_nodes, 0),
               std::vector<std::uint8_t>(num_nodes, 0),
               std::vector<std::uint8_t>(num_nodes, 0));
}

PropagationCache PropagationCache::build(const Graph& graph, int k) {
  if (k < 1) throw std::invalid_argument("propagation hop count must be >= 1");
  PropagationCache cache;
  cache.k = k;
  cache.base_row_counts =
      adjacency_power_row_sums(graph, std::vector<std::uint8_t>(graph.num_edges(), 1), k);
  return cache;
}

std::size_t AugmentationState::kept_edges() const {
  return static_cast<std::size_t>(std::count(edge_keep.begin(), edge_keep.end(), 1));
}

std::size_t AugmentationState::kept_nodes() const {
  return static_cast<std::size_t>(std::count(node_keep.begin(), node_keep.end(), 1));
}

AugmentationState AugmentationState::identity(const Graph& graph) {
  AugmentationState s;
  s.edge_keep.assign(graph.num_edges(), 1);
  s.node_keep.assign(graph.num_nodes(), 1);
  s.ego_delta_e.assign(graph.num_nodes(), 0.0);
  s.ego_delta_v.assign(graph.num_nodes(), 0.0);
  return s;
}

std::vector<std::int64_t> adjacency_power_row_sums(
    const Graph& graph, std::span<const std::uint8_t> edge_keep, int k,
    std::span<const std::uint8_t> node_mask) {
  if (k < 1) throw std::invalid_argument("adjacency power requires k >= 1");
  const NodeId n = graph.num_nodes();

  // Safe iff (1 + max degree)^k fits; row sums of (A+I)^k are bounded by it.
  std::size_t max_deg = 0;
  for (NodeId i = 0; i < n; ++i) max_deg = std::max(max_deg, graph.degree(i));
  if (static_cast<double>(k) * std::log2(static_cast<double>(max_deg) + 1.0) > 62.0)
    throw std::overflow_error("adjacency power row sums would overflow 64-bit counts");

  std::vector<std::int64_t> y(n, 1);
  if (!node_mask.empty())
    for (NodeId i = 0; i < n; ++i) y[i] = node_mask[i] ? 1 : 0;

  std::vector<std::int64_t> next(n);
  for (int step = 0; step < k; ++step) {
    for (NodeId i = 0; i < n; ++i) next[i] = y[i];  // self-loop
    for (NodeId i = 0; i < n; ++i)
      for (auto [j, e] : graph.neighbors(i))
        if (edge_keep[e]) next[i] += y[j];
    y.swap(next);
  }
  return y;
}

void ego_change_ratios(const Graph& graph, AugmentationState& state,
                       const PropagationCache& cache) {
  const NodeId n = graph.num_nodes();
  const auto current = adjacency_power_row_sums(graph, state.edge_keep, cache.k);
  const std::vector<std::uint8_t> all_kept(graph.num_edges(), 1);
  const auto masked = adjacency_power_row_sums(graph, all_kept, cache.k, state.node_keep);

  state.ego_delta_e.resize(n);
  state.ego_delta_v.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    const double base = static_cast<double>(cache.base_row_counts[i]);
    state.ego_delta_e[i] =
        std::clamp(1.0 - static_cast<double>(current[i]) / base, 0.0, 1.0);
    state.ego_delta_v[i] =
        std::clamp(1.0 - static_cast<double>(masked[i]) / base, 0.0, 1.0);
  }
}

std::pair<double, double> full_change_ratios(const Graph& graph,
                                             std::span<const std::uint8_t> edge_keep,
                                             std::span<const std::uint8_t> node_keep) {
  std::size_t kept_e = 0, kept_v = 0;
  for (auto b : edge_keep) kept_e += b;
  for (auto b : node_keep) kept_v += b;
  const double delta_e =
      graph.num_edges() == 0
          ? 0.0
          : 1.0 - static_cast<double>(kept_e) / static_cast<double>(graph.num_edges());
  const double delta_v =
      graph.num_nodes() == 0
          ? 0.0
          : 1.0 - static_cast<double>(kept_v) / static_cast<double>(graph.num_nodes());
  return {delta_e, delta_v};
}

void refresh_state_ratios(const Graph& graph, AugmentationState& state,
                          const PropagationCache& cache) {
  auto [de, dv] = full_change_ratios(graph, state.edge_keep, state.node_keep);
  state.delta_e = de;
  state.delta_v = dv;
  ego_change_ratios(graph, state, cache);
}

Graph ego_graph_extract(const Graph& graph, NodeId center, int k) {
  if (center >= graph.num_nodes()) throw std::invalid_argument("ego center out of range");
  std::vector<int> dist(graph.num_nodes(), -1);
  std::queue<NodeId> frontier;
  dist[center] = 0;
  frontier.push(center);
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    if (dist[u] == k) continue;
    for (auto [v, e] : graph.neighbors(u)) {
      (void)e;
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }

  std::vector<NodeId> remap(graph.num_nodes(), 0);
  std::vector<NodeId> members;
  for (NodeId i = 0; i < graph.num_nodes(); ++i)
    if (dist[i] >= 0) {
      remap[i] = static_cast<NodeId>(members.size());
      members.push_back(i);
    }

  std::vector<Edge> edges;
  for (const auto& e : graph.edges())
    if (dist[e.u] >= 0 && dist[e.v] >= 0) edges.push_back({remap[e.u], remap[e.v]});

  const std::size_t d = graph.feature_dim();
  std::vector<double> features(members.size() * d);
  std::vector<int> labels(members.size());
  std::vector<std::uint8_t> train(members.size()), val(members.size()), test(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) features[i * d + j] = graph.feature(members[i], j);
    labels[i] = graph.labels()[members[i]];
    train[i] = graph.train_mask()[members[i]];
    val[i] = graph.val_mask()[members[i]];
    test[i] = graph.test_mask()[members[i]];
  }
  return Graph(static_cast<NodeId>(members.size()), std::move(edges), std::move(features), d,
               std::move(labels), graph.num_classes(), std::move(train), std::move(val),
               std::move(test));
}

}  // namespace mhaug
