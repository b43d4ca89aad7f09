#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace mhaug {

// Linear standard deviation in the prediction entropy: sigma(eps) = alpha*eps + beta.
struct SigmaCoeffs {
  double alpha = 0.5;
  double beta = 0.05;
};

struct TargetParams {
  double mu_e = 0.3;
  double mu_v = 0.1;
  SigmaCoeffs sigma_e{};
  SigmaCoeffs sigma_v{};
  // lambda[0], lambda[1] weight the edge Gaussian product and edge-count
  // normalizer; lambda[2], lambda[3] the node-side pair.
  std::array<double, 4> lambda{1.0, 1.0, 1.0, 1.0};
  double sigma_floor = 1e-3;
};

struct ProposalParams {
  double sigma_delta_e = 0.05;
  double sigma_delta_v = 0.05;
  // Truncation bounds are the change-ratio range [0, 1], fixed.
};

// Per-node prediction entropies feeding the adaptive sigma.
struct EntropyVector {
  enum class Source { UniformInit, Model };

  std::vector<double> eps;
  Source source = Source::UniformInit;

  // Before any model exists: uniform predictions, eps_i = ln(num_classes)
  // (0 when the graph carries no classes).
  static EntropyVector uniform_init(NodeId num_nodes, int num_classes);
};

// ln C(n, k) via log-gamma; throws std::domain_error unless 0 <= k <= n.
double log_binomial(std::int64_t n, std::int64_t k);

double sigma_of_entropy(double eps, const SigmaCoeffs& coeffs, double floor);

// Nearest grid index of ratio * n (round half to even; exact on-grid ratios
// round to themselves).
std::int64_t ratio_grid_index(double ratio, std::int64_t n);

// Unnormalized log target ln P(G') = ln P_E + ln P_V evaluated on the cached
// change ratios of `state`.
double log_target(const AugmentationState& state, const TargetParams& params,
                  const EntropyVector& entropy, std::int64_t num_edges,
                  std::int64_t num_nodes);

// Log-pmf of the discretized truncated Gaussian over the ratio grid
// {0, 1/n, ..., 1}: pmf(j/n | from) proportional to phi((j/n - from)/sigma),
// normalized exactly over the grid. Throws std::domain_error off-grid.
double proposal_logpmf(double to_ratio, double from_ratio, double sigma_delta,
                       std::int64_t grid_n);

// Unnormalized weights phi((j/n - from)/sigma) for j = 0..n, max-scaled.
std::vector<double> proposal_weights(double from_ratio, double sigma_delta,
                                     std::int64_t grid_n);

struct RatioPair {
  double edge = 0.0;
  double node = 0.0;
};

// ln Q(to | from): ratio pmfs times the uniform-subgraph factors
// 1/C(|E|, |E| to.edge) and 1/C(|V|, |V| to.node). Disabled sides drop out.
double log_proposal(const RatioPair& to, const RatioPair& from, const ProposalParams& params,
                    std::int64_t num_edges, std::int64_t num_nodes, bool edge_aug,
                    bool node_aug);

}  // namespace mhaug
