#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "distributions.hpp"
#include "graph.hpp"

namespace mhaug {

// Exact enumeration of the edge-subset state space (node augmentation off);
// index = edge_keep bitmask, so row i describes the subgraph keeping exactly
// the edges whose bits are set in i.
struct StateTable {
  std::int64_t num_edges = 0;
  std::vector<double> log_unnorm;  // ln P up to a constant, size 2^num_edges
  std::vector<double> prob;        // normalized, sums to 1
  std::vector<double> delta_e;     // full-graph change ratio per state
};

// Evaluates log_target on every edge subset and normalizes (stable softmax).
// Refuses graphs with more than 20 edges.
StateTable enumerate_target(const Graph& graph, const TargetParams& params,
                            const EntropyVector& entropy, int k);

// Exact MH transition kernel K[x][y] for the enumerated states: off-diagonal
// Q(y|x) * acceptance, diagonal absorbs all rejection mass. Rows sum to 1.
// Refuses tables beyond 2^10 states.
std::vector<std::vector<double>> exact_kernel(const StateTable& table,
                                              const ProposalParams& params);

double max_detailed_balance_violation(const StateTable& table,
                                      const std::vector<std::vector<double>>& kernel);

// || pi^T K - pi^T ||_inf for the enumerated target pi.
double stationarity_residual(const StateTable& table,
                             const std::vector<std::vector<double>>& kernel);

// Frequencies over the 2^num_edges states from sampled edge_keep bitmasks.
std::vector<double> empirical_distribution(std::span<const std::uint64_t> records,
                                           std::int64_t num_edges);

// Counts per change-ratio grid point Delta = j/grid_n.
std::vector<std::int64_t> change_ratio_histogram(std::span<const double> delta_samples,
                                                 std::int64_t grid_n);

// Total variation distance (1/2) sum |p - q|.
double total_variation(std::span<const double> p, std::span<const double> q);

// Upper-tail probability P(X > x) for a chi-square with df degrees of freedom
// (regularized incomplete gamma).
double chi_square_tail(double x, double df);

std::uint64_t edge_keep_bitmask(std::span<const std::uint8_t> edge_keep);

}  // namespace mhaug
