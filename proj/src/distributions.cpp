#include "distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mhaug {

EntropyVector EntropyVector::uniform_init(NodeId num_nodes, int num_classes) {
  EntropyVector ev;
  ev.eps.assign(num_nodes, num_classes > 0 ? std::log(static_cast<double>(num_classes)) : 0.0);
  ev.source = Source::UniformInit;
  return ev;
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("log_binomial requires 0 <= k <= n");
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double sigma_of_entropy(double eps, const SigmaCoeffs& coeffs, double floor) {
  return std::max(coeffs.alpha * eps + coeffs.beta, floor);
}

std::int64_t ratio_grid_index(double ratio, std::int64_t n) {
  // nearbyint honours the default FE_TONEAREST mode: round half to even.
  return static_cast<std::int64_t>(std::nearbyint(ratio * static_cast<double>(n)));
}

double log_target(const AugmentationState& state, const TargetParams& params,
                  const EntropyVector& entropy, std::int64_t num_edges,
                  std::int64_t num_nodes) {
  const std::size_t n = state.ego_delta_e.size();
  double gauss_e = 0.0, gauss_v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = entropy.eps[i];
    const double se = sigma_of_entropy(eps, params.sigma_e, params.sigma_floor);
    const double sv = sigma_of_entropy(eps, params.sigma_v, params.sigma_floor);
    const double de = state.ego_delta_e[i] - params.mu_e;
    const double dv = state.ego_delta_v[i] - params.mu_v;
    gauss_e -= de * de / (2.0 * se * se);
    gauss_v -= dv * dv / (2.0 * sv * sv);
  }
  const double norm_e =
      num_edges > 0 ? log_binomial(num_edges, ratio_grid_index(state.delta_e, num_edges)) : 0.0;
  const double norm_v =
      num_nodes > 0 ? log_binomial(num_nodes, ratio_grid_index(state.delta_v, num_nodes)) : 0.0;
  return params.lambda[0] * gauss_e - params.lambda[1] * norm_e +
         params.lambda[2] * gauss_v - params.lambda[3] * norm_v;
}

namespace {

std::int64_t checked_grid_index(double ratio, std::int64_t n, const char* what) {
  const double scaled = ratio * static_cast<double>(n);
  const double idx = std::nearbyint(scaled);
  if (std::abs(scaled - idx) > 1e-9 || idx < 0 || idx > static_cast<double>(n))
    throw std::domain_error(std::string(what) + ": ratio not on grid");
  return static_cast<std::int64_t>(idx);
}

}  // namespace

std::vector<double> proposal_weights(double from_ratio, double sigma_delta,
                                     std::int64_t grid_n) {
  if (sigma_delta <= 0.0) throw std::domain_error("proposal sigma must be positive");
  checked_grid_index(from_ratio, grid_n, "proposal_weights(from)");
  std::vector<double> logw(grid_n + 1);
  double max_logw = -1e300;
  for (std::int64_t j = 0; j <= grid_n; ++j) {
    const double xi = (static_cast<double>(j) / static_cast<double>(grid_n) - from_ratio) /
                      sigma_delta;
    logw[j] = -0.5 * xi * xi;
    max_logw = std::max(max_logw, logw[j]);
  }
  std::vector<double> w(grid_n + 1);
  for (std::int64_t j = 0; j <= grid_n; ++j) w[j] = std::exp(logw[j] - max_logw);
  return w;
}

double proposal_logpmf(double to_ratio, double from_ratio, double sigma_delta,
                       std::int64_t grid_n) {
  if (grid_n < 1) throw std::domain_error("proposal grid needs at least one interval");
  const std::int64_t to_idx = checked_grid_index(to_ratio, grid_n, "proposal_logpmf(to)");
  const auto w = proposal_weights(from_ratio, sigma_delta, grid_n);
  double total = 0.0;
  for (double x : w) total += x;
  return std::log(w[static_cast<std::size_t>(to_idx)]) - std::log(total);
}

double log_proposal(const RatioPair& to, const RatioPair& from, const ProposalParams& params,
                    std::int64_t num_edges, std::int64_t num_nodes, bool edge_aug,
                    bool node_aug) {
  double lq = 0.0;
  if (edge_aug) {
    lq += proposal_logpmf(to.edge, from.edge, params.sigma_delta_e, num_edges);
    lq -= log_binomial(num_edges, checked_grid_index(to.edge, num_edges, "log_proposal"));
  }
  if (node_aug) {
    lq += proposal_logpmf(to.node, from.node, params.sigma_delta_v, num_nodes);
    lq -= log_binomial(num_nodes, checked_grid_index(to.node, num_nodes, "log_proposal"));
  }
  return lq;
}

}  // namespace mhaug
