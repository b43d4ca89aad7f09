#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace mhaug {

StateTable enumerate_target(const Graph& graph, const TargetParams& params,
                            const EntropyVector& entropy, int k) {
  const auto num_edges = static_cast<std::int64_t>(graph.num_edges());
  if (num_edges > 20)
    throw std::invalid_argument("enumerate_target: refusing graphs with more than 20 edges");
  const auto num_nodes = static_cast<std::int64_t>(graph.num_nodes());
  const auto cache = PropagationCache::build(graph, k);
  const std::uint64_t count = 1ULL << num_edges;

  StateTable table;
  table.num_edges = num_edges;
  table.log_unnorm.resize(count);
  table.delta_e.resize(count);

  AugmentationState state = AugmentationState::identity(graph);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::int64_t e = 0; e < num_edges; ++e)
      state.edge_keep[e] = static_cast<std::uint8_t>((mask >> e) & 1ULL);
    refresh_state_ratios(graph, state, cache);
    table.log_unnorm[mask] = log_target(state, params, entropy, num_edges, num_nodes);
    table.delta_e[mask] = state.delta_e;
  }

  const double max_log = *std::max_element(table.log_unnorm.begin(), table.log_unnorm.end());
  table.prob.resize(count);
  double total = 0.0;
  for (std::uint64_t i = 0; i < count; ++i) {
    table.prob[i] = std::exp(table.log_unnorm[i] - max_log);
    total += table.prob[i];
  }
  for (auto& p : table.prob) p /= total;
  return table;
}

std::vector<std::vector<double>> exact_kernel(const StateTable& table,
                                              const ProposalParams& params) {
  if (table.num_edges > 10)
    throw std::invalid_argument("exact_kernel: refusing state spaces beyond 2^10");
  const std::size_t count = table.prob.size();

  // ln Q(y|x) factors through (delta_x, delta_y) only; precompute per pair.
  const auto n = table.num_edges;
  std::vector<std::vector<double>> log_q(n + 1, std::vector<double>(n + 1));
  for (std::int64_t from = 0; from <= n; ++from)
    for (std::int64_t to = 0; to <= n; ++to)
      log_q[from][to] =
          proposal_logpmf(static_cast<double>(to) / n, static_cast<double>(from) / n,
                          params.sigma_delta_e, n) -
          log_binomial(n, to);

  const auto drop_count = [&](std::size_t mask) {
    return n - static_cast<std::int64_t>(std::popcount(static_cast<std::uint64_t>(mask)));
  };

  std::vector<std::vector<double>> kernel(count, std::vector<double>(count, 0.0));
  for (std::size_t x = 0; x < count; ++x) {
    const auto dx = drop_count(x);
    double off_diag = 0.0;
    for (std::size_t y = 0; y < count; ++y) {
      if (y == x) continue;
      const auto dy = drop_count(y);
      const double log_ratio = (table.log_unnorm[y] + log_q[dy][dx]) -
                               (table.log_unnorm[x] + log_q[dx][dy]);
      const double acceptance = std::min(1.0, std::exp(log_ratio));
      kernel[x][y] = std::exp(log_q[dx][dy]) * acceptance;
      off_diag += kernel[x][y];
    }
    kernel[x][x] = 1.0 - off_diag;
  }
  return kernel;
}

double max_detailed_balance_violation(const StateTable& table,
                                      const std::vector<std::vector<double>>& kernel) {
  const std::size_t count = table.prob.size();
  double worst = 0.0;
  for (std::size_t x = 0; x < count; ++x)
    for (std::size_t y = x + 1; y < count; ++y)
      worst = std::max(worst,
                       std::abs(table.prob[x] * kernel[x][y] - table.prob[y] * kernel[y][x]));
  return worst;
}

double stationarity_residual(const StateTable& table,
                             const std::vector<std::vector<double>>& kernel) {
  const std::size_t count = table.prob.size();
  double worst = 0.0;
  for (std::size_t y = 0; y < count; ++y) {
    double out = 0.0;
    for (std::size_t x = 0; x < count; ++x) out += table.prob[x] * kernel[x][y];
    worst = std::max(worst, std::abs(out - table.prob[y]));
  }
  return worst;
}

std::vector<double> empirical_distribution(std::span<const std::uint64_t> records,
                                           std::int64_t num_edges) {
  std::vector<double> freq(1ULL << num_edges, 0.0);
  for (auto mask : records) {
    if (mask >= freq.size())
      throw std::invalid_argument("empirical_distribution: bitmask out of range");
    freq[mask] += 1.0;
  }
  if (!records.empty())
    for (auto& f : freq) f /= static_cast<double>(records.size());
  return freq;
}

std::vector<std::int64_t> change_ratio_histogram(std::span<const double> delta_samples,
                                                 std::int64_t grid_n) {
  std::vector<std::int64_t> hist(grid_n + 1, 0);
  for (double d : delta_samples) {
    const auto idx = ratio_grid_index(d, grid_n);
    if (idx < 0 || idx > grid_n)
      throw std::invalid_argument("change_ratio_histogram: ratio outside [0, 1]");
    ++hist[idx];
  }
  return hist;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw std::invalid_argument("total_variation: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-14;
constexpr double kTiny = 1e-300;

double lower_gamma_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double upper_gamma_contfrac(double a, double x) {
  double b = x + 1.0 - a, c = 1.0 / kTiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi_square_tail(double x, double df) {
  if (df <= 0.0) throw std::domain_error("chi_square_tail: df must be positive");
  if (x <= 0.0) return 1.0;
  const double a = 0.5 * df, xx = 0.5 * x;
  if (xx < a + 1.0) return 1.0 - lower_gamma_series(a, xx);
  return upper_gamma_contfrac(a, xx);
}

std::uint64_t edge_keep_bitmask(std::span<const std::uint8_t> edge_keep) {
  if (edge_keep.size() > 63)
    throw std::invalid_argument("edge_keep_bitmask: more than 63 edges");
  std::uint64_t mask = 0;
  for (std::size_t e = 0; e < edge_keep.size(); ++e)
    if (edge_keep[e]) mask |= 1ULL << e;
  return mask;
}

}  // namespace mhaug
