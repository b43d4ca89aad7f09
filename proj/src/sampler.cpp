#include "sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace mhaug {

namespace {

enum StreamId : std::uint64_t {
  kRatioEdge = 1,
  kRatioNode = 2,
  kSubsetEdge = 3,
  kSubsetNode = 4,
  kAccept = 5,
};

}  // namespace

void ChainConfig::validate(const Graph& graph) const {
  if (!edge_aug && !node_aug)
    throw std::invalid_argument("chain config: at least one of edge/node augmentation required");
  if (burn_in < 0) throw std::invalid_argument("chain config: burn_in must be >= 0");
  if (max_accepted < 0) throw std::invalid_argument("chain config: max_accepted must be >= 0");
  if (max_samples < 0) throw std::invalid_argument("chain config: max_samples must be >= 0");
  if (k < 1) throw std::invalid_argument("chain config: k must be >= 1");
  if (edge_aug && graph.num_edges() == 0)
    throw std::invalid_argument("chain config: edge augmentation needs at least one edge");
  if (proposal.sigma_delta_e <= 0.0 || proposal.sigma_delta_v <= 0.0)
    throw std::invalid_argument("chain config: proposal sigma must be positive");
  if (target.sigma_floor <= 0.0)
    throw std::invalid_argument("chain config: sigma floor must be positive");
}

Chain::Chain(const Graph& graph, ChainConfig config)
    : graph_(&graph),
      config_(std::move(config)),
      cache_(PropagationCache::build(graph, config_.k)),
      state_(AugmentationState::identity(graph)),
      entropy_(EntropyVector::uniform_init(graph.num_nodes(), graph.num_classes())),
      ratio_edge_rng_(SplitMix64(config_.seed).stream(kRatioEdge)),
      ratio_node_rng_(SplitMix64(config_.seed).stream(kRatioNode)),
      subset_edge_rng_(SplitMix64(config_.seed).stream(kSubsetEdge)),
      subset_node_rng_(SplitMix64(config_.seed).stream(kSubsetNode)),
      accept_rng_(SplitMix64(config_.seed).stream(kAccept)) {
  config_.validate(graph);
  log_p_current_ = log_target(state_, config_.target, entropy_,
                              static_cast<std::int64_t>(graph.num_edges()),
                              static_cast<std::int64_t>(graph.num_nodes()));
}

void Chain::set_entropy(EntropyVector entropy) {
  if (entropy.eps.size() != graph_->num_nodes())
    throw std::invalid_argument("entropy vector size must match node count");
  entropy_ = std::move(entropy);
  log_p_current_ = log_target(state_, config_.target, entropy_,
                              static_cast<std::int64_t>(graph_->num_edges()),
                              static_cast<std::int64_t>(graph_->num_nodes()));
}

AugmentationState Chain::propose() {
  const auto num_edges = static_cast<std::int64_t>(graph_->num_edges());
  const auto num_nodes = static_cast<std::int64_t>(graph_->num_nodes());
  AugmentationState cand = AugmentationState::identity(*graph_);

  if (config_.edge_aug) {
    const auto weights =
        proposal_weights(state_.delta_e, config_.proposal.sigma_delta_e, num_edges);
    const auto drop = static_cast<std::int64_t>(ratio_edge_rng_.next_index_weighted(weights));
    const auto keep_count = static_cast<std::uint32_t>(num_edges - drop);
    cand.edge_keep.assign(graph_->num_edges(), 0);
    for (auto idx : subset_edge_rng_.next_subset(static_cast<std::uint32_t>(num_edges), keep_count))
      cand.edge_keep[idx] = 1;
  }
  if (config_.node_aug) {
    const auto weights =
        proposal_weights(state_.delta_v, config_.proposal.sigma_delta_v, num_nodes);
    const auto drop = static_cast<std::int64_t>(ratio_node_rng_.next_index_weighted(weights));
    const auto keep_count = static_cast<std::uint32_t>(num_nodes - drop);
    cand.node_keep.assign(graph_->num_nodes(), 0);
    for (auto idx : subset_node_rng_.next_subset(static_cast<std::uint32_t>(num_nodes), keep_count))
      cand.node_keep[idx] = 1;
  }

  refresh_state_ratios(*graph_, cand, cache_);
  return cand;
}

double Chain::log_acceptance(const AugmentationState& candidate, StepRecord* parts) const {
  const auto num_edges = static_cast<std::int64_t>(graph_->num_edges());
  const auto num_nodes = static_cast<std::int64_t>(graph_->num_nodes());
  const RatioPair cur{state_.delta_e, state_.delta_v};
  const RatioPair cand{candidate.delta_e, candidate.delta_v};

  const double log_p_cand =
      log_target(candidate, config_.target, entropy_, num_edges, num_nodes);
  const double log_q_fwd = log_proposal(cand, cur, config_.proposal, num_edges, num_nodes,
                                        config_.edge_aug, config_.node_aug);
  const double log_q_rev = log_proposal(cur, cand, config_.proposal, num_edges, num_nodes,
                                        config_.edge_aug, config_.node_aug);
  const double ratio = (log_p_cand + log_q_rev) - (log_p_current_ + log_q_fwd);
  if (!std::isfinite(ratio))
    throw std::logic_error("non-finite acceptance ratio: upstream invariant breached");

  if (parts) {
    parts->log_p_current = log_p_current_;
    parts->log_p_candidate = log_p_cand;
    parts->log_q_fwd = log_q_fwd;
    parts->log_q_rev = log_q_rev;
  }
  return std::min(0.0, ratio);
}

StepRecord Chain::step() {
  StepRecord rec;
  rec.step = steps_taken_;

  AugmentationState candidate = propose();
  rec.proposed_delta_e = candidate.delta_e;
  rec.proposed_delta_v = candidate.delta_v;
  rec.log_alpha = log_acceptance(candidate, &rec);

  const double u = accept_rng_.next_unit_open();
  rec.accepted = rec.log_alpha >= 0.0 || std::log(u) < rec.log_alpha;
  if (rec.accepted) {
    state_ = std::move(candidate);
    log_p_current_ = rec.log_p_candidate;
    ++accepted_;
  }
  rec.delta_e = state_.delta_e;
  rec.delta_v = state_.delta_v;
  ++steps_taken_;
  return rec;
}

ChainTrace run_chain(const Graph& graph, const ChainConfig& config, const SampleSink& sink) {
  Chain chain(graph, config);
  ChainTrace trace;
  trace.burn_in_steps = config.burn_in;

  for (std::int64_t i = 0; i < config.burn_in; ++i) {
    auto rec = chain.step();
    trace.accepted += rec.accepted;
    trace.steps.push_back(std::move(rec));
  }

  std::int64_t accepted_after_burn_in = 0;
  std::int64_t emitted = 0;
  while (accepted_after_burn_in < config.max_accepted &&
         (config.max_samples == 0 || emitted < config.max_samples)) {
    auto rec = chain.step();
    trace.accepted += rec.accepted;
    accepted_after_burn_in += rec.accepted;
    const bool keep_going = !sink || sink(chain.state(), rec);
    trace.steps.push_back(std::move(rec));
    ++emitted;
    if (!keep_going) break;
  }
  return trace;
}

}  // namespace mhaug
