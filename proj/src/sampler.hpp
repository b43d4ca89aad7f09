#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "distributions.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace mhaug {

struct ChainConfig {
  std::uint64_t seed = 0;
  std::int64_t burn_in = 100;
  std::int64_t max_accepted = 1000;
  // Optional cap on emitted post-burn-in samples (0 = only max_accepted stops).
  std::int64_t max_samples = 0;
  bool edge_aug = true;
  bool node_aug = false;
  int k = 2;
  TargetParams target{};
  ProposalParams proposal{};

  void validate(const Graph& graph) const;
};

struct StepRecord {
  std::int64_t step = 0;
  double proposed_delta_e = 0.0;
  double proposed_delta_v = 0.0;
  double delta_e = 0.0;  // chain state after the step
  double delta_v = 0.0;
  double log_p_current = 0.0;
  double log_p_candidate = 0.0;
  double log_q_fwd = 0.0;  // ln Q(candidate | current)
  double log_q_rev = 0.0;  // ln Q(current | candidate)
  double log_alpha = 0.0;  // min(0, log acceptance ratio)
  bool accepted = false;
};

struct ChainTrace {
  std::vector<StepRecord> steps;
  std::int64_t burn_in_steps = 0;
  std::int64_t accepted = 0;

  double acceptance_rate() const {
    return steps.empty() ? 0.0 : static_cast<double>(accepted) / static_cast<double>(steps.size());
  }
};

// One MH chain over augmented subgraphs. Strictly sequential; owns its RNG
// sub-streams (ratio, subset and accept draws never share a stream).
class Chain {
 public:
  Chain(const Graph& graph, ChainConfig config);

  const AugmentationState& state() const { return state_; }
  const Graph& graph() const { return *graph_; }
  const ChainConfig& config() const { return config_; }
  const PropagationCache& cache() const { return cache_; }
  std::int64_t steps_taken() const { return steps_taken_; }
  std::int64_t accepted_count() const { return accepted_; }

  // Target-sigma entropies; refreshed from model predictions during training.
  void set_entropy(EntropyVector entropy);
  const EntropyVector& entropy() const { return entropy_; }

  // Draw a candidate state (consumes ratio/subset streams only).
  AugmentationState propose();

  // min(0, ln[P(cand)Q(cur|cand)] - ln[P(cur)Q(cand|cur)]); log-space
  // throughout. Throws std::logic_error on non-finite intermediates.
  double log_acceptance(const AugmentationState& candidate, StepRecord* parts = nullptr) const;

  // One MH transition: propose, accept or reject, update the state.
  StepRecord step();

 private:
  const Graph* graph_;
  ChainConfig config_;
  PropagationCache cache_;
  AugmentationState state_;
  EntropyVector entropy_;
  double log_p_current_ = 0.0;

  SplitMix64 ratio_edge_rng_, ratio_node_rng_;
  SplitMix64 subset_edge_rng_, subset_node_rng_;
  SplitMix64 accept_rng_;

  std::int64_t steps_taken_ = 0;
  std::int64_t accepted_ = 0;
};

// Called with every post-burn-in state (rejection repeats included); return
// false to stop the chain early.
using SampleSink = std::function<bool(const AugmentationState&, const StepRecord&)>;

// Burn in from the identity augmentation, then emit samples until
// max_accepted post-burn-in acceptances (or max_samples emissions) occurred.
ChainTrace run_chain(const Graph& graph, const ChainConfig& config, const SampleSink& sink);

}  // namespace mhaug
