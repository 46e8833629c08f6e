// Seat controllers: uniform-random play, belief-driven heuristics, and the
// trained policy wrapper that records trajectories.
#pragma once

#include <memory>
#include <set>
#include <vector>

#include "werewolf/discussor.hpp"
#include "werewolf/engine.hpp"
#include "werewolf/policy.hpp"
#include "werewolf/predictor.hpp"
#include "werewolf/trajectory.hpp"

namespace werewolf {

class Agent {
 public:
  virtual ~Agent() = default;
  virtual void begin_game(const GameState& state, int seat) = 0;
  virtual int act(const GameState& state, const ActionMask& mask, Rng& rng) = 0;
  virtual void observe(const std::vector<ObservedEvent>& events) {}
  // Discussion content for the current decision; empty by default.
  virtual ClaimSet claims(const GameState& state, int decision) { return {}; }
  // Non-null for agents whose decisions are being trained on.
  virtual std::vector<TrajectoryStep>* trajectory() { return nullptr; }
};

// Uniform over legal actions, silent in discussion.
class RandomAgent : public Agent {
 public:
  void begin_game(const GameState& state, int seat) override { seat_ = seat; }
  int act(const GameState& state, const ActionMask& mask, Rng& rng) override;

 private:
  int seat_ = 0;
};

// Belief-driven scripted play with a little decision noise for corpus
// variety.
class HeuristicAgent : public Agent {
 public:
  explicit HeuristicAgent(double noise = 0.1, const LikelihoodModel& model = {})
      : noise_(noise), model_(model) {}

  void begin_game(const GameState& state, int seat) override;
  int act(const GameState& state, const ActionMask& mask, Rng& rng) override;
  void observe(const std::vector<ObservedEvent>& events) override;
  ClaimSet claims(const GameState& state, int decision) override;
  const Belief* belief() const { return belief_ ? &*belief_ : nullptr; }

 private:
  int pick_suspect(const GameState& state, const ActionMask& mask, Verb verb,
                   Rng& rng) const;

  double noise_;
  LikelihoodModel model_;
  int seat_ = 0;
  Role role_ = Role::Villager;
  std::set<int> teammates_;
  std::set<int> checked_;
  std::set<int> seer_claimants_;
  std::optional<Belief> belief_;
  ClaimPolicy claim_policy_;
};

struct PolicyAgentOptions {
  double wr_cons = 1.0;
  bool greedy = false;          // argmax instead of sampling
  bool collect = false;         // record trajectory steps
  bool uniform_belief = false;  // predictor-less ablation
  LikelihoodModel model;
  ClaimPolicy claim_policy;
};

class PolicyAgent : public Agent {
 public:
  PolicyAgent(const PolicySet* policy, const PolicyAgentOptions& options)
      : policy_(policy), options_(options) {}

  void begin_game(const GameState& state, int seat) override;
  int act(const GameState& state, const ActionMask& mask, Rng& rng) override;
  void observe(const std::vector<ObservedEvent>& events) override;
  ClaimSet claims(const GameState& state, int decision) override;
  std::vector<TrajectoryStep>* trajectory() override {
    return options_.collect ? &steps_ : nullptr;
  }
  const Belief* belief() const { return belief_ ? &*belief_ : nullptr; }
  double wr_cons() const { return options_.wr_cons; }

 private:
  const PolicySet* policy_;
  PolicyAgentOptions options_;
  int seat_ = 0;
  Role role_ = Role::Villager;
  std::optional<Belief> belief_;
  std::vector<TrajectoryStep> steps_;
};

// Builds the private knowledge a seat legitimately starts with.
PrivateInfo private_info_at_start(const GameState& state, int seat);

}  // namespace werewolf
