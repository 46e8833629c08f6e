// PPO self-play training: rollout collection, one-step TD advantages,
// surrogate optimization, and the win-rate-constrained training mode.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "werewolf/agents.hpp"
#include "werewolf/chains.hpp"
#include "werewolf/rewards.hpp"
#include "werewolf/stats.hpp"
#include "werewolf/trajectory.hpp"

namespace werewolf {

struct TrainError : EngineError {
  using EngineError::EngineError;
};

enum class TrainMode { Performance, Controllable };
enum class OpponentKind { Random, Heuristic, FrozenSelf };

const char* to_string(TrainMode mode);
const char* to_string(OpponentKind kind);

// Index-parallel helper used for rollout batches; results must be written to
// pre-sized slots so ordering stays deterministic.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

struct TrainConfig {
  int waves = 200;
  int games_per_wave = 64;
  int epochs = 4;
  int minibatch = 256;
  double lr = 3e-4;
  double clip_ratio = 0.2;
  bool unclipped = false;  // plain -ratio*A surrogate, exactly as printed
  double ent_coef = 0.01;
  double vf_coef = 0.5;
  TrainMode mode = TrainMode::Performance;
  std::vector<double> wr_cons_schedule = {0.1, 0.3, 0.5, 0.7, 0.9};
  Camp controlled_side = Camp::VillageSide;
  OpponentKind opponents = OpponentKind::Heuristic;
  int frozen_refresh = 10;  // waves between opponent snapshots (FrozenSelf)
  double heuristic_noise = 0.1;
  int threads = 1;
  // One-step TD by default; 0 < lambda <= 1 switches to GAE.
  double gae_lambda = 0.0;
  // Predictor-less ablation: trained seats see flat 1/5 belief marginals.
  bool uniform_belief = false;
  std::uint64_t seed = 1;

  void validate() const;  // throws TrainError naming the field
};

struct RolloutConfig {
  const ChainDB* chains = nullptr;  // null: terminal cr is 0
  RewardConfig rewards;
  TrainMode mode = TrainMode::Performance;
  double wr_cons = 1.0;
  bool claims_enabled = true;
};

using AgentFactory =
    std::function<std::unique_ptr<Agent>(int seat, Role role, const GameState& state)>;

struct GameOutcome {
  GameLog log;
  Camp winner = Camp::WolfSide;
  bool controlled_won = false;
  std::vector<TrajectoryStep> steps;
};

// Plays one full game; trajectories of agents that expose one are finalized
// with terminal sr and cr per the rollout mode.
GameOutcome run_game(const AgentFactory& factory, std::uint64_t seed, Camp controlled,
                     const RolloutConfig& rollout);

struct CollectResult {
  std::vector<TrajectoryStep> steps;
  std::vector<GameLog> logs;
  long wins = 0;
  int games = 0;
  double mean_wr_cons = 0.0;
  double win_rate() const { return games ? static_cast<double>(wins) / games : 0.0; }
};

// A = r_t + gamma * V(s_{t+1}) - V(s_t), r_t = sr_t + cr.
void compute_advantages(std::vector<TrajectoryStep>& batch, double gamma);
// GAE extension over per-seat segments (terminal flags delimit them).
void compute_advantages_gae(std::vector<TrajectoryStep>& batch, double gamma,
                            double lambda);

struct UpdateStats {
  double mean_ratio_first_epoch = 1.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
};

// Minibatched PPO epochs over the batch. One Adam per parameter set in the
// policy; sized on first use.
UpdateStats ppo_update(PolicySet& policy, std::vector<Adam>& optimizers,
                       std::vector<TrajectoryStep>& batch, const TrainConfig& cfg,
                       Rng& rng);

struct WaveStats {
  int wave = 0;
  TrainMode mode = TrainMode::Performance;
  double wr_cons = 1.0;  // mean constraint over the wave's episodes
  double achieved_wr = 0.0;
  double mean_ratio = 1.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
};

struct EvalResult {
  long wins = 0;
  int games = 0;
  double win_rate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
};

class Trainer {
 public:
  Trainer(const TrainConfig& cfg, const RewardConfig& rewards, const PolicyConfig& pcfg,
          const ChainDB* chains);

  // Runs cfg.waves waves; invokes on_wave after each when provided.
  std::vector<WaveStats> run(const std::function<void(const WaveStats&)>& on_wave = {});

  // One wave worth of self-play games with the current policy.
  CollectResult collect_wave(int wave_index);

  PolicySet& policy() { return policy_; }
  const PolicySet& policy() const { return policy_; }

 private:
  AgentFactory factory_for(double wr_cons, bool collect);

  TrainConfig cfg_;
  RewardConfig rewards_;
  const ChainDB* chains_;
  PolicySet policy_;
  PolicySet frozen_;
  std::vector<Adam> optimizers_;
  Rng rng_;
};

// Win rate of the controlled side with a 95% interval; policy seats sample
// from the trained distribution.
EvalResult evaluate(const PolicySet& policy, OpponentKind opponents, int n_games,
                    double wr_cons, std::uint64_t seed, Camp controlled,
                    const RewardConfig& rewards, double heuristic_noise = 0.1,
                    int threads = 1, bool uniform_belief = false);

// Baseline win rate of the controlled side under the given scripted agents
// on both sides.
EvalResult measure_baseline(OpponentKind kind, int n_games, std::uint64_t seed,
                            Camp controlled, double heuristic_noise = 0.1,
                            int threads = 1);

// Training report CSV with the canonical column set.
void write_report_csv(const std::string& path, const std::vector<WaveStats>& rows);

}  // namespace werewolf
