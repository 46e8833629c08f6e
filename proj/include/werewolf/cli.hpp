// Experiment driver commands. Each returns a process exit code: 0 success,
// 2 configuration error, 3 data error. Output goes to the supplied stream so
// the commands stay testable in-process.
#pragma once

#include <iostream>
#include <string>
#include <vector>

#include "werewolf/config.hpp"
#include "werewolf/train.hpp"

namespace werewolf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

struct SimulateOptions {
  int n = 100;
  std::string agents = "heuristic";  // random | heuristic | checkpoint path
  // Per-side overrides; empty means `agents`. Mixing strengths gives corpora
  // whose decision chains span both high and low win rates.
  std::string village_agents;
  std::string wolf_agents;
  std::uint64_t seed = 1;
  std::string out;
  double noise = 0.1;
  // Per-side heuristic noise overrides; negative means `noise`. Sweeping the
  // village noise against fixed wolves yields chains whose win rates track
  // play quality.
  double village_noise = -1.0;
  double wolf_noise = -1.0;
  double wr_cons = 1.0;
  int threads = 1;
};
int cmd_simulate(const SimulateOptions& options, std::ostream& log);

struct BuildChainsOptions {
  std::vector<std::string> corpora;
  int min_count = ChainDB::kDefaultMinCount;
  double default_wr = ChainDB::kDefaultWinRate;
  std::string out;
};
int cmd_build_chains(const BuildChainsOptions& options, std::ostream& log);

// Everything a training run needs, decoded from the config file sections
// [game], [rewards], [policy], [train], [paths].
struct TrainBundle {
  GameConfig game;
  RewardConfig rewards;
  PolicyConfig policy;
  TrainConfig train;
  std::string chains_db;
  std::string out_dir = ".";
  int eval_games = 200;
  int checkpoint_every = 0;  // 0: final checkpoint only
};
TrainBundle load_train_bundle(const Config& config);  // throws ConfigError

struct TrainOptions {
  std::string config_path;
};
int cmd_train(const TrainOptions& options, std::ostream& log);

struct SweepOptions {
  std::vector<std::string> checkpoints;  // one, or one per constraint
  std::vector<double> constraints = {0.1, 0.3, 0.5, 0.7, 0.9};
  int games = 200;
  std::uint64_t seed = 1;
  std::string opponents = "heuristic";
  std::string side = "village";
  double noise = 0.1;
  int threads = 1;
  std::string out;
};
int cmd_sweep(const SweepOptions& options, std::ostream& log);

struct PredictEvalOptions {
  std::string corpus;
  std::string observers = "village";  // village | villagers
  std::uint64_t seed = 1;
  std::string out;
};
int cmd_predict_eval(const PredictEvalOptions& options, std::ostream& log);

struct AblateOptions {
  std::string config_path;
};
int cmd_ablate(const AblateOptions& options, std::ostream& log);

struct PlayOptions {
  std::string role = "villager";
  std::uint64_t seed = 1;
  std::string checkpoint;  // empty: heuristic opponents
  double wr_cons = 1.0;
  double noise = 0.1;
  std::string out_log = "play_log.jsonl";
};
// Reads commands from `in`; EOF aborts cleanly and still writes the log.
int play_session(std::istream& in, std::ostream& out, const PlayOptions& options);

// Maps an in-flight exception to the documented exit codes.
int exit_code_for_current_exception(std::ostream& log);

}  // namespace werewolf::cli
