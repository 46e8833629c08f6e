// Command-line driver: corpus simulation, chain databases, training,
// controllability sweeps, prediction evaluation, ablations, interactive play.
#include <iostream>

#include "CLI11.hpp"
#include "werewolf/cli.hpp"

using namespace werewolf;

int main(int argc, char** argv) {
  CLI::App app{"werewolf-rl: controllable werewolf agents"};
  app.require_subcommand(1);

  cli::SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "play games and write a JSONL corpus");
  simulate->add_option("-n,--games", sim.n, "number of games")->capture_default_str();
  simulate->add_option("--agents", sim.agents,
                       "random | heuristic | path to a policy checkpoint")
      ->capture_default_str();
  simulate->add_option("--village-agents", sim.village_agents,
                       "override the village side's agents");
  simulate->add_option("--wolf-agents", sim.wolf_agents,
                       "override the wolf side's agents");
  simulate->add_option("--seed", sim.seed, "corpus seed")->capture_default_str();
  simulate->add_option("-o,--out", sim.out, "output JSONL path")->required();
  simulate->add_option("--noise", sim.noise, "heuristic exploration noise")
      ->capture_default_str();
  simulate->add_option("--village-noise", sim.village_noise,
                       "override the village side's heuristic noise");
  simulate->add_option("--wolf-noise", sim.wolf_noise,
                       "override the wolf side's heuristic noise");
  simulate->add_option("--wr-cons", sim.wr_cons, "constraint fed to checkpoint agents")
      ->capture_default_str();
  simulate->add_option("--threads", sim.threads, "parallel games")->capture_default_str();

  cli::BuildChainsOptions chains;
  CLI::App* build = app.add_subcommand("build-chains", "aggregate decision chains into a db");
  build->add_option("corpora", chains.corpora, "JSONL corpus paths")->required();
  build->add_option("--min-count", chains.min_count, "lookup support threshold")
      ->capture_default_str();
  build->add_option("--default-wr", chains.default_wr, "fallback win rate")
      ->capture_default_str();
  build->add_option("-o,--out", chains.out, "output db path")->required();

  cli::TrainOptions train;
  CLI::App* train_cmd = app.add_subcommand("train", "run PPO training from a config file");
  train_cmd->add_option("-c,--config", train.config_path, "config file")->required();

  cli::SweepOptions sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "evaluate achieved win rate across constraints");
  sweep_cmd->add_option("--checkpoint", sweep.checkpoints,
                        "policy checkpoint (repeat for one per constraint)")
      ->required();
  sweep_cmd->add_option("--constraints", sweep.constraints, "win rate constraints")
      ->capture_default_str();
  sweep_cmd->add_option("--games", sweep.games, "games per constraint")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "evaluation seed")->capture_default_str();
  sweep_cmd->add_option("--opponents", sweep.opponents, "random | heuristic")
      ->capture_default_str();
  sweep_cmd->add_option("--side", sweep.side, "village | wolf")->capture_default_str();
  sweep_cmd->add_option("--noise", sweep.noise, "heuristic opponent noise")
      ->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "parallel games")
      ->capture_default_str();
  sweep_cmd->add_option("-o,--out", sweep.out, "CSV output path");

  cli::PredictEvalOptions pred;
  CLI::App* pred_cmd =
      app.add_subcommand("predict-eval", "identity prediction accuracy report");
  pred_cmd->add_option("--corpus", pred.corpus, "ground-truth JSONL corpus")->required();
  pred_cmd->add_option("--observers", pred.observers, "village | villagers")
      ->capture_default_str();
  pred_cmd->add_option("--seed", pred.seed, "random-predictor seed")
      ->capture_default_str();
  pred_cmd->add_option("-o,--out", pred.out, "write the report here too");

  cli::AblateOptions ablate;
  CLI::App* ablate_cmd =
      app.add_subcommand("ablate", "full / -DCR / -Predictor comparison");
  ablate_cmd->add_option("-c,--config", ablate.config_path, "config file")->required();

  cli::PlayOptions play;
  CLI::App* play_cmd = app.add_subcommand("play", "interactive text-mode game");
  play_cmd->add_option("--role", play.role, "your role, or random")
      ->capture_default_str();
  play_cmd->add_option("--seed", play.seed, "game seed")->capture_default_str();
  play_cmd->add_option("--checkpoint", play.checkpoint, "policy for the other seats");
  play_cmd->add_option("--wr-cons", play.wr_cons,
                       "constraint fed to checkpoint opponents")
      ->capture_default_str();
  play_cmd->add_option("--noise", play.noise, "heuristic opponent noise")
      ->capture_default_str();
  play_cmd->add_option("--log", play.out_log, "where to persist the game log")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  try {
    if (*simulate) return cli::cmd_simulate(sim, std::cout);
    if (*build) return cli::cmd_build_chains(chains, std::cout);
    if (*train_cmd) return cli::cmd_train(train, std::cout);
    if (*sweep_cmd) return cli::cmd_sweep(sweep, std::cout);
    if (*pred_cmd) return cli::cmd_predict_eval(pred, std::cout);
    if (*ablate_cmd) return cli::cmd_ablate(ablate, std::cout);
    if (*play_cmd) return cli::play_session(std::cin, std::cout, play);
  } catch (...) {
    return cli::exit_code_for_current_exception(std::cerr);
  }
  return cli::kExitConfig;
}
