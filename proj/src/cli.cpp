#include "werewolf/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "werewolf/chains.hpp"
#include "werewolf/discussor.hpp"
#include "werewolf/predictor.hpp"
#include "werewolf/stats.hpp"

namespace werewolf::cli {

namespace {

namespace fs = std::filesystem;

struct AgentSpec {
  enum class Kind { Random, Heuristic, Checkpoint } kind = Kind::Heuristic;
  std::shared_ptr<PolicySet> policy;
};

AgentSpec resolve_agents(const std::string& spec) {
  AgentSpec out;
  if (spec == "random") {
    out.kind = AgentSpec::Kind::Random;
  } else if (spec == "heuristic") {
    out.kind = AgentSpec::Kind::Heuristic;
  } else {
    out.kind = AgentSpec::Kind::Checkpoint;
    out.policy = std::make_shared<PolicySet>(load_checkpoint(spec));
  }
  return out;
}

Camp side_from_string(const std::string& side) {
  if (side == "village") return Camp::VillageSide;
  if (side == "wolf") return Camp::WolfSide;
  throw ConfigError("side must be village or wolf, got " + side);
}

OpponentKind opponents_from_string(const std::string& s) {
  if (s == "random") return OpponentKind::Random;
  if (s == "heuristic") return OpponentKind::Heuristic;
  if (s == "frozen_self") return OpponentKind::FrozenSelf;
  throw ConfigError("opponents must be random, heuristic or frozen_self, got " + s);
}

}  // namespace

int cmd_simulate(const SimulateOptions& options, std::ostream& log) {
  if (options.n < 1) throw ConfigError("simulate: n must be >= 1");
  if (options.out.empty()) throw ConfigError("simulate: output path required");
  std::string village_spec =
      options.village_agents.empty() ? options.agents : options.village_agents;
  std::string wolf_spec =
      options.wolf_agents.empty() ? options.agents : options.wolf_agents;
  AgentSpec village = resolve_agents(village_spec);
  AgentSpec wolves = resolve_agents(wolf_spec);

  auto agent_for = [&](const AgentSpec& spec, double noise) -> std::unique_ptr<Agent> {
    switch (spec.kind) {
      case AgentSpec::Kind::Random:
        return std::make_unique<RandomAgent>();
      case AgentSpec::Kind::Heuristic:
        return std::make_unique<HeuristicAgent>(noise);
      case AgentSpec::Kind::Checkpoint: {
        PolicyAgentOptions popt;
        popt.wr_cons = options.wr_cons;
        return std::make_unique<PolicyAgent>(spec.policy.get(), popt);
      }
    }
    return std::make_unique<RandomAgent>();
  };
  double village_noise =
      options.village_noise >= 0.0 ? options.village_noise : options.noise;
  double wolf_noise = options.wolf_noise >= 0.0 ? options.wolf_noise : options.noise;

  std::vector<GameLog> logs(options.n);
  std::vector<char> village_won(options.n, 0);
  parallel_for(options.n, options.threads, [&](int g) {
    AgentFactory factory = [&](int, Role role, const GameState&) {
      bool is_village = camp_of(role) == Camp::VillageSide;
      return agent_for(is_village ? village : wolves,
                       is_village ? village_noise : wolf_noise);
    };
    RolloutConfig rollout;
    GameOutcome outcome = run_game(factory, Rng::derive(options.seed, g),
                                   Camp::VillageSide, rollout);
    village_won[g] = outcome.winner == Camp::VillageSide ? 1 : 0;
    logs[g] = std::move(outcome.log);
  });
  write_jsonl(options.out, logs);

  long village_wins = 0;
  for (char w : village_won) village_wins += w;
  log << "simulated " << options.n << " games (village: " << village_spec
      << ", wolves: " << wolf_spec << ", seed " << options.seed << ") -> "
      << options.out << "\n";
  log << "village win rate " << std::fixed << std::setprecision(3)
      << static_cast<double>(village_wins) / options.n << ", wolf win rate "
      << static_cast<double>(options.n - village_wins) / options.n << "\n";
  return kExitOk;
}

int cmd_build_chains(const BuildChainsOptions& options, std::ostream& log) {
  if (options.corpora.empty()) throw ConfigError("build-chains: at least one corpus");
  if (options.out.empty()) throw ConfigError("build-chains: output path required");
  if (options.min_count < 1) throw ConfigError("build-chains: min_count must be >= 1");

  ChainDB db(options.min_count, options.default_wr);
  long games = 0;
  int warnings = 0;
  for (const std::string& path : options.corpora) {
    std::vector<GameLog> logs = read_jsonl(path, &warnings);
    for (const GameLog& game_log : logs) {
      db.add_game(game_log);
      ++games;
    }
  }
  if (games == 0) throw EngineError("build-chains: no usable logs in the corpora");
  db.save(options.out);
  log << "chain db: " << db.size() << " entries from " << games << " games ("
      << warnings << " unreadable lines skipped) -> " << options.out << "\n";
  log << "lookup threshold min_count=" << options.min_count
      << ", default win rate " << options.default_wr << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

TrainBundle load_train_bundle(const Config& config) {
  TrainBundle b;
  config.restrict_keys("game", {"max_rounds"});
  config.restrict_keys("rewards", {"alpha", "epsilon", "k", "s", "gamma", "terminal_win",
                                   "terminal_loss", "strict_sign"});
  config.restrict_keys("policy", {"embed_dim", "hidden_dim", "per_role"});
  config.restrict_keys(
      "train", {"waves", "games_per_wave", "epochs", "minibatch", "lr", "clip_ratio",
                "unclipped", "ent_coef", "vf_coef", "mode", "wr_cons_schedule",
                "controlled_side", "opponents", "frozen_refresh", "heuristic_noise",
                "threads", "gae_lambda", "seed", "eval_games", "checkpoint_every"});
  config.restrict_keys("paths", {"chains_db", "out_dir"});

  b.game.max_rounds = static_cast<int>(config.get_int("game", "max_rounds", 9));

  b.rewards.alpha = config.get_double("rewards", "alpha", b.rewards.alpha);
  b.rewards.epsilon = config.get_double("rewards", "epsilon", b.rewards.epsilon);
  b.rewards.k = config.get_double("rewards", "k", b.rewards.k);
  b.rewards.s = config.get_double("rewards", "s", b.rewards.s);
  b.rewards.gamma = config.get_double("rewards", "gamma", b.rewards.gamma);
  b.rewards.terminal_win = config.get_double("rewards", "terminal_win", 1.0);
  b.rewards.terminal_loss = config.get_double("rewards", "terminal_loss", -1.0);
  b.rewards.strict_sign = config.get_bool("rewards", "strict_sign", false);

  b.policy.embed_dim = static_cast<int>(config.get_int("policy", "embed_dim", 16));
  b.policy.hidden_dim = static_cast<int>(config.get_int("policy", "hidden_dim", 64));
  b.policy.per_role = config.get_bool("policy", "per_role", false);

  TrainConfig& t = b.train;
  t.waves = static_cast<int>(config.get_int("train", "waves", t.waves));
  t.games_per_wave =
      static_cast<int>(config.get_int("train", "games_per_wave", t.games_per_wave));
  t.epochs = static_cast<int>(config.get_int("train", "epochs", t.epochs));
  t.minibatch = static_cast<int>(config.get_int("train", "minibatch", t.minibatch));
  t.lr = config.get_double("train", "lr", t.lr);
  t.clip_ratio = config.get_double("train", "clip_ratio", t.clip_ratio);
  t.unclipped = config.get_bool("train", "unclipped", false);
  t.ent_coef = config.get_double("train", "ent_coef", t.ent_coef);
  t.vf_coef = config.get_double("train", "vf_coef", t.vf_coef);
  std::string mode = config.get_string("train", "mode", "performance");
  if (mode == "performance") {
    t.mode = TrainMode::Performance;
  } else if (mode == "controllable") {
    t.mode = TrainMode::Controllable;
  } else {
    throw ConfigError("[train] mode must be performance or controllable, got " + mode);
  }
  t.wr_cons_schedule = config.get_list("train", "wr_cons_schedule", t.wr_cons_schedule);
  t.controlled_side =
      side_from_string(config.get_string("train", "controlled_side", "village"));
  t.opponents =
      opponents_from_string(config.get_string("train", "opponents", "heuristic"));
  t.frozen_refresh =
      static_cast<int>(config.get_int("train", "frozen_refresh", t.frozen_refresh));
  t.heuristic_noise = config.get_double("train", "heuristic_noise", t.heuristic_noise);
  t.threads = static_cast<int>(config.get_int("train", "threads", 1));
  t.gae_lambda = config.get_double("train", "gae_lambda", 0.0);
  t.seed = static_cast<std::uint64_t>(config.get_int("train", "seed", 1));

  b.chains_db = config.get_string("paths", "chains_db", "");
  b.out_dir = config.get_string("paths", "out_dir", ".");
  b.eval_games = static_cast<int>(config.get_int("train", "eval_games", 200));
  b.checkpoint_every =
      static_cast<int>(config.get_int("train", "checkpoint_every", 0));

  try {
    b.rewards.validate();
    b.train.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (b.policy.embed_dim < 1 || b.policy.hidden_dim < 1) {
    throw ConfigError("[policy] embed_dim and hidden_dim must be >= 1");
  }
  return b;
}

int cmd_train(const TrainOptions& options, std::ostream& log) {
  TrainBundle bundle = load_train_bundle(Config::parse_file(options.config_path));
  if (bundle.chains_db.empty()) {
    throw ConfigError("[paths] chains_db is required for training");
  }
  ChainDB db = ChainDB::load(bundle.chains_db, ChainDB::kDefaultMinCount,
                             ChainDB::kDefaultWinRate);

  fs::path run_dir = fs::path(bundle.out_dir) /
                     ("run_" + std::string(to_string(bundle.train.mode)) + "_seed" +
                      std::to_string(bundle.train.seed));
  fs::create_directories(run_dir);

  Trainer trainer(bundle.train, bundle.rewards, bundle.policy, &db);
  log << "training " << to_string(bundle.train.mode) << " for " << bundle.train.waves
      << " waves x " << bundle.train.games_per_wave << " games -> " << run_dir.string()
      << "\n";
  std::vector<WaveStats> rows = trainer.run([&](const WaveStats& row) {
    if (bundle.checkpoint_every > 0 && (row.wave + 1) % bundle.checkpoint_every == 0) {
      save_checkpoint(trainer.policy(),
                      (run_dir / ("wave_" + std::to_string(row.wave) + ".json")).string());
    }
    if (row.wave % 10 == 0 || row.wave == bundle.train.waves - 1) {
      log << "wave " << row.wave << " wr " << std::fixed << std::setprecision(3)
          << row.achieved_wr << " policy_loss " << row.policy_loss << " value_loss "
          << row.value_loss << " entropy " << row.entropy << "\n";
    }
  });
  save_checkpoint(trainer.policy(), (run_dir / "final.json").string());
  write_report_csv((run_dir / "report.csv").string(), rows);
  log << "checkpoint " << (run_dir / "final.json").string() << "\n";
  log << "report " << (run_dir / "report.csv").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_sweep(const SweepOptions& options, std::ostream& log) {
  if (options.checkpoints.empty()) throw ConfigError("sweep: checkpoint required");
  if (options.checkpoints.size() != 1 &&
      options.checkpoints.size() != options.constraints.size()) {
    throw ConfigError("sweep: give one checkpoint or one per constraint");
  }
  if (options.games < 1) throw ConfigError("sweep: games must be >= 1");
  Camp side = side_from_string(options.side);
  OpponentKind opponents = opponents_from_string(options.opponents);
  if (opponents == OpponentKind::FrozenSelf) {
    throw ConfigError("sweep: opponents must be random or heuristic");
  }

  std::vector<PolicySet> policies;
  for (const std::string& path : options.checkpoints) {
    policies.push_back(load_checkpoint(path));
  }

  RewardConfig rewards;
  std::vector<double> achieved;
  std::ostringstream csv;
  csv << "constraint,win_rate,ci_lo,ci_hi,games\n";
  log << "constraint  win_rate  95% CI\n";
  for (std::size_t i = 0; i < options.constraints.size(); ++i) {
    double c = options.constraints[i];
    const PolicySet& policy = policies[policies.size() == 1 ? 0 : i];
    EvalResult result =
        evaluate(policy, opponents, options.games, c, Rng::derive(options.seed, i), side,
                 rewards, options.noise, options.threads);
    achieved.push_back(result.win_rate);
    csv << c << ',' << result.win_rate << ',' << result.ci_lo << ',' << result.ci_hi
        << ',' << result.games << "\n";
    log << std::fixed << std::setprecision(3) << "      " << c << "     "
        << result.win_rate << "  [" << result.ci_lo << ", " << result.ci_hi << "]\n";
  }
  std::optional<double> rho = spearman(options.constraints, achieved);
  if (rho) {
    log << "spearman rho(constraint, achieved) = " << std::setprecision(4) << *rho
        << "\n";
  } else {
    log << "spearman rho(constraint, achieved) = n/a\n";
  }
  if (!options.out.empty()) {
    std::ofstream out(options.out);
    if (!out) throw EngineError("cannot open for writing: " + options.out);
    out << csv.str();
    log << "sweep table -> " << options.out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

namespace {

void print_acc_row(std::ostream& out, const std::string& name, const AccRow& row) {
  out << std::left << std::setw(30) << name << std::right << std::fixed
      << std::setprecision(3);
  for (double v : row.werewolf_acc) out << std::setw(8) << v;
  out << "    ";
  for (double v : row.identity_acc) out << std::setw(8) << v;
  out << "\n";
}

void print_constant_row(std::ostream& out, const std::string& name,
                        const std::array<double, 6>& v) {
  AccRow row;
  row.werewolf_acc = {v[0], v[1], v[2]};
  row.identity_acc = {v[3], v[4], v[5]};
  print_acc_row(out, name, row);
}

}  // namespace

int cmd_predict_eval(const PredictEvalOptions& options, std::ostream& log) {
  if (options.corpus.empty()) throw ConfigError("predict-eval: corpus required");
  ObserverSet observers = ObserverSet::VillageSide;
  if (options.observers == "villagers") {
    observers = ObserverSet::VillagersOnly;
  } else if (options.observers != "village") {
    throw ConfigError("predict-eval: observers must be village or villagers");
  }
  int warnings = 0;
  std::vector<GameLog> logs = read_jsonl(options.corpus, &warnings);
  if (logs.empty()) throw EngineError("predict-eval: no usable logs in " + options.corpus);

  LikelihoodModel model;
  AccRow random_row = evaluate_random_predictor(logs, options.seed, observers);
  AccRow bayes_row = evaluate_bayesian_predictor(logs, model, observers);

  std::ostringstream table;
  table << "prediction evaluation: " << bayes_row.snapshots << " snapshots from "
        << logs.size() << " games (observers: " << options.observers << ")\n";
  table << std::left << std::setw(30) << " " << std::right
        << "   werewolf prediction          identity prediction\n";
  table << std::left << std::setw(30) << "method" << std::right << std::setw(8) << "ACC@1"
        << std::setw(8) << "ACC@2" << std::setw(8) << "ACC@3" << "    " << std::setw(8)
        << "ACC@1" << std::setw(8) << "ACC@3" << std::setw(8) << "ACC@5" << "\n";
  print_acc_row(table, "random", random_row);
  print_acc_row(table, "bayesian", bayes_row);
  print_constant_row(table, "reference: random (reported)",
                     {0.748, 0.206, 0.008, 0.908, 0.344, 0.031});
  print_constant_row(table, "reference: full agent (reported)",
                     {0.908, 0.462, 0.090, 0.972, 0.633, 0.170});
  table << "exact random ACC@1 on the 3-of-8 task: 23/28 = " << std::fixed
        << std::setprecision(4) << 23.0 / 28.0 << "\n";
  if (warnings) table << warnings << " unreadable corpus lines skipped\n";

  log << table.str();
  if (!options.out.empty()) {
    std::ofstream out(options.out);
    if (!out) throw EngineError("cannot open for writing: " + options.out);
    out << table.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_ablate(const AblateOptions& options, std::ostream& log) {
  TrainBundle bundle = load_train_bundle(Config::parse_file(options.config_path));
  if (bundle.chains_db.empty()) {
    throw ConfigError("[paths] chains_db is required for the ablation");
  }
  ChainDB db = ChainDB::load(bundle.chains_db);

  struct Variant {
    std::string name;
    const ChainDB* chains;
    bool uniform_belief;
  };
  std::vector<Variant> variants = {
      {"full", &db, false},
      {"-DCR", nullptr, false},     // decision chain reward forced to 0
      {"-Predictor", &db, true},    // uniform belief marginals
  };

  struct Row {
    std::string name;
    EvalResult eval;
  };
  std::vector<Row> rows;
  for (const Variant& variant : variants) {
    TrainConfig cfg = bundle.train;
    cfg.uniform_belief = variant.uniform_belief;
    log << "ablation " << variant.name << ": training " << cfg.waves << " waves\n";
    Trainer trainer(cfg, bundle.rewards, bundle.policy, variant.chains);
    trainer.run();
    EvalResult eval = evaluate(trainer.policy(), cfg.opponents, bundle.eval_games, 1.0,
                               Rng::derive(cfg.seed, 0xab1a7eull), cfg.controlled_side,
                               bundle.rewards, cfg.heuristic_noise, cfg.threads,
                               variant.uniform_belief);
    rows.push_back({variant.name, eval});
  }

  log << "\nconfig        win_rate   95% CI            games\n";
  for (const Row& row : rows) {
    log << std::left << std::setw(13) << row.name << std::right << std::fixed
        << std::setprecision(3) << row.eval.win_rate << "      [" << row.eval.ci_lo
        << ", " << row.eval.ci_hi << "]   " << row.eval.games << "\n";
  }
  double ci_width = rows[0].eval.ci_hi - rows[0].eval.ci_lo;
  log << "weak ordering check: -Predictor (" << rows[2].eval.win_rate
      << ") <= full (" << rows[0].eval.win_rate << ") + CI width (" << ci_width
      << "): " << (rows[2].eval.win_rate <= rows[0].eval.win_rate + ci_width ? "ok"
                                                                             : "violated")
      << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

namespace {

std::string player_name(int p) {
  return p == kSystem ? "SYSTEM" : "P" + std::to_string(p);
}

std::string event_line(const ObservedEvent& oe) {
  const Event& e = oe.event;
  std::ostringstream os;
  os << "[r" << e.round << " " << to_string(e.phase) << "] ";
  switch (e.verb) {
    case Verb::Kill:
      os << player_name(e.subject) << " marks " << player_name(e.object.player)
         << " for the kill";
      break;
    case Verb::Check:
      if (e.phase == Phase::DayDiscuss) {
        os << player_name(e.subject) << " says a check showed "
           << player_name(e.object.player) << " is a werewolf";
      } else {
        os << player_name(e.subject) << " checks " << player_name(e.object.player);
        if (oe.seer_saw_werewolf) {
          os << " -> " << (*oe.seer_saw_werewolf ? "werewolf" : "not a werewolf");
        }
      }
      break;
    case Verb::Save:
      os << player_name(e.subject) << " uses the antidote on "
         << player_name(e.object.player);
      break;
    case Verb::Poison:
      os << player_name(e.subject) << " poisons " << player_name(e.object.player);
      break;
    case Verb::Vote:
      if (e.object.is_player()) {
        os << player_name(e.subject) << " votes for " << player_name(e.object.player);
      } else {
        os << player_name(e.subject) << " abstains";
      }
      break;
    case Verb::Shoot:
      os << player_name(e.subject) << " shoots " << player_name(e.object.player);
      break;
    case Verb::Claim:
      if (e.object.kind == EventObject::Kind::RoleName) {
        os << player_name(e.subject) << " claims to be the " << to_string(e.object.role);
      } else {
        os << player_name(e.subject) << " vouches for " << player_name(e.object.player);
      }
      break;
    case Verb::Accuse:
      os << player_name(e.subject) << " accuses " << player_name(e.object.player);
      break;
    case Verb::Pass:
      if (e.subject == kSystem) {
        os << (e.phase == Phase::DayVote ? "nobody is eliminated" : "a peaceful night");
      } else {
        os << player_name(e.subject) << " passes";
      }
      break;
    case Verb::Die:
      os << player_name(e.object.player) << " is dead";
      break;
  }
  return os.str();
}

struct SessionAborted {};

class HumanAgent : public Agent {
 public:
  HumanAgent(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  void begin_game(const GameState& state, int seat) override {
    seat_ = seat;
    out_ << "you are " << player_name(seat) << ", the " << to_string(state.roles[seat])
         << "\n";
    if (state.roles[seat] == Role::Werewolf) {
      out_ << "your pack:";
      for (int p = 0; p < kNumPlayers; ++p) {
        if (state.roles[p] == Role::Werewolf) out_ << " " << player_name(p);
      }
      out_ << "\n";
    }
  }

  void observe(const std::vector<ObservedEvent>& events) override {
    for (const ObservedEvent& oe : events) out_ << "  " << event_line(oe) << "\n";
  }

  int act(const GameState& state, const ActionMask& mask, Rng&) override {
    out_ << "--- round " << state.round << ", " << to_string(state.phase) << ". alive:";
    for (int p = 0; p < kNumPlayers; ++p) {
      if (state.alive[p]) out_ << " " << p;
    }
    out_ << "\n";
    std::vector<int> legal;
    for (int a = 0; a < kNumActions; ++a) {
      if (mask.legal(a)) legal.push_back(a);
    }
    for (std::size_t i = 0; i < legal.size(); ++i) {
      out_ << "  [" << i << "] " << action_name(legal[i]) << "\n";
    }
    while (true) {
      out_ << "choose> " << std::flush;
      std::string line;
      if (!std::getline(in_, line)) throw SessionAborted{};
      try {
        std::size_t idx = static_cast<std::size_t>(std::stoul(line));
        if (idx < legal.size()) return legal[idx];
      } catch (const std::exception&) {
      }
      out_ << "enter a number between 0 and " << legal.size() - 1 << "\n";
    }
  }

 private:
  std::istream& in_;
  std::ostream& out_;
  int seat_ = 0;
};

}  // namespace

int play_session(std::istream& in, std::ostream& out, const PlayOptions& options) {
  GameState state = new_game(options.seed);
  int human_seat = 0;
  if (options.role != "random") {
    auto role = role_from_string(options.role);
    if (!role) throw ConfigError("play: unknown role " + options.role);
    human_seat = state.seat_of(*role);
  } else {
    human_seat = static_cast<int>(Rng(options.seed).uniform_u32(kNumPlayers));
  }

  std::shared_ptr<PolicySet> policy;
  if (!options.checkpoint.empty()) {
    policy = std::make_shared<PolicySet>(load_checkpoint(options.checkpoint));
  }

  std::array<std::unique_ptr<Agent>, kNumPlayers> agents;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    if (seat == human_seat) {
      agents[seat] = std::make_unique<HumanAgent>(in, out);
    } else if (policy) {
      PolicyAgentOptions popt;
      popt.wr_cons = options.wr_cons;
      agents[seat] = std::make_unique<PolicyAgent>(policy.get(), popt);
    } else {
      agents[seat] = std::make_unique<HeuristicAgent>(options.noise);
    }
  }
  for (int seat = 0; seat < kNumPlayers; ++seat) agents[seat]->begin_game(state, seat);

  Rng rng(Rng::derive(options.seed, 0x706c6179ull));
  std::size_t cursor = 0;
  auto deliver = [&] {
    for (int seat = 0; seat < kNumPlayers; ++seat) {
      std::vector<ObservedEvent> batch;
      for (std::size_t i = cursor; i < state.history.size(); ++i) {
        const Event& e = state.history[i];
        if (!event_visible_to(e, seat, state.roles)) continue;
        ObservedEvent oe{e, std::nullopt};
        if (e.verb == Verb::Check && e.subject == seat && e.object.is_player() &&
            e.phase == Phase::NightSeerCheck) {
          oe.seer_saw_werewolf = state.roles[e.object.player] == Role::Werewolf;
        }
        batch.push_back(oe);
      }
      if (!batch.empty()) agents[seat]->observe(batch);
    }
    cursor = state.history.size();
  };

  bool aborted = false;
  try {
    while (state.phase != Phase::GameOver) {
      PhaseInput input;
      for (int p : acting_players(state)) {
        input.actions[p] = agents[p]->act(state, legal_actions(state, p), rng);
      }
      if (state.phase == Phase::DayDiscuss) {
        for (const auto& [p, action] : input.actions) {
          std::vector<ClaimEvent> events =
              claims_to_events(agents[p]->claims(state, action));
          if (!events.empty()) input.claims[p] = std::move(events);
        }
      }
      step(state, input);
      deliver();
    }
  } catch (const SessionAborted&) {
    aborted = true;
  }

  if (!options.out_log.empty()) {
    if (aborted) {
      // Partial record; intentionally not a loadable corpus line.
      std::ofstream log_out(options.out_log);
      log_out << "{\"winner\":\"aborted\",\"seed\":" << options.seed
              << ",\"events\":" << state.history.size() << "}\n";
    } else {
      write_jsonl(options.out_log, {make_log(state)});
    }
  }
  if (aborted) {
    out << "session aborted; partial log -> " << options.out_log << "\n";
    return kExitOk;
  }
  out << "game over: " << to_string(*winner(state)) << " wins\n";
  out << "your role: " << to_string(state.roles[human_seat]) << ", you "
      << (camp_of(state.roles[human_seat]) == *winner(state) ? "won" : "lost") << "\n";
  out << "log -> " << options.out_log << "\n";
  return kExitOk;
}

int exit_code_for_current_exception(std::ostream& log) {
  try {
    throw;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RewardConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace werewolf::cli
