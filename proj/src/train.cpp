#include "werewolf/train.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

namespace werewolf {

const char* to_string(TrainMode mode) {
  return mode == TrainMode::Performance ? "performance" : "controllable";
}

const char* to_string(OpponentKind kind) {
  switch (kind) {
    case OpponentKind::Random: return "random";
    case OpponentKind::Heuristic: return "heuristic";
    case OpponentKind::FrozenSelf: return "frozen_self";
  }
  return "?";
}

void TrainConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw TrainError("train." + field + ": " + why);
  };
  if (waves < 1) fail("waves", "must be >= 1");
  if (games_per_wave < 1) fail("games_per_wave", "must be >= 1");
  if (epochs < 1) fail("epochs", "must be >= 1");
  if (minibatch < 1) fail("minibatch", "must be >= 1");
  if (!(lr > 0.0)) fail("lr", "must be > 0");
  if (!(clip_ratio > 0.0) || clip_ratio > 1.0) fail("clip_ratio", "must be in (0,1]");
  if (ent_coef < 0.0) fail("ent_coef", "must be >= 0");
  if (vf_coef < 0.0) fail("vf_coef", "must be >= 0");
  if (wr_cons_schedule.empty()) fail("wr_cons_schedule", "must not be empty");
  for (double c : wr_cons_schedule) {
    if (c < 0.0 || c > 1.0) fail("wr_cons_schedule", "constraints must be in [0,1]");
  }
  if (frozen_refresh < 1) fail("frozen_refresh", "must be >= 1");
  if (heuristic_noise < 0.0 || heuristic_noise > 1.0) {
    fail("heuristic_noise", "must be in [0,1]");
  }
  if (threads < 1) fail("threads", "must be >= 1");
  if (gae_lambda < 0.0 || gae_lambda > 1.0) fail("gae_lambda", "must be in [0,1]");
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int count = std::min(threads, n);
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

bool is_night_phase(Phase phase) {
  return phase == Phase::NightWolfKill || phase == Phase::NightSeerCheck ||
         phase == Phase::NightWitch;
}

}  // namespace

GameOutcome run_game(const AgentFactory& factory, std::uint64_t seed, Camp controlled,
                     const RolloutConfig& rollout) {
  GameState state = new_game(seed);
  std::array<std::unique_ptr<Agent>, kNumPlayers> agents;
  for (int seat = 0; seat < kNumPlayers; ++seat) {
    agents[seat] = factory(seat, state.roles[seat], state);
    if (!agents[seat]) throw TrainError("agent factory returned null");
  }
  for (int seat = 0; seat < kNumPlayers; ++seat) agents[seat]->begin_game(state, seat);

  Rng rng(Rng::derive(seed, 0x726f6c6c6f7574ull));
  std::size_t cursor = 0;
  auto deliver = [&] {
    if (cursor == state.history.size()) return;
    for (int seat = 0; seat < kNumPlayers; ++seat) {
      std::vector<ObservedEvent> batch;
      for (std::size_t i = cursor; i < state.history.size(); ++i) {
        const Event& e = state.history[i];
        if (!event_visible_to(e, seat, state.roles)) continue;
        ObservedEvent oe{e, std::nullopt};
        if (e.verb == Verb::Check && is_night_phase(e.phase) && e.subject == seat &&
            e.object.is_player()) {
          oe.seer_saw_werewolf = state.roles[e.object.player] == Role::Werewolf;
        }
        batch.push_back(oe);
      }
      if (!batch.empty()) agents[seat]->observe(batch);
    }
    cursor = state.history.size();
  };

  try {
    while (state.phase != Phase::GameOver) {
      PhaseInput input;
      std::vector<int> actors = acting_players(state);
      for (int p : actors) {
        input.actions[p] = agents[p]->act(state, legal_actions(state, p), rng);
      }
      if (state.phase == Phase::DayDiscuss && rollout.claims_enabled) {
        for (int p : actors) {
          std::vector<ClaimEvent> events =
              claims_to_events(agents[p]->claims(state, input.actions[p]));
          if (!events.empty()) input.claims[p] = std::move(events);
        }
      }
      step(state, input);
      deliver();
    }
  } catch (const EngineError& e) {
    throw TrainError(std::string("rollout aborted (seed ") + std::to_string(seed) +
                     "): " + e.what());
  }

  GameOutcome out;
  out.log = make_log(state);
  out.winner = *winner(state);
  out.controlled_won = out.winner == controlled;

  for (int seat = 0; seat < kNumPlayers; ++seat) {
    std::vector<TrajectoryStep>* traj = agents[seat]->trajectory();
    if (!traj || traj->empty()) continue;
    bool won = camp_of(state.roles[seat]) == out.winner;
    TrajectoryStep& last = traj->back();
    last.terminal = true;
    last.next_value = 0.0;
    last.sr = step_reward(true, won, rollout.rewards);
    if (rollout.chains) {
      ChainStats stats = rollout.chains->lookup(extract_chain(out.log, seat));
      last.cr = rollout.mode == TrainMode::Performance
                    ? chain_reward(stats.win_rate, rollout.rewards.alpha)
                    : ctrl_reward(rollout.wr_cons, stats.win_rate, rollout.rewards);
    }
    for (TrajectoryStep& step : *traj) out.steps.push_back(std::move(step));
    traj->clear();
  }
  return out;
}

void compute_advantages(std::vector<TrajectoryStep>& batch, double gamma) {
  for (TrajectoryStep& step : batch) {
    double r = step.sr + step.cr;
    step.advantage = r + gamma * step.next_value - step.value;
    step.value_target = step.advantage + step.value;
  }
}

void compute_advantages_gae(std::vector<TrajectoryStep>& batch, double gamma,
                            double lambda) {
  double carry = 0.0;
  for (std::size_t i = batch.size(); i-- > 0;) {
    TrajectoryStep& step = batch[i];
    if (step.terminal) carry = 0.0;
    double delta = step.sr + step.cr + gamma * step.next_value - step.value;
    carry = delta + gamma * lambda * carry;
    step.advantage = carry;
    step.value_target = step.advantage + step.value;
  }
}

UpdateStats ppo_update(PolicySet& policy, std::vector<Adam>& optimizers,
                       std::vector<TrajectoryStep>& batch, const TrainConfig& cfg,
                       Rng& rng) {
  UpdateStats stats;
  if (batch.empty()) return stats;
  if (optimizers.empty()) optimizers.resize(policy.params.size());
  for (Adam& adam : optimizers) adam.lr = cfg.lr;

  LossConfig loss_cfg;
  loss_cfg.clip_ratio = cfg.clip_ratio;
  loss_cfg.clipped = !cfg.unclipped;
  loss_cfg.vf_coef = cfg.vf_coef;
  loss_cfg.ent_coef = cfg.ent_coef;

  std::vector<std::size_t> order(batch.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  // Ratio diagnostic at theta = theta', before any optimizer step; catches
  // stale behavior probabilities and parameter-routing mistakes.
  double ratio_sum = 0.0;
  for (const TrajectoryStep& step : batch) {
    std::size_t set = policy.cfg.per_role ? static_cast<std::size_t>(step.role) : 0;
    ActionDistribution dist = forward(policy.params[set], step.features, step.mask);
    ratio_sum += dist.probs[step.action] / step.behavior_prob;
  }
  stats.mean_ratio_first_epoch = ratio_sum / static_cast<double>(batch.size());

  double policy_sum = 0.0, value_sum = 0.0, entropy_sum = 0.0;
  long step_count = 0;

  std::vector<Gradients> grads;
  for (std::size_t i = 0; i < policy.params.size(); ++i) grads.emplace_back(policy.cfg);
  std::vector<long> set_count(policy.params.size(), 0);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(cfg.minibatch)) {
      std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(cfg.minibatch));
      for (Gradients& g : grads) g.zero();
      std::fill(set_count.begin(), set_count.end(), 0L);

      for (std::size_t i = start; i < end; ++i) {
        const TrajectoryStep& step = batch[order[i]];
        std::size_t set = policy.cfg.per_role ? static_cast<std::size_t>(step.role) : 0;
        StepLoss loss;
        try {
          loss = loss_and_grad(policy.params[set], step.features, step.mask, step.action,
                               step.behavior_prob, step.advantage, step.value_target,
                               loss_cfg, &grads[set]);
        } catch (const PolicyError& e) {
          throw TrainError(std::string("ppo_update aborted: ") + e.what());
        }
        set_count[set] += 1;
        policy_sum += loss.policy_loss;
        value_sum += loss.value_loss;
        entropy_sum += loss.entropy;
        ++step_count;
      }
      for (std::size_t set = 0; set < grads.size(); ++set) {
        if (set_count[set] == 0) continue;
        grads[set].scale(1.0 / static_cast<double>(set_count[set]));
        optimizers[set].step(policy.params[set], grads[set]);
      }
    }
  }
  if (step_count) {
    stats.policy_loss = policy_sum / step_count;
    stats.value_loss = value_sum / step_count;
    stats.entropy = entropy_sum / step_count;
  }
  return stats;
}

// ---------------------------------------------------------------------------

Trainer::Trainer(const TrainConfig& cfg, const RewardConfig& rewards,
                 const PolicyConfig& pcfg, const ChainDB* chains)
    : cfg_(cfg),
      rewards_(rewards),
      chains_(chains),
      policy_(PolicySet::init(pcfg, cfg.seed)),
      frozen_(policy_),
      rng_(Rng::derive(cfg.seed, 0x747261696eull)) {
  cfg_.validate();
  rewards_.validate();
}

AgentFactory Trainer::factory_for(double wr_cons, bool collect) {
  const PolicySet* live = &policy_;
  const PolicySet* frozen = &frozen_;
  TrainConfig* cfg = &cfg_;
  return [live, frozen, cfg, wr_cons, collect](int, Role role,
                                               const GameState&) -> std::unique_ptr<Agent> {
    if (camp_of(role) == cfg->controlled_side) {
      PolicyAgentOptions options;
      options.wr_cons = wr_cons;
      options.collect = collect;
      options.uniform_belief = cfg->uniform_belief;
      return std::make_unique<PolicyAgent>(live, options);
    }
    switch (cfg->opponents) {
      case OpponentKind::Random:
        return std::make_unique<RandomAgent>();
      case OpponentKind::Heuristic:
        return std::make_unique<HeuristicAgent>(cfg->heuristic_noise);
      case OpponentKind::FrozenSelf: {
        PolicyAgentOptions options;
        options.wr_cons = 1.0;
        return std::make_unique<PolicyAgent>(frozen, options);
      }
    }
    return std::make_unique<RandomAgent>();
  };
}

CollectResult Trainer::collect_wave(int wave_index) {
  std::uint64_t wave_seed = Rng::derive(cfg_.seed, 0x77617665ull + wave_index);
  int n = cfg_.games_per_wave;
  std::vector<GameOutcome> outcomes(n);
  std::vector<double> constraints(n, 1.0);
  for (int g = 0; g < n; ++g) {
    if (cfg_.mode == TrainMode::Controllable) {
      Rng pick(Rng::derive(wave_seed, 0xc0000000ull + g));
      constraints[g] = cfg_.wr_cons_schedule[pick.uniform_u32(
          static_cast<std::uint32_t>(cfg_.wr_cons_schedule.size()))];
    }
  }
  parallel_for(n, cfg_.threads, [&](int g) {
    RolloutConfig rollout;
    rollout.chains = chains_;
    rollout.rewards = rewards_;
    rollout.mode = cfg_.mode;
    rollout.wr_cons = constraints[g];
    outcomes[g] =
        run_game(factory_for(constraints[g], true), Rng::derive(wave_seed, g),
                 cfg_.controlled_side, rollout);
  });

  CollectResult result;
  result.games = n;
  for (int g = 0; g < n; ++g) {
    result.wins += outcomes[g].controlled_won ? 1 : 0;
    result.mean_wr_cons += constraints[g];
    for (TrajectoryStep& step : outcomes[g].steps) {
      result.steps.push_back(std::move(step));
    }
    result.logs.push_back(std::move(outcomes[g].log));
  }
  result.mean_wr_cons /= n;
  return result;
}

std::vector<WaveStats> Trainer::run(const std::function<void(const WaveStats&)>& on_wave) {
  std::vector<WaveStats> rows;
  for (int wave = 0; wave < cfg_.waves; ++wave) {
    if (cfg_.opponents == OpponentKind::FrozenSelf && wave % cfg_.frozen_refresh == 0) {
      frozen_ = policy_;
    }
    CollectResult collected = collect_wave(wave);
    if (cfg_.gae_lambda > 0.0) {
      compute_advantages_gae(collected.steps, rewards_.gamma, cfg_.gae_lambda);
    } else {
      compute_advantages(collected.steps, rewards_.gamma);
    }
    UpdateStats update = ppo_update(policy_, optimizers_, collected.steps, cfg_, rng_);

    WaveStats row;
    row.wave = wave;
    row.mode = cfg_.mode;
    row.wr_cons = collected.mean_wr_cons;
    row.achieved_wr = collected.win_rate();
    row.mean_ratio = update.mean_ratio_first_epoch;
    row.policy_loss = update.policy_loss;
    row.value_loss = update.value_loss;
    row.entropy = update.entropy;
    rows.push_back(row);
    if (on_wave) on_wave(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

EvalResult evaluate(const PolicySet& policy, OpponentKind opponents, int n_games,
                    double wr_cons, std::uint64_t seed, Camp controlled,
                    const RewardConfig& rewards, double heuristic_noise, int threads,
                    bool uniform_belief) {
  std::vector<char> won(n_games, 0);
  parallel_for(n_games, threads, [&](int g) {
    AgentFactory factory = [&](int, Role role, const GameState&) -> std::unique_ptr<Agent> {
      if (camp_of(role) == controlled) {
        PolicyAgentOptions options;
        options.wr_cons = wr_cons;
        options.uniform_belief = uniform_belief;
        return std::make_unique<PolicyAgent>(&policy, options);
      }
      if (opponents == OpponentKind::Random) return std::make_unique<RandomAgent>();
      return std::make_unique<HeuristicAgent>(heuristic_noise);
    };
    RolloutConfig rollout;
    rollout.rewards = rewards;
    GameOutcome outcome =
        run_game(factory, Rng::derive(seed, 0xe7a1ull + g), controlled, rollout);
    won[g] = outcome.controlled_won ? 1 : 0;
  });
  EvalResult result;
  result.games = n_games;
  for (char w : won) result.wins += w;
  BinomialCI ci = binomial_ci(result.wins, n_games);
  result.win_rate = ci.rate;
  result.ci_lo = ci.lo;
  result.ci_hi = ci.hi;
  return result;
}

EvalResult measure_baseline(OpponentKind kind, int n_games, std::uint64_t seed,
                            Camp controlled, double heuristic_noise, int threads) {
  std::vector<char> won(n_games, 0);
  parallel_for(n_games, threads, [&](int g) {
    AgentFactory factory = [&](int, Role, const GameState&) -> std::unique_ptr<Agent> {
      if (kind == OpponentKind::Random) return std::make_unique<RandomAgent>();
      return std::make_unique<HeuristicAgent>(heuristic_noise);
    };
    RolloutConfig rollout;
    GameOutcome outcome =
        run_game(factory, Rng::derive(seed, 0xba5eull + g), controlled, rollout);
    won[g] = outcome.controlled_won ? 1 : 0;
  });
  EvalResult result;
  result.games = n_games;
  for (char w : won) result.wins += w;
  BinomialCI ci = binomial_ci(result.wins, n_games);
  result.win_rate = ci.rate;
  result.ci_lo = ci.lo;
  result.ci_hi = ci.hi;
  return result;
}

void write_report_csv(const std::string& path, const std::vector<WaveStats>& rows) {
  std::ofstream out(path);
  if (!out) throw TrainError("cannot open for writing: " + path);
  out << "wave,mode,wr_cons,achieved_wr,mean_ratio,policy_loss,value_loss,entropy\n";
  for (const WaveStats& row : rows) {
    out << row.wave << ',' << to_string(row.mode) << ',' << row.wr_cons << ','
        << row.achieved_wr << ',' << row.mean_ratio << ',' << row.policy_loss << ','
        << row.value_loss << ',' << row.entropy << '\n';
  }
  if (!out) throw TrainError("write failed: " + path);
}

}  // namespace werewolf
