// Acceptance suite: one pass/fail line per criterion.
//
//   acceptance                 run everything
//   acceptance --criterion N   run criterion N only
//   acceptance --list          list criteria
//
// Exit status is the number of failed criteria.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "testutil.hpp"
#include "werewolf/chains.hpp"
#include "werewolf/cli.hpp"
#include "werewolf/discussor.hpp"
#include "werewolf/predictor.hpp"
#include "werewolf/rewards.hpp"
#include "werewolf/stats.hpp"
#include "werewolf/train.hpp"

using namespace werewolf;
using werewolf::testing::fixture_corpus;
using werewolf::testing::fixture_entries;
using werewolf::testing::FixtureEntry;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
  void note(const std::string& what) {
    detail << (detail.str().empty() ? "" : "; ") << what;
  }
};

// --------------------------------------------------------------------------
// 1. Reward formulas, exact.

bool criterion_1() {
  Check c;
  c.expect(std::fabs(chain_reward(0.98, 1.0) - 0.48) <= 1e-12,
           "chain_reward(0.98, 1) != 0.48");

  // d == eps^2 bit-exactly with representable values.
  RewardConfig exact;
  exact.epsilon = 0.25;
  c.expect(ctrl_reward(0.75, 0.5, exact) == 0.0, "ctrl_reward at d=eps^2 not zero");
  RewardConfig defaults;
  c.expect(std::fabs(ctrl_reward(0.45, 0.30, defaults)) < 1e-15,
           "ctrl_reward near the default branch point not ~0");

  // Closed form oracle in extended precision.
  long double d = 1.0L;
  long double oracle = -std::tanh((static_cast<double>(d) - 0.15 * 0.15) / 0.1);
  long double oracle_hp = -tanhl((1.0L - 0.15L * 0.15L) / 0.1L);
  double got = ctrl_reward(1.0, 0.0, defaults);
  c.expect(std::fabs(got - static_cast<double>(oracle_hp)) <= 1e-9,
           "ctrl_reward(1,0) differs from -tanh(9.775)");
  c.expect(std::fabs(static_cast<double>(oracle - oracle_hp)) <= 1e-12,
           "oracle self-check");
  std::ostringstream os;
  os << "chain_reward(0.98,1)=" << chain_reward(0.98, 1.0) << ", ctrl(1,0)=" << got;
  c.note(os.str());
  std::printf("%s criterion 1: reward formulas exact (%s)\n", c.ok ? "[PASS]" : "[FAIL]",
              c.detail.str().c_str());
  return c.ok;
}

// --------------------------------------------------------------------------
// 2. Appendix fixture reproduction.

bool criterion_2() {
  Check c;
  std::vector<GameLog> corpus = fixture_corpus();
  ChainDB db = build_db(corpus, 1, 0.5);
  double worst = 0.0;
  for (const FixtureEntry& entry : fixture_entries()) {
    auto stats = db.exact(entry.role, entry.chain);
    if (!stats) {
      c.expect(false, "missing chain: " + entry.chain);
      continue;
    }
    c.expect(stats->count == entry.count, "count mismatch for " + entry.chain);
    double err = std::fabs(stats->win_rate - entry.win_rate);
    worst = std::max(worst, err);
    c.expect(err <= 0.005, "win rate off for " + entry.chain);
  }
  std::ostringstream os;
  os << corpus.size() << " constructed games, 15 entries, max win-rate error "
     << std::scientific << worst;
  c.note(os.str());
  std::printf("%s criterion 2: appendix fixture reproduction (%s)\n",
              c.ok ? "[PASS]" : "[FAIL]", c.detail.str().c_str());
  return c.ok;
}

// --------------------------------------------------------------------------
// 3. Masked softmax against a restricted-softmax oracle.

bool criterion_3() {
  Check c;
  Rng rng(0xACCE55);
  PolicyConfig pcfg;
  PolicyParams params = PolicyParams::init(pcfg, 31337);
  double worst_masked = 0.0, worst_sum = 0.0, worst_diff = 0.0;

  for (int trial = 0; trial < 10000; ++trial) {
    // Random features from random play snapshots are expensive; random
    // belief-less features exercise the same code path.
    FeatureVector f;
    int events = static_cast<int>(rng.uniform_u32(6));
    for (int e = 0; e < events; ++e) {
      f.event_ids.push_back({static_cast<int>(rng.uniform_u32(kSubjectSlots)),
                             static_cast<int>(rng.uniform_u32(kVerbSlots)),
                             static_cast<int>(rng.uniform_u32(kObjectSlots))});
    }
    for (double& b : f.belief) b = rng.uniform_real();
    f.wr_cons = rng.uniform_real();
    ActionMask mask;
    while (!mask.any()) {
      for (int a = 0; a < kNumActions; ++a) {
        if (rng.uniform_real() < 0.25) mask.set(a);
      }
    }
    ActionDistribution dist = forward(params, f, mask);

    // Independent route: rebuild the logits by hand, then softmax over the
    // legal set only.
    std::vector<double> x = materialize_features(params, f);
    int h = pcfg.hidden_dim;
    std::vector<double> h1(h), h2(h);
    for (int r = 0; r < h; ++r) {
      double acc = params.b1.v[r];
      for (int k = 0; k < static_cast<int>(x.size()); ++k) acc += params.w1.at(r, k) * x[k];
      h1[r] = std::tanh(acc);
    }
    for (int r = 0; r < h; ++r) {
      double acc = params.b2.v[r];
      for (int k = 0; k < h; ++k) acc += params.w2.at(r, k) * h1[k];
      h2[r] = std::tanh(acc);
    }
    std::array<double, kNumActions> logits{};
    for (int a = 0; a < kNumActions; ++a) {
      double acc = params.bp.v[a];
      for (int k = 0; k < h; ++k) acc += params.wp.at(a, k) * h2[k];
      logits[a] = acc;
    }
    double max_legal = -1e300;
    for (int a = 0; a < kNumActions; ++a) {
      if (mask.legal(a)) max_legal = std::max(max_legal, logits[a]);
    }
    double z = 0.0;
    for (int a = 0; a < kNumActions; ++a) {
      if (mask.legal(a)) z += std::exp(logits[a] - max_legal);
    }
    double sum_legal = 0.0;
    for (int a = 0; a < kNumActions; ++a) {
      if (mask.legal(a)) {
        double oracle = std::exp(logits[a] - max_legal) / z;
        worst_diff = std::max(worst_diff, std::fabs(oracle - dist.probs[a]));
        sum_legal += dist.probs[a];
      } else {
        worst_masked = std::max(worst_masked, dist.probs[a]);
      }
    }
    worst_sum = std::max(worst_sum, std::fabs(sum_legal - 1.0));
  }
  c.expect(worst_masked <= 1e-12, "masked probability leak");
  c.expect(worst_sum <= 1e-9, "legal probabilities do not sum to 1");
  c.expect(worst_diff <= 1e-9, "restricted-softmax oracle mismatch");
  std::ostringstream os;
  os << "10^4 instances, max masked " << std::scientific << worst_masked << ", max |sum-1| "
     << worst_sum << ", max oracle diff " << worst_diff;
  c.note(os.str());
  std::printf("%s criterion 3: masked softmax (%s)\n", c.ok ? "[PASS]" : "[FAIL]",
              c.detail.str().c_str());
  return c.ok;
}

// --------------------------------------------------------------------------
// 4. Advantage correctness.

bool criterion_4() {
  Check c;
  auto step4 = [](double sr, double v, double nv, bool terminal) {
    TrajectoryStep s;
    s.sr = sr;
    s.value = v;
    s.next_value = nv;
    s.terminal = terminal;
    return s;
  };
  std::vector<TrajectoryStep> batch = {step4(0.0, 0.2, 0.5, false),
                                       step4(0.0, 0.5, 0.9, false),
                                       step4(1.0, 0.9, 0.0, true)};
  compute_advantages(batch, 0.9);
  c.expect(std::fabs(batch[0].advantage - 0.25) <= 1e-9, "A1 != 0.25");
  c.expect(std::fabs(batch[1].advantage - 0.31) <= 1e-9, "A2 != 0.31");
  c.expect(std::fabs(batch[2].advantage - 0.10) <= 1e-9, "A3 != 0.1");

  // gamma=1 with values equal to true returns: A == 0 everywhere.
  Rng rng(4);
  std::vector<TrajectoryStep> episode;
  std::vector<double> rewards;
  for (int i = 0; i < 12; ++i) rewards.push_back(rng.normal(0, 1));
  std::vector<double> returns(rewards.size() + 1, 0.0);
  for (int i = static_cast<int>(rewards.size()) - 1; i >= 0; --i) {
    returns[i] = rewards[i] + returns[i + 1];
  }
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    bool terminal = i + 1 == rewards.size();
    episode.push_back(step4(rewards[i], returns[i], terminal ? 0.0 : returns[i + 1],
                            terminal));
  }
  compute_advantages(episode, 1.0);
  double worst = 0.0;
  for (const TrajectoryStep& s : episode) worst = std::max(worst, std::fabs(s.advantage));
  c.expect(worst <= 1e-9, "perfect values leave nonzero advantages");
  std::ostringstream os;
  os << "hand trajectory exact, max |A| under perfect values " << std::scientific << worst;
  c.note(os.str());
  std::printf("%s criterion 4: advantage correctness (%s)\n", c.ok ? "[PASS]" : "[FAIL]",
              c.detail.str().c_str());
  return c.ok;
}

// --------------------------------------------------------------------------
// 5. Gradient check.

bool criterion_5() {
  Check c;
  Rng rng(0x55AA);
  PolicyConfig pcfg;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    PolicyParams params = PolicyParams::init(pcfg, rng.next_u64());
    FeatureVector f;
    int events = 1 + static_cast<int>(rng.uniform_u32(5));
    for (int e = 0; e < events; ++e) {
      f.event_ids.push_back({static_cast<int>(rng.uniform_u32(kSubjectSlots)),
                             static_cast<int>(rng.uniform_u32(kVerbSlots)),
                             static_cast<int>(rng.uniform_u32(kObjectSlots))});
    }
    for (double& b : f.belief) b = rng.uniform_real();
    f.wr_cons = rng.uniform_real();
    f.alive[rng.uniform_u32(kNumPlayers)] = 1.0;
    ActionMask mask;
    while (mask.count() < 2) {
      for (int a = 0; a < kNumActions; ++a) {
        if (rng.uniform_real() < 0.3) mask.set(a);
      }
    }
    std::vector<int> legal;
    for (int a = 0; a < kNumActions; ++a) {
      if (mask.legal(a)) legal.push_back(a);
    }
    int action = legal[rng.uniform_u32(static_cast<std::uint32_t>(legal.size()))];
    ActionDistribution dist = forward(params, f, mask);
    LossConfig loss_cfg;
    loss_cfg.clipped = trial % 2 == 0;
    double behavior = dist.probs[action] * (0.92 + 0.16 * rng.uniform_real());
    double err = grad_check(params, f, mask, action, rng.normal(0, 1), behavior,
                            rng.normal(0, 1), loss_cfg, 150, rng);
    worst = std::max(worst, err);
  }
  c.expect(worst <= 1e-4, "analytic vs finite-difference gradient error too large");
  std::ostringstream os;
  os << "100 instances, max relative error " << std::scientific << worst;
  c.note(os.str());
  std::printf("%s criterion 5: gradient check (%s)\n", c.ok ? "[PASS]" : "[FAIL]",
              c.detail.str().c_str());
  return c.ok;
}

// --------------------------------------------------------------------------
// 6. Engine fuzz.

bool criterion_6() {
  Check c;
  const int kGames = 10000;
  long village = 0, wolves = 0;
  for (int game = 0; game < kGames && c.ok; ++game) {
    std::uint64_t seed = 0xF0220000ull + game;
    GameState state = new_game(seed);
    Rng rng(Rng::derive(seed, 6));
    std::array<Role, kNumPlayers> roles0 = state.roles;
    std::set<int> dead;
    int steps = 0;
    while (state.phase != Phase::GameOver) {
      if (++steps > 500) {
        c.expect(false, "game exceeded step bound");
        break;
      }
      std::map<int, int> actions;
      for (int p : acting_players(state)) {
        ActionMask mask = legal_actions(state, p);
        if (!mask.any()) {
          c.expect(false, "actor with empty mask");
          break;
        }
        actions[p] = werewolf::testing::random_legal(mask, rng);
      }
      std::vector<Event> events = step(state, actions);
      if (!(state.roles == roles0)) c.expect(false, "role mutation");
      if (state.round > state.max_rounds) c.expect(false, "round bound exceeded");
      if (winner(state).has_value() != (state.phase == Phase::GameOver)) {
        c.expect(false, "winner exclusivity violated");
      }
      for (const Event& e : events) {
        if (e.subject != kSystem && dead.count(e.subject)) {
          c.expect(false, "dead player acted");
        }
        if (e.subject == kSystem && e.verb == Verb::Die) {
          if (!dead.insert(e.object.player).second) c.expect(false, "double death");
          if (state.alive[e.object.player]) c.expect(false, "die event left target alive");
        }
      }
    }
    if (!c.ok) break;
    GameLog log = make_log(state);
    try {
      GameState again = replay(log);
      if (!(again == state)) c.expect(false, "replay state mismatch");
    } catch (const EngineError& e) {
      c.expect(false, std::string("replay failed: ") + e.what());
    }
    (log.winner == Camp::VillageSide ? village : wolves) += 1;
  }
  double v_rate = static_cast<double>(village) / kGames;
  double w_rate = static_cast<double>(wolves) / kGames;
  c.expect(v_rate >= 0.01, "village wins under 1%");
  c.expect(w_rate >= 0.01, "wolf wins under 1%");
  std::ostringstream os;
  os << kGames << " games, 100% replay fidelity, village " << v_rate << " / wolf "
     << w_rate;
  c.note(os.str());
  std::printf("%s criterion 6: engine fuzz (%s)\n", c.ok ? "[PASS]" : "[FAIL]",
              c.detail.str().c_str());
  return c.ok;
}

// --------------------------------------------------------------------------
// 7. Controllability trend (desk-scale analogue; full pipeline).

bool criterion_7() {
  Check c;
  namespace fs = std::filesystem;
  fs::create_directories("acceptance_out");
  std::ostringstream quiet;

  // Reference opponents: heuristic wolves at noise 0.5. The corpus sweeps
  // village skill against them so chain win rates track play quality.
  struct Slice {
    const char* village;
    double vnoise;
    std::uint64_t seed;
    const char* path;
  };
  std::vector<Slice> slices = {
      {"heuristic", 0.00, 601, "acceptance_out/c7_v00.jsonl"},
      {"heuristic", 0.15, 602, "acceptance_out/c7_v15.jsonl"},
      {"heuristic", 0.30, 603, "acceptance_out/c7_v30.jsonl"},
      {"heuristic", 0.50, 604, "acceptance_out/c7_v50.jsonl"},
      {"heuristic", 0.75, 605, "acceptance_out/c7_v75.jsonl"},
      {"random", 0.00, 606, "acceptance_out/c7_vr.jsonl"},
  };
  cli::BuildChainsOptions chains;
  for (const Slice& slice : slices) {
    cli::SimulateOptions sim;
    sim.n = 2000;
    sim.agents = "heuristic";
    sim.village_agents = slice.village;
    sim.village_noise = slice.vnoise;
    sim.wolf_noise = 0.5;
    sim.seed = slice.seed;
    sim.out = slice.path;
    sim.threads = 2;
    cli::cmd_simulate(sim, quiet);
    chains.corpora.push_back(slice.path);
  }
  chains.min_count = 20;
  chains.out = "acceptance_out/c7_chains.tsv";
  cli::cmd_build_chains(chains, quiet);
  ChainDB db = ChainDB::load(chains.out, 20, 0.5);

  RewardConfig rewards;
  rewards.epsilon = 0.08;
  rewards.k = 0.04;
  rewards.s = 12.0;
  rewards.strict_sign = true;

  TrainConfig cfg;
  cfg.waves = 2000;
  cfg.games_per_wave = 64;
  cfg.lr = 6e-4;
  cfg.ent_coef = 0.005;
  cfg.mode = TrainMode::Controllable;
  cfg.wr_cons_schedule = {0.1, 0.3, 0.5, 0.7, 0.9};
  cfg.heuristic_noise = 0.5;
  cfg.threads = 2;
  cfg.seed = 7400;

  Trainer trainer(cfg, rewards, PolicyConfig{}, &db);
  trainer.run();
  save_checkpoint(trainer.policy(), "acceptance_out/c7_policy.json");

  std::vector<double> constraints = {0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> achieved;
  std::printf("  constraint  achieved  95%% CI\n");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    EvalResult r = evaluate(trainer.policy(), OpponentKind::Heuristic, 400,
                            constraints[i], Rng::derive(57, i), Camp::VillageSide,
                            rewards, 0.5, 2);
    achieved.push_back(r.win_rate);
    std::printf("     %.1f       %.3f    [%.3f, %.3f]\n", constraints[i], r.win_rate,
                r.ci_lo, r.ci_hi);
  }
  std::optional<double> rho = spearman(constraints, achieved);
  double delta = achieved.back() - achieved.front();
  c.expect(rho.has_value() && *rho > 0.0, "spearman rho not positive");
  c.expect(delta >= 0.10, "achieved(0.9) - achieved(0.1) < 0.10");
  std::ostringstream os;
  os << "rho=" << (rho ? *rho : 0.0) << ", delta=" << delta << ", 400 games/constraint";
  c.note(os.str());
  std::printf("%s criterion 7: controllability trend (%s)\n", c.ok ? "[PASS]" : "[FAIL]",
              c.detail.str().c_str());
  return c.ok;
}

// --------------------------------------------------------------------------
// 8. Prediction accuracy.

bool criterion_8() {
  Check c;
  std::ostringstream quiet;
  std::filesystem::create_directories("acceptance_out");
  cli::SimulateOptions sim;
  sim.n = 900;
  sim.agents = "heuristic";
  sim.noise = 0.1;
  sim.seed = 808;
  sim.out = "acceptance_out/c8_corpus.jsonl";
  sim.threads = 2;
  cli::cmd_simulate(sim, quiet);

  std::vector<GameLog> logs = read_jsonl(sim.out);
  LikelihoodModel model;
  AccRow random_row = evaluate_random_predictor(logs, 4242, ObserverSet::VillageSide);
  AccRow bayes_row = evaluate_bayesian_predictor(logs, model, ObserverSet::VillageSide);

  const double exact = 23.0 / 28.0;
  c.expect(random_row.snapshots >= 5000, "fewer than 5000 snapshots");
  c.expect(std::fabs(random_row.werewolf_acc[0] - exact) <= 0.02,
           "random ACC@1 off the combinatorial value");
  c.expect(bayes_row.werewolf_acc[0] >= random_row.werewolf_acc[0] + 0.05,
           "bayesian ACC@1 does not exceed random by 0.05");
  std::ostringstream os;
  os << random_row.snapshots << " snapshots; random ACC@1 " << random_row.werewolf_acc[0]
     << " (exact " << exact << "), bayesian ACC@1 " << bayes_row.werewolf_acc[0];
  c.note(os.str());
  std::printf("%s criterion 8: prediction accuracy (%s)\n", c.ok ? "[PASS]" : "[FAIL]",
              c.detail.str().c_str());
  return c.ok;
}

// --------------------------------------------------------------------------
// 9. PPO sanity.

bool criterion_9() {
  Check c;
  // Two-action bandit.
  PolicyConfig pcfg;
  pcfg.embed_dim = 4;
  pcfg.hidden_dim = 8;
  PolicySet policy = PolicySet::init(pcfg, 42);
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.minibatch = 64;
  cfg.lr = 0.01;
  cfg.ent_coef = 0.001;

  FeatureVector features;
  features.wr_cons = 0.5;
  ActionMask mask;
  int good = action_id(Verb::Vote, 0);
  mask.set(good);
  mask.set(action_id(Verb::Vote, 1));

  Rng rng(9);
  std::vector<Adam> optimizers;
  double p_good = 0.0;
  int updates = 0;
  for (; updates < 500; ++updates) {
    ActionDistribution dist = forward(policy.params[0], features, mask);
    p_good = dist.probs[good];
    if (p_good > 0.9) break;
    std::vector<TrajectoryStep> batch;
    for (int i = 0; i < 64; ++i) {
      TrajectoryStep s;
      s.features = features;
      s.mask = mask;
      s.action = sample_action(dist, rng);
      s.behavior_prob = dist.probs[s.action];
      s.value = dist.value;
      s.sr = s.action == good ? 1.0 : 0.0;
      s.terminal = true;
      batch.push_back(s);
    }
    compute_advantages(batch, 0.99);
    ppo_update(policy, optimizers, batch, cfg, rng);
  }
  c.expect(p_good > 0.9, "bandit did not reach P(best) > 0.9 in 500 updates");

  // First-epoch importance ratios on a freshly collected self-play batch.
  TrainConfig smoke;
  smoke.waves = 1;
  smoke.games_per_wave = 8;
  smoke.seed = 99;
  ChainDB db(1, 0.5);
  Trainer trainer(smoke, RewardConfig{}, PolicyConfig{}, &db);
  CollectResult collected = trainer.collect_wave(0);
  compute_advantages(collected.steps, 0.99);
  std::vector<Adam> opts;
  Rng rng2(3);
  UpdateStats stats = ppo_update(trainer.policy(), opts, collected.steps, smoke, rng2);
  c.expect(std::fabs(stats.mean_ratio_first_epoch - 1.0) <= 1e-6,
           "first-epoch ratios differ from 1");
  std::ostringstream os;
  os << "bandit solved in " << updates << " updates (P=" << p_good
     << "); mean first-epoch ratio " << stats.mean_ratio_first_epoch;
  c.note(os.str());
  std::printf("%s criterion 9: ppo sanity (%s)\n", c.ok ? "[PASS]" : "[FAIL]",
              c.detail.str().c_str());
  return c.ok;
}

// --------------------------------------------------------------------------
// 10. Ablation harness.

bool criterion_10() {
  Check c;
  std::ostringstream quiet;
  std::filesystem::create_directories("acceptance_out");

  // Chain db from the reference-opponent corpus (reuse criterion 7 slices
  // when present, otherwise build a small one).
  const char* db_path = "acceptance_out/c10_chains.tsv";
  {
    cli::SimulateOptions sim;
    sim.n = 2500;
    sim.agents = "heuristic";
    sim.wolf_noise = 0.5;
    sim.village_noise = 0.2;
    sim.seed = 1010;
    sim.out = "acceptance_out/c10_corpus.jsonl";
    sim.threads = 2;
    cli::cmd_simulate(sim, quiet);
    cli::BuildChainsOptions chains;
    chains.corpora = {sim.out};
    chains.min_count = 20;
    chains.out = db_path;
    cli::cmd_build_chains(chains, quiet);
  }
  ChainDB db = ChainDB::load(db_path, 20, 0.5);

  RewardConfig rewards;
  TrainConfig base;
  base.waves = 220;
  base.games_per_wave = 64;
  base.mode = TrainMode::Performance;
  base.heuristic_noise = 0.5;
  base.threads = 2;
  base.seed = 1099;

  struct Row {
    std::string name;
    EvalResult eval;
  };
  std::vector<Row> rows;
  struct Variant {
    const char* name;
    const ChainDB* chains;
    bool uniform;
  };
  for (const Variant& variant : {Variant{"full", &db, false},
                                 Variant{"-DCR", nullptr, false},
                                 Variant{"-Predictor", &db, true}}) {
    TrainConfig cfg = base;
    cfg.uniform_belief = variant.uniform;
    Trainer trainer(cfg, rewards, PolicyConfig{}, variant.chains);
    trainer.run();
    EvalResult eval = evaluate(trainer.policy(), OpponentKind::Heuristic, 400, 1.0,
                               Rng::derive(1100, rows.size()), Camp::VillageSide, rewards,
                               0.5, 2, variant.uniform);
    rows.push_back({variant.name, eval});
    std::printf("  %-11s win %.3f  [%.3f, %.3f]\n", variant.name, eval.win_rate,
                eval.ci_lo, eval.ci_hi);
  }
  c.expect(rows.size() == 3, "expected exactly three rows");
  double ci_width = rows[0].eval.ci_hi - rows[0].eval.ci_lo;
  c.expect(rows[2].eval.win_rate <= rows[0].eval.win_rate + ci_width,
           "-Predictor beats full by more than the CI width");
  std::ostringstream os;
  os << "full " << rows[0].eval.win_rate << ", -DCR " << rows[1].eval.win_rate
     << ", -Predictor " << rows[2].eval.win_rate << " (CI width " << ci_width << ")";
  c.note(os.str());
  std::printf("%s criterion 10: ablation harness (%s)\n", c.ok ? "[PASS]" : "[FAIL]",
              c.detail.str().c_str());
  return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  struct Entry {
    int id;
    const char* name;
    std::function<bool()> run;
  };
  std::vector<Entry> entries = {
      {1, "reward formulas exact", criterion_1},
      {2, "appendix fixture reproduction", criterion_2},
      {3, "masked softmax", criterion_3},
      {4, "advantage correctness", criterion_4},
      {5, "gradient check", criterion_5},
      {6, "engine fuzz", criterion_6},
      {7, "controllability trend", criterion_7},
      {8, "prediction accuracy", criterion_8},
      {9, "ppo sanity", criterion_9},
      {10, "ablation harness", criterion_10},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--list") == 0) {
      for (const Entry& e : entries) std::printf("%2d  %s\n", e.id, e.name);
      return 0;
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--list]\n");
      return 64;
    }
  }

  int failures = 0;
  for (const Entry& e : entries) {
    if (only != 0 && e.id != only) continue;
    bool ok = false;
    try {
      ok = e.run();
    } catch (const std::exception& err) {
      std::printf("[FAIL] criterion %d: %s (exception: %s)\n", e.id, e.name, err.what());
    }
    failures += ok ? 0 : 1;
  }
  return failures;
}
