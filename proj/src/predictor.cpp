#include "werewolf/predictor.hpp"

#include <algorithm>
#include <cmath>

namespace werewolf {

namespace {

bool is_night(Phase phase) {
  return phase == Phase::NightWolfKill || phase == Phase::NightSeerCheck ||
         phase == Phase::NightWitch;
}

void enumerate_assignments(std::array<int, kNumRoles> remaining, Assignment& current,
                           int seat, std::vector<Assignment>& out) {
  if (seat == kNumPlayers) {
    out.push_back(current);
    return;
  }
  for (int r = 0; r < kNumRoles; ++r) {
    if (remaining[r] == 0) continue;
    remaining[r] -= 1;
    current[seat] = static_cast<Role>(r);
    enumerate_assignments(remaining, current, seat + 1, out);
    remaining[r] += 1;
  }
}

bool consistent(const Assignment& a, int observer, Role role, const PrivateInfo& info) {
  if (a[observer] != role) return false;
  if (info.wolf_pack) {
    for (int p = 0; p < kNumPlayers; ++p) {
      bool is_wolf = a[p] == Role::Werewolf;
      if (is_wolf != (info.wolf_pack->count(p) > 0)) return false;
    }
  }
  for (const auto& [target, is_wolf] : info.checks) {
    if ((a[target] == Role::Werewolf) != is_wolf) return false;
  }
  return true;
}

// Weight of one public event under one assignment. claimed_seer reflects the
// state before this event.
double event_weight(const Event& e, const Assignment& a,
                    const std::array<bool, kNumPlayers>& claimed_seer,
                    const LikelihoodModel& m) {
  int s = e.subject;
  switch (e.verb) {
    case Verb::Shoot:
      // Only the hunter ever shoots; this is public and role-forced.
      return a[s] == Role::Hunter ? 1.0 : 0.0;
    case Verb::Vote: {
      if (!e.object.is_player()) return 1.0;
      int t = e.object.player;
      if (a[s] != Role::Werewolf) return 1.0;
      return a[t] == Role::Werewolf ? m.wolf_votes_wolf : m.wolf_votes_nonwolf;
    }
    case Verb::Accuse: {
      int t = e.object.player;
      if (claimed_seer[s]) {
        return (a[s] == Role::Seer && a[t] == Role::Werewolf) ? m.true_seer_claim
                                                              : m.false_seer_claim;
      }
      if (a[s] == Role::Werewolf) {
        return a[t] == Role::Werewolf ? m.wolf_accuses_wolf : m.wolf_accuses_nonwolf;
      }
      return 1.0;
    }
    case Verb::Check:
      // A check spoken during the day asserts "target is a werewolf" and
      // implies a seer claim.
      if (!is_night(e.phase) && e.object.is_player()) {
        int t = e.object.player;
        return (a[s] == Role::Seer && a[t] == Role::Werewolf) ? m.true_seer_claim
                                                              : m.false_seer_claim;
      }
      return 1.0;
    case Verb::Claim:
      if (e.object.is_player()) {
        // A vouch: "I checked this player, not a werewolf".
        int t = e.object.player;
        if (claimed_seer[s]) {
          return (a[s] == Role::Seer && a[t] != Role::Werewolf) ? m.true_seer_claim
                                                                : m.false_seer_claim;
        }
        return m.claim_weight;
      }
      return m.claim_weight;
    default:
      return 1.0;
  }
}

}  // namespace

Belief Belief::init(int observer, Role role, const PrivateInfo& info) {
  if (info.wolf_pack && role != Role::Werewolf) {
    throw BeliefError("wolf pack supplied for a non-wolf observer");
  }
  if (info.wolf_pack &&
      (info.wolf_pack->size() != 3 || info.wolf_pack->count(observer) == 0)) {
    throw BeliefError("wolf pack must contain the observer and have size 3");
  }
  if (!info.checks.empty() && role != Role::Seer) {
    throw BeliefError("check results supplied for a non-seer observer");
  }

  Belief belief;
  belief.observer_ = observer;
  belief.observer_role_ = role;

  std::vector<Assignment> all;
  all.reserve(10080);
  Assignment current{};
  enumerate_assignments({3, 3, 1, 1, 1}, current, 0, all);
  for (const Assignment& a : all) {
    if (consistent(a, observer, role, info)) belief.assignments_.push_back(a);
  }
  if (belief.assignments_.empty()) {
    throw BeliefError("private info is inconsistent with the role multiset");
  }
  belief.weights_.assign(belief.assignments_.size(),
                         1.0 / static_cast<double>(belief.assignments_.size()));
  return belief;
}

void Belief::update(const ObservedEvent& oe, const LikelihoodModel& model) {
  const Event& e = oe.event;
  ++consumed_;
  if (e.subject == kSystem) return;
  int s = e.subject;

  if (s == observer_) {
    // Own behavior carries no evidence, but a fresh check result does.
    if (e.verb == Verb::Check && is_night(e.phase) && oe.seer_saw_werewolf &&
        e.object.is_player()) {
      int t = e.object.player;
      bool saw_wolf = *oe.seer_saw_werewolf;
      double total = 0.0;
      for (std::size_t i = 0; i < assignments_.size(); ++i) {
        if ((assignments_[i][t] == Role::Werewolf) != saw_wolf) weights_[i] = 0.0;
        total += weights_[i];
      }
      if (total > 0.0) {
        for (double& w : weights_) w /= total;
      }
    }
    return;
  }

  // Claim-type assertions (role claims, spoken checks, vouches) carry
  // evidence only the first time; votes and accusations are fresh behavior
  // every phase.
  bool is_assertion =
      (e.verb == Verb::Claim) || (e.verb == Verb::Check && !is_night(e.phase));
  if (is_assertion) {
    std::uint32_t key = static_cast<std::uint32_t>(s) << 16 |
                        static_cast<std::uint32_t>(e.verb) << 8 |
                        static_cast<std::uint32_t>(e.object.kind) << 4 |
                        (e.object.is_player() ? e.object.player
                                              : static_cast<int>(e.object.role));
    if (!seen_assertions_.insert(key).second) {
      if (e.verb == Verb::Check && !is_night(e.phase)) claimed_seer_[s] = true;
      return;
    }
  }

  double total = 0.0;
  std::array<bool, kNumPlayers> before = claimed_seer_;
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    weights_[i] *= event_weight(e, assignments_[i], before, model);
    total += weights_[i];
  }
  if (total > 0.0) {
    for (double& w : weights_) w /= total;
  } else {
    // Contradiction under every assignment (possible only with imported
    // records); drop the event instead of zeroing the posterior.
    double uniform = 1.0 / static_cast<double>(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      weights_[i] = weights_[i] == 0.0 ? uniform : weights_[i];
    }
    double t2 = 0.0;
    for (double w : weights_) t2 += w;
    for (double& w : weights_) w /= t2;
  }

  if (e.verb == Verb::Claim && e.object.kind == EventObject::Kind::RoleName &&
      e.object.role == Role::Seer) {
    claimed_seer_[s] = true;
  }
  if (e.verb == Verb::Check && !is_night(e.phase)) claimed_seer_[s] = true;
}

void Belief::update(const std::vector<ObservedEvent>& events, const LikelihoodModel& model) {
  for (const ObservedEvent& e : events) update(e, model);
}

Marginals Belief::marginals() const {
  Marginals m{};
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    for (int p = 0; p < kNumPlayers; ++p) {
      m[p][static_cast<int>(assignments_[i][p])] += weights_[i];
    }
  }
  return m;
}

double Belief::p_role(int player, Role role) const {
  double total = 0.0;
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    if (assignments_[i][player] == role) total += weights_[i];
  }
  return total;
}

std::vector<int> Belief::predict_werewolves(int n) const {
  Marginals m = marginals();
  std::vector<std::pair<double, int>> scored;
  for (int p = 0; p < kNumPlayers; ++p) {
    if (p == observer_) continue;
    scored.push_back({m[p][static_cast<int>(Role::Werewolf)], p});
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<int> out;
  for (int i = 0; i < n && i < static_cast<int>(scored.size()); ++i) {
    out.push_back(scored[i].second);
  }
  return out;
}

Assignment Belief::predict_identities() const {
  Marginals m = marginals();
  Assignment out{};
  for (int p = 0; p < kNumPlayers; ++p) {
    int best = 0;
    for (int r = 1; r < kNumRoles; ++r) {
      if (m[p][r] > m[p][best]) best = r;
    }
    out[p] = static_cast<Role>(best);
  }
  return out;
}

Marginals uniform_marginals() {
  Marginals m{};
  for (int p = 0; p < kNumPlayers; ++p) {
    for (int r = 0; r < kNumRoles; ++r) m[p][r] = 1.0 / kNumRoles;
  }
  return m;
}

bool acc_at_n(const std::vector<int>& predicted, const std::set<int>& truth, int n) {
  int hits = 0;
  for (int p : predicted) hits += truth.count(p) > 0 ? 1 : 0;
  return hits >= n;
}

// ---------------------------------------------------------------------------

std::vector<ObservedEvent> observed_events_from_log(const GameLog& log, int observer) {
  std::vector<ObservedEvent> out;
  for (const Event& e : log.events) {
    if (!event_visible_to(e, observer, log.roles)) continue;
    ObservedEvent oe{e, std::nullopt};
    if (e.verb == Verb::Check && is_night(e.phase) && e.subject == observer &&
        e.object.is_player()) {
      oe.seer_saw_werewolf = log.roles[e.object.player] == Role::Werewolf;
    }
    out.push_back(oe);
  }
  return out;
}

namespace {

std::vector<int> observers_of(const GameLog& log, ObserverSet set) {
  std::vector<int> out;
  for (int p = 0; p < kNumPlayers; ++p) {
    if (log.roles[p] == Role::Werewolf) continue;
    if (set == ObserverSet::VillagersOnly && log.roles[p] != Role::Villager) continue;
    out.push_back(p);
  }
  return out;
}

PrivateInfo private_info_for(const GameLog& log, int observer) {
  PrivateInfo info;
  if (log.roles[observer] == Role::Werewolf) {
    std::set<int> pack;
    for (int p = 0; p < kNumPlayers; ++p) {
      if (log.roles[p] == Role::Werewolf) pack.insert(p);
    }
    info.wolf_pack = pack;
  }
  return info;
}

struct TaskTruth {
  std::set<int> wolves;
};

void score_row(AccRow& row, const std::vector<int>& top3, const Assignment& identities,
               const GameLog& log, int observer) {
  std::set<int> wolves;
  for (int p = 0; p < kNumPlayers; ++p) {
    if (log.roles[p] == Role::Werewolf) wolves.insert(p);
  }
  for (int i = 0; i < 3; ++i) {
    if (acc_at_n(top3, wolves, i + 1)) row.werewolf_acc[i] += 1.0;
  }
  int correct = 0;
  for (int p = 0; p < kNumPlayers; ++p) {
    if (p == observer) continue;
    if (identities[p] == log.roles[p]) ++correct;
  }
  const int thresholds[3] = {1, 3, 5};
  for (int i = 0; i < 3; ++i) {
    if (correct >= thresholds[i]) row.identity_acc[i] += 1.0;
  }
  row.snapshots += 1;
}

void normalize(AccRow& row) {
  if (row.snapshots == 0) return;
  for (double& v : row.werewolf_acc) v /= static_cast<double>(row.snapshots);
  for (double& v : row.identity_acc) v /= static_cast<double>(row.snapshots);
}

}  // namespace

AccRow evaluate_bayesian_predictor(const std::vector<GameLog>& logs,
                                   const LikelihoodModel& model, ObserverSet observers) {
  AccRow row;
  for (const GameLog& log : logs) {
    for (int observer : observers_of(log, observers)) {
      Belief belief = Belief::init(observer, log.roles[observer],
                                   private_info_for(log, observer));
      belief.update(observed_events_from_log(log, observer), model);
      score_row(row, belief.predict_werewolves(3), belief.predict_identities(), log,
                observer);
    }
  }
  normalize(row);
  return row;
}

AccRow evaluate_random_predictor(const std::vector<GameLog>& logs, std::uint64_t seed,
                                 ObserverSet observers) {
  AccRow row;
  Rng rng(seed);
  for (const GameLog& log : logs) {
    for (int observer : observers_of(log, observers)) {
      // Random 3-subset of the other 8 players.
      std::vector<int> others;
      for (int p = 0; p < kNumPlayers; ++p) {
        if (p != observer) others.push_back(p);
      }
      rng.shuffle(others);
      std::vector<int> top3(others.begin(), others.begin() + 3);
      // Random consistent identity assignment for the others.
      std::vector<Role> bag;
      std::array<int, kNumRoles> counts = {3, 3, 1, 1, 1};
      counts[static_cast<int>(log.roles[observer])] -= 1;
      for (int r = 0; r < kNumRoles; ++r) {
        for (int i = 0; i < counts[r]; ++i) bag.push_back(static_cast<Role>(r));
      }
      rng.shuffle(bag);
      Assignment identities{};
      std::size_t next = 0;
      for (int p = 0; p < kNumPlayers; ++p) {
        identities[p] = p == observer ? log.roles[observer] : bag[next++];
      }
      score_row(row, top3, identities, log, observer);
    }
  }
  normalize(row);
  return row;
}

}  // namespace werewolf
