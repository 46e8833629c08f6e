// Belief tracking over hidden roles.
//
// Each observer keeps a posterior over the full joint role assignment,
// restricted to assignments consistent with private knowledge (own role,
// wolf teammates, seer check results). The space is small enough to
// enumerate outright: at most C(8,3) * 5!/2! = 3360 assignments for a
// villager observer. Public behavioral events reweight assignments through
// a LikelihoodModel; per-player marginals fall out by summation.
#pragma once

#include <array>
#include <optional>
#include <set>
#include <vector>

#include "werewolf/engine.hpp"
#include "werewolf/rng.hpp"

namespace werewolf {

using Assignment = std::array<Role, kNumPlayers>;
using Marginals = std::array<std::array<double, kNumRoles>, kNumPlayers>;

// Event-pattern likelihood weights. An event multiplies each assignment's
// weight by the probability-proportional factor of that pattern under the
// assignment; 1.0 means uninformative.
struct LikelihoodModel {
  double wolf_votes_wolf = 0.4;
  double wolf_votes_nonwolf = 1.2;
  // Claimed check (a day-phase "check" assertion or vouch) that is accurate
  // under the assignment AND made by the assignment's seer, vs anything else.
  double true_seer_claim = 2.0;
  double false_seer_claim = 0.7;
  // Plain accusations and role claims default to uninformative.
  double wolf_accuses_wolf = 1.0;
  double wolf_accuses_nonwolf = 1.0;
  double claim_weight = 1.0;
};

struct PrivateInfo {
  // For wolves: the full wolf set including the observer.
  std::optional<std::set<int>> wolf_pack;
  // For the seer: accumulated (target, is_werewolf) results.
  std::vector<std::pair<int, bool>> checks;
};

struct BeliefError : EngineError {
  using EngineError::EngineError;
};

class Belief {
 public:
  // Uniform posterior over assignments consistent with the private info.
  // Throws BeliefError when the info is contradictory.
  static Belief init(int observer, Role role, const PrivateInfo& info = {});

  void update(const ObservedEvent& event, const LikelihoodModel& model);
  void update(const std::vector<ObservedEvent>& events, const LikelihoodModel& model);

  int observer() const { return observer_; }
  Role observer_role() const { return observer_role_; }
  std::size_t evidence_consumed() const { return consumed_; }
  std::size_t assignment_count() const { return assignments_.size(); }

  Marginals marginals() const;
  double p_role(int player, Role role) const;

  // Top-n by P(werewolf) among the other players, ties to the lowest id.
  std::vector<int> predict_werewolves(int n) const;
  // Argmax role per player (the observer's own entry is the true role).
  Assignment predict_identities() const;

 private:
  int observer_ = 0;
  Role observer_role_ = Role::Villager;
  std::vector<Assignment> assignments_;
  std::vector<double> weights_;
  std::array<bool, kNumPlayers> claimed_seer_{};
  // Restating a claim is not new evidence; assertions are weighted once.
  std::set<std::uint32_t> seen_assertions_;
  std::size_t consumed_ = 0;
};

// Flat 1/5 rows, used by the predictor-less ablation.
Marginals uniform_marginals();

// True when at least n of the predicted ids are in the truth set.
bool acc_at_n(const std::vector<int>& predicted, const std::set<int>& truth, int n);

// ---------------------------------------------------------------------------
// Prediction evaluation over a corpus (the desk-scale analogue of a
// prediction benchmark): one snapshot per (log, observer) with beliefs
// accumulated over the observer's full visible history.

enum class ObserverSet { VillageSide, VillagersOnly };

struct AccRow {
  std::array<double, 3> werewolf_acc{};  // ACC@1/2/3 on the 3-of-8 task
  std::array<double, 3> identity_acc{};  // ACC@1/3/5 on the 8-identity task
  long snapshots = 0;
};

// Reconstructs the observer's event stream from a log, seer annotations
// included.
std::vector<ObservedEvent> observed_events_from_log(const GameLog& log, int observer);

AccRow evaluate_bayesian_predictor(const std::vector<GameLog>& logs,
                                   const LikelihoodModel& model,
                                   ObserverSet observers = ObserverSet::VillageSide);
AccRow evaluate_random_predictor(const std::vector<GameLog>& logs, std::uint64_t seed,
                                 ObserverSet observers = ObserverSet::VillageSide);

}  // namespace werewolf
