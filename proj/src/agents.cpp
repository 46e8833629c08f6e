#include "werewolf/agents.hpp"

#include <algorithm>

namespace werewolf {

namespace {

std::vector<int> legal_list(const ActionMask& mask) {
  std::vector<int> out;
  for (int a = 0; a < kNumActions; ++a) {
    if (mask.legal(a)) out.push_back(a);
  }
  return out;
}

int random_legal(const ActionMask& mask, Rng& rng) {
  std::vector<int> legal = legal_list(mask);
  return legal[rng.uniform_u32(static_cast<std::uint32_t>(legal.size()))];
}

}  // namespace

PrivateInfo private_info_at_start(const GameState& state, int seat) {
  PrivateInfo info;
  if (state.roles[seat] == Role::Werewolf) {
    std::set<int> pack;
    for (int p = 0; p < kNumPlayers; ++p) {
      if (state.roles[p] == Role::Werewolf) pack.insert(p);
    }
    info.wolf_pack = pack;
  }
  return info;
}

int RandomAgent::act(const GameState& state, const ActionMask& mask, Rng& rng) {
  return random_legal(mask, rng);
}

// ---------------------------------------------------------------------------

void HeuristicAgent::begin_game(const GameState& state, int seat) {
  seat_ = seat;
  role_ = state.roles[seat];
  teammates_.clear();
  checked_.clear();
  if (role_ == Role::Werewolf) {
    for (int p = 0; p < kNumPlayers; ++p) {
      if (state.roles[p] == Role::Werewolf && p != seat) teammates_.insert(p);
    }
  }
  belief_ = Belief::init(seat, role_, private_info_at_start(state, seat));
}

void HeuristicAgent::observe(const std::vector<ObservedEvent>& events) {
  for (const ObservedEvent& oe : events) {
    belief_->update(oe, model_);
    if (oe.event.subject == seat_ && oe.event.verb == Verb::Check &&
        oe.event.object.is_player()) {
      checked_.insert(oe.event.object.player);
    }
    if (oe.event.subject != kSystem && oe.event.verb == Verb::Claim &&
        oe.event.object.kind == EventObject::Kind::RoleName &&
        oe.event.object.role == Role::Seer) {
      seer_claimants_.insert(oe.event.subject);
    }
  }
}

// Highest-suspicion legal target for the given verb, with an exploration
// kick of probability noise_.
int HeuristicAgent::pick_suspect(const GameState& state, const ActionMask& mask,
                                 Verb verb, Rng& rng) const {
  Marginals m = belief_->marginals();
  int best = -1;
  double best_score = -1.0;
  for (int q = 0; q < kNumPlayers; ++q) {
    int a = action_id(verb, q);
    if (!mask.legal(a)) continue;
    double score = m[q][static_cast<int>(Role::Werewolf)];
    if (score > best_score) {
      best_score = score;
      best = a;
    }
  }
  return best;
}

int HeuristicAgent::act(const GameState& state, const ActionMask& mask, Rng& rng) {
  if (rng.uniform_real() < noise_) return random_legal(mask, rng);
  Marginals m = belief_->marginals();

  switch (state.phase) {
    case Phase::NightWolfKill: {
      // Knife the likeliest special role; never a teammate or self.
      int best = -1;
      double best_score = -1.0;
      for (int q = 0; q < kNumPlayers; ++q) {
        if (!mask.legal(action_id(Verb::Kill, q))) continue;
        if (q == seat_ || teammates_.count(q)) continue;
        double score = m[q][static_cast<int>(Role::Seer)] +
                       m[q][static_cast<int>(Role::Witch)] +
                       m[q][static_cast<int>(Role::Hunter)];
        if (score > best_score) {
          best_score = score;
          best = q;
        }
      }
      return best >= 0 ? action_id(Verb::Kill, best) : random_legal(mask, rng);
    }
    case Phase::NightSeerCheck: {
      int best = -1;
      double best_score = -1.0;
      for (int q = 0; q < kNumPlayers; ++q) {
        if (!mask.legal(action_id(Verb::Check, q)) || checked_.count(q)) continue;
        double p_wolf = m[q][static_cast<int>(Role::Werewolf)];
        // Most informative check: wolfish but not already settled.
        double score = p_wolf * (1.0 - p_wolf) + p_wolf;
        if (score > best_score) {
          best_score = score;
          best = q;
        }
      }
      return best >= 0 ? action_id(Verb::Check, best) : random_legal(mask, rng);
    }
    case Phase::NightWitch: {
      // Hold the antidote for a claimed seer; a first-night unknown is not
      // worth the only save.
      for (int q = 0; q < kNumPlayers; ++q) {
        int save = action_id(Verb::Save, q);
        if (mask.legal(save) && seer_claimants_.count(q) &&
            m[q][static_cast<int>(Role::Werewolf)] < 0.5) {
          return save;
        }
      }
      int poison = pick_suspect(state, mask, Verb::Poison, rng);
      if (poison >= 0 &&
          m[action_target(poison)][static_cast<int>(Role::Werewolf)] >= 0.55) {
        return poison;
      }
      return kPassAction;
    }
    case Phase::DayDiscuss: {
      if (role_ == Role::Werewolf) {
        // Deflect onto a non-teammate.
        std::vector<int> candidates;
        for (int q = 0; q < kNumPlayers; ++q) {
          if (mask.legal(action_id(Verb::Accuse, q)) && !teammates_.count(q)) {
            candidates.push_back(q);
          }
        }
        if (candidates.empty()) return kPassAction;
        int pick = candidates[rng.uniform_u32(static_cast<std::uint32_t>(candidates.size()))];
        return action_id(Verb::Accuse, pick);
      }
      int accuse = pick_suspect(state, mask, Verb::Accuse, rng);
      if (accuse >= 0 &&
          m[action_target(accuse)][static_cast<int>(Role::Werewolf)] >= 0.4) {
        return accuse;
      }
      return kPassAction;
    }
    case Phase::DayVote: {
      if (role_ == Role::Werewolf) {
        std::vector<int> candidates;
        for (int q = 0; q < kNumPlayers; ++q) {
          if (mask.legal(action_id(Verb::Vote, q)) && !teammates_.count(q)) {
            candidates.push_back(q);
          }
        }
        if (candidates.empty()) return kPassAction;
        int pick = candidates[rng.uniform_u32(static_cast<std::uint32_t>(candidates.size()))];
        return action_id(Verb::Vote, pick);
      }
      int vote = pick_suspect(state, mask, Verb::Vote, rng);
      return vote >= 0 ? vote : kPassAction;
    }
    case Phase::HunterShot: {
      int shoot = pick_suspect(state, mask, Verb::Shoot, rng);
      return shoot >= 0 ? shoot : kPassAction;
    }
    default:
      return random_legal(mask, rng);
  }
}

ClaimSet HeuristicAgent::claims(const GameState& state, int decision) {
  StateView view = make_view(state, seat_);
  return make_claims(view, *belief_, decision, claim_policy_, state.roles);
}

// ---------------------------------------------------------------------------

void PolicyAgent::begin_game(const GameState& state, int seat) {
  seat_ = seat;
  role_ = state.roles[seat];
  steps_.clear();
  belief_ = Belief::init(seat, role_, private_info_at_start(state, seat));
}

void PolicyAgent::observe(const std::vector<ObservedEvent>& events) {
  for (const ObservedEvent& oe : events) belief_->update(oe, options_.model);
}

int PolicyAgent::act(const GameState& state, const ActionMask& mask, Rng& rng) {
  StateView view = make_view(state, seat_);
  Marginals marginals =
      options_.uniform_belief ? uniform_marginals() : belief_->marginals();
  FeatureVector features = featurize(view, marginals, options_.wr_cons);
  const PolicyParams& params = policy_->for_role(role_);
  ActionDistribution dist = forward(params, features, mask);
  int action = options_.greedy ? argmax_action(dist) : sample_action(dist, rng);

  if (options_.collect) {
    if (!steps_.empty()) steps_.back().next_value = dist.value;
    TrajectoryStep step;
    step.features = std::move(features);
    step.mask = mask;
    step.action = action;
    step.role = role_;
    step.behavior_prob = dist.probs[action];
    step.value = dist.value;
    steps_.push_back(std::move(step));
  }
  return action;
}

ClaimSet PolicyAgent::claims(const GameState& state, int decision) {
  StateView view = make_view(state, seat_);
  return make_claims(view, *belief_, decision, options_.claim_policy, state.roles);
}

}  // namespace werewolf
