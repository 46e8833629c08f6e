#pragma once

#include "werewolf/engine.hpp"
#include "werewolf/policy.hpp"

namespace werewolf {

// One decision point of a trained agent.
struct TrajectoryStep {
  FeatureVector features;
  ActionMask mask;
  int action = kPassAction;
  Role role = Role::Villager;
  double behavior_prob = 1.0;  // pi_theta'(a|s) at collection time
  double value = 0.0;          // V(s_t)
  double next_value = 0.0;     // V(s_{t+1}), 0 at terminal
  double sr = 0.0;             // step reward
  double cr = 0.0;             // chain / controllable reward, terminal only
  double advantage = 0.0;
  double value_target = 0.0;
  bool terminal = false;
};

}  // namespace werewolf
