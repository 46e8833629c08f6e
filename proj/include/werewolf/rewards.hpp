// Scalar reward computations: terminal step reward, decision-chain reward,
// and the win-rate-constrained controllable reward.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace werewolf {

struct RewardConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RewardConfig {
  double alpha = 1.0;    // chain reward amplitude
  double epsilon = 0.15; // deviation threshold
  double k = 0.1;        // tanh smoothing factor
  double s = 1.0;        // controllable reward scale
  double gamma = 0.99;   // discount
  double terminal_win = 1.0;
  double terminal_loss = -1.0;
  // The controllable formula can go positive in the d in (eps^2, eps) band
  // even though r < 0 there; this clamps the output back to sign(r).
  bool strict_sign = false;

  void validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
      throw RewardConfigError("rewards." + field + ": " + why);
    };
    if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha", "must be > 0");
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) fail("epsilon", "must be in (0,1)");
    if (!(k > 0.0) || !std::isfinite(k)) fail("k", "must be > 0");
    if (!(s > 0.0) || !std::isfinite(s)) fail("s", "must be > 0");
    if (!(gamma >= 0.0) || !(gamma <= 1.0)) fail("gamma", "must be in [0,1]");
    if (!std::isfinite(terminal_win)) fail("terminal_win", "must be finite");
    if (!std::isfinite(terminal_loss)) fail("terminal_loss", "must be finite");
  }
};

// Terminal-only outcome reward: 0 mid-game, +-1 (configurable) at the
// agent's final decision step.
inline double step_reward(bool terminal, bool camp_won, const RewardConfig& cfg = {}) {
  if (!terminal) return 0.0;
  return camp_won ? cfg.terminal_win : cfg.terminal_loss;
}

// cr(DC) = alpha * (WR - 0.5)
inline double chain_reward(double win_rate, double alpha) {
  return alpha * (win_rate - 0.5);
}

// d = (WR_cons - WR_dc)^2
// r = -tanh((d - eps^2) / k)
// cr = r * (1 - d/eps) * s        if r >= 0
//      r * (d - eps) / (1 - eps) * s   otherwise
inline double ctrl_reward(double wr_cons, double wr_dc, const RewardConfig& cfg) {
  double diff = wr_cons - wr_dc;
  double d = diff * diff;
  double r = -std::tanh((d - cfg.epsilon * cfg.epsilon) / cfg.k);
  double cr;
  if (r >= 0.0) {
    cr = r * (1.0 - d / cfg.epsilon) * cfg.s;
  } else {
    cr = r * (d - cfg.epsilon) / (1.0 - cfg.epsilon) * cfg.s;
  }
  if (cfg.strict_sign) {
    cr = r >= 0.0 ? std::fabs(cr) : -std::fabs(cr);
    if (r == 0.0) cr = 0.0;
  }
  return cr;
}

// r_t = sr_t + cr
inline double total_reward(double sr, double cr) { return sr + cr; }

}  // namespace werewolf
