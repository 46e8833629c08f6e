#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "werewolf/rewards.hpp"

using namespace werewolf;

TEST_CASE("step reward is terminal-only") {
  RewardConfig cfg;
  CHECK(step_reward(false, true, cfg) == 0.0);
  CHECK(step_reward(false, false, cfg) == 0.0);
  CHECK(step_reward(true, true, cfg) == 1.0);
  CHECK(step_reward(true, false, cfg) == -1.0);
}

TEST_CASE("chain reward values") {
  CHECK(chain_reward(0.98, 1.0) == doctest::Approx(0.48).epsilon(1e-12));
  CHECK(chain_reward(0.5, 1.0) == 0.0);
  CHECK(chain_reward(0.5, 7.0) == 0.0);
  CHECK(chain_reward(0.0, 2.0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("chain reward is odd around 0.5") {
  for (double x = 0.0; x <= 0.5; x += 0.01) {
    CHECK(chain_reward(0.5 + x, 1.3) ==
          doctest::Approx(-chain_reward(0.5 - x, 1.3)).epsilon(1e-12));
  }
}

TEST_CASE("controllable reward closed-form spots") {
  RewardConfig cfg;  // eps 0.15, k 0.1, s 1

  SUBCASE("matched constraint") {
    double expected = std::tanh(0.0225 / 0.1);
    CHECK(ctrl_reward(0.4, 0.4, cfg) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.22134).epsilon(1e-4));
  }
  SUBCASE("d exactly at eps^2 gives zero") {
    // Exactly representable values so d == eps^2 bit-for-bit.
    RewardConfig exact = cfg;
    exact.epsilon = 0.25;
    CHECK(ctrl_reward(0.75, 0.5, exact) == 0.0);
    CHECK(ctrl_reward(0.5, 0.75, exact) == 0.0);
    // At the default epsilon the branch point is only approximately hit.
    CHECK(std::fabs(ctrl_reward(0.45, 0.30, cfg)) < 1e-15);
  }
  SUBCASE("maximal deviation") {
    double expected = -std::tanh((1.0 - 0.0225) / 0.1);
    CHECK(ctrl_reward(1.0, 0.0, cfg) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(-1.0).epsilon(1e-6));
  }
}

TEST_CASE("controllable reward sign structure in the r >= 0 regime") {
  RewardConfig cfg;
  for (double diff = 0.0; diff < cfg.epsilon; diff += 0.005) {
    double cr = ctrl_reward(0.5 + diff / 2, 0.5 - diff / 2, cfg);
    if (diff * diff < cfg.epsilon * cfg.epsilon) CHECK(cr > 0.0);
  }
}

TEST_CASE("controllable reward is symmetric in its arguments") {
  RewardConfig cfg;
  for (double a = 0.0; a <= 1.0; a += 0.13) {
    for (double b = 0.0; b <= 1.0; b += 0.17) {
      CHECK(ctrl_reward(a, b, cfg) == ctrl_reward(b, a, cfg));
    }
  }
}

TEST_CASE("controllable reward is bounded by s * (1 + 1/eps)") {
  RewardConfig cfg;
  cfg.s = 2.5;
  double bound = cfg.s * (1.0 + 1.0 / cfg.epsilon);
  for (double a = 0.0; a <= 1.0; a += 0.01) {
    for (double b = 0.0; b <= 1.0; b += 0.01) {
      CHECK(std::fabs(ctrl_reward(a, b, cfg)) <= bound);
    }
  }
}

TEST_CASE("controllable reward peaks where the win rates agree") {
  RewardConfig cfg;
  for (double cons : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    double best = -1e9;
    double best_at = -1.0;
    for (int i = 0; i <= 100; ++i) {
      double wr = i / 100.0;
      double cr = ctrl_reward(cons, wr, cfg);
      if (cr > best) {
        best = cr;
        best_at = wr;
      }
    }
    CHECK(best_at == doctest::Approx(cons).epsilon(1e-9));
  }
}

TEST_CASE("strict_sign clamps the positive band above eps^2") {
  RewardConfig cfg;
  // d in (eps^2, eps): r < 0 but the printed product is positive.
  double a = 0.5 + 0.15, b = 0.5 - 0.15;  // diff 0.3, d = 0.09
  CHECK(ctrl_reward(a, b, cfg) > 0.0);
  cfg.strict_sign = true;
  CHECK(ctrl_reward(a, b, cfg) < 0.0);
}

TEST_CASE("total reward is a sum") {
  CHECK(total_reward(1.0, 0.48) == doctest::Approx(1.48));
  CHECK(total_reward(0.0, 0.0) == 0.0);
  CHECK(total_reward(-1.0, -0.5) == doctest::Approx(-1.5));
}

TEST_CASE("config validation names the offending field") {
  RewardConfig cfg;
  cfg.epsilon = 1.5;
  try {
    cfg.validate();
    FAIL("expected validation error");
  } catch (const RewardConfigError& e) {
    CHECK(std::string(e.what()).find("epsilon") != std::string::npos);
  }
  cfg = RewardConfig{};
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(cfg.validate(), RewardConfigError);
  cfg = RewardConfig{};
  cfg.validate();  // defaults pass
}
