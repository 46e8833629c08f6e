// The decision network: featurize observable game history plus belief
// marginals and the win-rate constraint, then compute masked action
// probabilities and a state value.
//
// Architecture: three embedding tables (event subject / verb / object)
// summed per event and mean-pooled over history, concatenated with the
// flattened belief, the constraint scalar, phase/self-role one-hots and the
// liveness bitmap; two tanh hidden layers; a 64-way policy head masked by
// logits - 1e9 on illegal actions; a scalar value head.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "werewolf/engine.hpp"
#include "werewolf/predictor.hpp"
#include "werewolf/rng.hpp"

namespace werewolf {

struct PolicyError : EngineError {
  using EngineError::EngineError;
};

struct PolicyConfig {
  int embed_dim = 16;
  int hidden_dim = 64;
  bool per_role = false;  // one parameter set per role instead of one shared

  int feature_dim() const {
    return embed_dim + kNumPlayers * kNumRoles + 1 + kNumPhases + kNumRoles + kNumPlayers;
  }
  bool operator==(const PolicyConfig&) const = default;
};

// Embedding row indices.
inline constexpr int kSubjectSlots = kNumPlayers + 1;        // players + SYSTEM
inline constexpr int kVerbSlots = kNumVerbs;
inline constexpr int kObjectSlots = kNumPlayers + kNumRoles + 2;  // players, roles, none, spare

int subject_index(int subject);
int object_index(const EventObject& object);

// Structured feature input. Event embeddings stay as table indices so the
// tables remain trainable; the numeric tail is fixed at featurize time.
struct FeatureVector {
  std::vector<std::array<int, 3>> event_ids;  // (subject, verb, object) per event
  std::array<double, kNumPlayers * kNumRoles> belief{};
  double wr_cons = 0.5;
  std::array<double, kNumPhases> phase_onehot{};
  std::array<double, kNumRoles> role_onehot{};
  std::array<double, kNumPlayers> alive{};
  bool operator==(const FeatureVector&) const = default;
};

FeatureVector featurize(const StateView& view, const Marginals& belief, double wr_cons);

struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
  std::size_t size() const { return v.size(); }
  void zero() { std::fill(v.begin(), v.end(), 0.0); }
  bool operator==(const Tensor&) const = default;
};

struct PolicyParams {
  PolicyConfig cfg;
  Tensor emb_subject, emb_verb, emb_object;
  Tensor w1, b1, w2, b2, wp, bp, wv, bv;

  static PolicyParams init(const PolicyConfig& cfg, std::uint64_t seed);

  std::vector<Tensor*> tensors();
  std::vector<const Tensor*> tensors() const;
  std::size_t param_count() const;
  bool operator==(const PolicyParams&) const = default;
};

// The numeric vector the network consumes: pooled event embedding followed
// by the fixed tail blocks. Exposed for tests and feature inspection.
std::vector<double> materialize_features(const PolicyParams& params,
                                         const FeatureVector& features);

struct ActionDistribution {
  std::array<double, kNumActions> probs{};
  double value = 0.0;
};

// Masked softmax per Prob(a) = Softmax(Logits(a) - illegal(a) * 1e9).
// Throws PolicyError when the mask has no legal action.
ActionDistribution forward(const PolicyParams& params, const FeatureVector& features,
                           const ActionMask& mask);

int sample_action(const ActionDistribution& dist, Rng& rng);
int argmax_action(const ActionDistribution& dist);

// ---------------------------------------------------------------------------
// Training losses.

struct LossConfig {
  double clip_ratio = 0.2;
  bool clipped = true;  // false reproduces the plain -ratio*A surrogate
  double vf_coef = 0.5;
  double ent_coef = 0.01;
};

struct Gradients {
  explicit Gradients(const PolicyConfig& cfg);
  std::vector<Tensor> tensors;
  void zero();
  void scale(double factor);
};

struct StepLoss {
  double policy_loss = 0.0;
  double value_loss = 0.0;  // 0.5 * (v - target)^2
  double entropy = 0.0;
  double ratio = 1.0;
  double total = 0.0;
};

// Accumulates d(total)/d(params) into grads and returns the loss parts.
StepLoss loss_and_grad(const PolicyParams& params, const FeatureVector& features,
                       const ActionMask& mask, int action, double behavior_prob,
                       double advantage, double value_target, const LossConfig& loss_cfg,
                       Gradients* grads);

// Central finite differences (step 1e-5) over up to n_coords randomly chosen
// parameter coordinates (all of them when n_coords <= 0). Returns the
// maximum relative error against the analytic gradient.
double grad_check(const PolicyParams& params, const FeatureVector& features,
                  const ActionMask& mask, int action, double advantage,
                  double behavior_prob, double value_target, const LossConfig& loss_cfg,
                  int n_coords, Rng& rng);

struct Adam {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long t = 0;
  std::vector<Tensor> m, v;

  void step(PolicyParams& params, const Gradients& grads);
};

// ---------------------------------------------------------------------------
// Checkpoints: one parameter set, or one per role when cfg.per_role is set.
// The JSON dump round-trips bit-exactly.

struct PolicySet {
  PolicyConfig cfg;
  std::vector<PolicyParams> params;  // size 1, or kNumRoles when per_role

  static PolicySet init(const PolicyConfig& cfg, std::uint64_t seed);
  PolicyParams& for_role(Role role);
  const PolicyParams& for_role(Role role) const;
  bool operator==(const PolicySet&) const = default;
};

void save_checkpoint(const PolicySet& set, const std::string& path);
PolicySet load_checkpoint(const std::string& path);

}  // namespace werewolf
