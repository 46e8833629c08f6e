#include "werewolf/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace werewolf {

namespace {

using nlohmann::json;

constexpr double kMaskPenalty = 1e9;

}  // namespace

int subject_index(int subject) { return subject == kSystem ? kNumPlayers : subject; }

int object_index(const EventObject& object) {
  switch (object.kind) {
    case EventObject::Kind::Player: return object.player;
    case EventObject::Kind::RoleName: return kNumPlayers + static_cast<int>(object.role);
    case EventObject::Kind::None: return kNumPlayers + kNumRoles;
  }
  return kNumPlayers + kNumRoles;
}

FeatureVector featurize(const StateView& view, const Marginals& belief, double wr_cons) {
  FeatureVector f;
  f.event_ids.reserve(view.events.size());
  for (const Event& e : view.events) {
    f.event_ids.push_back({subject_index(e.subject), static_cast<int>(e.verb),
                           object_index(e.object)});
  }
  for (int p = 0; p < kNumPlayers; ++p) {
    for (int r = 0; r < kNumRoles; ++r) f.belief[p * kNumRoles + r] = belief[p][r];
  }
  f.wr_cons = wr_cons;
  f.phase_onehot[static_cast<int>(view.phase)] = 1.0;
  f.role_onehot[static_cast<int>(view.self_role)] = 1.0;
  for (int p = 0; p < kNumPlayers; ++p) f.alive[p] = view.alive[p] ? 1.0 : 0.0;
  return f;
}

PolicyParams PolicyParams::init(const PolicyConfig& cfg, std::uint64_t seed) {
  PolicyParams p;
  p.cfg = cfg;
  const int e = cfg.embed_dim;
  const int h = cfg.hidden_dim;
  const int d = cfg.feature_dim();
  p.emb_subject = Tensor(kSubjectSlots, e);
  p.emb_verb = Tensor(kVerbSlots, e);
  p.emb_object = Tensor(kObjectSlots, e);
  p.w1 = Tensor(h, d);
  p.b1 = Tensor(h, 1);
  p.w2 = Tensor(h, h);
  p.b2 = Tensor(h, 1);
  p.wp = Tensor(kNumActions, h);
  p.bp = Tensor(kNumActions, 1);
  p.wv = Tensor(1, h);
  p.bv = Tensor(1, 1);

  Rng rng(Rng::derive(seed, 0x706f6c69ull));
  auto fill = [&rng](Tensor& t, double scale) {
    for (double& x : t.v) x = rng.normal(0.0, scale);
  };
  fill(p.emb_subject, 0.3);
  fill(p.emb_verb, 0.3);
  fill(p.emb_object, 0.3);
  fill(p.w1, 1.0 / std::sqrt(static_cast<double>(d)));
  fill(p.w2, 1.0 / std::sqrt(static_cast<double>(h)));
  // Small policy head keeps the initial distribution near uniform.
  fill(p.wp, 0.01 / std::sqrt(static_cast<double>(h)));
  fill(p.wv, 1.0 / std::sqrt(static_cast<double>(h)));
  return p;
}

std::vector<Tensor*> PolicyParams::tensors() {
  return {&emb_subject, &emb_verb, &emb_object, &w1, &b1, &w2, &b2, &wp, &bp, &wv, &bv};
}

std::vector<const Tensor*> PolicyParams::tensors() const {
  return {&emb_subject, &emb_verb, &emb_object, &w1, &b1, &w2, &b2, &wp, &bp, &wv, &bv};
}

std::size_t PolicyParams::param_count() const {
  std::size_t n = 0;
  for (const Tensor* t : tensors()) n += t->size();
  return n;
}

namespace {

struct Trace {
  std::vector<double> x, h1, h2;
  std::array<double, kNumActions> probs{};
  double value = 0.0;
};

void matvec(const Tensor& w, const std::vector<double>& in, const Tensor& bias,
            std::vector<double>& out) {
  out.assign(w.rows, 0.0);
  for (int r = 0; r < w.rows; ++r) {
    double acc = bias.v[r];
    const double* row = &w.v[static_cast<std::size_t>(r) * w.cols];
    for (int c = 0; c < w.cols; ++c) acc += row[c] * in[c];
    out[r] = acc;
  }
}

std::vector<double> build_input(const PolicyParams& p, const FeatureVector& f) {
  const int e = p.cfg.embed_dim;
  std::vector<double> x(p.cfg.feature_dim(), 0.0);
  if (!f.event_ids.empty()) {
    double inv = 1.0 / static_cast<double>(f.event_ids.size());
    for (const auto& ids : f.event_ids) {
      for (int i = 0; i < e; ++i) {
        x[i] += (p.emb_subject.at(ids[0], i) + p.emb_verb.at(ids[1], i) +
                 p.emb_object.at(ids[2], i)) *
                inv;
      }
    }
  }
  int at = e;
  for (double v : f.belief) x[at++] = v;
  x[at++] = f.wr_cons;
  for (double v : f.phase_onehot) x[at++] = v;
  for (double v : f.role_onehot) x[at++] = v;
  for (double v : f.alive) x[at++] = v;
  return x;
}

Trace run_forward(const PolicyParams& p, const FeatureVector& f, const ActionMask& mask) {
  if (!mask.any()) throw PolicyError("forward called with an all-masked action set");
  Trace t;
  t.x = build_input(p, f);
  matvec(p.w1, t.x, p.b1, t.h1);
  for (double& v : t.h1) v = std::tanh(v);
  matvec(p.w2, t.h1, p.b2, t.h2);
  for (double& v : t.h2) v = std::tanh(v);

  std::array<double, kNumActions> adjusted{};
  double max_adj = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < kNumActions; ++a) {
    double logit = p.bp.v[a];
    const double* row = &p.wp.v[static_cast<std::size_t>(a) * p.wp.cols];
    for (int c = 0; c < p.wp.cols; ++c) logit += row[c] * t.h2[c];
    adjusted[a] = logit - (mask.legal(a) ? 0.0 : kMaskPenalty);
    max_adj = std::max(max_adj, adjusted[a]);
  }
  double sum = 0.0;
  for (int a = 0; a < kNumActions; ++a) {
    t.probs[a] = std::exp(adjusted[a] - max_adj);
    sum += t.probs[a];
  }
  for (double& v : t.probs) v /= sum;

  t.value = p.bv.v[0];
  for (int c = 0; c < p.wv.cols; ++c) t.value += p.wv.v[c] * t.h2[c];
  return t;
}

}  // namespace

std::vector<double> materialize_features(const PolicyParams& params,
                                         const FeatureVector& features) {
  return build_input(params, features);
}

ActionDistribution forward(const PolicyParams& params, const FeatureVector& features,
                           const ActionMask& mask) {
  Trace t = run_forward(params, features, mask);
  ActionDistribution dist;
  dist.probs = t.probs;
  dist.value = t.value;
  return dist;
}

int sample_action(const ActionDistribution& dist, Rng& rng) {
  double u = rng.uniform_real();
  double acc = 0.0;
  int last = 0;
  for (int a = 0; a < kNumActions; ++a) {
    if (dist.probs[a] <= 0.0) continue;
    acc += dist.probs[a];
    last = a;
    if (u < acc) return a;
  }
  return last;
}

int argmax_action(const ActionDistribution& dist) {
  int best = 0;
  for (int a = 1; a < kNumActions; ++a) {
    if (dist.probs[a] > dist.probs[best]) best = a;
  }
  return best;
}

Gradients::Gradients(const PolicyConfig& cfg) {
  PolicyParams shape;
  shape.cfg = cfg;
  const int e = cfg.embed_dim;
  const int h = cfg.hidden_dim;
  const int d = cfg.feature_dim();
  tensors = {Tensor(kSubjectSlots, e), Tensor(kVerbSlots, e), Tensor(kObjectSlots, e),
             Tensor(h, d),            Tensor(h, 1),          Tensor(h, h),
             Tensor(h, 1),            Tensor(kNumActions, h), Tensor(kNumActions, 1),
             Tensor(1, h),            Tensor(1, 1)};
}

void Gradients::zero() {
  for (Tensor& t : tensors) t.zero();
}

void Gradients::scale(double factor) {
  for (Tensor& t : tensors) {
    for (double& v : t.v) v *= factor;
  }
}

StepLoss loss_and_grad(const PolicyParams& params, const FeatureVector& features,
                       const ActionMask& mask, int action, double behavior_prob,
                       double advantage, double value_target, const LossConfig& loss_cfg,
                       Gradients* grads) {
  if (behavior_prob <= 0.0) throw PolicyError("behavior probability must be positive");
  Trace t = run_forward(params, features, mask);
  const int h = params.cfg.hidden_dim;
  const int e = params.cfg.embed_dim;

  StepLoss out;
  double p_a = t.probs[action];
  double ratio = p_a / behavior_prob;
  out.ratio = ratio;

  // Surrogate objective; gradient taken wrt ratio.
  double dobj_dratio;
  if (loss_cfg.clipped) {
    double clamped = std::clamp(ratio, 1.0 - loss_cfg.clip_ratio, 1.0 + loss_cfg.clip_ratio);
    double unclipped = ratio * advantage;
    double clipped = clamped * advantage;
    if (unclipped <= clipped) {
      out.policy_loss = -unclipped;
      dobj_dratio = advantage;
    } else {
      out.policy_loss = -clipped;
      dobj_dratio = (ratio > 1.0 - loss_cfg.clip_ratio && ratio < 1.0 + loss_cfg.clip_ratio)
                        ? advantage
                        : 0.0;
    }
  } else {
    out.policy_loss = -ratio * advantage;
    dobj_dratio = advantage;
  }

  double entropy = 0.0;
  for (int a = 0; a < kNumActions; ++a) {
    if (t.probs[a] > 0.0) entropy -= t.probs[a] * std::log(t.probs[a]);
  }
  out.entropy = entropy;

  double vdiff = t.value - value_target;
  out.value_loss = 0.5 * vdiff * vdiff;
  out.total = out.policy_loss + loss_cfg.vf_coef * out.value_loss -
              loss_cfg.ent_coef * out.entropy;
  if (!std::isfinite(out.total)) throw PolicyError("non-finite loss");
  if (!grads) return out;

  // d total / d p_a, through the ratio.
  double dl_dpa = -dobj_dratio / behavior_prob;

  std::array<double, kNumActions> g_logits{};
  for (int j = 0; j < kNumActions; ++j) {
    double pj = t.probs[j];
    if (pj <= 0.0) continue;
    double dpa_dlj = p_a * ((j == action ? 1.0 : 0.0) - pj);
    double g = dl_dpa * dpa_dlj;
    // -ent_coef * H contributes +ent_coef * p_j (log p_j + H).
    g += loss_cfg.ent_coef * pj * (std::log(pj) + entropy);
    g_logits[j] = g;
  }
  double dl_dv = loss_cfg.vf_coef * vdiff;

  std::vector<Tensor>& g = grads->tensors;
  Tensor& g_wp = g[7];
  Tensor& g_bp = g[8];
  Tensor& g_wv = g[9];
  Tensor& g_bv = g[10];

  std::vector<double> dh2(h, 0.0);
  for (int a = 0; a < kNumActions; ++a) {
    if (g_logits[a] == 0.0) continue;
    g_bp.v[a] += g_logits[a];
    for (int c = 0; c < h; ++c) {
      g_wp.at(a, c) += g_logits[a] * t.h2[c];
      dh2[c] += params.wp.at(a, c) * g_logits[a];
    }
  }
  g_bv.v[0] += dl_dv;
  for (int c = 0; c < h; ++c) {
    g_wv.v[c] += dl_dv * t.h2[c];
    dh2[c] += params.wv.v[c] * dl_dv;
  }

  std::vector<double> dz2(h);
  for (int i = 0; i < h; ++i) dz2[i] = dh2[i] * (1.0 - t.h2[i] * t.h2[i]);
  Tensor& g_w2 = g[5];
  Tensor& g_b2 = g[6];
  std::vector<double> dh1(h, 0.0);
  for (int r = 0; r < h; ++r) {
    if (dz2[r] == 0.0) continue;
    g_b2.v[r] += dz2[r];
    for (int c = 0; c < h; ++c) {
      g_w2.at(r, c) += dz2[r] * t.h1[c];
      dh1[c] += params.w2.at(r, c) * dz2[r];
    }
  }

  const int d = params.cfg.feature_dim();
  std::vector<double> dz1(h);
  for (int i = 0; i < h; ++i) dz1[i] = dh1[i] * (1.0 - t.h1[i] * t.h1[i]);
  Tensor& g_w1 = g[3];
  Tensor& g_b1 = g[4];
  std::vector<double> dx(d, 0.0);
  for (int r = 0; r < h; ++r) {
    if (dz1[r] == 0.0) continue;
    g_b1.v[r] += dz1[r];
    for (int c = 0; c < d; ++c) {
      g_w1.at(r, c) += dz1[r] * t.x[c];
      dx[c] += params.w1.at(r, c) * dz1[r];
    }
  }

  if (!features.event_ids.empty()) {
    double inv = 1.0 / static_cast<double>(features.event_ids.size());
    Tensor& g_subj = g[0];
    Tensor& g_verb = g[1];
    Tensor& g_obj = g[2];
    for (const auto& ids : features.event_ids) {
      for (int i = 0; i < e; ++i) {
        double gi = dx[i] * inv;
        g_subj.at(ids[0], i) += gi;
        g_verb.at(ids[1], i) += gi;
        g_obj.at(ids[2], i) += gi;
      }
    }
  }
  return out;
}

double grad_check(const PolicyParams& params, const FeatureVector& features,
                  const ActionMask& mask, int action, double advantage,
                  double behavior_prob, double value_target, const LossConfig& loss_cfg,
                  int n_coords, Rng& rng) {
  Gradients grads(params.cfg);
  loss_and_grad(params, features, mask, action, behavior_prob, advantage, value_target,
                loss_cfg, &grads);

  PolicyParams probe = params;
  std::vector<Tensor*> tensors = probe.tensors();
  std::size_t total = probe.param_count();
  std::vector<std::size_t> coords;
  if (n_coords <= 0 || static_cast<std::size_t>(n_coords) >= total) {
    coords.resize(total);
    for (std::size_t i = 0; i < total; ++i) coords[i] = i;
  } else {
    for (int i = 0; i < n_coords; ++i) {
      coords.push_back(rng.next_u64() % total);
    }
  }

  const double step = 1e-5;
  double max_rel = 0.0;
  for (std::size_t flat : coords) {
    std::size_t offset = flat;
    std::size_t ti = 0;
    while (offset >= tensors[ti]->size()) {
      offset -= tensors[ti]->size();
      ++ti;
    }
    double& slot = tensors[ti]->v[offset];
    double saved = slot;
    slot = saved + step;
    double up = loss_and_grad(probe, features, mask, action, behavior_prob, advantage,
                              value_target, loss_cfg, nullptr)
                    .total;
    slot = saved - step;
    double down = loss_and_grad(probe, features, mask, action, behavior_prob, advantage,
                                value_target, loss_cfg, nullptr)
                      .total;
    slot = saved;
    double fd = (up - down) / (2.0 * step);
    double analytic = grads.tensors[ti].v[offset];
    double denom = std::max({std::fabs(analytic), std::fabs(fd), 1e-4});
    max_rel = std::max(max_rel, std::fabs(analytic - fd) / denom);
  }
  return max_rel;
}

void Adam::step(PolicyParams& params, const Gradients& grads) {
  std::vector<Tensor*> tensors = params.tensors();
  if (m.empty()) {
    for (Tensor* t : tensors) {
      m.push_back(Tensor(t->rows, t->cols));
      v.push_back(Tensor(t->rows, t->cols));
    }
  }
  ++t;
  double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
  double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    Tensor& p = *tensors[i];
    const Tensor& g = grads.tensors[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      double gj = g.v[j];
      m[i].v[j] = beta1 * m[i].v[j] + (1.0 - beta1) * gj;
      v[i].v[j] = beta2 * v[i].v[j] + (1.0 - beta2) * gj * gj;
      double mhat = m[i].v[j] / bc1;
      double vhat = v[i].v[j] / bc2;
      p.v[j] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

// ---------------------------------------------------------------------------
// Checkpoints.

PolicySet PolicySet::init(const PolicyConfig& cfg, std::uint64_t seed) {
  PolicySet set;
  set.cfg = cfg;
  int copies = cfg.per_role ? kNumRoles : 1;
  for (int i = 0; i < copies; ++i) {
    set.params.push_back(PolicyParams::init(cfg, Rng::derive(seed, 0xbeef00 + i)));
  }
  return set;
}

PolicyParams& PolicySet::for_role(Role role) {
  return params[cfg.per_role ? static_cast<int>(role) : 0];
}

const PolicyParams& PolicySet::for_role(Role role) const {
  return params[cfg.per_role ? static_cast<int>(role) : 0];
}

namespace {

const char* const kTensorNames[] = {"emb_subject", "emb_verb", "emb_object", "w1", "b1",
                                    "w2",          "b2",       "wp",         "bp", "wv",
                                    "bv"};

json params_to_json(const PolicyParams& p) {
  json out;
  std::vector<const Tensor*> tensors = p.tensors();
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    json tj;
    tj["shape"] = {tensors[i]->rows, tensors[i]->cols};
    tj["data"] = tensors[i]->v;
    out[kTensorNames[i]] = tj;
  }
  return out;
}

PolicyParams params_from_json(const json& j, const PolicyConfig& cfg) {
  PolicyParams p = PolicyParams::init(cfg, 0);
  std::vector<Tensor*> tensors = p.tensors();
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    const json& tj = j.at(kTensorNames[i]);
    int rows = tj.at("shape")[0].get<int>();
    int cols = tj.at("shape")[1].get<int>();
    if (rows != tensors[i]->rows || cols != tensors[i]->cols) {
      throw PolicyError(std::string("checkpoint tensor shape mismatch: ") +
                        kTensorNames[i]);
    }
    std::vector<double> data = tj.at("data").get<std::vector<double>>();
    if (data.size() != tensors[i]->size()) {
      throw PolicyError(std::string("checkpoint tensor size mismatch: ") +
                        kTensorNames[i]);
    }
    tensors[i]->v = std::move(data);
  }
  return p;
}

}  // namespace

void save_checkpoint(const PolicySet& set, const std::string& path) {
  json j;
  j["format_version"] = 1;
  j["embed_dim"] = set.cfg.embed_dim;
  j["hidden_dim"] = set.cfg.hidden_dim;
  j["per_role"] = set.cfg.per_role;
  json arr = json::array();
  for (const PolicyParams& p : set.params) arr.push_back(params_to_json(p));
  j["params"] = arr;
  std::ofstream out(path);
  if (!out) throw PolicyError("cannot open for writing: " + path);
  out << j.dump();
  if (!out) throw PolicyError("write failed: " + path);
}

PolicySet load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PolicyError("cannot open for reading: " + path);
  json j;
  try {
    in >> j;
    PolicySet set;
    set.cfg.embed_dim = j.at("embed_dim").get<int>();
    set.cfg.hidden_dim = j.at("hidden_dim").get<int>();
    set.cfg.per_role = j.at("per_role").get<bool>();
    const json& arr = j.at("params");
    std::size_t expected = set.cfg.per_role ? kNumRoles : 1;
    if (arr.size() != expected) throw PolicyError("checkpoint parameter count mismatch");
    for (const json& pj : arr) set.params.push_back(params_from_json(pj, set.cfg));
    return set;
  } catch (const json::exception& e) {
    throw PolicyError(std::string("bad checkpoint: ") + e.what());
  }
}

}  // namespace werewolf
