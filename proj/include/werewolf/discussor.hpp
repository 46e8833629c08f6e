// Structured discussion output: role claims, check reveals, accusations and
// vote declarations derived from the decider's step decision, rendered to
// text through templates. An optional external text service can replace the
// template rendering; its output is flavor only, the game-visible semantics
// stay in the ClaimSet.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "werewolf/engine.hpp"
#include "werewolf/predictor.hpp"

namespace werewolf {

struct DiscussorError : EngineError {
  using EngineError::EngineError;
};

enum class HonestyTag : std::uint8_t { Truthful, Deceptive };

inline constexpr int kDeclaredPass = -1;

struct Accusation {
  int target = 0;
  Role asserted = Role::Werewolf;
  HonestyTag honesty = HonestyTag::Truthful;
  bool operator==(const Accusation&) const = default;
};

struct RevealedCheck {
  int target = 0;
  bool is_werewolf = false;
  HonestyTag honesty = HonestyTag::Truthful;
  bool operator==(const RevealedCheck&) const = default;
};

struct ClaimSet {
  std::optional<Role> role_claim;
  std::optional<HonestyTag> role_claim_honesty;
  std::vector<Accusation> accusations;
  std::optional<RevealedCheck> revealed_check;
  std::optional<int> declared_vote;  // player id, or kDeclaredPass

  bool empty() const {
    return !role_claim && accusations.empty() && !revealed_check && !declared_vote;
  }
  bool operator==(const ClaimSet&) const = default;
};

struct ClaimPolicy {
  bool seer_reveals = true;
  // Wolves fake this role unless counter-claiming.
  Role wolf_fake_role = Role::Villager;
  // Counter-claim seer only once a seer-claimant has fingered a teammate.
  bool wolf_counter_claims = true;
};

// Deterministic claims for one DayDiscuss decision. Honesty tags are judged
// against the ground-truth roles: truthful claims match them, deceptive
// claims contradict them.
ClaimSet make_claims(const StateView& view, const Belief& belief, int decision_action,
                     const ClaimPolicy& policy,
                     const std::array<Role, kNumPlayers>& truth);

// Event encoding consumed by the predictor:
//   claim(role)    "I am <role>"
//   check(player)  day-phase claimed check, werewolf result
//   claim(player)  claimed check, innocent result (a vouch)
// Accusations and vote declarations ride on the accuse action itself.
std::vector<ClaimEvent> claims_to_events(const ClaimSet& claims);
// Rebuilds a ClaimSet from one player's DayDiscuss events.
ClaimSet claims_from_events(int player, const std::vector<Event>& events,
                            const std::array<Role, kNumPlayers>& truth);

// ---------------------------------------------------------------------------
// Text rendering.

using Templates = std::map<std::string, std::string>;

// Keys: role_claim, check_wolf, check_clear, accuse, vote, vote_pass.
// Placeholders {role} and {player}.
Templates default_templates();

// Deterministic template fill; throws DiscussorError on a missing key.
std::string render_text(const ClaimSet& claims, const Templates& templates);

// Inverse of render_text for the same templates. Honesty tags are recomputed
// from the speaker and the ground-truth roles, so parse(render(c)) == c.
ClaimSet parse_claims(const std::string& text, const Templates& templates, int speaker,
                      const std::array<Role, kNumPlayers>& truth);

// ---------------------------------------------------------------------------
// External generation: newline-delimited JSON over TCP.
// Request  {"context": str, "claims": {...}, "role": str}
// Response {"text": str}

struct ExternalEndpoint {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 disables the adapter
  int timeout_ms = 2000;
  bool enabled() const { return port > 0; }
};

struct GenerationRequest {
  std::string context;
  ClaimSet claims;
  Role role = Role::Villager;
};

struct GenerationStats {
  long external_ok = 0;
  long fallbacks = 0;
};

// One request/response exchange; nullopt on connect/timeout/protocol errors.
std::optional<std::string> external_generate(const GenerationRequest& request,
                                             const ExternalEndpoint& endpoint);

// External text when the endpoint answers, template text otherwise. Failures
// of an enabled endpoint are counted as fallbacks and never raised.
std::string generate_speech(const GenerationRequest& request, const Templates& templates,
                            const ExternalEndpoint& endpoint,
                            GenerationStats* stats = nullptr);

}  // namespace werewolf
