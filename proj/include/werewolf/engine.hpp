// Deterministic 9-player werewolf state machine: phases, legal-action masks,
// resolution, win detection and replayable logs.
//
// Rule set (standard Chinese 9-player conventions):
//   - roles: 3 werewolves, 3 villagers, 1 seer, 1 witch, 1 hunter
//   - night order: wolf kill -> seer check -> witch
//   - wolves pick one victim by plurality of their kill votes, ties broken by
//     lowest target id; targeting a wolf (self-knife) is allowed
//   - the witch sees the kill target, may use at most one potion per night,
//     may never save herself; each potion is single-use per game
//   - the hunter may shoot one living player when dying by kill or by vote,
//     never when poisoned
//   - day vote is plurality, ties eliminate nobody
//   - wolves win by slaughtering one side: all plain villagers dead or all of
//     seer/witch/hunter dead; the village wins when all wolves are dead
//   - games are cut off after max_rounds (default 9) with a wolf win
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace werewolf {

inline constexpr int kNumPlayers = 9;
inline constexpr int kSystem = 255;

enum class Role : std::uint8_t { Werewolf, Villager, Seer, Witch, Hunter };
enum class Camp : std::uint8_t { WolfSide, VillageSide };
enum class Phase : std::uint8_t {
  NightWolfKill,
  NightSeerCheck,
  NightWitch,
  DayAnnounce,
  DayDiscuss,
  DayVote,
  HunterShot,
  GameOver,
};
enum class Verb : std::uint8_t {
  Kill,
  Check,
  Save,  // witch antidote
  Poison,
  Vote,
  Shoot,
  Claim,
  Accuse,
  Pass,
  Die,
};

inline constexpr int kNumRoles = 5;
inline constexpr int kNumVerbs = 10;
inline constexpr int kNumPhases = 8;

Camp camp_of(Role role);

const char* to_string(Role role);
const char* to_string(Camp camp);
const char* to_string(Phase phase);
// Verbs serialize with the decision-chain vocabulary: Save <-> "antidote",
// Shoot <-> "shot".
const char* to_string(Verb verb);
std::optional<Role> role_from_string(const std::string& s);
std::optional<Camp> camp_from_string(const std::string& s);
std::optional<Phase> phase_from_string(const std::string& s);
std::optional<Verb> verb_from_string(const std::string& s);

// An event object is a player id, a role name, or nothing.
struct EventObject {
  enum class Kind : std::uint8_t { None, Player, RoleName };
  Kind kind = Kind::None;
  std::uint8_t player = 0;
  Role role = Role::Werewolf;

  static EventObject none() { return {}; }
  static EventObject of_player(int p) {
    return {Kind::Player, static_cast<std::uint8_t>(p), Role::Werewolf};
  }
  static EventObject of_role(Role r) { return {Kind::RoleName, 0, r}; }
  bool is_player() const { return kind == Kind::Player; }
  bool is_none() const { return kind == Kind::None; }
  bool operator==(const EventObject&) const = default;
};

// The atomic unit of history: one (subject, verb, object) triple.
struct Event {
  std::uint8_t subject = kSystem;  // 0..8 or kSystem
  Verb verb = Verb::Pass;
  EventObject object;
  std::uint16_t round = 1;
  Phase phase = Phase::NightWolfKill;
  bool operator==(const Event&) const = default;
};

// ---------------------------------------------------------------------------
// Global action space: 7 targeted verbs x 9 targets, plus pass. Phase routing
// is done purely by masking.

inline constexpr int kNumActionVerbs = 7;
inline constexpr int kNumActions = kNumActionVerbs * kNumPlayers + 1;  // 64
inline constexpr int kPassAction = kNumActions - 1;

inline constexpr std::array<Verb, kNumActionVerbs> kActionVerbs = {
    Verb::Kill, Verb::Check, Verb::Save,  Verb::Poison,
    Verb::Vote, Verb::Shoot, Verb::Accuse};

int action_id(Verb verb, int target);
Verb action_verb(int action);   // invalid for kPassAction
int action_target(int action);  // invalid for kPassAction
std::string action_name(int action);

class ActionMask {
 public:
  bool legal(int action) const { return (bits_ >> action) & 1u; }
  void set(int action) { bits_ |= (std::uint64_t{1} << action); }
  void clear(int action) { bits_ &= ~(std::uint64_t{1} << action); }
  bool any() const { return bits_ != 0; }
  int count() const;
  std::uint64_t bits() const { return bits_; }
  static ActionMask from_bits(std::uint64_t b) {
    ActionMask m;
    m.bits_ = b;
    return m;
  }
  bool operator==(const ActionMask&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

// ---------------------------------------------------------------------------

struct GameConfig {
  // Counts indexed by Role (werewolf, villager, seer, witch, hunter).
  std::array<int, kNumRoles> role_counts = {3, 3, 1, 1, 1};
  int max_rounds = 9;
};

struct GameState {
  std::array<Role, kNumPlayers> roles{};
  std::array<bool, kNumPlayers> alive{};
  Phase phase = Phase::NightWolfKill;
  int round = 1;
  bool witch_antidote_available = true;
  bool witch_poison_available = true;
  bool hunter_can_shoot = true;
  std::vector<Event> history;
  std::uint64_t rng_seed = 0;
  int max_rounds = 9;

  // Night resolution scratch, reset at each dawn.
  int pending_kill = -1;
  bool kill_saved = false;
  int pending_poison = -1;
  // Hunter whose death is being resolved in HunterShot; his alive flag stays
  // true until the shot resolves so he never acts while dead.
  int pending_hunter = -1;
  Phase hunter_return_phase = Phase::DayDiscuss;
  std::optional<Camp> decided_winner;

  int seat_of(Role role) const;  // first seat with that role
  bool operator==(const GameState&) const = default;
};

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IllegalActionError : EngineError {
  IllegalActionError(int player_, int action_, const std::string& why);
  int player;
  int action;
};

// Claim content a discussor attaches to a DayDiscuss step; the engine stamps
// subject, round and phase.
struct ClaimEvent {
  Verb verb = Verb::Claim;  // Claim or Check
  EventObject object;
};

struct PhaseInput {
  std::map<int, int> actions;                      // player -> action id
  std::map<int, std::vector<ClaimEvent>> claims;   // DayDiscuss only
};

GameState new_game(std::uint64_t seed, const GameConfig& config = {});

// Exactly the players that must supply an action for the current phase.
std::vector<int> acting_players(const GameState& state);

// Total function; dead players and non-actors get an all-masked result.
ActionMask legal_actions(const GameState& state, int player);

// Applies one phase worth of decisions, appends the resulting events,
// advances the phase. Throws IllegalActionError / EngineError on bad input.
std::vector<Event> step(GameState& state, const PhaseInput& input);
std::vector<Event> step(GameState& state, const std::map<int, int>& actions);

// None before GameOver, exactly one camp at GameOver.
std::optional<Camp> winner(const GameState& state);
// The win rule itself, usable on raw liveness. All wolves dead beats the
// wolf conditions when a death batch triggers both at once.
std::optional<Camp> winner_if_decided(const std::array<Role, kNumPlayers>& roles,
                                      const std::array<bool, kNumPlayers>& alive);

// ---------------------------------------------------------------------------
// Observer views.

bool event_visible_to(const Event& event, int observer,
                      const std::array<Role, kNumPlayers>& roles);

struct ObservedEvent {
  Event event;
  // Filled for the seer's own night checks: true when the target is a wolf.
  std::optional<bool> seer_saw_werewolf;
};

std::vector<ObservedEvent> visible_history(const GameState& state, int observer);

struct StateView {
  int observer = 0;
  Role self_role = Role::Villager;
  Phase phase = Phase::NightWolfKill;
  int round = 1;
  std::array<bool, kNumPlayers> alive{};
  std::vector<Event> events;  // observer-visible, no private annotations
};

StateView make_view(const GameState& state, int observer);

// ---------------------------------------------------------------------------
// Replayable logs.

struct GameLog {
  std::uint64_t seed = 0;
  std::array<Role, kNumPlayers> roles{};
  std::vector<Event> events;
  Camp winner = Camp::WolfSide;
  std::array<bool, kNumPlayers> alive_at_end{};
  bool operator==(const GameLog&) const = default;
};

struct ReplayError : EngineError {
  ReplayError(std::size_t index, const std::string& why);
  std::size_t event_index;
};

GameLog make_log(const GameState& state);  // requires GameOver
// Re-derives every decision from the log and re-runs the rules; throws
// ReplayError at the first divergence.
GameState replay(const GameLog& log, const GameConfig& config = {});

// One JSON object per line. Verbs and role names use the chain vocabulary.
std::string log_to_json(const GameLog& log);
GameLog log_from_json(const std::string& line);  // throws EngineError
void write_jsonl(const std::string& path, const std::vector<GameLog>& logs);
// Unreadable lines are skipped and counted into *warnings when non-null.
std::vector<GameLog> read_jsonl(const std::string& path, int* warnings = nullptr);

}  // namespace werewolf
