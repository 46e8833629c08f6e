#include "werewolf/engine.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "werewolf/rng.hpp"

namespace werewolf {

namespace {

using nlohmann::json;

bool is_player_id(int p) { return p >= 0 && p < kNumPlayers; }

bool is_night(Phase phase) {
  return phase == Phase::NightWolfKill || phase == Phase::NightSeerCheck ||
         phase == Phase::NightWitch;
}

}  // namespace

Camp camp_of(Role role) {
  return role == Role::Werewolf ? Camp::WolfSide : Camp::VillageSide;
}

const char* to_string(Role role) {
  switch (role) {
    case Role::Werewolf: return "werewolf";
    case Role::Villager: return "villager";
    case Role::Seer: return "seer";
    case Role::Witch: return "witch";
    case Role::Hunter: return "hunter";
  }
  return "?";
}

const char* to_string(Camp camp) {
  return camp == Camp::WolfSide ? "wolf_side" : "village_side";
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::NightWolfKill: return "night_wolf_kill";
    case Phase::NightSeerCheck: return "night_seer_check";
    case Phase::NightWitch: return "night_witch";
    case Phase::DayAnnounce: return "day_announce";
    case Phase::DayDiscuss: return "day_discuss";
    case Phase::DayVote: return "day_vote";
    case Phase::HunterShot: return "hunter_shot";
    case Phase::GameOver: return "game_over";
  }
  return "?";
}

const char* to_string(Verb verb) {
  switch (verb) {
    case Verb::Kill: return "kill";
    case Verb::Check: return "check";
    case Verb::Save: return "antidote";
    case Verb::Poison: return "poison";
    case Verb::Vote: return "vote";
    case Verb::Shoot: return "shot";
    case Verb::Claim: return "claim";
    case Verb::Accuse: return "accuse";
    case Verb::Pass: return "pass";
    case Verb::Die: return "die";
  }
  return "?";
}

std::optional<Role> role_from_string(const std::string& s) {
  for (int r = 0; r < kNumRoles; ++r) {
    if (s == to_string(static_cast<Role>(r))) return static_cast<Role>(r);
  }
  return std::nullopt;
}

std::optional<Camp> camp_from_string(const std::string& s) {
  if (s == "wolf_side") return Camp::WolfSide;
  if (s == "village_side") return Camp::VillageSide;
  return std::nullopt;
}

std::optional<Phase> phase_from_string(const std::string& s) {
  for (int p = 0; p < kNumPhases; ++p) {
    if (s == to_string(static_cast<Phase>(p))) return static_cast<Phase>(p);
  }
  return std::nullopt;
}

std::optional<Verb> verb_from_string(const std::string& s) {
  for (int v = 0; v < kNumVerbs; ++v) {
    if (s == to_string(static_cast<Verb>(v))) return static_cast<Verb>(v);
  }
  return std::nullopt;
}

int action_id(Verb verb, int target) {
  for (int i = 0; i < kNumActionVerbs; ++i) {
    if (kActionVerbs[i] == verb) return i * kNumPlayers + target;
  }
  throw EngineError("verb has no action encoding");
}

Verb action_verb(int action) {
  if (action < 0 || action >= kPassAction) throw EngineError("not a targeted action");
  return kActionVerbs[action / kNumPlayers];
}

int action_target(int action) {
  if (action < 0 || action >= kPassAction) throw EngineError("not a targeted action");
  return action % kNumPlayers;
}

std::string action_name(int action) {
  if (action == kPassAction) return "pass";
  std::ostringstream os;
  os << to_string(action_verb(action)) << "(" << action_target(action) << ")";
  return os.str();
}

int ActionMask::count() const {
  int n = 0;
  for (int a = 0; a < kNumActions; ++a) n += legal(a) ? 1 : 0;
  return n;
}

IllegalActionError::IllegalActionError(int player_, int action_, const std::string& why)
    : EngineError("illegal action by player " + std::to_string(player_) + ": " +
                  action_name(action_) + " (" + why + ")"),
      player(player_),
      action(action_) {}

ReplayError::ReplayError(std::size_t index, const std::string& why)
    : EngineError("replay diverged at event " + std::to_string(index) + ": " + why),
      event_index(index) {}

int GameState::seat_of(Role role) const {
  for (int p = 0; p < kNumPlayers; ++p) {
    if (roles[p] == role) return p;
  }
  return -1;
}

GameState new_game(std::uint64_t seed, const GameConfig& config) {
  static const std::array<int, kNumRoles> kExpected = {3, 3, 1, 1, 1};
  if (config.role_counts != kExpected) {
    throw EngineError("config must assign exactly 3 werewolves, 3 villagers, "
                      "1 seer, 1 witch, 1 hunter");
  }
  if (config.max_rounds < 1) throw EngineError("max_rounds must be >= 1");

  GameState state;
  std::vector<Role> bag;
  for (int r = 0; r < kNumRoles; ++r) {
    for (int i = 0; i < config.role_counts[r]; ++i) bag.push_back(static_cast<Role>(r));
  }
  Rng rng(Rng::derive(seed, 0x726f6c6573ull));
  rng.shuffle(bag);
  for (int p = 0; p < kNumPlayers; ++p) state.roles[p] = bag[p];
  state.alive.fill(true);
  state.rng_seed = seed;
  state.max_rounds = config.max_rounds;
  return state;
}

std::vector<int> acting_players(const GameState& state) {
  std::vector<int> out;
  switch (state.phase) {
    case Phase::NightWolfKill:
      for (int p = 0; p < kNumPlayers; ++p) {
        if (state.alive[p] && state.roles[p] == Role::Werewolf) out.push_back(p);
      }
      break;
    case Phase::NightSeerCheck: {
      int seer = state.seat_of(Role::Seer);
      if (seer >= 0 && state.alive[seer]) out.push_back(seer);
      break;
    }
    case Phase::NightWitch: {
      int witch = state.seat_of(Role::Witch);
      if (witch >= 0 && state.alive[witch]) out.push_back(witch);
      break;
    }
    case Phase::DayDiscuss:
    case Phase::DayVote:
      for (int p = 0; p < kNumPlayers; ++p) {
        if (state.alive[p]) out.push_back(p);
      }
      break;
    case Phase::HunterShot:
      if (state.pending_hunter >= 0) out.push_back(state.pending_hunter);
      break;
    case Phase::DayAnnounce:
    case Phase::GameOver:
      break;
  }
  return out;
}

ActionMask legal_actions(const GameState& state, int player) {
  ActionMask mask;
  if (!is_player_id(player) || !state.alive[player]) return mask;

  switch (state.phase) {
    case Phase::NightWolfKill:
      if (state.roles[player] != Role::Werewolf) return mask;
      for (int q = 0; q < kNumPlayers; ++q) {
        if (state.alive[q]) mask.set(action_id(Verb::Kill, q));
      }
      break;
    case Phase::NightSeerCheck:
      if (state.roles[player] != Role::Seer) return mask;
      for (int q = 0; q < kNumPlayers; ++q) {
        if (state.alive[q] && q != player) mask.set(action_id(Verb::Check, q));
      }
      break;
    case Phase::NightWitch:
      if (state.roles[player] != Role::Witch) return mask;
      if (state.witch_antidote_available && state.pending_kill >= 0 &&
          state.pending_kill != player) {
        mask.set(action_id(Verb::Save, state.pending_kill));
      }
      if (state.witch_poison_available) {
        for (int q = 0; q < kNumPlayers; ++q) {
          if (state.alive[q] && q != player) mask.set(action_id(Verb::Poison, q));
        }
      }
      mask.set(kPassAction);
      break;
    case Phase::DayDiscuss:
      for (int q = 0; q < kNumPlayers; ++q) {
        if (state.alive[q] && q != player) mask.set(action_id(Verb::Accuse, q));
      }
      mask.set(kPassAction);
      break;
    case Phase::DayVote:
      for (int q = 0; q < kNumPlayers; ++q) {
        if (state.alive[q] && q != player) mask.set(action_id(Verb::Vote, q));
      }
      mask.set(kPassAction);
      break;
    case Phase::HunterShot:
      if (player != state.pending_hunter) return mask;
      for (int q = 0; q < kNumPlayers; ++q) {
        if (state.alive[q] && q != player) mask.set(action_id(Verb::Shoot, q));
      }
      mask.set(kPassAction);
      break;
    case Phase::DayAnnounce:
    case Phase::GameOver:
      break;
  }
  return mask;
}

std::optional<Camp> winner_if_decided(const std::array<Role, kNumPlayers>& roles,
                                      const std::array<bool, kNumPlayers>& alive) {
  int wolves = 0, villagers = 0, specials = 0;
  for (int p = 0; p < kNumPlayers; ++p) {
    if (!alive[p]) continue;
    switch (roles[p]) {
      case Role::Werewolf: ++wolves; break;
      case Role::Villager: ++villagers; break;
      default: ++specials; break;
    }
  }
  if (wolves == 0) return Camp::VillageSide;
  if (villagers == 0 || specials == 0) return Camp::WolfSide;
  return std::nullopt;
}

std::optional<Camp> winner(const GameState& state) {
  if (state.phase != Phase::GameOver) return std::nullopt;
  return state.decided_winner;
}

namespace {

Event make_event(const GameState& state, int subject, Verb verb, EventObject object) {
  Event e;
  e.subject = static_cast<std::uint8_t>(subject);
  e.verb = verb;
  e.object = object;
  e.round = static_cast<std::uint16_t>(state.round);
  e.phase = state.phase;
  return e;
}

void emit(GameState& state, std::vector<Event>& out, int subject, Verb verb,
          EventObject object) {
  Event e = make_event(state, subject, verb, object);
  state.history.push_back(e);
  out.push_back(e);
}

void finish(GameState& state, Camp camp) {
  state.decided_winner = camp;
  state.phase = Phase::GameOver;
}

// Advance into the next round's night, applying the round cutoff.
void to_next_round(GameState& state) {
  if (state.round >= state.max_rounds) {
    finish(state, Camp::WolfSide);
    return;
  }
  state.round += 1;
  state.phase = Phase::NightWolfKill;
}

// Returns true when the game ended.
bool check_win(GameState& state) {
  if (auto camp = winner_if_decided(state.roles, state.alive)) {
    finish(state, *camp);
    return true;
  }
  return false;
}

void validate_actions(const GameState& state, const PhaseInput& input) {
  std::vector<int> actors = acting_players(state);
  if (input.actions.size() != actors.size()) {
    throw EngineError("phase " + std::string(to_string(state.phase)) + " needs " +
                      std::to_string(actors.size()) + " decisions, got " +
                      std::to_string(input.actions.size()));
  }
  for (int p : actors) {
    auto it = input.actions.find(p);
    if (it == input.actions.end()) {
      throw EngineError("missing decision for player " + std::to_string(p));
    }
    int action = it->second;
    if (action < 0 || action >= kNumActions) {
      throw IllegalActionError(p, 0, "action id out of range");
    }
    if (!legal_actions(state, p).legal(action)) {
      throw IllegalActionError(p, action, "masked in " + std::string(to_string(state.phase)));
    }
  }
  if (!input.claims.empty() && state.phase != Phase::DayDiscuss) {
    throw EngineError("claims are only accepted in day_discuss");
  }
}

void step_wolf_kill(GameState& state, const PhaseInput& input, std::vector<Event>& out) {
  std::array<int, kNumPlayers> votes{};
  for (const auto& [p, action] : input.actions) {
    int target = action_target(action);
    emit(state, out, p, Verb::Kill, EventObject::of_player(target));
    votes[target] += 1;
  }
  int best = -1;
  for (int q = 0; q < kNumPlayers; ++q) {
    if (votes[q] > 0 && (best < 0 || votes[q] > votes[best])) best = q;
  }
  state.pending_kill = best;
  state.kill_saved = false;
  state.phase = Phase::NightSeerCheck;
}

void step_seer_check(GameState& state, const PhaseInput& input, std::vector<Event>& out) {
  for (const auto& [p, action] : input.actions) {
    emit(state, out, p, Verb::Check, EventObject::of_player(action_target(action)));
  }
  state.phase = Phase::NightWitch;
}

void step_witch(GameState& state, const PhaseInput& input, std::vector<Event>& out) {
  for (const auto& [p, action] : input.actions) {
    if (action == kPassAction) {
      emit(state, out, p, Verb::Pass, EventObject::none());
    } else if (action_verb(action) == Verb::Save) {
      state.kill_saved = true;
      state.witch_antidote_available = false;
      emit(state, out, p, Verb::Save, EventObject::of_player(action_target(action)));
    } else {
      state.pending_poison = action_target(action);
      state.witch_poison_available = false;
      emit(state, out, p, Verb::Poison, EventObject::of_player(action_target(action)));
    }
  }
  state.phase = Phase::DayAnnounce;
}

void step_announce(GameState& state, std::vector<Event>& out) {
  int killed = (state.pending_kill >= 0 && !state.kill_saved) ? state.pending_kill : -1;
  int poisoned = state.pending_poison;
  state.pending_kill = -1;
  state.kill_saved = false;
  state.pending_poison = -1;

  int hunter = state.seat_of(Role::Hunter);
  bool hunter_poisoned = poisoned == hunter;
  bool hunter_shot_pending =
      hunter >= 0 && state.alive[hunter] && killed == hunter && !hunter_poisoned &&
      state.hunter_can_shoot;

  bool any_death = false;
  for (int victim : {killed, poisoned}) {
    if (victim < 0 || !state.alive[victim]) continue;
    any_death = true;
    if (victim == hunter && hunter_shot_pending) continue;  // announced after his shot
    if (victim == hunter && hunter_poisoned) state.hunter_can_shoot = false;
    emit(state, out, kSystem, Verb::Die, EventObject::of_player(victim));
    state.alive[victim] = false;
  }
  if (!any_death) {
    // Peaceful night.
    emit(state, out, kSystem, Verb::Pass, EventObject::none());
  }

  if (hunter_shot_pending) {
    // The win check waits until the whole death batch, shot included, lands.
    state.pending_hunter = hunter;
    state.hunter_return_phase = Phase::DayDiscuss;
    state.phase = Phase::HunterShot;
    return;
  }
  if (check_win(state)) return;
  state.phase = Phase::DayDiscuss;
}

void step_discuss(GameState& state, const PhaseInput& input, std::vector<Event>& out) {
  for (const auto& [p, claims] : input.claims) {
    if (input.actions.find(p) == input.actions.end()) {
      throw EngineError("claims supplied for non-acting player " + std::to_string(p));
    }
    for (const ClaimEvent& c : claims) {
      if (c.verb != Verb::Claim && c.verb != Verb::Check) {
        throw EngineError("claim events must use verb claim or check");
      }
    }
  }
  for (const auto& [p, action] : input.actions) {
    if (action == kPassAction) {
      emit(state, out, p, Verb::Pass, EventObject::none());
    } else {
      emit(state, out, p, Verb::Accuse, EventObject::of_player(action_target(action)));
    }
    auto it = input.claims.find(p);
    if (it != input.claims.end()) {
      for (const ClaimEvent& c : it->second) emit(state, out, p, c.verb, c.object);
    }
  }
  state.phase = Phase::DayVote;
}

void step_vote(GameState& state, const PhaseInput& input, std::vector<Event>& out) {
  std::array<int, kNumPlayers> tally{};
  for (const auto& [p, action] : input.actions) {
    if (action == kPassAction) {
      emit(state, out, p, Verb::Vote, EventObject::none());
    } else {
      int target = action_target(action);
      emit(state, out, p, Verb::Vote, EventObject::of_player(target));
      tally[target] += 1;
    }
  }
  int victim = -1;
  bool tie = false;
  for (int q = 0; q < kNumPlayers; ++q) {
    if (tally[q] == 0) continue;
    if (victim < 0 || tally[q] > tally[victim]) {
      victim = q;
      tie = false;
    } else if (tally[q] == tally[victim]) {
      tie = true;
    }
  }
  if (victim < 0 || tie) {
    // Nobody eliminated; marker keeps the phase visible in logs.
    emit(state, out, kSystem, Verb::Pass, EventObject::none());
    to_next_round(state);
    return;
  }
  if (state.roles[victim] == Role::Hunter && state.hunter_can_shoot) {
    state.pending_hunter = victim;
    state.hunter_return_phase = Phase::NightWolfKill;
    state.phase = Phase::HunterShot;
    return;
  }
  emit(state, out, kSystem, Verb::Die, EventObject::of_player(victim));
  state.alive[victim] = false;
  if (check_win(state)) return;
  to_next_round(state);
}

void step_hunter_shot(GameState& state, const PhaseInput& input, std::vector<Event>& out) {
  int hunter = state.pending_hunter;
  int shot = -1;
  for (const auto& [p, action] : input.actions) {
    if (action == kPassAction) {
      emit(state, out, p, Verb::Pass, EventObject::none());
    } else {
      shot = action_target(action);
      emit(state, out, p, Verb::Shoot, EventObject::of_player(shot));
    }
  }
  emit(state, out, kSystem, Verb::Die, EventObject::of_player(hunter));
  state.alive[hunter] = false;
  state.hunter_can_shoot = false;
  if (shot >= 0) {
    emit(state, out, kSystem, Verb::Die, EventObject::of_player(shot));
    state.alive[shot] = false;
  }
  state.pending_hunter = -1;
  if (check_win(state)) return;
  if (state.hunter_return_phase == Phase::NightWolfKill) {
    to_next_round(state);
  } else {
    state.phase = state.hunter_return_phase;
  }
}

}  // namespace

std::vector<Event> step(GameState& state, const PhaseInput& input) {
  if (state.phase == Phase::GameOver) throw EngineError("game is over");
  validate_actions(state, input);

  std::vector<Event> out;
  switch (state.phase) {
    case Phase::NightWolfKill: step_wolf_kill(state, input, out); break;
    case Phase::NightSeerCheck: step_seer_check(state, input, out); break;
    case Phase::NightWitch: step_witch(state, input, out); break;
    case Phase::DayAnnounce: step_announce(state, out); break;
    case Phase::DayDiscuss: step_discuss(state, input, out); break;
    case Phase::DayVote: step_vote(state, input, out); break;
    case Phase::HunterShot: step_hunter_shot(state, input, out); break;
    case Phase::GameOver: break;
  }
  return out;
}

std::vector<Event> step(GameState& state, const std::map<int, int>& actions) {
  PhaseInput input;
  input.actions = actions;
  return step(state, input);
}

// ---------------------------------------------------------------------------
// Views.

bool event_visible_to(const Event& event, int observer,
                      const std::array<Role, kNumPlayers>& roles) {
  if (event.subject == kSystem) return true;
  if (!is_night(event.phase)) return true;
  if (event.subject == observer) return true;
  // Wolves see each other's kill votes.
  if (event.verb == Verb::Kill && is_player_id(observer) &&
      roles[observer] == Role::Werewolf) {
    return true;
  }
  return false;
}

std::vector<ObservedEvent> visible_history(const GameState& state, int observer) {
  std::vector<ObservedEvent> out;
  for (const Event& e : state.history) {
    if (!event_visible_to(e, observer, state.roles)) continue;
    ObservedEvent oe{e, std::nullopt};
    if (e.verb == Verb::Check && is_night(e.phase) && e.subject == observer &&
        e.object.is_player()) {
      oe.seer_saw_werewolf = state.roles[e.object.player] == Role::Werewolf;
    }
    out.push_back(oe);
  }
  return out;
}

StateView make_view(const GameState& state, int observer) {
  StateView view;
  view.observer = observer;
  view.self_role = state.roles[observer];
  view.phase = state.phase;
  view.round = state.round;
  view.alive = state.alive;
  for (const Event& e : state.history) {
    if (event_visible_to(e, observer, state.roles)) view.events.push_back(e);
  }
  return view;
}

// ---------------------------------------------------------------------------
// Logs and replay.

GameLog make_log(const GameState& state) {
  if (state.phase != Phase::GameOver || !state.decided_winner) {
    throw EngineError("cannot log an unfinished game");
  }
  GameLog log;
  log.seed = state.rng_seed;
  log.roles = state.roles;
  log.events = state.history;
  log.winner = *state.decided_winner;
  log.alive_at_end = state.alive;
  return log;
}

namespace {

// Rebuild the PhaseInput for the current phase from the log's events,
// starting at cursor. Consumes nothing; the caller advances the cursor by
// comparing emitted events.
PhaseInput reconstruct_input(const GameState& state, const std::vector<Event>& events,
                             std::size_t cursor) {
  PhaseInput input;
  Phase phase = state.phase;
  int round = state.round;
  for (std::size_t i = cursor; i < events.size(); ++i) {
    const Event& e = events[i];
    if (e.round != round || e.phase != phase) break;
    if (e.subject == kSystem) continue;
    int p = e.subject;
    switch (phase) {
      case Phase::NightWolfKill:
      case Phase::NightSeerCheck:
        input.actions[p] = action_id(e.verb, e.object.player);
        break;
      case Phase::NightWitch:
        input.actions[p] =
            e.verb == Verb::Pass ? kPassAction : action_id(e.verb, e.object.player);
        break;
      case Phase::DayDiscuss:
        if (e.verb == Verb::Accuse) {
          input.actions[p] = action_id(Verb::Accuse, e.object.player);
        } else if (e.verb == Verb::Pass) {
          input.actions[p] = kPassAction;
        } else {
          input.claims[p].push_back(ClaimEvent{e.verb, e.object});
        }
        break;
      case Phase::DayVote:
        input.actions[p] = e.object.is_player()
                               ? action_id(Verb::Vote, e.object.player)
                               : kPassAction;
        break;
      case Phase::HunterShot:
        input.actions[p] =
            e.verb == Verb::Pass ? kPassAction : action_id(Verb::Shoot, e.object.player);
        break;
      default:
        break;
    }
  }
  return input;
}

}  // namespace

GameState replay(const GameLog& log, const GameConfig& config) {
  if (log.events.empty()) throw ReplayError(0, "log has no events");
  GameState state = new_game(log.seed, config);
  if (state.roles != log.roles) {
    throw ReplayError(0, "role assignment does not follow from the seed");
  }
  std::size_t cursor = 0;
  while (state.phase != Phase::GameOver) {
    if (cursor >= log.events.size()) {
      throw ReplayError(cursor, "log ended before the game did");
    }
    PhaseInput input = reconstruct_input(state, log.events, cursor);
    std::vector<Event> emitted;
    try {
      emitted = step(state, input);
    } catch (const EngineError& err) {
      throw ReplayError(cursor, err.what());
    }
    for (const Event& e : emitted) {
      if (cursor >= log.events.size()) {
        throw ReplayError(cursor, "engine produced more events than the log");
      }
      if (!(log.events[cursor] == e)) {
        throw ReplayError(cursor, "event mismatch");
      }
      ++cursor;
    }
  }
  if (cursor != log.events.size()) {
    throw ReplayError(cursor, "log has trailing events");
  }
  if (!state.decided_winner || *state.decided_winner != log.winner) {
    throw ReplayError(cursor, "winner mismatch");
  }
  if (state.alive != log.alive_at_end) {
    throw ReplayError(cursor, "final liveness mismatch");
  }
  return state;
}

// ---------------------------------------------------------------------------
// JSONL.

namespace {

json event_to_json(const Event& e) {
  json j;
  j["round"] = e.round;
  j["phase"] = to_string(e.phase);
  j["subject"] = e.subject;
  j["verb"] = to_string(e.verb);
  switch (e.object.kind) {
    case EventObject::Kind::None: j["object"] = nullptr; break;
    case EventObject::Kind::Player: j["object"] = e.object.player; break;
    case EventObject::Kind::RoleName: j["object"] = to_string(e.object.role); break;
  }
  return j;
}

Event event_from_json(const json& j) {
  Event e;
  int round = j.at("round").get<int>();
  if (round < 1 || round > 0xffff) throw EngineError("bad round");
  e.round = static_cast<std::uint16_t>(round);
  auto phase = phase_from_string(j.at("phase").get<std::string>());
  if (!phase) throw EngineError("unknown phase token");
  e.phase = *phase;
  int subject = j.at("subject").get<int>();
  if (subject != kSystem && !is_player_id(subject)) throw EngineError("bad subject");
  e.subject = static_cast<std::uint8_t>(subject);
  auto verb = verb_from_string(j.at("verb").get<std::string>());
  if (!verb) throw EngineError("unknown verb token");
  e.verb = *verb;
  const json& obj = j.at("object");
  if (obj.is_null()) {
    e.object = EventObject::none();
  } else if (obj.is_number_integer()) {
    int q = obj.get<int>();
    if (!is_player_id(q)) throw EngineError("bad object player id");
    e.object = EventObject::of_player(q);
  } else if (obj.is_string()) {
    auto role = role_from_string(obj.get<std::string>());
    if (!role) throw EngineError("unknown role token");
    e.object = EventObject::of_role(*role);
  } else {
    throw EngineError("object must be a player id, role name or null");
  }
  return e;
}

}  // namespace

std::string log_to_json(const GameLog& log) {
  json j;
  j["seed"] = log.seed;
  json roles = json::array();
  for (Role r : log.roles) roles.push_back(to_string(r));
  j["roles"] = roles;
  json events = json::array();
  for (const Event& e : log.events) events.push_back(event_to_json(e));
  j["events"] = events;
  j["winner"] = to_string(log.winner);
  json alive = json::array();
  for (bool a : log.alive_at_end) alive.push_back(a);
  j["alive_at_end"] = alive;
  return j.dump();
}

GameLog log_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw EngineError(std::string("bad log line: ") + e.what());
  }
  try {
    GameLog log;
    log.seed = j.at("seed").get<std::uint64_t>();
    const json& roles = j.at("roles");
    if (!roles.is_array() || roles.size() != kNumPlayers) {
      throw EngineError("roles must list 9 entries");
    }
    for (int p = 0; p < kNumPlayers; ++p) {
      auto role = role_from_string(roles[p].get<std::string>());
      if (!role) throw EngineError("unknown role token");
      log.roles[p] = *role;
    }
    for (const json& ej : j.at("events")) log.events.push_back(event_from_json(ej));
    auto camp = camp_from_string(j.at("winner").get<std::string>());
    if (!camp) throw EngineError("unknown winner token");
    log.winner = *camp;
    const json& alive = j.at("alive_at_end");
    if (!alive.is_array() || alive.size() != kNumPlayers) {
      throw EngineError("alive_at_end must list 9 entries");
    }
    for (int p = 0; p < kNumPlayers; ++p) log.alive_at_end[p] = alive[p].get<bool>();
    return log;
  } catch (const json::exception& e) {
    throw EngineError(std::string("bad log line: ") + e.what());
  }
}

void write_jsonl(const std::string& path, const std::vector<GameLog>& logs) {
  std::ofstream out(path);
  if (!out) throw EngineError("cannot open for writing: " + path);
  for (const GameLog& log : logs) out << log_to_json(log) << "\n";
  if (!out) throw EngineError("write failed: " + path);
}

std::vector<GameLog> read_jsonl(const std::string& path, int* warnings) {
  std::ifstream in(path);
  if (!in) throw EngineError("cannot open for reading: " + path);
  std::vector<GameLog> logs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      logs.push_back(log_from_json(line));
    } catch (const EngineError&) {
      if (warnings) ++*warnings;
    }
  }
  return logs;
}

}  // namespace werewolf
