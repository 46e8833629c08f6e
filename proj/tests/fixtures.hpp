// Hand-constructed corpora with known chain statistics.
//
// The logs are import-grade records (the kind a human-game corpus adapter
// would produce), not engine replays: only the focal seat carries decision
// events, so every other seat extracts to an empty chain and stays out of
// the database.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "werewolf/chains.hpp"
#include "werewolf/engine.hpp"

namespace werewolf::testing {

struct FixtureEntry {
  Role role;
  std::string chain;
  double win_rate;
  long count;
};

// Seats: 0-2 wolves, 3 seer, 4 witch, 5 hunter, 6-8 villagers.
inline const std::array<Role, kNumPlayers> kFixtureRoles = {
    Role::Werewolf, Role::Werewolf, Role::Werewolf, Role::Seer,    Role::Witch,
    Role::Hunter,   Role::Villager, Role::Villager, Role::Villager};

inline std::vector<FixtureEntry> fixture_entries() {
  return {
      {Role::Werewolf, "kill: villager vote: seer kill: witch vote: hunter", 0.98, 971},
      {Role::Werewolf, "kill: villager vote: seer kill: witch vote: pass", 0.63, 932},
      {Role::Werewolf, "kill: villager kill: werewolf", 0.00, 312},
      {Role::Villager, "vote: werewolf vote: werewolf vote: werewolf", 0.95, 687},
      {Role::Villager, "vote: werewolf vote: hunter", 0.44, 556},
      {Role::Villager, "vote: seer vote: villager vote: pass", 0.13, 684},
      {Role::Seer, "check: werewolf vote: werewolf check: werewolf vote: pass", 0.77, 413},
      {Role::Seer, "check: villager vote: werewolf check: werewolf vote: pass", 0.65, 493},
      {Role::Seer, "check: werewolf vote: werewolf check: pass vote: pass", 0.04, 539},
      {Role::Witch, "antidote: villager vote: werewolf poison: werewolf vote: werewolf",
       0.98, 317},
      {Role::Witch, "antidote: villager vote: werewolf poison: villager vote: pass vote: pass",
       0.52, 270},
      {Role::Witch, "antidote: villager vote: seer poison: villager vote: pass", 0.00, 263},
      {Role::Hunter, "vote: werewolf vote: none shot: werewolf", 0.92, 306},
      {Role::Hunter, "vote: werewolf vote: none shot: werewolf vote: none", 0.51, 105},
      {Role::Hunter, "vote: none vote: werewolf shot: witch", 0.00, 107},
  };
}

namespace detail {

inline Event fx_event(int round, Phase phase, int subject, Verb verb, EventObject object) {
  Event e;
  e.round = static_cast<std::uint16_t>(round);
  e.phase = phase;
  e.subject = static_cast<std::uint8_t>(subject);
  e.verb = verb;
  e.object = object;
  return e;
}

// Builds the single-log event script that extracts to the given fixture
// chain for its focal seat.
inline std::vector<Event> fixture_script(const std::string& chain) {
  using EO = EventObject;
  auto P = [](int p) { return EO::of_player(p); };
  const EO none = EO::none();
  std::vector<Event> ev;
  auto add = [&](int r, Phase ph, int s, Verb v, EO o) {
    ev.push_back(fx_event(r, ph, s, v, o));
  };

  if (chain == "kill: villager vote: seer kill: witch vote: hunter") {
    add(1, Phase::NightWolfKill, 0, Verb::Kill, P(6));
    add(1, Phase::DayAnnounce, kSystem, Verb::Die, P(6));
    add(1, Phase::DayVote, 0, Verb::Vote, P(3));
    add(1, Phase::DayVote, kSystem, Verb::Die, P(3));
    add(2, Phase::NightWolfKill, 0, Verb::Kill, P(4));
    add(2, Phase::DayAnnounce, kSystem, Verb::Die, P(4));
    add(2, Phase::DayVote, 0, Verb::Vote, P(5));
    add(2, Phase::DayVote, kSystem, Verb::Die, P(5));
  } else if (chain == "kill: villager vote: seer kill: witch vote: pass") {
    add(1, Phase::NightWolfKill, 0, Verb::Kill, P(6));
    add(1, Phase::DayAnnounce, kSystem, Verb::Die, P(6));
    add(1, Phase::DayVote, 0, Verb::Vote, P(3));
    add(1, Phase::DayVote, kSystem, Verb::Die, P(3));
    add(2, Phase::NightWolfKill, 0, Verb::Kill, P(4));
    add(2, Phase::DayAnnounce, kSystem, Verb::Die, P(4));
    add(2, Phase::DayVote, 0, Verb::Vote, none);
  } else if (chain == "kill: villager kill: werewolf") {
    // Day-1 vote never happened in this record.
    add(1, Phase::NightWolfKill, 0, Verb::Kill, P(6));
    add(1, Phase::DayAnnounce, kSystem, Verb::Die, P(6));
    add(2, Phase::NightWolfKill, 0, Verb::Kill, P(1));
    add(2, Phase::DayAnnounce, kSystem, Verb::Die, P(1));
  } else if (chain == "vote: werewolf vote: werewolf vote: werewolf") {
    add(1, Phase::DayVote, 6, Verb::Vote, P(0));
    add(2, Phase::DayVote, 6, Verb::Vote, P(1));
    add(3, Phase::DayVote, 6, Verb::Vote, P(2));
  } else if (chain == "vote: werewolf vote: hunter") {
    add(1, Phase::DayVote, 6, Verb::Vote, P(0));
    add(2, Phase::DayVote, 6, Verb::Vote, P(5));
  } else if (chain == "vote: seer vote: villager vote: pass") {
    add(1, Phase::DayVote, 6, Verb::Vote, P(3));
    add(2, Phase::DayVote, 6, Verb::Vote, P(7));
    add(3, Phase::DayVote, 6, Verb::Vote, none);
  } else if (chain == "check: werewolf vote: werewolf check: werewolf vote: pass") {
    add(1, Phase::NightSeerCheck, 3, Verb::Check, P(0));
    add(1, Phase::DayVote, 3, Verb::Vote, P(1));
    add(2, Phase::NightSeerCheck, 3, Verb::Check, P(2));
    add(2, Phase::DayVote, 3, Verb::Vote, none);
  } else if (chain == "check: villager vote: werewolf check: werewolf vote: pass") {
    add(1, Phase::NightSeerCheck, 3, Verb::Check, P(7));
    add(1, Phase::DayVote, 3, Verb::Vote, P(0));
    add(2, Phase::NightSeerCheck, 3, Verb::Check, P(1));
    add(2, Phase::DayVote, 3, Verb::Vote, none);
  } else if (chain == "check: werewolf vote: werewolf check: pass vote: pass") {
    add(1, Phase::NightSeerCheck, 3, Verb::Check, P(0));
    add(1, Phase::DayVote, 3, Verb::Vote, P(1));
    add(2, Phase::NightSeerCheck, 3, Verb::Check, none);
    add(2, Phase::DayVote, 3, Verb::Vote, none);
  } else if (chain == "antidote: villager vote: werewolf poison: werewolf vote: werewolf") {
    add(1, Phase::NightWitch, 4, Verb::Save, P(6));
    add(1, Phase::DayVote, 4, Verb::Vote, P(0));
    add(2, Phase::NightWitch, 4, Verb::Poison, P(1));
    add(2, Phase::DayAnnounce, kSystem, Verb::Die, P(1));
    add(2, Phase::DayVote, 4, Verb::Vote, P(2));
  } else if (chain ==
             "antidote: villager vote: werewolf poison: villager vote: pass vote: pass") {
    add(1, Phase::NightWitch, 4, Verb::Save, P(6));
    add(1, Phase::DayVote, 4, Verb::Vote, P(0));
    add(2, Phase::NightWitch, 4, Verb::Poison, P(7));
    add(2, Phase::DayAnnounce, kSystem, Verb::Die, P(7));
    add(2, Phase::DayVote, 4, Verb::Vote, none);
    add(3, Phase::DayVote, 4, Verb::Vote, none);
  } else if (chain == "antidote: villager vote: seer poison: villager vote: pass") {
    add(1, Phase::NightWitch, 4, Verb::Save, P(6));
    add(1, Phase::DayVote, 4, Verb::Vote, P(3));
    add(2, Phase::NightWitch, 4, Verb::Poison, P(7));
    add(2, Phase::DayAnnounce, kSystem, Verb::Die, P(7));
    add(2, Phase::DayVote, 4, Verb::Vote, none);
  } else if (chain == "vote: werewolf vote: none shot: werewolf") {
    add(1, Phase::DayVote, 5, Verb::Vote, P(0));
    add(2, Phase::DayVote, kSystem, Verb::Pass, none);  // vote the hunter sat out
    add(2, Phase::HunterShot, 5, Verb::Shoot, P(1));
    add(2, Phase::HunterShot, kSystem, Verb::Die, P(5));
    add(2, Phase::HunterShot, kSystem, Verb::Die, P(1));
  } else if (chain == "vote: werewolf vote: none shot: werewolf vote: none") {
    add(1, Phase::DayVote, 5, Verb::Vote, P(0));
    add(2, Phase::DayVote, kSystem, Verb::Pass, none);
    add(3, Phase::HunterShot, 5, Verb::Shoot, P(1));
    add(3, Phase::HunterShot, kSystem, Verb::Die, P(5));
    add(3, Phase::HunterShot, kSystem, Verb::Die, P(1));
    add(3, Phase::DayVote, kSystem, Verb::Pass, none);  // dead for the day-3 vote
  } else if (chain == "vote: none vote: werewolf shot: witch") {
    add(1, Phase::DayVote, kSystem, Verb::Pass, none);
    add(2, Phase::DayVote, 5, Verb::Vote, P(0));
    add(3, Phase::HunterShot, 5, Verb::Shoot, P(4));
    add(3, Phase::HunterShot, kSystem, Verb::Die, P(5));
    add(3, Phase::HunterShot, kSystem, Verb::Die, P(4));
  } else {
    throw EngineError("unknown fixture chain: " + chain);
  }
  return ev;
}

}  // namespace detail

inline GameLog fixture_log(const FixtureEntry& entry, bool focal_wins,
                           std::uint64_t seed) {
  GameLog log;
  log.seed = seed;
  log.roles = kFixtureRoles;
  log.events = detail::fixture_script(entry.chain);
  Camp focal_camp = camp_of(entry.role);
  log.winner = focal_wins ? focal_camp
                          : (focal_camp == Camp::WolfSide ? Camp::VillageSide
                                                          : Camp::WolfSide);
  log.alive_at_end.fill(true);
  for (const Event& e : log.events) {
    if (e.subject == kSystem && e.verb == Verb::Die) {
      log.alive_at_end[e.object.player] = false;
    }
  }
  return log;
}

// The full corpus: each fixture chain appears exactly `count` times with
// round(win_rate * count) focal-camp wins.
inline std::vector<GameLog> fixture_corpus() {
  std::vector<GameLog> logs;
  std::uint64_t seed = 0;
  for (const FixtureEntry& entry : fixture_entries()) {
    long wins = std::lround(entry.win_rate * static_cast<double>(entry.count));
    for (long i = 0; i < entry.count; ++i) {
      logs.push_back(fixture_log(entry, i < wins, seed++));
    }
  }
  return logs;
}

}  // namespace werewolf::testing
