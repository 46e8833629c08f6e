#include "werewolf/chains.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace werewolf {

namespace {

bool is_night(Phase phase) {
  return phase == Phase::NightWolfKill || phase == Phase::NightSeerCheck ||
         phase == Phase::NightWitch;
}

// Decision events are the ones a chain token is minted from; claims and
// day-phase "check" assertions are not decisions.
bool is_decision(const Event& e) {
  switch (e.verb) {
    case Verb::Kill:
    case Verb::Check:
    case Verb::Save:
    case Verb::Poison:
      return is_night(e.phase);
    case Verb::Vote:
      return e.phase == Phase::DayVote;
    case Verb::Shoot:
      return e.phase == Phase::HunterShot;
    default:
      return false;
  }
}

}  // namespace

const char* to_string(TargetClass t) {
  switch (t) {
    case TargetClass::Werewolf: return "werewolf";
    case TargetClass::Villager: return "villager";
    case TargetClass::Seer: return "seer";
    case TargetClass::Witch: return "witch";
    case TargetClass::Hunter: return "hunter";
    case TargetClass::Pass: return "pass";
    case TargetClass::None: return "none";
  }
  return "?";
}

TargetClass target_class_of(Role role) {
  return static_cast<TargetClass>(static_cast<int>(role));
}

std::string to_string(const ChainToken& token) {
  return std::string(to_string(token.verb)) + ": " + to_string(token.target);
}

std::string DecisionChain::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += to_string(tokens[i]);
  }
  return out;
}

DecisionChain extract_chain(const GameLog& log, int player) {
  DecisionChain chain;
  chain.role = log.roles[player];

  int death_round = std::numeric_limits<int>::max();
  for (const Event& e : log.events) {
    if (e.subject == kSystem && e.verb == Verb::Die && e.object.is_player() &&
        e.object.player == player) {
      death_round = e.round;
      break;
    }
  }

  struct Item {
    std::size_t index;
    ChainToken token;
  };
  std::vector<Item> items;
  std::map<int, std::size_t> vote_phase_at;  // round -> first day_vote event index
  std::map<int, bool> own_vote_in;           // round -> player voted or passed

  bool any_decision = false;
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    const Event& e = log.events[i];
    if (e.phase == Phase::DayVote && !vote_phase_at.count(e.round)) {
      vote_phase_at[e.round] = i;
    }
    if (e.subject != player || !is_decision(e)) continue;
    any_decision = true;
    if (e.round > death_round) continue;
    ChainToken token;
    token.verb = e.verb;
    token.target = e.object.is_player() ? target_class_of(log.roles[e.object.player])
                                        : TargetClass::Pass;
    items.push_back({i, token});
    if (e.verb == Verb::Vote) own_vote_in[e.round] = true;
  }
  if (!any_decision) return chain;  // died (or idled) before deciding anything

  for (const auto& [round, index] : vote_phase_at) {
    if (round > death_round || own_vote_in.count(round)) continue;
    items.push_back({index, ChainToken{Verb::Vote, TargetClass::None}});
  }

  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.index < b.index; });
  for (const Item& item : items) chain.tokens.push_back(item.token);
  return chain;
}

void ChainDB::add_game(const GameLog& log) {
  for (int p = 0; p < kNumPlayers; ++p) {
    DecisionChain chain = extract_chain(log, p);
    if (chain.empty()) continue;
    Accum& a = tables_[static_cast<int>(chain.role)][chain.serialize()];
    a.count += 1;
    if (camp_of(chain.role) == log.winner) a.wins += 1;
  }
}

void ChainDB::add_entry(Role role, const std::string& chain, double win_rate, long count) {
  Accum a;
  a.count = count;
  a.fixed_rate = win_rate;
  tables_[static_cast<int>(role)][chain] = a;
}

std::optional<ChainStats> ChainDB::exact(Role role, const std::string& chain) const {
  const auto& table = tables_[static_cast<int>(role)];
  auto it = table.find(chain);
  if (it == table.end()) return std::nullopt;
  return ChainStats{it->second.rate(), it->second.count};
}

ChainStats ChainDB::lookup(const DecisionChain& chain) const {
  std::vector<ChainToken> tokens = chain.tokens;
  bool first = true;
  while (!tokens.empty()) {
    if (!first) tokens.pop_back();  // proper prefixes after the exact miss
    first = false;
    if (tokens.empty()) break;
    DecisionChain probe{chain.role, tokens};
    if (auto stats = exact(chain.role, probe.serialize());
        stats && stats->count >= min_count_) {
      return *stats;
    }
  }
  return ChainStats{default_wr_, 0};
}

std::size_t ChainDB::size() const {
  std::size_t n = 0;
  for (const auto& table : tables_) n += table.size();
  return n;
}

void ChainDB::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw EngineError("cannot open for writing: " + path);
  char buf[64];
  for (int r = 0; r < kNumRoles; ++r) {
    for (const auto& [chain, a] : tables_[r]) {
      std::snprintf(buf, sizeof buf, "%.17g", a.rate());
      out << to_string(static_cast<Role>(r)) << '\t' << chain << '\t' << buf << '\t'
          << a.count << '\n';
    }
  }
  if (!out) throw EngineError("write failed: " + path);
}

ChainDB ChainDB::load(const std::string& path, int min_count, double default_wr) {
  std::ifstream in(path);
  if (!in) throw EngineError("cannot open for reading: " + path);
  ChainDB db(min_count, default_wr);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    std::size_t t3 = t2 == std::string::npos ? t2 : line.find('\t', t2 + 1);
    auto fail = [&](const std::string& why) {
      throw EngineError("chain db " + path + ":" + std::to_string(lineno) + ": " + why);
    };
    if (t3 == std::string::npos) fail("expected 4 tab-separated fields");
    auto role = role_from_string(line.substr(0, t1));
    if (!role) fail("unknown role");
    std::string chain = line.substr(t1 + 1, t2 - t1 - 1);
    double wr = 0.0;
    long count = 0;
    try {
      wr = std::stod(line.substr(t2 + 1, t3 - t2 - 1));
      count = std::stol(line.substr(t3 + 1));
    } catch (const std::exception&) {
      fail("bad number");
    }
    if (wr < 0.0 || wr > 1.0) fail("win rate out of [0,1]");
    if (count < 1) fail("count must be >= 1");
    db.add_entry(*role, chain, wr, count);
  }
  return db;
}

bool ChainDB::operator==(const ChainDB& other) const {
  for (int r = 0; r < kNumRoles; ++r) {
    const auto& a = tables_[r];
    const auto& b = other.tables_[r];
    if (a.size() != b.size()) return false;
    for (const auto& [chain, acc] : a) {
      auto it = b.find(chain);
      if (it == b.end()) return false;
      if (acc.count != it->second.count || acc.rate() != it->second.rate()) return false;
    }
  }
  return true;
}

ChainDB build_db(const std::vector<GameLog>& logs, int min_count, double default_wr) {
  ChainDB db(min_count, default_wr);
  for (const GameLog& log : logs) db.add_game(log);
  return db;
}

}  // namespace werewolf
