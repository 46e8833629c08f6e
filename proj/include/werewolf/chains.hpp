// Decision chains: extract per-role decision sequences from game logs,
// aggregate them into a win-rate database, and serve lookups.
//
// Token grammar is "verb: target-class", where the target class is the
// target's TRUE role ("kill: villager vote: seer"), so chains are built
// post-game from complete logs. Extraction rules:
//   - one token per recorded decision: kill / check / antidote / poison /
//     vote / shot, night verbs only from night phases, votes only from
//     day_vote, shots only from hunter_shot
//   - a decision with no target ("verb: pass") records an active abstention
//   - "vote: none" is a placeholder for a day_vote the player belonged to but
//     cast nothing in: dead that day, or simply absent from an imported
//     human-game record
//   - chains truncate at the round the player died in; players who never
//     made a decision have an empty chain and are skipped by the database
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "werewolf/engine.hpp"

namespace werewolf {

enum class TargetClass : std::uint8_t {
  Werewolf,
  Villager,
  Seer,
  Witch,
  Hunter,
  Pass,
  None,
};

const char* to_string(TargetClass t);
TargetClass target_class_of(Role role);

struct ChainToken {
  Verb verb = Verb::Vote;
  TargetClass target = TargetClass::None;
  bool operator==(const ChainToken&) const = default;
};

std::string to_string(const ChainToken& token);  // "kill: villager"

struct DecisionChain {
  Role role = Role::Villager;
  std::vector<ChainToken> tokens;

  std::string serialize() const;  // tokens joined by single spaces
  bool empty() const { return tokens.empty(); }
  bool operator==(const DecisionChain&) const = default;
};

DecisionChain extract_chain(const GameLog& log, int player);

struct ChainStats {
  double win_rate = 0.5;
  long count = 0;
  bool operator==(const ChainStats&) const = default;
};

class ChainDB {
 public:
  ChainDB(int min_count, double default_wr)
      : min_count_(min_count), default_wr_(default_wr) {}

  static constexpr int kDefaultMinCount = 30;
  static constexpr double kDefaultWinRate = 0.5;

  void add_game(const GameLog& log);
  void add_entry(Role role, const std::string& chain, double win_rate, long count);

  // Exact match with count >= min_count, else the longest proper prefix
  // meeting min_count, else (default_wr, 0). Role tables never mix.
  ChainStats lookup(const DecisionChain& chain) const;
  std::optional<ChainStats> exact(Role role, const std::string& chain) const;

  std::size_t size() const;
  int min_count() const { return min_count_; }
  double default_win_rate() const { return default_wr_; }

  // One entry per line: role<TAB>chain<TAB>win_rate<TAB>count. The file holds
  // entries only; min_count and default_wr are runtime parameters.
  void save(const std::string& path) const;
  static ChainDB load(const std::string& path,  // throws EngineError with line number
                      int min_count = kDefaultMinCount,
                      double default_wr = kDefaultWinRate);

  // Entry equality: same chains with bit-exact win rates and counts.
  bool operator==(const ChainDB& other) const;

 private:
  struct Accum {
    long wins = 0;
    long count = 0;
    // Set for entries loaded from a file, where only the rate survives.
    std::optional<double> fixed_rate;
    double rate() const {
      return fixed_rate ? *fixed_rate : static_cast<double>(wins) / static_cast<double>(count);
    }
    bool operator==(const Accum&) const = default;
  };

  int min_count_;
  double default_wr_;
  std::array<std::map<std::string, Accum>, kNumRoles> tables_{};
};

// Builds a database from logs; unreadable entries in streamed corpora are
// counted by the reader, not here.
ChainDB build_db(const std::vector<GameLog>& logs,
                 int min_count = ChainDB::kDefaultMinCount,
                 double default_wr = ChainDB::kDefaultWinRate);

}  // namespace werewolf
