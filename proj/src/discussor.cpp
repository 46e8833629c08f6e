#include "werewolf/discussor.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>

#include "json.hpp"

namespace werewolf {

namespace {

using nlohmann::json;

bool is_night(Phase phase) {
  return phase == Phase::NightWolfKill || phase == Phase::NightSeerCheck ||
         phase == Phase::NightWitch;
}

HonestyTag judge_role_claim(int self, Role claimed,
                            const std::array<Role, kNumPlayers>& truth) {
  return truth[self] == claimed ? HonestyTag::Truthful : HonestyTag::Deceptive;
}

HonestyTag judge_assertion(bool asserted_wolf, int target,
                           const std::array<Role, kNumPlayers>& truth) {
  bool actual = truth[target] == Role::Werewolf;
  return asserted_wolf == actual ? HonestyTag::Truthful : HonestyTag::Deceptive;
}

}  // namespace

ClaimSet make_claims(const StateView& view, const Belief& belief, int decision_action,
                     const ClaimPolicy& policy,
                     const std::array<Role, kNumPlayers>& truth) {
  ClaimSet cs;
  const int self = view.observer;
  const Role role = view.self_role;

  if (decision_action == kPassAction) {
    cs.declared_vote = kDeclaredPass;
  } else if (action_verb(decision_action) == Verb::Accuse) {
    int target = action_target(decision_action);
    cs.declared_vote = target;
    cs.accusations.push_back(
        {target, Role::Werewolf, judge_assertion(true, target, truth)});
  }

  if (role == Role::Seer && policy.seer_reveals) {
    cs.role_claim = Role::Seer;
    cs.role_claim_honesty = HonestyTag::Truthful;
    // Latest own night check, plus standing accusations for every wolf
    // already confirmed by an earlier check.
    bool latest_found = false;
    for (auto it = view.events.rbegin(); it != view.events.rend(); ++it) {
      if (it->subject != self || it->verb != Verb::Check || !is_night(it->phase) ||
          !it->object.is_player()) {
        continue;
      }
      int target = it->object.player;
      bool is_wolf = truth[target] == Role::Werewolf;
      if (!latest_found) {
        cs.revealed_check = RevealedCheck{target, is_wolf, HonestyTag::Truthful};
        latest_found = true;
      } else if (is_wolf) {
        bool already = false;
        for (const Accusation& a : cs.accusations) already = already || a.target == target;
        if (!already && cs.revealed_check->target != target) {
          cs.accusations.push_back({target, Role::Werewolf, HonestyTag::Truthful});
        }
      }
    }
  } else if (role == Role::Werewolf) {
    // Counter-claim only once the true seer has publicly fingered a
    // teammate, and only from one mouth: the accused wolf, or the lowest
    // living wolf when the accused cannot speak.
    int accuser = -1;
    int accused = -1;
    if (policy.wolf_counter_claims) {
      std::array<bool, kNumPlayers> claimed_seer{};
      for (const Event& e : view.events) {
        if (e.subject == kSystem) continue;
        int s = e.subject;
        if (e.verb == Verb::Claim && e.object.kind == EventObject::Kind::RoleName &&
            e.object.role == Role::Seer) {
          claimed_seer[s] = true;
        }
        int fingered = -1;
        if (e.verb == Verb::Check && !is_night(e.phase) && e.object.is_player()) {
          claimed_seer[s] = true;
          if (truth[e.object.player] == Role::Werewolf) fingered = e.object.player;
        }
        if (e.verb == Verb::Accuse && claimed_seer[s] && e.object.is_player() &&
            truth[e.object.player] == Role::Werewolf) {
          fingered = e.object.player;
        }
        if (fingered >= 0 && truth[s] == Role::Seer) {
          accuser = s;
          accused = fingered;
        }
      }
    }
    bool my_turn_to_counter = false;
    if (accuser >= 0) {
      if (accused == self) {
        my_turn_to_counter = true;
      } else if (!view.alive[accused]) {
        int lowest_living_wolf = -1;
        for (int p = 0; p < kNumPlayers; ++p) {
          if (truth[p] == Role::Werewolf && view.alive[p]) {
            lowest_living_wolf = p;
            break;
          }
        }
        my_turn_to_counter = self == lowest_living_wolf;
      }
    }
    if (my_turn_to_counter) {
      cs.role_claim = Role::Seer;
      cs.role_claim_honesty = HonestyTag::Deceptive;
      cs.revealed_check =
          RevealedCheck{accuser, true, judge_assertion(true, accuser, truth)};
    } else {
      cs.role_claim = policy.wolf_fake_role;
      cs.role_claim_honesty = judge_role_claim(self, policy.wolf_fake_role, truth);
    }
  }
  return cs;
}

std::vector<ClaimEvent> claims_to_events(const ClaimSet& claims) {
  std::vector<ClaimEvent> out;
  if (claims.role_claim) {
    out.push_back({Verb::Claim, EventObject::of_role(*claims.role_claim)});
  }
  if (claims.revealed_check) {
    if (claims.revealed_check->is_werewolf) {
      out.push_back({Verb::Check, EventObject::of_player(claims.revealed_check->target)});
    } else {
      out.push_back({Verb::Claim, EventObject::of_player(claims.revealed_check->target)});
    }
  }
  // A seer-claimant's accusations are check assertions in their own right;
  // everyone else's accusations ride on the accuse action.
  if (claims.role_claim == Role::Seer) {
    for (const Accusation& a : claims.accusations) {
      if (a.asserted != Role::Werewolf) continue;
      if (claims.revealed_check && claims.revealed_check->target == a.target) continue;
      out.push_back({Verb::Check, EventObject::of_player(a.target)});
    }
  }
  return out;
}

ClaimSet claims_from_events(int player, const std::vector<Event>& events,
                            const std::array<Role, kNumPlayers>& truth) {
  ClaimSet cs;
  for (const Event& e : events) {
    if (e.subject != player || e.phase != Phase::DayDiscuss) continue;
    switch (e.verb) {
      case Verb::Accuse: {
        int target = e.object.player;
        cs.declared_vote = target;
        cs.accusations.push_back(
            {target, Role::Werewolf, judge_assertion(true, target, truth)});
        break;
      }
      case Verb::Pass:
        cs.declared_vote = kDeclaredPass;
        break;
      case Verb::Claim:
        if (e.object.kind == EventObject::Kind::RoleName) {
          cs.role_claim = e.object.role;
          cs.role_claim_honesty = judge_role_claim(player, e.object.role, truth);
        } else if (e.object.is_player()) {
          cs.revealed_check = RevealedCheck{e.object.player, false,
                                            judge_assertion(false, e.object.player, truth)};
        }
        break;
      case Verb::Check:
        if (e.object.is_player()) {
          cs.revealed_check = RevealedCheck{e.object.player, true,
                                            judge_assertion(true, e.object.player, truth)};
        }
        break;
      default:
        break;
    }
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Templates.

Templates default_templates() {
  return {
      {"role_claim", "I am the {role}."},
      {"check_wolf", "I checked player {player}: werewolf."},
      {"check_clear", "I checked player {player}: not a werewolf."},
      {"accuse", "I accuse player {player} of being a werewolf."},
      {"vote", "I will vote for player {player}."},
      {"vote_pass", "I will not vote today."},
  };
}

namespace {

const std::string& template_for(const Templates& templates, const std::string& key) {
  auto it = templates.find(key);
  if (it == templates.end()) throw DiscussorError("missing template key: " + key);
  return it->second;
}

std::string fill(const std::string& tpl, const std::string& placeholder,
                 const std::string& value) {
  std::string out = tpl;
  std::size_t at = out.find(placeholder);
  if (at == std::string::npos) {
    throw DiscussorError("template lacks placeholder " + placeholder + ": " + tpl);
  }
  out.replace(at, placeholder.size(), value);
  return out;
}

// Matches text at `pos` against a one-placeholder template; on success
// returns the captured value and advances pos past the match and one
// following space, if any.
std::optional<std::string> match_template(const std::string& text, std::size_t& pos,
                                          const std::string& tpl,
                                          const std::string& placeholder) {
  std::size_t ph = tpl.find(placeholder);
  std::string prefix = ph == std::string::npos ? tpl : tpl.substr(0, ph);
  std::string suffix = ph == std::string::npos ? "" : tpl.substr(ph + placeholder.size());
  if (text.compare(pos, prefix.size(), prefix) != 0) return std::nullopt;
  std::size_t value_at = pos + prefix.size();
  std::string value;
  if (ph != std::string::npos) {
    std::size_t end = suffix.empty() ? text.size() : text.find(suffix, value_at);
    if (end == std::string::npos) return std::nullopt;
    value = text.substr(value_at, end - value_at);
    if (value.empty() || value.find(' ') != std::string::npos) return std::nullopt;
    pos = end + suffix.size();
  } else {
    pos = value_at;
  }
  if (pos < text.size() && text[pos] == ' ') ++pos;
  return value;
}

}  // namespace

std::string render_text(const ClaimSet& claims, const Templates& templates) {
  std::vector<std::string> parts;
  if (claims.role_claim) {
    parts.push_back(
        fill(template_for(templates, "role_claim"), "{role}", to_string(*claims.role_claim)));
  }
  if (claims.revealed_check) {
    const char* key = claims.revealed_check->is_werewolf ? "check_wolf" : "check_clear";
    parts.push_back(fill(template_for(templates, key), "{player}",
                         std::to_string(claims.revealed_check->target)));
  }
  for (const Accusation& a : claims.accusations) {
    parts.push_back(
        fill(template_for(templates, "accuse"), "{player}", std::to_string(a.target)));
  }
  if (claims.declared_vote) {
    if (*claims.declared_vote == kDeclaredPass) {
      parts.push_back(template_for(templates, "vote_pass"));
    } else {
      parts.push_back(fill(template_for(templates, "vote"), "{player}",
                           std::to_string(*claims.declared_vote)));
    }
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ' ';
    out += parts[i];
  }
  return out;
}

ClaimSet parse_claims(const std::string& text, const Templates& templates, int speaker,
                      const std::array<Role, kNumPlayers>& truth) {
  ClaimSet cs;
  std::size_t pos = 0;
  auto parse_player = [](const std::string& s) -> int {
    int p = std::stoi(s);
    if (p < 0 || p >= kNumPlayers) throw DiscussorError("player id out of range: " + s);
    return p;
  };
  while (pos < text.size()) {
    std::size_t before = pos;
    if (auto v = match_template(text, pos, template_for(templates, "role_claim"), "{role}")) {
      auto role = role_from_string(*v);
      if (!role) throw DiscussorError("unknown role in claim text: " + *v);
      cs.role_claim = role;
      cs.role_claim_honesty = judge_role_claim(speaker, *role, truth);
      continue;
    }
    if (auto v = match_template(text, pos, template_for(templates, "check_wolf"), "{player}")) {
      int target = parse_player(*v);
      cs.revealed_check = RevealedCheck{target, true, judge_assertion(true, target, truth)};
      continue;
    }
    if (auto v =
            match_template(text, pos, template_for(templates, "check_clear"), "{player}")) {
      int target = parse_player(*v);
      cs.revealed_check =
          RevealedCheck{target, false, judge_assertion(false, target, truth)};
      continue;
    }
    if (auto v = match_template(text, pos, template_for(templates, "accuse"), "{player}")) {
      int target = parse_player(*v);
      cs.accusations.push_back(
          {target, Role::Werewolf, judge_assertion(true, target, truth)});
      continue;
    }
    if (auto v = match_template(text, pos, template_for(templates, "vote"), "{player}")) {
      cs.declared_vote = parse_player(*v);
      continue;
    }
    if (match_template(text, pos, template_for(templates, "vote_pass"), "{}")) {
      cs.declared_vote = kDeclaredPass;
      continue;
    }
    if (pos == before) throw DiscussorError("unparseable claim text at offset " +
                                            std::to_string(pos) + ": " + text);
  }
  return cs;
}

// ---------------------------------------------------------------------------
// External adapter.

namespace {

json claims_to_wire(const ClaimSet& claims) {
  json j;
  if (claims.role_claim) j["role_claim"] = to_string(*claims.role_claim);
  else j["role_claim"] = nullptr;
  json acc = json::array();
  for (const Accusation& a : claims.accusations) {
    acc.push_back({{"target", a.target}, {"role", to_string(a.asserted)}});
  }
  j["accusations"] = acc;
  if (claims.revealed_check) {
    j["revealed_check"] = {{"target", claims.revealed_check->target},
                           {"werewolf", claims.revealed_check->is_werewolf}};
  } else {
    j["revealed_check"] = nullptr;
  }
  if (claims.declared_vote) {
    if (*claims.declared_vote == kDeclaredPass) j["declared_vote"] = "pass";
    else j["declared_vote"] = *claims.declared_vote;
  } else {
    j["declared_vote"] = nullptr;
  }
  return j;
}

struct Socket {
  int fd = -1;
  ~Socket() {
    if (fd >= 0) ::close(fd);
  }
};

bool wait_fd(int fd, short events, int timeout_ms) {
  pollfd p{fd, events, 0};
  return ::poll(&p, 1, timeout_ms) == 1 && (p.revents & events);
}

}  // namespace

std::optional<std::string> external_generate(const GenerationRequest& request,
                                             const ExternalEndpoint& endpoint) {
  if (!endpoint.enabled()) return std::nullopt;

  Socket sock;
  sock.fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (sock.fd < 0) return std::nullopt;
  ::fcntl(sock.fd, F_SETFL, O_NONBLOCK);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(endpoint.port));
  if (::inet_pton(AF_INET, endpoint.host.c_str(), &addr.sin_addr) != 1) {
    hostent* he = ::gethostbyname(endpoint.host.c_str());
    if (!he || he->h_addrtype != AF_INET) return std::nullopt;
    std::memcpy(&addr.sin_addr, he->h_addr, sizeof addr.sin_addr);
  }
  if (::connect(sock.fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    if (errno != EINPROGRESS) return std::nullopt;
    if (!wait_fd(sock.fd, POLLOUT, endpoint.timeout_ms)) return std::nullopt;
    int err = 0;
    socklen_t len = sizeof err;
    if (::getsockopt(sock.fd, SOL_SOCKET, SO_ERROR, &err, &len) != 0 || err != 0) {
      return std::nullopt;
    }
  }

  json j;
  j["context"] = request.context;
  j["claims"] = claims_to_wire(request.claims);
  j["role"] = to_string(request.role);
  std::string line = j.dump() + "\n";

  std::size_t sent = 0;
  while (sent < line.size()) {
    if (!wait_fd(sock.fd, POLLOUT, endpoint.timeout_ms)) return std::nullopt;
    ssize_t n = ::send(sock.fd, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (n <= 0) return std::nullopt;
    sent += static_cast<std::size_t>(n);
  }

  std::string response;
  char buf[512];
  while (response.find('\n') == std::string::npos) {
    if (response.size() > 1 << 20) return std::nullopt;
    if (!wait_fd(sock.fd, POLLIN, endpoint.timeout_ms)) return std::nullopt;
    ssize_t n = ::recv(sock.fd, buf, sizeof buf, 0);
    if (n <= 0) return std::nullopt;
    response.append(buf, static_cast<std::size_t>(n));
  }
  response.resize(response.find('\n'));

  try {
    json r = json::parse(response);
    if (!r.contains("text") || !r["text"].is_string()) return std::nullopt;
    return r["text"].get<std::string>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

std::string generate_speech(const GenerationRequest& request, const Templates& templates,
                            const ExternalEndpoint& endpoint, GenerationStats* stats) {
  if (endpoint.enabled()) {
    if (auto text = external_generate(request, endpoint)) {
      if (stats) ++stats->external_ok;
      return *text;
    }
    if (stats) ++stats->fallbacks;
  }
  return render_text(request.claims, templates);
}

}  // namespace werewolf
