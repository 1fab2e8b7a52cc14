#include "swarmkey/sim/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace swarmkey::sim {
namespace {

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
E parse_with(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s, std::string_view what) {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  throw ParameterError("unknown " + std::string(what) + ": " + std::string(s));
}

constexpr std::array<std::pair<XMode, std::string_view>, 3> kXModes{{
    {XMode::kSequential, "sequential"},
    {XMode::kDealerRandom, "dealer-random"},
    {XMode::kIdentityDerived, "identity-derived"},
}};
constexpr std::array<std::pair<KeyPolicy, std::string_view>, 3> kKeyPolicies{{
    {KeyPolicy::kPreprovisioned, "preprovisioned"},
    {KeyPolicy::kEphemeral, "ephemeral"},
    {KeyPolicy::kDealerDistributed, "dealer-distributed"},
}};
constexpr std::array<std::pair<DhMode, std::string_view>, 2> kDhModes{{
    {DhMode::kDealer, "dealer"},
    {DhMode::kSigner, "signer"},
}};
constexpr std::array<std::pair<RogueVariant, std::string_view>, 2> kRogueVariants{{
    {RogueVariant::kProof, "proof"},
    {RogueVariant::kLowOrder, "low-order"},
}};
constexpr std::array<std::pair<ActorBehavior, std::string_view>, 6> kBehaviors{{
    {ActorBehavior::kHonest, "honest"},
    {ActorBehavior::kWithhold, "withhold"},
    {ActorBehavior::kRogueKey, "rogue_key"},
    {ActorBehavior::kEquivocateA, "equivocate_A"},
    {ActorBehavior::kGarbageShare, "garbage_share"},
    {ActorBehavior::kDeterministicNonce, "deterministic_nonce"},
}};

}  // namespace

std::string_view to_string(XMode m) { return name_of(kXModes, m); }
std::string_view to_string(KeyPolicy p) { return name_of(kKeyPolicies, p); }
std::string_view to_string(DhMode m) { return name_of(kDhModes, m); }
std::string_view to_string(RogueVariant v) { return name_of(kRogueVariants, v); }
std::string_view to_string(ActorBehavior b) { return name_of(kBehaviors, b); }
XMode parse_x_mode(std::string_view s) { return parse_with(kXModes, s, "x-mode"); }
KeyPolicy parse_key_policy(std::string_view s) { return parse_with(kKeyPolicies, s, "key policy"); }
DhMode parse_dh_mode(std::string_view s) { return parse_with(kDhModes, s, "dh mode"); }
RogueVariant parse_rogue_variant(std::string_view s) { return parse_with(kRogueVariants, s, "rogue variant"); }
ActorBehavior parse_behavior(std::string_view s) { return parse_with(kBehaviors, s, "behavior"); }

void validate(const SwarmConfig& c) {
  if (c.t < 1) throw ParameterError("t must be at least 1");
  if (c.t > c.n) throw ParameterError("t must not exceed n");
  if (!(c.drop_prob >= 0.0 && c.drop_prob <= 1.0)) throw ParameterError("drop probability must lie in [0, 1]");
  if (c.tau < 1) throw ParameterError("tau must be at least one tick");
  if (c.effective_population() < c.n) throw ParameterError("population smaller than the swarm");
  if (c.max_attempts < 1) throw ParameterError("at least one attempt is required");
  if (c.backend != "toy" && c.backend != "ed25519") throw ParameterError("unknown backend: " + c.backend);
}

Behaviors::Behaviors(std::vector<std::pair<std::size_t, ActorBehavior>> assignments) {
  for (const auto& [actor, b] : assignments) set(actor, b);
}

ActorBehavior Behaviors::of(std::size_t actor) const {
  for (const auto& [a, b] : assignments_) {
    if (a == actor) return b;
  }
  return ActorBehavior::kHonest;
}

void Behaviors::set(std::size_t actor, ActorBehavior b) {
  if (actor == 0) throw ParameterError("actors are numbered from 1");
  for (auto& entry : assignments_) {
    if (entry.first == actor) {
      entry.second = b;
      return;
    }
  }
  assignments_.emplace_back(actor, b);
  std::sort(assignments_.begin(), assignments_.end());
}

std::string party_name(PartyId id) {
  if (id == kDealer) return "dealer";
  if (id == kLedgerParty) return "ledger";
  if (id == kNobody) return "-";
  return "actor-" + std::to_string(id);
}

PartyId parse_party(std::string_view name) {
  if (name == "dealer") return kDealer;
  if (name == "ledger") return kLedgerParty;
  if (name == "-") return kNobody;
  constexpr std::string_view kPrefix = "actor-";
  if (name.starts_with(kPrefix)) {
    int id = 0;
    const auto digits = name.substr(kPrefix.size());
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (res.ec == std::errc() && res.ptr == digits.data() + digits.size() && id > 0) return id;
  }
  throw ParameterError("unknown party: " + std::string(name));
}

}  // namespace swarmkey::sim
