#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmkey/group.hpp"
#include "swarmkey/keygen.hpp"

namespace swarmkey::sim {

enum class XMode { kSequential, kDealerRandom, kIdentityDerived };
enum class KeyPolicy { kPreprovisioned, kEphemeral, kDealerDistributed };
// Who multiplies a Diffie-Hellman contribution by its Lagrange coefficient.
enum class DhMode { kDealer, kSigner };
enum class RogueVariant { kProof, kLowOrder };

enum class ActorBehavior {
  kHonest,
  kWithhold,
  kRogueKey,
  kEquivocateA,
  kGarbageShare,
  kDeterministicNonce,
};

std::string_view to_string(XMode m);
std::string_view to_string(KeyPolicy p);
std::string_view to_string(DhMode m);
std::string_view to_string(RogueVariant v);
std::string_view to_string(ActorBehavior b);
// Parsers throw ParameterError on unknown names.
XMode parse_x_mode(std::string_view s);
KeyPolicy parse_key_policy(std::string_view s);
DhMode parse_dh_mode(std::string_view s);
RogueVariant parse_rogue_variant(std::string_view s);
ActorBehavior parse_behavior(std::string_view s);

struct SwarmConfig {
  std::size_t n = 5;
  std::size_t t = 3;
  uint64_t tau = 10;  // dealer wait budget in ticks
  std::string backend = "toy";
  uint64_t toy_q = kDefaultToyQ;
  XMode x_mode = XMode::kSequential;
  double drop_prob = 0.0;
  uint64_t seed = 0;
  // Actors available for reselection; 0 means 2n.
  std::size_t population = 0;
  std::size_t max_attempts = 8;
  KeyPolicy key_policy = KeyPolicy::kPreprovisioned;
  DhMode dh_mode = DhMode::kDealer;
  bool ledger = false;
  RogueVariant rogue_variant = RogueVariant::kProof;
  // Simulation switches for control runs; real deployments keep all three.
  BundleChecks checks;
  // Run the actors handling one tick on separate threads.
  bool parallel = false;

  std::size_t effective_population() const { return population == 0 ? 2 * n : population; }
};

// Throws ParameterError if the configuration is unusable.
void validate(const SwarmConfig& config);

// Per-actor behaviors indexed by actor id (1-based); missing entries are honest.
class Behaviors {
 public:
  Behaviors() = default;
  explicit Behaviors(std::vector<std::pair<std::size_t, ActorBehavior>> assignments);

  ActorBehavior of(std::size_t actor) const;
  void set(std::size_t actor, ActorBehavior b);
  const std::vector<std::pair<std::size_t, ActorBehavior>>& assignments() const { return assignments_; }

 private:
  std::vector<std::pair<std::size_t, ActorBehavior>> assignments_;
};

// Party identifiers. Actors are numbered from 1.
using PartyId = int;
inline constexpr PartyId kDealer = 0;
inline constexpr PartyId kLedgerParty = -1;
inline constexpr PartyId kNobody = -2;

std::string party_name(PartyId id);
PartyId parse_party(std::string_view name);

}  // namespace swarmkey::sim
