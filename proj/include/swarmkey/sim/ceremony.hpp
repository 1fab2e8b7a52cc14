#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swarmkey/sim/config.hpp"
#include "swarmkey/sim/ledger.hpp"
#include "swarmkey/sim/transcript.hpp"

namespace swarmkey::sim {

enum class CeremonyStatus { kSuccess, kAborted, kFailed, kDisagreement, kLedgerRejected };
std::string_view to_string(CeremonyStatus s);

struct HeldShare {
  PartyId actor = kNobody;
  Share share;
};

// Public key plus the shares as held by their actors. Signing and exchange
// sessions start from this.
struct KeyMaterial {
  std::string backend = "toy";
  uint64_t toy_q = kDefaultToyQ;
  std::size_t n = 0;
  std::size_t t = 0;
  GroupElement public_key;
  std::vector<HeldShare> shares;

  const HeldShare& of(PartyId actor) const;
};

struct CeremonyResult {
  CeremonyStatus status = CeremonyStatus::kFailed;
  std::string cause;
  std::optional<PartyId> offender;  // sender named by the first abort
  std::optional<GroupElement> public_key;
  std::size_t attempts = 0;
  std::vector<PartyId> swarm;  // actors of the final round
  std::vector<Scalar> xs;
  uint32_t final_round = 0;
  std::vector<PartyId> excluded;
  std::map<PartyId, GroupElement> reported_keys;
  std::map<PartyId, std::string> abort_reports;  // reporter -> "offender verdict"
  KeyMaterial keys;
  std::vector<LedgerPost> ledger_posts;  // final round
  std::optional<LedgerCheck> ledger_check;
  Transcript transcript;

  // Collected from the simulated parties after the run for oracle checks; no
  // party ever holds these together.
  std::map<PartyId, Scalar> shared_constants;  // each actor's P_i(0), final round
  std::map<PartyId, Uint> secret_scalars;      // each actor's unreduced a_i, final round
  std::map<PartyId, std::vector<Bytes>> party_state;  // everything each party held
  std::optional<GroupElement> forced_key;      // what a rogue actor aimed for
};

CeremonyResult run_ceremony(const SwarmConfig& config, const Behaviors& behaviors = {});

// Payload bytes of every envelope the dealer sent or received.
std::vector<Bytes> dealer_observed(const Transcript& t);
// Envelopes delivered to `party` in `round`, in delivery order.
std::vector<const Record*> delivered_to(const Transcript& t, PartyId party, uint32_t round);
bool contains_bytes(ByteView haystack, ByteView needle);

// Order-two element used by low-order forgeries.
GroupElement order_two_point(const Group& group);

}  // namespace swarmkey::sim
