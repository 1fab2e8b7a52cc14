#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swarmkey/sim/ceremony.hpp"
#include "swarmkey/sim/sessions.hpp"

namespace swarmkey::sim {

struct RogueKeyReport {
  RogueVariant variant = RogueVariant::kProof;
  PartyId rogue = kNobody;
  BundleVerdict expected = BundleVerdict::kProofMismatch;
  CeremonyResult attack;   // all checks on
  CeremonyResult control;  // same seed, checks off
  std::map<PartyId, std::string> honest_verdicts;  // verdict on the rogue's bundle
  bool detected_by_all_honest = false;
  bool key_published = false;
  std::optional<GroupElement> forced_key;
  bool control_key_forced = false;
  // Whether the control run's shares interpolate to a secret for its key.
  bool control_shares_match_key = false;
};

// The last swarm member (or `rogue`) colludes with the dealer, sees the honest
// contributions first and forces the aggregate key.
RogueKeyReport attack_rogue_key(const SwarmConfig& config, std::optional<PartyId> rogue = std::nullopt);

struct DetNonceProbe {
  std::vector<PartyId> cohort;
  Scalar mu;        // l_victim(C) * k
  Scalar response;  // victim's S
  bool signature_ok = false;
};

struct DetNonceReport {
  PartyId victim = kNobody;
  ActorBehavior victim_behavior = ActorBehavior::kDeterministicNonce;
  std::string status;  // "recovered" | "inconclusive" | "failed"
  std::vector<DetNonceProbe> probes;  // two solving probes and one replay probe
  std::optional<Scalar> recovered_share;
  std::optional<Scalar> recovered_nonce;
  Scalar actual_share;  // oracle value
  bool matches = false;
  std::optional<Scalar> predicted_replay;
  bool replay_matches = false;
};

// A malicious dealer probes one signer twice on the same message with
// different cohorts and solves S = r + mu s for the signer's share.
DetNonceReport attack_deterministic_nonce(const SwarmConfig& config, PartyId victim = 1,
                                          ActorBehavior victim_behavior = ActorBehavior::kDeterministicNonce,
                                          std::string_view message = "probe");

struct CollusionReport {
  std::size_t n = 0, t = 0, d = 0, extra = 0;
  bool ordered = true;
  std::string status;  // "unavailable" | "direct" | "searched" | "keygen-failed"
  uint64_t search_space = 0;
  uint64_t candidates_tried = 0;
  uint64_t hits = 0;
  std::optional<Scalar> recovered;
  Scalar oracle_secret;
  bool matches = false;
  std::vector<PartyId> early;  // corrupted at keygen: know every x and their own share
  std::vector<PartyId> late;   // corrupted later: know y but not their x
};

// `extra` defaults to t - d. With `ordered` the late actors' relative order is
// known, giving C(n-d, extra) candidates; otherwise all injections are tried.
CollusionReport attack_collusion_search(const SwarmConfig& config, std::size_t d,
                                        std::optional<std::size_t> extra = std::nullopt, bool ordered = true);

uint64_t binomial(uint64_t n, uint64_t k);
uint64_t falling_factorial(uint64_t n, uint64_t k);

Json to_json(const RogueKeyReport& r);
Json to_json(const DetNonceReport& r);
Json to_json(const CollusionReport& r);

}  // namespace swarmkey::sim
