#pragma once

#include <map>
#include <optional>
#include <vector>

#include "swarmkey/sim/ceremony.hpp"
#include "swarmkey/threshold.hpp"

namespace swarmkey::sim {

struct SessionOptions {
  // Actors the dealer contacts; all share holders when empty.
  std::vector<PartyId> request;
  // Separates repeated sessions under one seed.
  uint64_t session = 0;
};

struct SigningResult {
  bool ok = false;
  std::string cause;
  std::vector<PartyId> cohort;
  std::optional<Signature> signature;
  GroupElement R;
  Scalar challenge;
  std::map<PartyId, GroupElement> commitments;  // R_i
  std::map<PartyId, Scalar> coefficients;       // l_i(C)
  std::map<PartyId, Scalar> responses;          // S_i
  Transcript transcript;
};

// Two-round threshold signing. The dealer asks the requested actors for
// nonce commitments, takes the first t to answer as the cohort, collects
// responses and publishes only a verifying signature.
SigningResult run_signing(const SwarmConfig& config, const KeyMaterial& keys, const Behaviors& behaviors,
                          ByteView message, const SessionOptions& options = {});

struct ExchangeResult {
  bool ok = false;
  std::string cause;
  std::vector<PartyId> cohort;
  std::optional<GroupElement> shared;
  Transcript transcript;
};

// Threshold Diffie-Hellman against a peer public point. With DhMode::kDealer
// the actors return y_c P and the dealer weights them; with kSigner the cohort
// is fixed up front and each actor returns l_c(C) y_c P.
ExchangeResult run_exchange(const SwarmConfig& config, const KeyMaterial& keys, const Behaviors& behaviors,
                            const GroupElement& peer_public, const SessionOptions& options = {});

// Nonce used by a deterministic_nonce signer: H(tag || y || M) mod ell.
Scalar deterministic_nonce(const Group& group, const Share& share, ByteView message);

}  // namespace swarmkey::sim
