#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "swarmkey/sim/ceremony.hpp"

namespace swarmkey::cli {

// Bad invocation or missing inputs; exits with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

sim::Transcript read_transcript(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

// Per-actor share file written next to an ed25519 keygen transcript.
std::filesystem::path share_file(const std::filesystem::path& transcript, sim::PartyId actor);
void write_share_files(const std::filesystem::path& transcript, const sim::KeyMaterial& keys);

// Key material from a successful keygen transcript: shares come from the
// transcript itself on the toy backend and from the share files otherwise.
sim::KeyMaterial load_key_material(const std::filesystem::path& transcript);

// Short tag identifying a share without revealing it.
std::string share_fingerprint(const Group& group, const Share& share);

}  // namespace swarmkey::cli
