#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "swarmkey/random.hpp"
#include "swarmkey/sim/transcript.hpp"

namespace swarmkey::sim {

// Message kinds carried by the simulated transport.
namespace kind {
inline constexpr std::string_view kXBroadcast = "x-broadcast";
inline constexpr std::string_view kEncKey = "enc-key";
inline constexpr std::string_view kEncryptedBundle = "encrypted-bundle";
inline constexpr std::string_view kCollusionLeak = "collusion-leak";
inline constexpr std::string_view kAggregateReport = "aggregate-report";
inline constexpr std::string_view kLedgerPost = "ledger-post";
inline constexpr std::string_view kRound1 = "round1";
inline constexpr std::string_view kRound2 = "round2";
inline constexpr std::string_view kDhRequest = "dh-request";
inline constexpr std::string_view kDhResponse = "dh-response";
inline constexpr std::string_view kTimer = "timer";
}  // namespace kind

struct Envelope {
  uint64_t tick = 0;  // delivery tick
  uint32_t round = 0;
  PartyId from = kNobody;
  PartyId to = kNobody;
  std::string kind;
  Bytes payload;
};

// Everything a party produces while handling the deliveries of one tick.
class Outbox {
 public:
  Outbox(PartyId self, uint64_t now) : self_(self), now_(now) {}

  PartyId self() const { return self_; }
  uint64_t now() const { return now_; }

  void send(PartyId to, std::string_view kind, Bytes payload, uint32_t round);
  // Wakes this party `delay` ticks from now with a timer envelope whose
  // payload is `tag`.
  void timer(uint64_t delay, std::string_view tag, uint32_t round);
  void event(std::string_view kind, std::string verdict, std::string detail = {}, Bytes payload = {},
             PartyId to = kNobody, uint32_t round = 0);

 private:
  friend class Network;
  PartyId self_;
  uint64_t now_;
  std::vector<Envelope> sends_;
  std::vector<Envelope> timers_;
  std::vector<Record> events_;
};

class Party {
 public:
  virtual ~Party() = default;
  virtual void handle(const Envelope& e, Outbox& out) = 0;
};

// Deterministic discrete-event transport. Each message takes 1 to 3 ticks and
// is lost with probability drop_prob; both draws come from a seeded stream, so
// a run is a pure function of its seed. Parties that receive messages in the
// same tick may be run on separate threads; their outputs are merged in party
// order, so threading does not change the result.
class Network {
 public:
  Network(SeededRandom rng, double drop_prob, Transcript& transcript, bool parallel);

  void attach(PartyId id, Party* party);
  uint64_t now() const { return now_; }

  // Runs `fn` as party `id` at the current tick.
  void kick(PartyId id, const std::function<void(Outbox&)>& fn);
  // Delivers until no events remain or the tick limit passes.
  void run(uint64_t tick_limit = 1'000'000);

 private:
  void merge(Outbox& out);

  SeededRandom rng_;
  double drop_prob_;
  Transcript& transcript_;
  bool parallel_;
  uint64_t now_ = 0;
  std::map<PartyId, Party*> parties_;
  std::map<uint64_t, std::vector<Envelope>> queue_;
};

}  // namespace swarmkey::sim
