#include "swarmkey/sim/network.hpp"

#include <future>

namespace swarmkey::sim {

void Outbox::send(PartyId to, std::string_view kind, Bytes payload, uint32_t round) {
  sends_.push_back(Envelope{0, round, self_, to, std::string(kind), std::move(payload)});
}

void Outbox::timer(uint64_t delay, std::string_view tag, uint32_t round) {
  timers_.push_back(Envelope{now_ + delay, round, self_, self_, std::string(kind::kTimer), Bytes(tag.begin(), tag.end())});
}

void Outbox::event(std::string_view kind, std::string verdict, std::string detail, Bytes payload, PartyId to,
                   uint32_t round) {
  events_.push_back(Record{now_, round, self_, to, "event:" + std::string(kind), std::move(payload), std::move(verdict),
                           std::move(detail)});
}

Network::Network(SeededRandom rng, double drop_prob, Transcript& transcript, bool parallel)
    : rng_(std::move(rng)), drop_prob_(drop_prob), transcript_(transcript), parallel_(parallel) {}

void Network::attach(PartyId id, Party* party) { parties_[id] = party; }

void Network::kick(PartyId id, const std::function<void(Outbox&)>& fn) {
  Outbox out(id, now_);
  fn(out);
  merge(out);
}

void Network::merge(Outbox& out) {
  for (Record& r : out.events_) transcript_.add(std::move(r));
  for (Envelope& e : out.timers_) queue_[e.tick].push_back(std::move(e));
  for (Envelope& e : out.sends_) {
    const uint64_t latency = 1 + rng_.below(3);
    const bool dropped = rng_.uniform01() < drop_prob_;
    if (dropped) {
      transcript_.add(Record{now_, e.round, e.from, e.to, e.kind, e.payload, "dropped", {}});
      continue;
    }
    e.tick = now_ + latency;
    queue_[e.tick].push_back(std::move(e));
  }
}

void Network::run(uint64_t tick_limit) {
  while (!queue_.empty()) {
    auto node = queue_.extract(queue_.begin());
    now_ = node.key();
    if (now_ > tick_limit) throw ProtocolError("simulation exceeded its tick limit");
    std::map<PartyId, std::vector<Envelope>> by_party;
    for (Envelope& e : node.mapped()) {
      if (e.kind != kind::kTimer) transcript_.add(Record{now_, e.round, e.from, e.to, e.kind, e.payload, "delivered", {}});
      if (parties_.count(e.to)) by_party[e.to].push_back(std::move(e));
    }
    std::vector<Outbox> outs;
    outs.reserve(by_party.size());
    for (const auto& [id, inbox] : by_party) outs.emplace_back(id, now_);
    auto work = [&](std::size_t k, PartyId id, const std::vector<Envelope>& inbox) {
      for (const Envelope& e : inbox) parties_.at(id)->handle(e, outs[k]);
    };
    if (parallel_ && by_party.size() > 1) {
      std::vector<std::future<void>> jobs;
      std::size_t k = 0;
      for (const auto& [id, inbox] : by_party) {
        jobs.push_back(std::async(std::launch::async, work, k++, id, std::cref(inbox)));
      }
      for (auto& j : jobs) j.get();
    } else {
      std::size_t k = 0;
      for (const auto& [id, inbox] : by_party) work(k++, id, inbox);
    }
    for (Outbox& out : outs) merge(out);
  }
}

}  // namespace swarmkey::sim
