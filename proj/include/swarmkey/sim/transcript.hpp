#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "swarmkey/sim/config.hpp"

namespace swarmkey::sim {

using Json = nlohmann::ordered_json;

// One line of a transcript: a delivered or dropped envelope, or a party event
// (kind prefixed with "event:").
struct Record {
  uint64_t tick = 0;
  uint32_t round = 0;
  PartyId from = kNobody;
  PartyId to = kNobody;
  std::string kind;
  Bytes payload;
  std::string verdict;
  std::string detail;

  friend bool operator==(const Record&, const Record&) = default;
};

// Ordered, replayable record of a simulation run. The header carries the
// command and configuration needed to replay it.
struct Transcript {
  Json header = Json::object();
  std::vector<Record> records;

  void add(Record r) { records.push_back(std::move(r)); }
  std::vector<const Record*> of_kind(std::string_view kind) const;

  // Line-delimited JSON: the header first, then one record per line.
  std::string to_jsonl() const;
  static Transcript from_jsonl(std::string_view text);
};

Json record_to_json(const Record& r);
Record record_from_json(const Json& j);

Json config_to_json(const SwarmConfig& c);
// Missing keys keep their defaults.
SwarmConfig config_from_json(const Json& j);
Json behaviors_to_json(const Behaviors& b);
Behaviors behaviors_from_json(const Json& j);

}  // namespace swarmkey::sim
