#include "swarmkey/sim/transcript.hpp"

#include <sstream>

namespace swarmkey::sim {

std::vector<const Record*> Transcript::of_kind(std::string_view kind) const {
  std::vector<const Record*> out;
  for (const Record& r : records) {
    if (r.kind == kind) out.push_back(&r);
  }
  return out;
}

Json record_to_json(const Record& r) {
  Json j;
  j["tick"] = r.tick;
  j["round"] = r.round;
  j["from"] = party_name(r.from);
  j["to"] = party_name(r.to);
  j["kind"] = r.kind;
  j["payload_hex"] = to_hex(r.payload);
  j["verdict"] = r.verdict;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

Record record_from_json(const Json& j) {
  Record r;
  r.tick = j.at("tick").get<uint64_t>();
  r.round = j.value("round", 0u);
  r.from = parse_party(j.at("from").get<std::string>());
  r.to = parse_party(j.at("to").get<std::string>());
  r.kind = j.at("kind").get<std::string>();
  r.payload = from_hex(j.at("payload_hex").get<std::string>());
  r.verdict = j.value("verdict", "");
  r.detail = j.value("detail", "");
  return r;
}

std::string Transcript::to_jsonl() const {
  std::string out = header.dump();
  out += '\n';
  for (const Record& r : records) {
    out += record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

Transcript Transcript::from_jsonl(std::string_view text) {
  Transcript t;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw EncodingError(std::string("bad transcript line: ") + e.what());
    }
    if (first) {
      if (!j.is_object() || j.value("type", "") != "header") throw EncodingError("transcript header missing");
      t.header = std::move(j);
      first = false;
      continue;
    }
    try {
      t.records.push_back(record_from_json(j));
    } catch (const Json::exception& e) {
      throw EncodingError(std::string("bad transcript record: ") + e.what());
    }
  }
  if (first) throw EncodingError("empty transcript");
  return t;
}

Json config_to_json(const SwarmConfig& c) {
  Json j;
  j["n"] = c.n;
  j["t"] = c.t;
  j["tau"] = c.tau;
  j["backend"] = c.backend;
  j["toy_q"] = c.toy_q;
  j["x_mode"] = to_string(c.x_mode);
  j["drop_prob"] = c.drop_prob;
  j["seed"] = c.seed;
  j["population"] = c.effective_population();
  j["max_attempts"] = c.max_attempts;
  j["key_policy"] = to_string(c.key_policy);
  j["dh_mode"] = to_string(c.dh_mode);
  j["ledger"] = c.ledger;
  j["rogue_variant"] = to_string(c.rogue_variant);
  j["check_low_order"] = c.checks.low_order;
  j["check_scalar_range"] = c.checks.scalar_range;
  j["check_proof"] = c.checks.proof;
  return j;
}

SwarmConfig config_from_json(const Json& j) {
  SwarmConfig c;
  c.n = j.value("n", c.n);
  c.t = j.value("t", c.t);
  c.tau = j.value("tau", c.tau);
  c.backend = j.value("backend", c.backend);
  c.toy_q = j.value("toy_q", c.toy_q);
  if (j.contains("x_mode")) c.x_mode = parse_x_mode(j["x_mode"].get<std::string>());
  c.drop_prob = j.value("drop_prob", c.drop_prob);
  c.seed = j.value("seed", c.seed);
  c.population = j.value("population", c.population);
  c.max_attempts = j.value("max_attempts", c.max_attempts);
  if (j.contains("key_policy")) c.key_policy = parse_key_policy(j["key_policy"].get<std::string>());
  if (j.contains("dh_mode")) c.dh_mode = parse_dh_mode(j["dh_mode"].get<std::string>());
  c.ledger = j.value("ledger", c.ledger);
  if (j.contains("rogue_variant")) c.rogue_variant = parse_rogue_variant(j["rogue_variant"].get<std::string>());
  c.checks.low_order = j.value("check_low_order", true);
  c.checks.scalar_range = j.value("check_scalar_range", true);
  c.checks.proof = j.value("check_proof", true);
  return c;
}

Json behaviors_to_json(const Behaviors& b) {
  Json j = Json::object();
  for (const auto& [actor, mode] : b.assignments()) j[std::to_string(actor)] = to_string(mode);
  return j;
}

Behaviors behaviors_from_json(const Json& j) {
  Behaviors b;
  for (const auto& [key, value] : j.items()) b.set(std::stoul(key), parse_behavior(value.get<std::string>()));
  return b;
}

}  // namespace swarmkey::sim
