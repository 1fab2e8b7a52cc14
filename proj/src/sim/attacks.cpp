#include "swarmkey/sim/attacks.hpp"

#include <algorithm>
#include <functional>

namespace swarmkey::sim {
namespace {

std::vector<std::string> names(const std::vector<PartyId>& ids) {
  std::vector<std::string> out;
  for (PartyId id : ids) out.push_back(party_name(id));
  return out;
}

}  // namespace

uint64_t binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

uint64_t falling_factorial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (uint64_t i = 0; i < k; ++i) r *= n - i;
  return r;
}

RogueKeyReport attack_rogue_key(const SwarmConfig& cfg, std::optional<PartyId> rogue) {
  validate(cfg);
  RogueKeyReport rep;
  rep.variant = cfg.rogue_variant;
  rep.rogue = rogue.value_or(static_cast<PartyId>(cfg.n));
  rep.expected = cfg.rogue_variant == RogueVariant::kProof ? BundleVerdict::kProofMismatch : BundleVerdict::kLowOrderKey;
  Behaviors behaviors;
  behaviors.set(static_cast<std::size_t>(rep.rogue), ActorBehavior::kRogueKey);

  rep.attack = run_ceremony(cfg, behaviors);
  SwarmConfig control_cfg = cfg;
  control_cfg.checks = BundleChecks{false, false, false};
  rep.control = run_ceremony(control_cfg, behaviors);

  for (const Record& r : rep.attack.transcript.records) {
    if (r.kind == "event:check" && r.round == rep.attack.final_round && r.to == rep.rogue && r.from != rep.rogue) {
      rep.honest_verdicts[r.from] = r.verdict;
    }
  }
  const bool rogue_in_swarm =
      std::find(rep.attack.swarm.begin(), rep.attack.swarm.end(), rep.rogue) != rep.attack.swarm.end();
  rep.detected_by_all_honest = rogue_in_swarm && rep.attack.status == CeremonyStatus::kAborted;
  for (PartyId a : rep.attack.swarm) {
    if (a == rep.rogue) continue;
    const auto it = rep.honest_verdicts.find(a);
    if (it == rep.honest_verdicts.end() || it->second != to_string(rep.expected)) rep.detected_by_all_honest = false;
  }
  rep.key_published = rep.attack.public_key.has_value();

  rep.forced_key = rep.control.forced_key;
  rep.control_key_forced = rep.control.public_key && rep.forced_key && *rep.control.public_key == *rep.forced_key;
  if (rep.control.public_key && rep.control.keys.shares.size() >= cfg.t) {
    const GroupPtr g = make_group(cfg.backend, cfg.toy_q);
    std::vector<Share> cohort;
    for (std::size_t i = 0; i < cfg.t; ++i) cohort.push_back(rep.control.keys.shares[i].share);
    rep.control_shares_match_key = g->base_mul(interpolate_at_zero(g->scalars(), cohort)) == *rep.control.public_key;
  }
  return rep;
}

DetNonceReport attack_deterministic_nonce(const SwarmConfig& cfg, PartyId victim, ActorBehavior victim_behavior,
                                          std::string_view message) {
  DetNonceReport rep;
  rep.victim = victim;
  rep.victim_behavior = victim_behavior;
  const CeremonyResult keygen = run_ceremony(cfg);
  if (keygen.status != CeremonyStatus::kSuccess) {
    rep.status = "failed";
    return rep;
  }
  const KeyMaterial& keys = keygen.keys;
  rep.actual_share = keys.of(victim).share.y;
  const GroupPtr g = make_group(cfg.backend, cfg.toy_q);
  const ZMod& f = g->scalars();

  std::vector<PartyId> others;
  for (const HeldShare& h : keys.shares) {
    if (h.actor != victim) others.push_back(h.actor);
  }
  auto cohort = [&](std::size_t k) {
    std::vector<PartyId> c{victim};
    for (std::size_t i = 0; i + 1 < cfg.t; ++i) c.push_back(others[(k + i) % others.size()]);
    std::sort(c.begin(), c.end());
    return c;
  };

  Behaviors behaviors;
  behaviors.set(static_cast<std::size_t>(victim), victim_behavior);
  const auto m = as_bytes(message);
  for (std::size_t k = 0; k < 3; ++k) {
    const SigningResult s = run_signing(cfg, keys, behaviors, m, SessionOptions{cohort(k), k + 1});
    if (!s.responses.count(victim)) {
      rep.status = "failed";
      return rep;
    }
    rep.probes.push_back(DetNonceProbe{s.cohort, f.mul(s.coefficients.at(victim), s.challenge),
                                       s.responses.at(victim), s.ok});
  }
  const auto solved =
      recover_from_two_responses(f, rep.probes[0].response, rep.probes[1].response, rep.probes[0].mu, rep.probes[1].mu);
  if (!solved) {
    rep.status = "inconclusive";
    return rep;
  }
  rep.status = "recovered";
  rep.recovered_share = solved->secret;
  rep.recovered_nonce = solved->nonce;
  rep.matches = solved->secret == rep.actual_share;
  rep.predicted_replay = f.add(solved->nonce, f.mul(rep.probes[2].mu, solved->secret));
  rep.replay_matches = *rep.predicted_replay == rep.probes[2].response;
  return rep;
}

CollusionReport attack_collusion_search(const SwarmConfig& cfg, std::size_t d, std::optional<std::size_t> extra,
                                        bool ordered) {
  CollusionReport rep;
  rep.n = cfg.n;
  rep.t = cfg.t;
  rep.d = d;
  rep.ordered = ordered;
  if (d > cfg.n) throw ParameterError("more early colluders than actors");
  const std::size_t late_count = extra.value_or(d < cfg.t ? cfg.t - d : 0);
  if (d + late_count > cfg.n) throw ParameterError("more colluders than actors");
  rep.extra = late_count;

  const CeremonyResult keygen = run_ceremony(cfg);
  if (keygen.status != CeremonyStatus::kSuccess) {
    rep.status = "keygen-failed";
    return rep;
  }
  const GroupPtr g = make_group(cfg.backend, cfg.toy_q);
  const ZMod& f = g->scalars();
  for (const auto& [id, c] : keygen.shared_constants) rep.oracle_secret = f.add(rep.oracle_secret, c);
  const GroupElement& A = *keygen.public_key;

  // Shares in swarm order; the early colluders are the first d.
  std::vector<Share> shares;
  for (PartyId a : keygen.swarm) shares.push_back(keygen.keys.of(a).share);
  for (std::size_t i = 0; i < d; ++i) rep.early.push_back(keygen.swarm[i]);
  for (std::size_t i = d; i < d + late_count; ++i) rep.late.push_back(keygen.swarm[i]);

  if (d == 0) {
    rep.status = "unavailable";
    return rep;
  }
  if (d >= cfg.t) {
    rep.status = "direct";
    rep.search_space = 1;
    rep.candidates_tried = 1;
    const std::vector<Share> known(shares.begin(), shares.begin() + static_cast<std::ptrdiff_t>(cfg.t));
    rep.recovered = interpolate_at_zero(f, known);
    rep.hits = g->base_mul(*rep.recovered) == A ? 1 : 0;
    rep.matches = *rep.recovered == rep.oracle_secret;
    return rep;
  }

  rep.status = "searched";
  const std::size_t free_count = cfg.n - d;
  rep.search_space = ordered ? binomial(free_count, late_count) : falling_factorial(free_count, late_count);
  // x-coordinates the early colluders cannot attribute to themselves.
  const std::vector<Scalar> free_xs(keygen.xs.begin() + static_cast<std::ptrdiff_t>(d), keygen.xs.end());
  std::vector<Share> points(shares.begin(), shares.begin() + static_cast<std::ptrdiff_t>(d));
  std::vector<bool> used(free_count, false);
  std::function<void(std::size_t, std::size_t)> search = [&](std::size_t k, std::size_t start) {
    if (k == late_count) {
      ++rep.candidates_tried;
      const Scalar s = interpolate_at_zero(f, points);
      if (g->base_mul(s) == A) {
        ++rep.hits;
        if (!rep.recovered) rep.recovered = s;
      }
      return;
    }
    const Scalar& y = shares[d + k].y;
    for (std::size_t i = ordered ? start : 0; i < free_count; ++i) {
      if (used[i]) continue;
      used[i] = true;
      points.push_back(Share{free_xs[i], y});
      search(k + 1, i + 1);
      points.pop_back();
      used[i] = false;
    }
  };
  search(0, 0);
  rep.matches = rep.recovered && *rep.recovered == rep.oracle_secret;
  return rep;
}

Json to_json(const RogueKeyReport& r) {
  Json j;
  j["attack"] = "rogue-key";
  j["variant"] = to_string(r.variant);
  j["rogue"] = party_name(r.rogue);
  j["expected_check"] = to_string(r.expected);
  j["attack_status"] = to_string(r.attack.status);
  j["attack_cause"] = r.attack.cause;
  Json verdicts = Json::object();
  for (const auto& [a, v] : r.honest_verdicts) verdicts[party_name(a)] = v;
  j["honest_verdicts"] = verdicts;
  j["detected_by_all_honest"] = r.detected_by_all_honest;
  j["key_published"] = r.key_published;
  j["forced_key"] = r.forced_key ? Json(r.forced_key->hex()) : Json(nullptr);
  j["control_status"] = to_string(r.control.status);
  j["control_key"] = r.control.public_key ? Json(r.control.public_key->hex()) : Json(nullptr);
  j["control_key_forced"] = r.control_key_forced;
  j["control_shares_match_key"] = r.control_shares_match_key;
  return j;
}

Json to_json(const DetNonceReport& r) {
  // Scalars are printed at full width for the largest supported backend.
  auto hex = [](const Scalar& s) { return to_hex(uint_to_le(s.value, 32)); };
  Json j;
  j["attack"] = "det-nonce";
  j["victim"] = party_name(r.victim);
  j["victim_behavior"] = to_string(r.victim_behavior);
  j["status"] = r.status;
  Json probes = Json::array();
  for (const DetNonceProbe& p : r.probes) {
    probes.push_back(Json{{"cohort", names(p.cohort)},
                          {"mu", hex(p.mu)},
                          {"response", hex(p.response)},
                          {"signature_ok", p.signature_ok}});
  }
  j["probes"] = probes;
  j["recovered_share"] = r.recovered_share ? Json(hex(*r.recovered_share)) : Json(nullptr);
  j["actual_share"] = hex(r.actual_share);
  j["matches"] = r.matches;
  j["replay_matches"] = r.replay_matches;
  return j;
}

Json to_json(const CollusionReport& r) {
  auto hex = [](const Scalar& s) { return to_hex(uint_to_le(s.value, 32)); };
  Json j;
  j["attack"] = "collusion";
  j["n"] = r.n;
  j["t"] = r.t;
  j["d"] = r.d;
  j["extra"] = r.extra;
  j["ordered"] = r.ordered;
  j["status"] = r.status;
  j["search_space"] = r.search_space;
  j["candidates_tried"] = r.candidates_tried;
  j["hits"] = r.hits;
  j["recovered"] = r.recovered ? Json(hex(*r.recovered)) : Json(nullptr);
  j["oracle_secret"] = hex(r.oracle_secret);
  j["matches"] = r.matches;
  j["early"] = names(r.early);
  j["late"] = names(r.late);
  return j;
}

}  // namespace swarmkey::sim
