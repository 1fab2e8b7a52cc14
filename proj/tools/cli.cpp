#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "key_files.hpp"
#include "swarmkey/random.hpp"
#include "swarmkey/sim/attacks.hpp"
#include "swarmkey/sim/ceremony.hpp"
#include "swarmkey/sim/entropy.hpp"
#include "swarmkey/sim/sessions.hpp"

namespace swarmkey::cli {
namespace {

namespace fs = std::filesystem;
using sim::Json;
using sim::PartyId;

struct Options {
  sim::SwarmConfig cfg;
  std::string x_mode = "sequential";
  std::string key_policy = "preprovisioned";
  std::string dh_mode = "dealer";
  std::string rogue_variant = "proof";
  std::vector<std::string> behaviors;
  std::string message = "probe";
  std::string peer_public;
  std::string out;
  std::string transcript;
  bool json = false;
  uint64_t session = 0;
  std::vector<std::string> request;

  std::string rogue;
  std::string victim = "1";
  std::string victim_behavior = "deterministic_nonce";
  std::size_t d = 0;
  std::optional<std::size_t> extra;
  bool unordered = false;

  uint64_t q = 5;
  std::vector<std::string> dists;
  std::size_t random_contributors = 0;

  std::string verify_path;
};

PartyId parse_actor(const std::string& s) {
  if (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front()))) {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size() || v == 0) throw UsageError("bad actor id: " + s);
    return static_cast<PartyId>(v);
  }
  const PartyId p = sim::parse_party(s);
  if (p <= 0) throw UsageError("not an actor: " + s);
  return p;
}

sim::Behaviors parse_behaviors(const std::vector<std::string>& specs, std::size_t population) {
  sim::Behaviors b;
  for (const std::string& spec : specs) {
    const auto colon = spec.rfind(':');
    if (colon == std::string::npos) throw UsageError("behavior must look like IDX:MODE, got " + spec);
    const PartyId id = parse_actor(spec.substr(0, colon));
    if (static_cast<std::size_t>(id) > population) throw UsageError("no actor " + std::to_string(id));
    b.set(static_cast<std::size_t>(id), sim::parse_behavior(spec.substr(colon + 1)));
  }
  return b;
}

std::vector<double> parse_dist(const std::string& text) {
  std::vector<double> p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad probability '" + item + "'");
    }
  }
  return p;
}

void print(std::ostream& out, const Json& report, bool json) {
  if (json) {
    out << report.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : report.items()) {
    std::string label = key;
    std::replace(label.begin(), label.end(), '_', ' ');
    out << label << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

std::string absolute(const std::string& p) { return fs::absolute(p).lexically_normal().string(); }

class Runner {
 public:
  Runner(Options& o, CLI::App& app, std::ostream& out, std::ostream& err) : o_(o), app_(app), out_(out), err_(err) {}

  // Applies the swarm flags on top of `base`; only flags the user set count.
  sim::SwarmConfig overlay(sim::SwarmConfig base) const {
    auto given = [&](const char* name) { return app_.get_option(name)->count() > 0; };
    if (given("--tau")) base.tau = o_.cfg.tau;
    if (given("--seed")) base.seed = o_.cfg.seed;
    if (given("--drop-prob")) base.drop_prob = o_.cfg.drop_prob;
    if (given("--dh-mode")) base.dh_mode = o_.cfg.dh_mode;
    if (given("--parallel")) base.parallel = o_.cfg.parallel;
    if (given("--backend") && o_.cfg.backend != base.backend) throw UsageError("--backend differs from the key material");
    if (given("--n") && o_.cfg.n != base.n) throw UsageError("--n differs from the key material");
    if (given("--t") && o_.cfg.t != base.t) throw UsageError("--t differs from the key material");
    return base;
  }

  int keygen() {
    const sim::Behaviors behaviors = parse_behaviors(o_.behaviors, o_.cfg.effective_population());
    const sim::CeremonyResult r = sim::run_ceremony(o_.cfg, behaviors);
    const std::string path = o_.out.empty() ? "swarmkey-keygen.jsonl" : o_.out;
    write_text(path, r.transcript.to_jsonl());
    const GroupPtr g = make_group(o_.cfg.backend, o_.cfg.toy_q);

    Json rep;
    rep["status"] = sim::to_string(r.status);
    if (!r.cause.empty()) rep["cause"] = r.cause;
    if (r.offender) rep["offender"] = sim::party_name(*r.offender);
    rep["attempts"] = r.attempts;
    rep["public_key"] = r.public_key ? Json(r.public_key->hex()) : Json(nullptr);
    if (r.ledger_check) rep["ledger"] = sim::to_string(r.ledger_check->verdict);
    Json fps = Json::object();
    if (r.public_key) {
      for (const sim::HeldShare& h : r.keys.shares) fps[sim::party_name(h.actor)] = share_fingerprint(*g, h.share);
      if (o_.cfg.backend != "toy") {
        write_share_files(path, r.keys);
        rep["share_files"] = share_file(path, r.keys.shares.front().actor).string() + " ...";
      }
    }
    rep["share_fingerprints"] = fps;
    rep["transcript"] = path;
    print(out_, rep, o_.json);
    if (r.status != sim::CeremonyStatus::kSuccess) {
      err_ << "keygen failed: " << r.cause << "\n";
      return kExitProtocol;
    }
    return kExitOk;
  }

  std::vector<PartyId> request() const {
    std::vector<PartyId> ids;
    for (const std::string& s : o_.request) ids.push_back(parse_actor(s));
    return ids;
  }

  int sign() {
    if (app_.get_option("--message")->count() == 0) throw UsageError("sign needs --message");
    const KeysAndConfig kc = load(o_.transcript);
    const sim::Behaviors behaviors = parse_behaviors(o_.behaviors, kc.cfg.effective_population());
    sim::SigningResult s = sim::run_signing(kc.cfg, kc.keys, behaviors, as_bytes(o_.message),
                                            sim::SessionOptions{request(), o_.session});
    s.transcript.header["keys_from"] = absolute(o_.transcript);
    const std::string path = o_.out.empty() ? "swarmkey-sign.jsonl" : o_.out;
    write_text(path, s.transcript.to_jsonl());
    const GroupPtr g = make_group(kc.cfg.backend, kc.cfg.toy_q);

    Json rep;
    rep["status"] = s.ok ? "success" : "failed";
    if (!s.cause.empty()) rep["cause"] = s.cause;
    Json cohort = Json::array();
    for (PartyId a : s.cohort) cohort.push_back(sim::party_name(a));
    rep["cohort"] = cohort;
    rep["public_key"] = kc.keys.public_key.hex();
    rep["signature"] = s.signature ? Json(to_hex(encode_signature(*g, *s.signature))) : Json(nullptr);
    rep["verified"] = s.signature && eddsa_verify(*g, kc.keys.public_key, as_bytes(o_.message), *s.signature);
    rep["transcript"] = path;
    print(out_, rep, o_.json);
    if (!s.ok) {
      err_ << "signing failed: " << s.cause << "\n";
      return kExitProtocol;
    }
    return kExitOk;
  }

  int exchange() {
    if (o_.peer_public.empty()) throw UsageError("exchange needs --peer-public");
    const KeysAndConfig kc = load(o_.transcript);
    const GroupPtr g = make_group(kc.cfg.backend, kc.cfg.toy_q);
    GroupElement peer;
    try {
      peer = g->decode_or_throw(from_hex(o_.peer_public));
    } catch (const EncodingError& e) {
      throw UsageError(std::string("bad --peer-public: ") + e.what());
    }
    const sim::Behaviors behaviors = parse_behaviors(o_.behaviors, kc.cfg.effective_population());
    sim::ExchangeResult x =
        sim::run_exchange(kc.cfg, kc.keys, behaviors, peer, sim::SessionOptions{request(), o_.session});
    x.transcript.header["keys_from"] = absolute(o_.transcript);
    const std::string path = o_.out.empty() ? "swarmkey-exchange.jsonl" : o_.out;
    write_text(path, x.transcript.to_jsonl());

    Json rep;
    rep["status"] = x.ok ? "success" : "failed";
    if (!x.cause.empty()) rep["cause"] = x.cause;
    Json cohort = Json::array();
    for (PartyId a : x.cohort) cohort.push_back(sim::party_name(a));
    rep["cohort"] = cohort;
    rep["dh_mode"] = sim::to_string(kc.cfg.dh_mode);
    rep["shared"] = x.shared ? Json(x.shared->hex()) : Json(nullptr);
    rep["transcript"] = path;
    print(out_, rep, o_.json);
    if (!x.ok) {
      err_ << "exchange failed: " << x.cause << "\n";
      return kExitProtocol;
    }
    return kExitOk;
  }

  int attack_rogue_key() {
    std::optional<PartyId> rogue;
    if (!o_.rogue.empty()) rogue = parse_actor(o_.rogue);
    if (rogue && static_cast<std::size_t>(*rogue) > o_.cfg.n) throw UsageError("the rogue must be in the first swarm");
    const sim::RogueKeyReport r = sim::attack_rogue_key(o_.cfg, rogue);
    const Json rep = sim::to_json(r);
    finish_report(rep);
    return r.detected_by_all_honest && !r.key_published ? kExitOk : kExitProtocol;
  }

  int attack_det_nonce() {
    const PartyId victim = parse_actor(o_.victim);
    if (static_cast<std::size_t>(victim) > o_.cfg.n) throw UsageError("the victim must be in the first swarm");
    const sim::DetNonceReport r =
        sim::attack_deterministic_nonce(o_.cfg, victim, sim::parse_behavior(o_.victim_behavior), o_.message);
    finish_report(sim::to_json(r));
    return r.status == "failed" ? kExitProtocol : kExitOk;
  }

  int attack_collusion() {
    const sim::CollusionReport r = sim::attack_collusion_search(o_.cfg, o_.d, o_.extra, !o_.unordered);
    finish_report(sim::to_json(r));
    return r.status == "keygen-failed" ? kExitProtocol : kExitOk;
  }

  int entropy() {
    std::vector<std::vector<double>> ds;
    for (const std::string& d : o_.dists) ds.push_back(parse_dist(d));
    if (o_.random_contributors > 0) {
      SeededRandom rng(o_.cfg.seed, "swarmkey/entropy");
      for (std::size_t k = 0; k < o_.random_contributors; ++k) {
        std::vector<double> p(o_.q);
        double total = 0;
        for (double& v : p) total += v = rng.uniform01();
        for (double& v : p) v /= total;
        ds.push_back(std::move(p));
      }
    }
    if (ds.empty()) throw UsageError("entropy needs --dist or --random");
    const sim::EntropyReport r = sim::entropy_demo(o_.q, ds);
    finish_report(sim::to_json(r));
    return r.bound_holds ? kExitOk : kExitProtocol;
  }

  int verify_transcript() {
    std::string text;
    {
      std::ifstream in(o_.verify_path, std::ios::binary);
      if (!in) throw UsageError("cannot read " + o_.verify_path);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    const sim::Transcript t = sim::Transcript::from_jsonl(text);
    const std::string command = t.header.value("command", "");
    const sim::SwarmConfig cfg = sim::config_from_json(t.header.at("config"));
    const sim::Behaviors behaviors = sim::behaviors_from_json(t.header.at("behaviors"));
    const GroupPtr g = make_group(cfg.backend, cfg.toy_q);

    Json rep;
    rep["command"] = command;
    bool ok = true;
    std::string replayed;
    const auto results = t.of_kind("event:result");
    const sim::Record* result = results.empty() ? nullptr : results.back();
    rep["recorded_status"] = result ? result->verdict : "missing";

    if (command == "keygen") {
      replayed = sim::run_ceremony(cfg, behaviors).transcript.to_jsonl();
      if (result && result->verdict == "success") {
        const std::optional<sim::KeyMaterial> keys = try_load(o_.verify_path);
        if (!keys) {
          rep["key_check"] = "skipped: no shares available";
        } else {
          const bool good = shares_match(*g, *keys);
          rep["key_check"] = good ? "ok" : "failed";
          ok = ok && good;
        }
      }
    } else if (command == "sign" || command == "exchange") {
      const std::string keys_from = t.header.value("keys_from", "");
      if (keys_from.empty()) throw UsageError("session transcript does not name its key material");
      const sim::KeyMaterial keys = load_key_material(keys_from);
      const sim::SessionOptions opts{t.header.at("request").get<std::vector<PartyId>>(),
                                     t.header.at("session").get<uint64_t>()};
      sim::Transcript again;
      if (command == "sign") {
        const Bytes m = from_hex(t.header.at("message_hex").get<std::string>());
        again = sim::run_signing(cfg, keys, behaviors, m, opts).transcript;
        if (result && result->verdict == "success") {
          const bool good = eddsa_verify(*g, keys.public_key, m, decode_signature(*g, result->payload));
          rep["signature_check"] = good ? "ok" : "failed";
          ok = ok && good;
        }
      } else {
        const GroupElement peer = g->decode_or_throw(from_hex(t.header.at("peer_public").get<std::string>()));
        again = sim::run_exchange(cfg, keys, behaviors, peer, opts).transcript;
        if (result && result->verdict == "success") {
          std::vector<Share> shares;
          for (const sim::HeldShare& h : keys.shares) shares.push_back(h.share);
          const GroupElement expect = g->point_mul(interpolate_at_zero(g->scalars(), shares), peer);
          const bool good = g->decode_or_throw(result->payload) == expect;
          rep["shared_check"] = good ? "ok" : "failed";
          ok = ok && good;
        }
      }
      again.header["keys_from"] = keys_from;
      replayed = again.to_jsonl();
    } else {
      throw UsageError("cannot replay a '" + command + "' transcript");
    }
    const bool identical = replayed == text;
    rep["replay"] = identical ? "identical" : "differs";
    ok = ok && identical;
    rep["verdict"] = ok ? "verified" : "rejected";
    print(out_, rep, o_.json);
    return ok ? kExitOk : kExitProtocol;
  }

 private:
  struct KeysAndConfig {
    sim::KeyMaterial keys;
    sim::SwarmConfig cfg;
  };

  KeysAndConfig load(const std::string& path) const {
    if (path.empty()) throw UsageError("missing key material: pass the keygen transcript with --transcript");
    KeysAndConfig kc{load_key_material(path), {}};
    kc.cfg = overlay(sim::config_from_json(read_transcript(path).header.at("config")));
    return kc;
  }

  static std::optional<sim::KeyMaterial> try_load(const std::string& path) {
    try {
      return load_key_material(path);
    } catch (const UsageError&) {
      return std::nullopt;
    }
  }

  // Every t-subset of the shares opens the published key.
  static bool shares_match(const Group& g, const sim::KeyMaterial& keys) {
    std::vector<std::size_t> idx(keys.t);
    bool good = true;
    auto rec = [&](auto&& self, std::size_t k, std::size_t start) -> void {
      if (k == keys.t) {
        std::vector<Share> c;
        for (std::size_t i : idx) c.push_back(keys.shares[i].share);
        good = good && g.base_mul(interpolate_at_zero(g.scalars(), c)) == keys.public_key;
        return;
      }
      for (std::size_t i = start; i < keys.shares.size(); ++i) {
        idx[k] = i;
        self(self, k + 1, i + 1);
      }
    };
    rec(rec, 0, 0);
    return good;
  }

  void finish_report(const Json& rep) {
    if (!o_.out.empty()) write_text(o_.out, rep.dump(2) + "\n");
    print(out_, rep, o_.json);
  }

  Options& o_;
  CLI::App& app_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_swarm_options(CLI::App& app, Options& o) {
  app.add_option("--backend", o.cfg.backend, "Group backend")->check(CLI::IsMember({"toy", "ed25519"}));
  app.add_option("--n", o.cfg.n, "Swarm size");
  app.add_option("--t", o.cfg.t, "Threshold");
  app.add_option("--tau", o.cfg.tau, "Dealer wait budget in ticks");
  app.add_option("--seed", o.cfg.seed, "Simulation seed");
  app.add_option("--x-mode", o.x_mode, "sequential | dealer-random | identity-derived");
  app.add_option("--drop-prob", o.cfg.drop_prob, "Per-message loss probability");
  app.add_option("--population", o.cfg.population, "Actors available for reselection (default 2n)");
  app.add_option("--max-attempts", o.cfg.max_attempts, "Ceremony retry budget");
  app.add_option("--toy-q", o.cfg.toy_q, "Prime order of the toy group");
  app.add_option("--key-policy", o.key_policy, "preprovisioned | ephemeral | dealer-distributed");
  app.add_option("--dh-mode", o.dh_mode, "Who weights DH contributions: dealer | signer");
  app.add_option("--rogue-variant", o.rogue_variant, "proof | low-order");
  app.add_flag("--ledger", o.cfg.ledger, "Post keys to the ledger and check them");
  app.add_flag("--parallel", o.cfg.parallel, "Run actors on worker threads");
  app.add_option("--behavior", o.behaviors, "IDX:MODE, repeatable");
  app.add_option("--message", o.message, "Message to sign");
  app.add_option("--peer-public", o.peer_public, "Peer public point (hex)");
  app.add_option("--out", o.out, "Output transcript or report path");
  app.add_option("--transcript", o.transcript, "Keygen transcript holding the key material");
  app.add_option("--session", o.session, "Session number for repeated signings");
  app.add_option("--request", o.request, "Actors the dealer contacts (default all holders)")->delimiter(',');
  app.add_flag("--json", o.json, "Print reports as JSON");
  app.set_config("--config", "", "Read options from a key = value file");
}

void finish_config(Options& o) {
  o.cfg.x_mode = sim::parse_x_mode(o.x_mode);
  o.cfg.key_policy = sim::parse_key_policy(o.key_policy);
  o.cfg.dh_mode = sim::parse_dh_mode(o.dh_mode);
  o.cfg.rogue_variant = sim::parse_rogue_variant(o.rogue_variant);
  sim::validate(o.cfg);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Threshold key ceremonies, signing, key exchange and attack scenarios on a simulated swarm",
               "swarmkey"};
  app.fallthrough();
  app.require_subcommand(1);
  add_swarm_options(app, o);

  CLI::App* keygen = app.add_subcommand("keygen", "Run a distributed key generation ceremony");
  CLI::App* sign = app.add_subcommand("sign", "Threshold-sign a message with keys from a keygen transcript");
  CLI::App* exchange = app.add_subcommand("exchange", "Threshold Diffie-Hellman with a peer public point");
  CLI::App* attack = app.add_subcommand("attack", "Run an attack scenario");
  attack->fallthrough();
  attack->require_subcommand(1);
  CLI::App* rogue = attack->add_subcommand("rogue-key", "Rogue-key attack against keygen, with a control run");
  rogue->fallthrough();
  rogue->add_option("--rogue", o.rogue, "Actor playing the rogue (default: last swarm member)");
  CLI::App* det = attack->add_subcommand("det-nonce", "Share recovery from a deterministic-nonce signer");
  det->fallthrough();
  det->add_option("--victim", o.victim, "Probed actor");
  det->add_option("--victim-behavior", o.victim_behavior, "deterministic_nonce | honest");
  CLI::App* collusion = attack->add_subcommand("collusion", "x-coordinate search by colluding actors");
  collusion->fallthrough();
  collusion->add_option("--d", o.d, "Actors corrupted at keygen")->required();
  collusion->add_option("--extra", o.extra, "Actors corrupted later (default t - d)");
  collusion->add_flag("--unordered", o.unordered, "Late actors' order unknown: try every injection");
  CLI::App* entropy = app.add_subcommand("entropy", "Entropy of a sum of independent contributions mod q");
  entropy->fallthrough();
  entropy->add_option("--q", o.q, "Small prime modulus");
  entropy->add_option("--dist", o.dists, "Comma-separated distribution over Z_q, repeatable");
  entropy->add_option("--random", o.random_contributors, "Add this many seeded random distributions");
  CLI::App* verify = app.add_subcommand("verify-transcript", "Replay a transcript and re-run its checks");
  verify->fallthrough();
  verify->add_option("file", o.verify_path, "Transcript file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Runner runner(o, app, out, err);
  try {
    finish_config(o);
    if (keygen->parsed()) return runner.keygen();
    if (sign->parsed()) return runner.sign();
    if (exchange->parsed()) return runner.exchange();
    if (rogue->parsed()) return runner.attack_rogue_key();
    if (det->parsed()) return runner.attack_det_nonce();
    if (collusion->parsed()) return runner.attack_collusion();
    if (entropy->parsed()) return runner.entropy();
    if (verify->parsed()) return runner.verify_transcript();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EncodingError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitProtocol;
  }
  return kExitUsage;
}

}  // namespace swarmkey::cli
