#include "swarmkey/sim/ceremony.hpp"

#include <algorithm>
#include <set>

#include "sim/wire.hpp"
#include "swarmkey/sim/network.hpp"
#include "swarmkey/sim/share_box.hpp"

namespace swarmkey::sim {
namespace {

using PkDirectory = std::map<PartyId, std::array<uint8_t, 32>>;

struct XBroadcast {
  std::size_t t = 0;
  std::vector<PartyId> swarm;
  std::vector<Scalar> xs;
  std::optional<PkDirectory> directory;
  std::optional<BoxKeypair> issued;
};

Bytes encode_directory(const PkDirectory& dir) {
  wire::Writer w;
  w.u32(static_cast<uint32_t>(dir.size()));
  for (const auto& [id, pk] : dir) w.u32(static_cast<uint32_t>(id)).raw(pk);
  return w.take();
}

PkDirectory read_directory(wire::Reader& r) {
  PkDirectory dir;
  const uint32_t count = r.u32();
  for (uint32_t i = 0; i < count; ++i) {
    const PartyId id = static_cast<PartyId>(r.u32());
    const ByteView pk = r.raw(32);
    std::copy(pk.begin(), pk.end(), dir[id].begin());
  }
  return dir;
}

Bytes encode_x(const Group& g, const XBroadcast& m) {
  wire::Writer w;
  w.u32(static_cast<uint32_t>(m.t)).u32(static_cast<uint32_t>(m.swarm.size()));
  for (std::size_t i = 0; i < m.swarm.size(); ++i) {
    w.u32(static_cast<uint32_t>(m.swarm[i])).raw(g.encode_scalar(m.xs[i]));
  }
  w.u8(m.directory ? 1 : 0);
  if (m.directory) w.raw(encode_directory(*m.directory));
  w.u8(m.issued ? 1 : 0);
  if (m.issued) w.raw(m.issued->public_key).raw(m.issued->secret_key);
  return w.take();
}

XBroadcast decode_x(const Group& g, ByteView payload) {
  wire::Reader r(payload);
  XBroadcast m;
  m.t = r.u32();
  const uint32_t n = r.u32();
  for (uint32_t i = 0; i < n; ++i) {
    m.swarm.push_back(static_cast<PartyId>(r.u32()));
    m.xs.push_back(g.decode_scalar(r.raw(g.scalar_bytes())));
  }
  if (r.u8()) m.directory = read_directory(r);
  if (r.u8()) {
    BoxKeypair kp;
    const ByteView pk = r.raw(32), sk = r.raw(32);
    std::copy(pk.begin(), pk.end(), kp.public_key.begin());
    std::copy(sk.begin(), sk.end(), kp.secret_key.begin());
    m.issued = kp;
  }
  r.expect_done();
  return m;
}

struct Entry {
  PartyId peer = kNobody;
  Bytes ciphertext;
};

Bytes encode_entries(const std::vector<Entry>& entries) {
  wire::Writer w;
  w.u32(static_cast<uint32_t>(entries.size()));
  for (const Entry& e : entries) w.u32(static_cast<uint32_t>(e.peer)).blob(e.ciphertext);
  return w.take();
}

std::vector<Entry> decode_entries(ByteView payload) {
  wire::Reader r(payload);
  std::vector<Entry> out(r.u32());
  for (Entry& e : out) {
    e.peer = static_cast<PartyId>(r.u32());
    e.ciphertext = r.blob();
  }
  r.expect_done();
  return out;
}

struct Report {
  bool ok = false;
  GroupElement A;
  PartyId offender = kNobody;
  std::string verdict;
};

Bytes encode_report(const Report& rep) {
  wire::Writer w;
  w.u8(rep.ok ? 0 : 1);
  if (rep.ok) {
    w.raw(rep.A.encoding);
  } else {
    w.u32(static_cast<uint32_t>(rep.offender)).str(rep.verdict);
  }
  return w.take();
}

Report decode_report(const Group& g, ByteView payload) {
  wire::Reader r(payload);
  Report rep;
  rep.ok = r.u8() == 0;
  if (rep.ok) {
    rep.A = g.decode_or_throw(r.raw(g.element_bytes()));
  } else {
    rep.offender = static_cast<PartyId>(r.u32());
    rep.verdict = r.str();
  }
  r.expect_done();
  return rep;
}

Bytes encode_ids(std::span<const PartyId> ids) {
  wire::Writer w;
  for (PartyId id : ids) w.u32(static_cast<uint32_t>(id));
  return w.take();
}

std::string list_parties(std::span<const PartyId> ids) {
  std::string s;
  for (PartyId id : ids) {
    if (!s.empty()) s += ", ";
    s += party_name(id);
  }
  return s;
}

// One swarm member's side of the ceremony.
class CeremonyActor final : public Party {
 public:
  CeremonyActor(PartyId id, const Group& g, const SwarmConfig& cfg, ActorBehavior behavior, SeededRandom rng,
                BoxKeypair standing, const PkDirectory& system_directory)
      : id_(id),
        g_(g),
        cfg_(cfg),
        behavior_(behavior),
        rng_(std::move(rng)),
        standing_(standing),
        system_dir_(system_directory) {}

  void handle(const Envelope& e, Outbox& out) override {
    if (e.from != kDealer) return;
    if (e.kind == kind::kXBroadcast) {
      on_x(e, out);
    } else if (e.round != round_) {
      return;  // stale round
    } else if (e.kind == kind::kEncKey) {
      on_directory(e, out);
    } else if (e.kind == kind::kCollusionLeak) {
      on_leak(e, out);
    } else if (e.kind == kind::kEncryptedBundle) {
      on_fanout(e, out);
    }
  }

  uint32_t round() const { return round_; }
  const std::optional<Share>& share() const { return share_; }
  const std::optional<Scalar>& shared_constant() const { return constant_; }
  const std::optional<Uint>& secret_scalar() const { return secret_; }
  const std::optional<GroupElement>& forced_key() const { return forced_; }
  const std::vector<Bytes>& knowledge() const { return knowledge_; }

 private:
  void remember(Bytes b) { knowledge_.push_back(std::move(b)); }

  void on_x(const Envelope& e, Outbox& out) {
    XBroadcast m;
    try {
      m = decode_x(g_, e.payload);
    } catch (const EncodingError&) {
      return;
    }
    const auto it = std::find(m.swarm.begin(), m.swarm.end(), id_);
    if (it == m.swarm.end()) return;
    remember(e.payload);
    round_ = e.round;
    swarm_ = m.swarm;
    xs_ = m.xs;
    t_ = m.t;
    pos_ = static_cast<std::size_t>(it - m.swarm.begin());
    began_ = responded_ = finished_ = false;
    state_.reset();
    share_.reset();
    constant_.reset();
    secret_.reset();
    forced_.reset();
    if (behavior_ == ActorBehavior::kWithhold) return;
    switch (cfg_.key_policy) {
      case KeyPolicy::kPreprovisioned:
        keys_ = standing_;
        dir_ = system_dir_;
        do_begin(out);
        break;
      case KeyPolicy::kDealerDistributed:
        if (!m.issued || !m.directory) return;
        keys_ = *m.issued;
        dir_ = *m.directory;
        do_begin(out);
        break;
      case KeyPolicy::kEphemeral:
        keys_ = box_keypair(rng_);
        remember(Bytes(keys_.secret_key.begin(), keys_.secret_key.end()));
        out.send(kDealer, kind::kEncKey, Bytes(keys_.public_key.begin(), keys_.public_key.end()), round_);
        break;
    }
  }

  void on_directory(const Envelope& e, Outbox& out) {
    if (cfg_.key_policy != KeyPolicy::kEphemeral || began_) return;
    try {
      wire::Reader r(e.payload);
      dir_ = read_directory(r);
      r.expect_done();
    } catch (const EncodingError&) {
      return;
    }
    do_begin(out);
  }

  void do_begin(Outbox& out) {
    began_ = true;
    if (behavior_ == ActorBehavior::kRogueKey) return;  // waits for the leak
    BeginOutput bo = begin(g_, pos_, xs_, t_, rng_);
    secret_ = bo.state.a;
    constant_ = g_.scalars().reduce(bo.state.a);
    remember(uint_to_le(bo.state.a, g_.scalar_bytes()));
    for (const Scalar& c : bo.state.polynomial->coefficients) remember(g_.encode_scalar(c));
    if (behavior_ == ActorBehavior::kEquivocateA) {
      for (std::size_t j = 0; j < bo.bundles.size(); ++j) {
        if (j == pos_) continue;
        const SecretScalarPair other = new_secret_scalar(g_, rng_);
        const KnowledgeProof proof = make_proof(g_, other.a, other.prefix);
        bo.bundles[j].A = proof.A;
        bo.bundles[j].R = proof.R;
        bo.bundles[j].S = proof.S;
      }
    } else if (behavior_ == ActorBehavior::kGarbageShare) {
      for (std::size_t j = 0; j < bo.bundles.size(); ++j) {
        if (j != pos_) bo.bundles[j].sigma.y = rng_.scalar(g_.scalars());
      }
    }
    state_ = std::move(bo.state);
    send_bundles(bo.bundles, out);
  }

  void send_bundles(const std::vector<ShareBundle>& bundles, Outbox& out) {
    std::vector<Entry> entries;
    for (std::size_t j = 0; j < bundles.size(); ++j) {
      remember(encode_bundle(g_, bundles[j]));
      const auto pk = dir_.find(swarm_[j]);
      Bytes ct;
      if (pk != dir_.end()) ct = encrypt_share(g_, bundles[j], pk->second, keys_, rng_);
      entries.push_back(Entry{swarm_[j], std::move(ct)});
    }
    responded_ = true;
    out.send(kDealer, kind::kEncryptedBundle, encode_entries(entries), round_);
  }

  // Rogue actor: learns the honest contributions early and picks its own so
  // that the sum lands on a key of its choosing.
  void on_leak(const Envelope& e, Outbox& out) {
    if (behavior_ != ActorBehavior::kRogueKey || !began_ || responded_) return;
    GroupElement honest_sum = g_.identity();
    try {
      for (const Entry& entry : decode_entries(e.payload)) {
        const ShareBundle b = decrypt_share(g_, entry.ciphertext, dir_.at(entry.peer), keys_);
        remember(encode_bundle(g_, b));
        honest_sum = g_.point_add(honest_sum, b.A);
      }
    } catch (const std::exception&) {
      return;
    }
    const ZMod& f = g_.scalars();
    KnowledgeProof fake;
    if (cfg_.rogue_variant == RogueVariant::kProof) {
      const GroupElement target = g_.base_mul(rng_.scalar(f));
      forced_ = target;
      fake.A = g_.point_sub(target, honest_sum);
      fake.R = g_.base_mul(rng_.scalar(f));
      fake.S = rng_.scalar(f);
    } else {
      // With A of order two and an even challenge, S = r satisfies the
      // verification equation.
      fake.A = order_two_point(g_);
      forced_ = g_.point_add(honest_sum, fake.A);
      for (;;) {
        const Scalar r = rng_.scalar(f);
        fake.R = g_.base_mul(r);
        if (proof_challenge(g_, fake.A, fake.R).value % 2 == 0) {
          fake.S = r;
          break;
        }
      }
    }
    const Scalar constant = rng_.scalar(f);
    constant_ = constant;
    ActorKeygenState st;
    st.my_index = pos_;
    st.threshold = t_;
    st.x_coords = xs_;
    st.polynomial = sample_polynomial(f, constant, t_, rng_);
    st.proof = fake;
    std::vector<ShareBundle> bundles;
    for (const Scalar& x : xs_) bundles.push_back(ShareBundle{eval_share(f, *st.polynomial, x), fake.R, fake.A, fake.S});
    state_ = std::move(st);
    send_bundles(bundles, out);
  }

  void report_abort(PartyId offender, std::string verdict, Outbox& out) {
    out.send(kDealer, kind::kAggregateReport, encode_report(Report{false, {}, offender, std::move(verdict)}), round_);
  }

  void on_fanout(const Envelope& e, Outbox& out) {
    if (!began_ || !responded_ || finished_ || !state_) return;
    finished_ = true;
    std::map<PartyId, Bytes> by_sender;
    try {
      for (Entry& entry : decode_entries(e.payload)) by_sender[entry.peer] = std::move(entry.ciphertext);
    } catch (const EncodingError&) {
      report_abort(kDealer, "reject:malformed-fanout", out);
      return;
    }
    std::vector<ShareBundle> bundles;
    for (PartyId sender : swarm_) {
      const auto ct = by_sender.find(sender);
      if (ct == by_sender.end()) {
        report_abort(sender, "reject:missing-bundle", out);
        return;
      }
      try {
        bundles.push_back(decrypt_share(g_, ct->second, dir_.at(sender), keys_));
      } catch (const DecryptionError&) {
        out.event("decrypt", "reject:decrypt", party_name(sender) + "->" + party_name(id_), {}, sender, round_);
        report_abort(sender, "reject:decrypt", out);
        return;
      } catch (const std::exception&) {
        report_abort(sender, "reject:malformed-bundle", out);
        return;
      }
      remember(encode_bundle(g_, bundles.back()));
    }
    const bool rogue = behavior_ == ActorBehavior::kRogueKey;
    const BundleChecks checks = rogue ? BundleChecks{false, false, false} : cfg_.checks;
    std::optional<std::pair<PartyId, BundleVerdict>> first_reject;
    for (std::size_t j = 0; j < bundles.size(); ++j) {
      const BundleVerdict v = verify_bundle(g_, bundles[j], checks);
      out.event("check", std::string(to_string(v)), {}, {}, swarm_[j], round_);
      if (v != BundleVerdict::kAccept && !first_reject) first_reject = {swarm_[j], v};
    }
    if (first_reject) {
      report_abort(first_reject->first, std::string(to_string(first_reject->second)), out);
      return;
    }
    KeygenResult result;
    try {
      result = complete(g_, *state_, bundles, checks);
    } catch (const ProtocolError& err) {
      report_abort(kNobody, std::string("reject:protocol ") + err.what(), out);
      return;
    }
    share_ = result.my_share;
    remember(g_.encode_scalar(result.my_share.y));
    remember(result.aggregate_public.encoding);
    out.send(kDealer, kind::kAggregateReport, encode_report(Report{true, result.aggregate_public, kNobody, {}}),
             round_);
    if (cfg_.ledger) {
      wire::Writer w;
      w.raw(g_.encode_scalar(result.my_share.x)).raw(result.aggregate_public.encoding);
      w.raw(g_.base_mul(result.my_share.y).encoding);
      out.send(kLedgerParty, kind::kLedgerPost, w.take(), round_);
    }
  }

  PartyId id_;
  const Group& g_;
  const SwarmConfig& cfg_;
  ActorBehavior behavior_;
  SeededRandom rng_;
  BoxKeypair standing_;
  const PkDirectory& system_dir_;

  uint32_t round_ = 0;
  std::vector<PartyId> swarm_;
  std::vector<Scalar> xs_;
  std::size_t t_ = 0;
  std::size_t pos_ = 0;
  BoxKeypair keys_;
  PkDirectory dir_;
  bool began_ = false;
  bool responded_ = false;
  bool finished_ = false;
  std::optional<ActorKeygenState> state_;
  std::optional<Share> share_;
  std::optional<Scalar> constant_;
  std::optional<Uint> secret_;
  std::optional<GroupElement> forced_;
  std::vector<Bytes> knowledge_;
};

// Orchestrates rounds: x distribution, gated fan-out, report collection and
// reselection after timeouts. Sees only ciphertext.
class CeremonyDealer final : public Party {
 public:
  CeremonyDealer(const Group& g, const SwarmConfig& cfg, const Behaviors& behaviors, SeededRandom rng)
      : g_(g), cfg_(cfg), rng_(std::move(rng)) {
    for (std::size_t id = 1; id <= cfg.effective_population(); ++id) {
      if (behaviors.of(id) == ActorBehavior::kRogueKey) accomplices_.insert(static_cast<PartyId>(id));
    }
  }

  void start(Outbox& out) {
    if (cfg_.key_policy == KeyPolicy::kDealerDistributed) {
      out.event("warning", "warning", "dealer-distributed encryption keys: the dealer can decrypt every share");
    }
    start_round(out);
  }

  void handle(const Envelope& e, Outbox& out) override {
    remember(e.payload);
    if (phase_ == Phase::kDone) return;
    if (e.kind == kind::kTimer) {
      if (e.round == round_ && std::string(e.payload.begin(), e.payload.end()) == deadline_tag()) on_deadline(out);
      return;
    }
    if (e.round != round_ || !in_swarm(e.from)) return;
    if (e.kind == kind::kEncKey && phase_ == Phase::kKeys) {
      if (e.payload.size() != 32 || enc_keys_.count(e.from)) return;
      std::copy(e.payload.begin(), e.payload.end(), enc_keys_[e.from].begin());
      if (enc_keys_.size() == swarm_.size()) {
        const Bytes dir = encode_directory(enc_keys_);
        for (PartyId a : swarm_) send(out, a, kind::kEncKey, dir);
        advance(Phase::kBegin, out);
      }
    } else if (e.kind == kind::kEncryptedBundle && phase_ == Phase::kBegin) {
      if (responses_.count(e.from)) return;
      responses_[e.from] = e.payload;
      maybe_leak(out);
      if (responses_.size() == swarm_.size()) fan_out(out);
    } else if (e.kind == kind::kAggregateReport && phase_ == Phase::kReports) {
      if (reports_.count(e.from)) return;
      try {
        reports_[e.from] = decode_report(g_, e.payload);
      } catch (const std::exception&) {
        reports_[e.from] = Report{false, {}, kNobody, "reject:malformed-report"};
      }
      if (reports_.size() == swarm_.size()) finalize(out);
    }
  }

  CeremonyStatus status = CeremonyStatus::kFailed;
  std::string cause;
  std::optional<PartyId> offender;
  std::optional<GroupElement> public_key;
  std::size_t attempts = 0;
  std::vector<PartyId> swarm_;
  std::vector<Scalar> xs_;
  uint32_t round_ = 0;
  std::set<PartyId> excluded;
  std::map<PartyId, Report> reports_;
  std::vector<Bytes> knowledge;

 private:
  enum class Phase { kKeys, kBegin, kReports, kDone };

  void remember(const Bytes& b) { knowledge.push_back(b); }
  void send(Outbox& out, PartyId to, std::string_view k, Bytes payload) {
    remember(payload);
    out.send(to, k, std::move(payload), round_);
  }
  bool in_swarm(PartyId id) const { return std::find(swarm_.begin(), swarm_.end(), id) != swarm_.end(); }
  std::string deadline_tag() const { return "deadline-" + std::to_string(deadline_seq_); }

  void advance(Phase p, Outbox& out) {
    phase_ = p;
    ++deadline_seq_;
    out.timer(cfg_.tau, deadline_tag(), round_);
  }

  std::optional<std::vector<Scalar>> choose_xs() {
    const ZMod& f = g_.scalars();
    std::vector<Scalar> xs;
    switch (cfg_.x_mode) {
      case XMode::kSequential:
        for (std::size_t i = 1; i <= swarm_.size(); ++i) xs.push_back(f.from_u64(i));
        break;
      case XMode::kDealerRandom:
        while (xs.size() < swarm_.size()) {
          const Scalar x = rng_.scalar(f);
          if (x.value != 0 && std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
        }
        break;
      case XMode::kIdentityDerived:
        for (PartyId id : swarm_) {
          const Bytes label = wire::Writer().u32(static_cast<uint32_t>(id)).take();
          xs.push_back(g_.hash_to_scalar({as_bytes("swarmkey/x-coordinate"), label}));
        }
        break;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i].value == 0) return std::nullopt;
      for (std::size_t j = 0; j < i; ++j) {
        if (xs[i] == xs[j]) return std::nullopt;
      }
    }
    return xs;
  }

  void start_round(Outbox& out) {
    ++attempts;
    if (attempts > cfg_.max_attempts) {
      finish(out, CeremonyStatus::kFailed, "retry budget exhausted after " + std::to_string(cfg_.max_attempts) +
                                               " attempts");
      return;
    }
    std::vector<PartyId> eligible;
    for (std::size_t id = 1; id <= cfg_.effective_population(); ++id) {
      if (!excluded.count(static_cast<PartyId>(id))) eligible.push_back(static_cast<PartyId>(id));
    }
    if (eligible.size() < cfg_.n) {
      finish(out, CeremonyStatus::kFailed, "population exhausted: " + std::to_string(eligible.size()) +
                                               " responsive actors for a swarm of " + std::to_string(cfg_.n));
      return;
    }
    ++round_;
    swarm_.assign(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(cfg_.n));
    responses_.clear();
    reports_.clear();
    enc_keys_.clear();
    leaked_ = false;
    const auto xs = choose_xs();
    if (!xs) {
      finish(out, CeremonyStatus::kFailed, "x-coordinates collide or vanish");
      return;
    }
    xs_ = *xs;
    out.event("round-start", "attempt-" + std::to_string(attempts), list_parties(swarm_), encode_ids(swarm_),
              kNobody, round_);
    XBroadcast m{cfg_.t, swarm_, xs_, std::nullopt, std::nullopt};
    PkDirectory issued_dir;
    std::map<PartyId, BoxKeypair> issued;
    if (cfg_.key_policy == KeyPolicy::kDealerDistributed) {
      for (PartyId a : swarm_) {
        issued[a] = box_keypair(rng_);
        issued_dir[a] = issued[a].public_key;
        remember(Bytes(issued[a].secret_key.begin(), issued[a].secret_key.end()));
      }
      m.directory = issued_dir;
    }
    for (PartyId a : swarm_) {
      if (cfg_.key_policy == KeyPolicy::kDealerDistributed) m.issued = issued[a];
      send(out, a, kind::kXBroadcast, encode_x(g_, m));
    }
    advance(cfg_.key_policy == KeyPolicy::kEphemeral ? Phase::kKeys : Phase::kBegin, out);
  }

  // A colluding dealer forwards the honest bundles addressed to each rogue
  // accomplice before that accomplice has committed to its own.
  void maybe_leak(Outbox& out) {
    if (leaked_) return;
    std::vector<PartyId> rogues, honest;
    for (PartyId a : swarm_) (accomplices_.count(a) ? rogues : honest).push_back(a);
    if (rogues.empty()) return;
    for (PartyId a : honest) {
      if (!responses_.count(a)) return;
    }
    leaked_ = true;
    for (PartyId rogue : rogues) {
      std::vector<Entry> entries;
      for (PartyId sender : honest) {
        for (Entry& e : decode_entries(responses_.at(sender))) {
          if (e.peer == rogue) entries.push_back(Entry{sender, std::move(e.ciphertext)});
        }
      }
      send(out, rogue, kind::kCollusionLeak, encode_entries(entries));
    }
    // A colluding dealer keeps waiting for its accomplices.
    advance(Phase::kBegin, out);
  }

  void fan_out(Outbox& out) {
    std::map<PartyId, std::vector<Entry>> inbox;
    for (PartyId sender : swarm_) {
      std::vector<Entry> entries;
      try {
        entries = decode_entries(responses_.at(sender));
      } catch (const EncodingError&) {
      }
      for (Entry& e : entries) {
        if (in_swarm(e.peer)) inbox[e.peer].push_back(Entry{sender, std::move(e.ciphertext)});
      }
    }
    for (PartyId a : swarm_) send(out, a, kind::kEncryptedBundle, encode_entries(inbox[a]));
    advance(Phase::kReports, out);
  }

  void on_deadline(Outbox& out) {
    if (phase_ == Phase::kReports) {
      for (PartyId a : swarm_) {
        const auto it = reports_.find(a);
        if (it != reports_.end() && !it->second.ok) {
          finalize(out);
          return;
        }
      }
    }
    std::vector<PartyId> missing;
    for (PartyId a : swarm_) {
      const bool have = phase_ == Phase::kKeys    ? enc_keys_.count(a) > 0
                        : phase_ == Phase::kBegin ? responses_.count(a) > 0
                                                  : reports_.count(a) > 0;
      if (!have) missing.push_back(a);
    }
    const char* what = phase_ == Phase::kKeys ? "no encryption key from " : phase_ == Phase::kBegin
                                                                              ? "no begin response from "
                                                                              : "no aggregate report from ";
    out.event("retry", "retry", what + list_parties(missing), encode_ids(missing), kNobody, round_);
    excluded.insert(missing.begin(), missing.end());
    start_round(out);
  }

  void finalize(Outbox& out) {
    for (PartyId a : swarm_) {
      const auto it = reports_.find(a);
      if (it == reports_.end() || it->second.ok) continue;
      offender = it->second.offender;
      finish(out, CeremonyStatus::kAborted,
             party_name(a) + " rejected " + party_name(it->second.offender) + ": " + it->second.verdict);
      return;
    }
    std::optional<GroupElement> agreed;
    for (const auto& [a, rep] : reports_) {
      if (!agreed) {
        agreed = rep.A;
      } else if (!(*agreed == rep.A)) {
        finish(out, CeremonyStatus::kDisagreement, "aggregate key reports disagree");
        return;
      }
    }
    public_key = agreed;
    finish(out, CeremonyStatus::kSuccess, "");
  }

  void finish(Outbox& out, CeremonyStatus s, std::string why) {
    phase_ = Phase::kDone;
    status = s;
    cause = std::move(why);
    out.event("result", std::string(to_string(s)), cause, public_key ? public_key->encoding : Bytes{}, kNobody,
              round_);
  }

  const Group& g_;
  const SwarmConfig& cfg_;
  SeededRandom rng_;
  std::set<PartyId> accomplices_;
  Phase phase_ = Phase::kBegin;
  uint64_t deadline_seq_ = 0;
  PkDirectory enc_keys_;
  std::map<PartyId, Bytes> responses_;
  bool leaked_ = false;
};

class LedgerParty final : public Party {
 public:
  explicit LedgerParty(const Group& g) : g_(g) {}

  void handle(const Envelope& e, Outbox&) override {
    if (e.kind != kind::kLedgerPost) return;
    try {
      wire::Reader r(e.payload);
      LedgerPost p;
      p.party = e.from;
      p.round = e.round;
      p.x = g_.decode_scalar(r.raw(g_.scalar_bytes()));
      p.A = g_.decode_or_throw(r.raw(g_.element_bytes()));
      p.share_commitment = g_.decode_or_throw(r.raw(g_.element_bytes()));
      r.expect_done();
      ledger.append(std::move(p));
      knowledge.push_back(e.payload);
    } catch (const EncodingError&) {
    }
  }

  Ledger ledger;
  std::vector<Bytes> knowledge;

 private:
  const Group& g_;
};

}  // namespace

std::string_view to_string(CeremonyStatus s) {
  switch (s) {
    case CeremonyStatus::kSuccess:
      return "success";
    case CeremonyStatus::kAborted:
      return "aborted";
    case CeremonyStatus::kFailed:
      return "failed";
    case CeremonyStatus::kDisagreement:
      return "disagreement";
    case CeremonyStatus::kLedgerRejected:
      return "ledger-rejected";
  }
  return "?";
}

const HeldShare& KeyMaterial::of(PartyId actor) const {
  for (const HeldShare& h : shares) {
    if (h.actor == actor) return h;
  }
  throw ParameterError("no share held by " + party_name(actor));
}

GroupElement order_two_point(const Group& g) {
  if (g.params().name == "ed25519") {
    Bytes enc(32, 0xff);
    enc[0] = 0xec;
    enc[31] = 0x7f;
    return g.decode_or_throw(enc);
  }
  if (g.params().name == "toy") return g.decode_or_throw(uint_to_le(g.params().ell * 4, g.element_bytes()));
  throw ParameterError("no order-two point known for " + g.params().name);
}

CeremonyResult run_ceremony(const SwarmConfig& cfg, const Behaviors& behaviors) {
  validate(cfg);
  const GroupPtr group = make_group(cfg.backend, cfg.toy_q);
  const Group& g = *group;
  const SeededRandom master(cfg.seed, "swarmkey/ceremony");

  CeremonyResult res;
  res.transcript.header = Json{{"type", "header"},
                               {"format", "swarmkey-transcript/1"},
                               {"command", "keygen"},
                               {"config", config_to_json(cfg)},
                               {"behaviors", behaviors_to_json(behaviors)}};

  const std::size_t population = cfg.effective_population();
  PkDirectory system_dir;
  std::map<PartyId, BoxKeypair> standing;
  for (std::size_t id = 1; id <= population; ++id) {
    SeededRandom key_rng = master.derive("enc-key/" + party_name(static_cast<PartyId>(id)));
    standing[static_cast<PartyId>(id)] = box_keypair(key_rng);
    system_dir[static_cast<PartyId>(id)] = standing[static_cast<PartyId>(id)].public_key;
  }

  Network net(master.derive("transport"), cfg.drop_prob, res.transcript, cfg.parallel);
  CeremonyDealer dealer(g, cfg, behaviors, master.derive("dealer"));
  LedgerParty ledger(g);
  std::vector<std::unique_ptr<CeremonyActor>> actors;
  net.attach(kDealer, &dealer);
  net.attach(kLedgerParty, &ledger);
  for (std::size_t id = 1; id <= population; ++id) {
    const PartyId pid = static_cast<PartyId>(id);
    actors.push_back(std::make_unique<CeremonyActor>(pid, g, cfg, behaviors.of(id), master.derive(party_name(pid)),
                                                     standing[pid], system_dir));
    net.attach(pid, actors.back().get());
  }
  net.kick(kDealer, [&](Outbox& out) { dealer.start(out); });
  net.run();

  res.status = dealer.status;
  res.cause = dealer.cause;
  res.offender = dealer.offender;
  res.attempts = dealer.attempts;
  res.swarm = dealer.swarm_;
  res.xs = dealer.xs_;
  res.final_round = dealer.round_;
  res.excluded.assign(dealer.excluded.begin(), dealer.excluded.end());
  for (const auto& [a, rep] : dealer.reports_) {
    if (rep.ok) {
      res.reported_keys[a] = rep.A;
    } else {
      res.abort_reports[a] = party_name(rep.offender) + " " + rep.verdict;
    }
  }

  res.keys.backend = cfg.backend;
  res.keys.toy_q = cfg.toy_q;
  res.keys.n = cfg.n;
  res.keys.t = cfg.t;
  for (const auto& actor : actors) {
    const PartyId id = static_cast<PartyId>(&actor - &actors.front() + 1);
    res.party_state[id] = actor->knowledge();
    if (actor->round() != dealer.round_) continue;
    if (actor->shared_constant()) res.shared_constants[id] = *actor->shared_constant();
    if (actor->secret_scalar()) res.secret_scalars[id] = *actor->secret_scalar();
    if (actor->forced_key()) res.forced_key = actor->forced_key();
    if (actor->share()) res.keys.shares.push_back(HeldShare{id, *actor->share()});
  }
  res.party_state[kDealer] = dealer.knowledge;
  res.party_state[kLedgerParty] = ledger.knowledge;
  res.ledger_posts = ledger.ledger.round(dealer.round_);

  // Equivocation shows up as disagreeing reports; the ledger sees it too.
  if (cfg.ledger && (res.status == CeremonyStatus::kSuccess || res.status == CeremonyStatus::kDisagreement)) {
    res.ledger_check = ledger_check_all(g, res.ledger_posts, cfg.n, cfg.t);
    res.transcript.add(Record{net.now(), dealer.round_, kLedgerParty, kNobody, "event:ledger-check", {},
                              std::string(to_string(res.ledger_check->verdict)), res.ledger_check->detail});
    if (res.status == CeremonyStatus::kSuccess && res.ledger_check->verdict != LedgerVerdict::kAccept) {
      res.status = CeremonyStatus::kLedgerRejected;
      res.cause = "ledger check: " + std::string(to_string(res.ledger_check->verdict));
    }
  }
  if (res.status == CeremonyStatus::kSuccess) {
    res.public_key = dealer.public_key;
    res.keys.public_key = *dealer.public_key;
    if (cfg.backend == "toy") {
      for (const HeldShare& h : res.keys.shares) {
        wire::Writer w;
        w.raw(g.encode_scalar(h.share.x)).raw(g.encode_scalar(h.share.y));
        res.transcript.add(Record{net.now(), dealer.round_, h.actor, kNobody, "share", w.take(), "", ""});
      }
    }
  }
  return res;
}

std::vector<Bytes> dealer_observed(const Transcript& t) {
  std::vector<Bytes> out;
  for (const Record& r : t.records) {
    if (r.kind.starts_with("event:") || r.kind == "share") continue;
    if (r.from == kDealer || r.to == kDealer) out.push_back(r.payload);
  }
  return out;
}

std::vector<const Record*> delivered_to(const Transcript& t, PartyId party, uint32_t round) {
  std::vector<const Record*> out;
  for (const Record& r : t.records) {
    if (r.to == party && r.round == round && r.verdict == "delivered") out.push_back(&r);
  }
  return out;
}

bool contains_bytes(ByteView haystack, ByteView needle) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

}  // namespace swarmkey::sim
