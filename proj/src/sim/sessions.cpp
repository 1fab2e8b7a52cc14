#include "swarmkey/sim/sessions.hpp"

#include <algorithm>

#include "sim/wire.hpp"
#include "swarmkey/sim/network.hpp"

namespace swarmkey::sim {
namespace {

Bytes encode_xs(const Group& g, std::span<const Scalar> xs) {
  wire::Writer w;
  w.u32(static_cast<uint32_t>(xs.size()));
  for (const Scalar& x : xs) w.raw(g.encode_scalar(x));
  return w.take();
}

std::vector<Scalar> read_xs(const Group& g, wire::Reader& r) {
  std::vector<Scalar> xs(r.u32());
  for (Scalar& x : xs) x = g.decode_scalar(r.raw(g.scalar_bytes()));
  return xs;
}

std::string list_parties(std::span<const PartyId> ids) {
  std::string s;
  for (PartyId id : ids) {
    if (!s.empty()) s += ", ";
    s += party_name(id);
  }
  return s;
}

// Share holder answering signing and exchange requests.
class SessionActor final : public Party {
 public:
  SessionActor(const Group& g, const SwarmConfig& cfg, ActorBehavior behavior, Share share, GroupElement A,
               SeededRandom rng)
      : g_(g), cfg_(cfg), behavior_(behavior), share_(std::move(share)), A_(std::move(A)), rng_(std::move(rng)) {}

  void handle(const Envelope& e, Outbox& out) override {
    if (e.from != kDealer || behavior_ == ActorBehavior::kWithhold) return;
    try {
      if (e.kind == kind::kRound1) {
        on_round1(e, out);
      } else if (e.kind == kind::kRound2) {
        on_round2(e, out);
      } else if (e.kind == kind::kDhRequest) {
        on_dh(e, out);
      }
    } catch (const ProtocolError& err) {
      out.event("refuse", "refuse", err.what(), {}, kDealer, e.round);
    } catch (const ParameterError& err) {
      out.event("refuse", "refuse", err.what(), {}, kDealer, e.round);
    }
  }

 private:
  void on_round1(const Envelope& e, Outbox& out) {
    if (message_) throw ProtocolError("round 1 already answered");
    message_ = e.payload;
    GroupElement R;
    if (behavior_ == ActorBehavior::kDeterministicNonce) {
      const Scalar r = deterministic_nonce(g_, share_, *message_);
      R = g_.base_mul(r);
      handle_ = NonceHandle::from_value(r);
    } else {
      Round1Output r1 = sign_round1(g_, rng_);
      R = r1.R;
      handle_ = std::move(r1.handle);
    }
    out.send(kDealer, kind::kRound1, R.encoding, e.round);
  }

  void on_round2(const Envelope& e, Outbox& out) {
    if (!message_) throw ProtocolError("round 2 before round 1");
    wire::Reader r(e.payload);
    const GroupElement R = g_.decode_or_throw(r.raw(g_.element_bytes()));
    const std::vector<Scalar> cohort = read_xs(g_, r);
    r.expect_done();
    const Scalar l = lagrange_coefficient(g_.scalars(), share_.x, cohort);
    const Scalar S = sign_round2(g_, handle_, R, l, share_, A_, *message_);
    out.send(kDealer, kind::kRound2, g_.encode_scalar(S), e.round);
  }

  void on_dh(const Envelope& e, Outbox& out) {
    wire::Reader r(e.payload);
    const GroupElement P = g_.decode_or_throw(r.raw(g_.element_bytes()));
    GroupElement K;
    if (cfg_.dh_mode == DhMode::kSigner) {
      const std::vector<Scalar> cohort = read_xs(g_, r);
      r.expect_done();
      K = dh_weighted_contribution(g_, share_, lagrange_coefficient(g_.scalars(), share_.x, cohort), P);
    } else {
      r.expect_done();
      K = dh_contribution(g_, share_, P);
    }
    out.send(kDealer, kind::kDhResponse, K.encoding, e.round);
  }

  const Group& g_;
  const SwarmConfig& cfg_;
  ActorBehavior behavior_;
  Share share_;
  GroupElement A_;
  SeededRandom rng_;
  std::optional<Bytes> message_;
  NonceHandle handle_;
};

// Dealer side of both session kinds. Knows the public key and every actor's
// x-coordinate, nothing secret.
class SessionDealer final : public Party {
 public:
  enum class Mode { kSign, kExchange };

  SessionDealer(const Group& g, const SwarmConfig& cfg, Mode mode, GroupElement A, std::map<PartyId, Scalar> xs,
                std::vector<PartyId> request, Bytes message, GroupElement peer)
      : g_(g),
        cfg_(cfg),
        mode_(mode),
        A_(std::move(A)),
        xs_(std::move(xs)),
        request_(std::move(request)),
        message_(std::move(message)),
        peer_(std::move(peer)) {}

  void start(Outbox& out) {
    if (mode_ == Mode::kSign) {
      for (PartyId a : request_) out.send(a, kind::kRound1, message_, 1);
    } else if (cfg_.dh_mode == DhMode::kSigner) {
      if (request_.size() < cfg_.t) {
        fail(out, "fewer than t actors requested");
        return;
      }
      cohort_.assign(request_.begin(), request_.begin() + static_cast<std::ptrdiff_t>(cfg_.t));
      const Bytes payload = dh_payload(true);
      for (PartyId a : cohort_) out.send(a, kind::kDhRequest, payload, 1);
    } else {
      const Bytes payload = dh_payload(false);
      for (PartyId a : request_) out.send(a, kind::kDhRequest, payload, 1);
    }
    arm(out);
  }

  void handle(const Envelope& e, Outbox& out) override {
    if (done_) return;
    if (e.kind == kind::kTimer) {
      if (std::string(e.payload.begin(), e.payload.end()) == tag()) on_deadline(out);
      return;
    }
    try {
      if (e.kind == kind::kRound1 && phase_ == 0 && is_requested(e.from) && !commitments_.count(e.from)) {
        commitments_[e.from] = g_.decode_or_throw(e.payload);
        arrival_.push_back(e.from);
        if (arrival_.size() == request_.size()) start_round2(out);
      } else if (e.kind == kind::kRound2 && phase_ == 1 && in_cohort(e.from) && !responses_.count(e.from)) {
        responses_[e.from] = g_.decode_scalar(e.payload);
        if (responses_.size() == cohort_.size()) aggregate(out);
      } else if (e.kind == kind::kDhResponse && is_requested(e.from) && !contributions_.count(e.from)) {
        if (cfg_.dh_mode == DhMode::kSigner && !in_cohort(e.from)) return;
        contributions_[e.from] = g_.decode_or_throw(e.payload);
        arrival_.push_back(e.from);
        const std::size_t want = cfg_.dh_mode == DhMode::kSigner ? cohort_.size() : request_.size();
        if (arrival_.size() == want) combine(out);
      }
    } catch (const EncodingError&) {
      out.event("reject", "reject:malformed", party_name(e.from), {}, e.from, 1);
    }
  }

  bool ok = false;
  std::string cause;
  std::vector<PartyId> cohort_;
  GroupElement R;
  Scalar challenge;
  std::map<PartyId, GroupElement> commitments_;
  std::map<PartyId, Scalar> coefficients;
  std::map<PartyId, Scalar> responses_;
  std::optional<Signature> signature;
  std::optional<GroupElement> shared;

 private:
  bool is_requested(PartyId id) const { return std::find(request_.begin(), request_.end(), id) != request_.end(); }
  bool in_cohort(PartyId id) const { return std::find(cohort_.begin(), cohort_.end(), id) != cohort_.end(); }
  std::string tag() const { return "deadline-" + std::to_string(phase_); }
  void arm(Outbox& out) { out.timer(cfg_.tau, tag(), 1); }

  std::vector<Scalar> cohort_xs() const {
    std::vector<Scalar> xs;
    for (PartyId a : cohort_) xs.push_back(xs_.at(a));
    return xs;
  }

  Bytes dh_payload(bool with_cohort) const {
    wire::Writer w;
    w.raw(peer_.encoding);
    if (with_cohort) w.raw(encode_xs(g_, cohort_xs()));
    return w.take();
  }

  void choose_cohort() {
    cohort_.assign(arrival_.begin(), arrival_.begin() + static_cast<std::ptrdiff_t>(cfg_.t));
    std::sort(cohort_.begin(), cohort_.end());
  }

  void start_round2(Outbox& out) {
    if (arrival_.size() < cfg_.t) {
      fail(out, std::to_string(arrival_.size()) + " of " + std::to_string(cfg_.t) + " signers answered round 1");
      return;
    }
    choose_cohort();
    R = g_.identity();
    for (PartyId a : cohort_) R = g_.point_add(R, commitments_.at(a));
    challenge = signing_challenge(g_, R, A_, message_);
    const std::vector<Scalar> xs = cohort_xs();
    for (PartyId a : cohort_) coefficients[a] = lagrange_coefficient(g_.scalars(), xs_.at(a), xs);
    wire::Writer w;
    w.raw(R.encoding).raw(encode_xs(g_, xs));
    const Bytes payload = w.take();
    out.event("cohort", "selected", list_parties(cohort_), {}, kNobody, 1);
    for (PartyId a : cohort_) out.send(a, kind::kRound2, payload, 1);
    phase_ = 1;
    arm(out);
  }

  void aggregate(Outbox& out) {
    std::vector<GroupElement> Rs;
    std::vector<Scalar> Ss;
    for (PartyId a : cohort_) {
      Rs.push_back(commitments_.at(a));
      Ss.push_back(responses_.at(a));
    }
    try {
      signature = aggregate_and_verify(g_, Rs, Ss, A_, message_);
    } catch (const AggregateInvalidError& err) {
      fail(out, err.what());
      return;
    }
    succeed(out, encode_signature(g_, *signature));
  }

  void combine(Outbox& out) {
    if (cfg_.dh_mode == DhMode::kSigner) {
      GroupElement K = g_.identity();
      for (PartyId a : cohort_) K = g_.point_add(K, contributions_.at(a));
      shared = K;
    } else {
      if (arrival_.size() < cfg_.t) {
        fail(out, std::to_string(arrival_.size()) + " of " + std::to_string(cfg_.t) + " actors answered");
        return;
      }
      choose_cohort();
      std::vector<DhContribution> cs;
      for (PartyId a : cohort_) cs.push_back(DhContribution{xs_.at(a), contributions_.at(a)});
      shared = dh_aggregate(g_, cs);
    }
    succeed(out, shared->encoding);
  }

  void on_deadline(Outbox& out) {
    if (mode_ == Mode::kSign && phase_ == 0) {
      start_round2(out);
    } else if (mode_ == Mode::kSign) {
      std::vector<PartyId> missing;
      for (PartyId a : cohort_) {
        if (!responses_.count(a)) missing.push_back(a);
      }
      fail(out, "no round-2 response from " + list_parties(missing));
    } else if (cfg_.dh_mode == DhMode::kSigner) {
      fail(out, "cohort member did not answer");
    } else {
      combine(out);
    }
  }

  void succeed(Outbox& out, Bytes payload) {
    done_ = true;
    ok = true;
    out.event("result", "success", {}, std::move(payload), kNobody, 1);
  }

  void fail(Outbox& out, std::string why) {
    done_ = true;
    cause = std::move(why);
    out.event("result", "failed", cause, {}, kNobody, 1);
  }

  const Group& g_;
  const SwarmConfig& cfg_;
  Mode mode_;
  GroupElement A_;
  std::map<PartyId, Scalar> xs_;
  std::vector<PartyId> request_;
  Bytes message_;
  GroupElement peer_;
  int phase_ = 0;
  bool done_ = false;
  std::vector<PartyId> arrival_;
  std::map<PartyId, GroupElement> contributions_;
};

struct Session {
  Transcript transcript;
  std::unique_ptr<SessionDealer> dealer;
};

Session run_session(const SwarmConfig& cfg, const KeyMaterial& keys, const Behaviors& behaviors,
                    const SessionOptions& options, SessionDealer::Mode mode, ByteView message,
                    const GroupElement& peer) {
  validate(cfg);
  if (keys.backend != cfg.backend || (cfg.backend == "toy" && keys.toy_q != cfg.toy_q)) {
    throw ParameterError("key material belongs to a different backend");
  }
  if (keys.t != cfg.t) throw ParameterError("key material was generated for a different threshold");
  const GroupPtr group = make_group(cfg.backend, cfg.toy_q);
  const Group& g = *group;
  const std::string label = mode == SessionDealer::Mode::kSign ? "sign" : "exchange";
  const SeededRandom master =
      SeededRandom(cfg.seed, "swarmkey/" + label).derive("session-" + std::to_string(options.session));

  Session s;
  s.transcript.header = Json{{"type", "header"},
                             {"format", "swarmkey-transcript/1"},
                             {"command", label},
                             {"config", config_to_json(cfg)},
                             {"behaviors", behaviors_to_json(behaviors)},
                             {"session", options.session},
                             {"public_key", keys.public_key.hex()}};
  if (mode == SessionDealer::Mode::kSign) {
    s.transcript.header["message_hex"] = to_hex(message);
  } else {
    s.transcript.header["peer_public"] = peer.hex();
  }

  std::map<PartyId, Scalar> xs;
  for (const HeldShare& h : keys.shares) xs[h.actor] = h.share.x;
  std::vector<PartyId> request = options.request;
  if (request.empty()) {
    for (const HeldShare& h : keys.shares) request.push_back(h.actor);
  }
  for (PartyId a : request) {
    if (!xs.count(a)) throw ParameterError("no share held by " + party_name(a));
  }
  s.transcript.header["request"] = request;

  Network net(master.derive("transport"), cfg.drop_prob, s.transcript, cfg.parallel);
  s.dealer = std::make_unique<SessionDealer>(g, cfg, mode, keys.public_key, xs, request,
                                             Bytes(message.begin(), message.end()), peer);
  net.attach(kDealer, s.dealer.get());
  std::vector<std::unique_ptr<SessionActor>> actors;
  for (const HeldShare& h : keys.shares) {
    actors.push_back(std::make_unique<SessionActor>(g, cfg, behaviors.of(static_cast<std::size_t>(h.actor)), h.share,
                                                    keys.public_key, master.derive(party_name(h.actor))));
    net.attach(h.actor, actors.back().get());
  }
  net.kick(kDealer, [&](Outbox& out) { s.dealer->start(out); });
  net.run();
  return s;
}

}  // namespace

Scalar deterministic_nonce(const Group& g, const Share& share, ByteView message) {
  return g.hash_to_scalar({as_bytes("swarmkey/deterministic-nonce"), g.encode_scalar(share.y), message});
}

SigningResult run_signing(const SwarmConfig& cfg, const KeyMaterial& keys, const Behaviors& behaviors,
                          ByteView message, const SessionOptions& options) {
  Session s = run_session(cfg, keys, behaviors, options, SessionDealer::Mode::kSign, message, GroupElement{});
  SigningResult r;
  SessionDealer& d = *s.dealer;
  r.ok = d.ok;
  r.cause = d.cause;
  r.cohort = d.cohort_;
  r.signature = d.signature;
  r.R = d.R;
  r.challenge = d.challenge;
  r.commitments = d.commitments_;
  r.coefficients = d.coefficients;
  r.responses = d.responses_;
  r.transcript = std::move(s.transcript);
  return r;
}

ExchangeResult run_exchange(const SwarmConfig& cfg, const KeyMaterial& keys, const Behaviors& behaviors,
                            const GroupElement& peer_public, const SessionOptions& options) {
  Session s = run_session(cfg, keys, behaviors, options, SessionDealer::Mode::kExchange, {}, peer_public);
  ExchangeResult r;
  r.ok = s.dealer->ok;
  r.cause = s.dealer->cause;
  r.cohort = s.dealer->cohort_;
  r.shared = s.dealer->shared;
  r.transcript = std::move(s.transcript);
  return r;
}

}  // namespace swarmkey::sim
