#include "key_files.hpp"

#include <fstream>
#include <sstream>

#include "swarmkey/hash.hpp"

namespace swarmkey::cli {

using sim::Json;
using sim::PartyId;

namespace {

constexpr const char* kShareFormat = "swarmkey-share/1";

}  // namespace

sim::Transcript read_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return sim::Transcript::from_jsonl(ss.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

std::filesystem::path share_file(const std::filesystem::path& transcript, PartyId actor) {
  std::filesystem::path p = transcript;
  p += "." + sim::party_name(actor) + ".share";
  return p;
}

void write_share_files(const std::filesystem::path& transcript, const sim::KeyMaterial& keys) {
  const GroupPtr g = make_group(keys.backend, keys.toy_q);
  for (const sim::HeldShare& h : keys.shares) {
    const Json j{{"format", kShareFormat},
                 {"backend", keys.backend},
                 {"n", keys.n},
                 {"t", keys.t},
                 {"actor", sim::party_name(h.actor)},
                 {"x", to_hex(g->encode_scalar(h.share.x))},
                 {"y", to_hex(g->encode_scalar(h.share.y))},
                 {"public_key", keys.public_key.hex()}};
    write_text(share_file(transcript, h.actor), j.dump() + "\n");
  }
}

sim::KeyMaterial load_key_material(const std::filesystem::path& path) {
  const sim::Transcript t = read_transcript(path);
  if (t.header.value("command", "") != "keygen") throw UsageError(path.string() + " is not a keygen transcript");
  const sim::SwarmConfig cfg = sim::config_from_json(t.header.at("config"));
  const GroupPtr g = make_group(cfg.backend, cfg.toy_q);

  sim::KeyMaterial keys;
  keys.backend = cfg.backend;
  keys.toy_q = cfg.toy_q;
  keys.n = cfg.n;
  keys.t = cfg.t;
  const auto results = t.of_kind("event:result");
  if (results.empty() || results.back()->verdict != "success") {
    throw UsageError(path.string() + " does not record a successful ceremony");
  }
  keys.public_key = g->decode_or_throw(results.back()->payload);

  if (cfg.backend == "toy") {
    for (const sim::Record* r : t.of_kind("share")) {
      const std::size_t w = g->scalar_bytes();
      if (r->payload.size() != 2 * w) throw EncodingError("malformed share record");
      const ByteView p(r->payload);
      keys.shares.push_back(sim::HeldShare{r->from, Share{g->decode_scalar(p.first(w)), g->decode_scalar(p.last(w))}});
    }
  } else {
    for (std::size_t id = 1; id <= cfg.effective_population(); ++id) {
      const auto file = share_file(path, static_cast<PartyId>(id));
      if (!std::filesystem::exists(file)) continue;
      std::ifstream in(file);
      const Json j = Json::parse(in, nullptr, false);
      if (j.is_discarded() || j.value("format", "") != kShareFormat) throw EncodingError("malformed " + file.string());
      if (j.value("public_key", "") != keys.public_key.hex()) {
        throw UsageError(file.string() + " belongs to a different key");
      }
      keys.shares.push_back(sim::HeldShare{static_cast<PartyId>(id),
                                           Share{g->decode_scalar(from_hex(j.at("x").get<std::string>())),
                                                 g->decode_scalar(from_hex(j.at("y").get<std::string>()))}});
    }
  }
  if (keys.shares.size() < keys.t) {
    throw UsageError("missing key material: found " + std::to_string(keys.shares.size()) + " shares, need " +
                     std::to_string(keys.t));
  }
  return keys;
}

std::string share_fingerprint(const Group& g, const Share& share) {
  const Bytes h = sha512({as_bytes("swarmkey/share-fingerprint"), g.encode_scalar(share.x), g.encode_scalar(share.y)});
  return to_hex(ByteView(h).first(8));
}

}  // namespace swarmkey::cli
