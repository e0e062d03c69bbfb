#include "uhsn/netsim/simulator.hpp"

#include <algorithm>
#include <set>

#include "uhsn/analysis.hpp"
#include "uhsn/error.hpp"
#include "uhsn/gf/generalized_inverse.hpp"
#include "uhsn/gf/rng.hpp"

namespace uhsn::netsim {

namespace {

// Stream tags separating node and station randomness under one scenario seed.
constexpr std::uint64_t kNodeSecretTag = 0x4E4F4445;  // "NODE"
constexpr std::uint64_t kSbsSecretTag = 0x53425321;   // "SBS!"

std::uint16_t dims_hint(std::size_t rows, std::size_t cols) {
  return static_cast<std::uint16_t>((rows & 0xFF) << 8 | (cols & 0xFF));
}

std::vector<std::uint8_t> be16_pair(Address a, Address b) {
  return {static_cast<std::uint8_t>(a >> 8), static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b >> 8),
          static_cast<std::uint8_t>(b)};
}

Address read_be16(std::span<const std::uint8_t> b, std::size_t at) {
  if (b.size() < at + 2) throw Error(Errc::kMalformed, "payload too short");
  return static_cast<Address>(b[at] << 8 | b[at + 1]);
}

std::uint16_t nonce_epoch(const crypto::Nonce& nonce) { return static_cast<std::uint16_t>(nonce[2] << 8 | nonce[3]); }

}  // namespace

struct Simulator::Impl {
  struct Pending {
    crypto::Ciphertext ct;
  };

  struct Sensor {
    NodeIdentity identity;
    std::uint64_t epoch = 0;
    std::uint16_t next_session = 0;
    unsigned attempt = 0;
    std::optional<handshake::NodeSession> session{};
    std::optional<handshake::Msg1> last_msg1{};
    std::optional<handshake::Msg2> last_msg2{};
    std::optional<handshake::Msg3> last_msg3{};
    std::optional<handshake::SharedKey> key{};
    std::optional<crypto::SealingKey> sealer{};
    // K_d cache keyed by (sender, low 16 bits of the sender's key epoch).
    std::map<std::pair<Address, std::uint16_t>, crypto::SymmetricKey> kd_cache{};
    std::map<Address, std::deque<Pending>> pending{};
  };

  struct Station {
    NodeIdentity identity;
    crypto::Ckg ckg;
    std::map<Address, handshake::SbsSession> sessions;
    std::map<Address, std::uint64_t> epochs;
    std::map<Address, handshake::SbsSession> completed;
  };

  struct InFlight {
    RawFrame frame;
    Address dst;
  };

  ScenarioConfig config;
  handshake::Params params;
  EnergyLedger ledger;
  std::map<Address, Sensor> sensors;
  std::optional<Station> station;
  std::deque<InFlight> queue;
  std::map<std::tuple<Address, Address, std::uint16_t>, std::vector<RawFrame>> partial;
  std::map<Address, std::uint16_t> next_seq;
  std::map<Address, std::uint8_t> next_packet;
  std::vector<WireRecord> wire;
  std::vector<HandshakeTrace> traces;
  std::uint64_t tick = 0;

  std::vector<HandshakeOutcome> handshake_log;
  std::vector<FlowOutcome> flow_log;
  std::vector<RevocationOutcome> revocation_log;
  FlowOutcome* active_flow = nullptr;
  std::vector<std::uint8_t> active_plaintext;

  explicit Impl(ScenarioConfig cfg) : config(std::move(cfg)), params(config.params()) {
    config.validate();
    for (const NodeIdentity& id : config.nodes) {
      ledger.add_node(id.id);
      if (id.role == Role::kBaseStation) {
        station.emplace(Station{id, crypto::Ckg(config.suite), {}, {}, {}});
      } else {
        sensors.emplace(id.id, Sensor{.identity = id});
      }
    }
  }

  Sensor& sensor(Address id) {
    auto it = sensors.find(id);
    if (it == sensors.end()) throw Error(Errc::kUnknownNode, "unknown sensor node " + std::to_string(id));
    return it->second;
  }

  // ---- channel -------------------------------------------------------------

  void transmit(Address src, Address dst, MsgType type, std::uint16_t session, std::uint16_t hint,
                std::vector<std::uint8_t> bytes) {
    Envelope env{src, dst, type, session, next_seq[src]++, hint, std::move(bytes)};
    std::uint8_t& packet = next_packet[src];
    std::vector<RawFrame> frames = fragment(env, packet);
    packet = static_cast<std::uint8_t>(packet + frames.size());
    ledger.charge_tx(src, frames.size());
    ledger.count_message_sent(src);
    if (active_flow != nullptr) {
      if (src == active_flow->from) ++active_flow->sender_messages_sent;
      if (src == active_flow->to) ++active_flow->receiver_messages_sent;
    }
    for (const RawFrame& f : frames) {
      wire.push_back(WireRecord{tick, f});
      queue.push_back(InFlight{f, dst});
    }
  }

  void run() {
    while (!queue.empty()) {
      InFlight next = queue.front();
      queue.pop_front();
      ++tick;
      ledger.charge_rx(next.dst, 1);
      const Frame head = Frame::decode(next.frame);
      auto key = std::make_tuple(head.src, head.dst, head.seq);
      auto& parts = partial[key];
      parts.push_back(next.frame);
      if (parts.size() < head.frag_total) continue;
      Envelope env = reassemble(parts);
      partial.erase(key);
      ledger.count_message_received(env.dst);
      if (active_flow != nullptr && env.dst == active_flow->to) ++active_flow->receiver_messages_received;
      dispatch(env);
    }
  }

  void dispatch(const Envelope& env) {
    if (station && env.dst == station->identity.id) {
      on_station(env);
    } else {
      on_sensor(sensor(env.dst), env);
    }
  }

  // ---- station -------------------------------------------------------------

  void on_station(const Envelope& env) {
    Station& sbs = *station;
    const Address sid = sbs.identity.id;
    switch (env.msg_type) {
      case MsgType::kHandshakeInit: {
        const handshake::Msg1 msg1 = handshake::decode_msg1(env.bytes, params);
        const std::uint64_t epoch = sbs.epochs[env.src];
        const gf::SeedStream seed{config.seed, gf::derive_stream(kSbsSecretTag, env.src, env.session_id, epoch)};
        auto [session, msg2] = handshake::sbs_respond(seed, params, msg1, epoch, config.suite);
        sbs.sessions.insert_or_assign(env.src, std::move(session));
        transmit(sid, env.src, MsgType::kHandshakeReply, env.session_id, dims_hint(params.n, params.k),
                 handshake::encode(msg2));
        break;
      }
      case MsgType::kHandshakeConfirm: {
        auto it = sbs.sessions.find(env.src);
        if (it == sbs.sessions.end()) throw Error(Errc::kWrongState, "confirmation without a session");
        const handshake::SharedKey& key = it->second.finalize(handshake::decode_msg3(env.bytes, params));
        if (!key.weak()) sbs.ckg.install(env.src, key);
        sbs.completed.insert_or_assign(env.src, std::move(it->second));
        sbs.sessions.erase(it);
        break;
      }
      case MsgType::kKeyRequest: {
        const Address sender = read_be16(env.bytes, 0);
        const Address receiver = read_be16(env.bytes, 2);
        if (receiver != env.src) {
          send_refusal(env.src, sender, receiver, Errc::kInvalidArgument);
          break;
        }
        try {
          const crypto::DecryptionKeyResponse resp = sbs.ckg.issue(sender, receiver);
          transmit(sid, env.src, MsgType::kKeyResponse, 0, 0, resp.encode());
        } catch (const Error& e) {
          send_refusal(env.src, sender, receiver, e.code());
        }
        break;
      }
      default:
        throw Error(Errc::kMalformed, "station cannot handle message type " +
                                          std::to_string(static_cast<int>(env.msg_type)));
    }
  }

  void send_refusal(Address to, Address sender, Address receiver, Errc code) {
    std::vector<std::uint8_t> body = be16_pair(sender, receiver);
    body.push_back(static_cast<std::uint8_t>(code));
    transmit(station->identity.id, to, MsgType::kKeyRefusal, 0, 0, std::move(body));
  }

  // ---- sensors -------------------------------------------------------------

  void on_sensor(Sensor& self, const Envelope& env) {
    switch (env.msg_type) {
      case MsgType::kHandshakeReply: {
        if (!self.session || env.session_id != self.next_session - 1u) {
          throw Error(Errc::kWrongState, "unexpected handshake reply");
        }
        handshake::Msg2 msg2 = handshake::decode_msg2(env.bytes, params);
        auto [key, msg3] = self.session->finalize(msg2);
        self.last_msg2 = std::move(msg2);
        self.last_msg3 = msg3;
        if (!key.weak()) install_key(self, std::move(key));
        transmit(self.identity.id, env.src, MsgType::kHandshakeConfirm, env.session_id,
                 dims_hint(params.m, params.n), handshake::encode(msg3));
        break;
      }
      case MsgType::kData: {
        const crypto::Ciphertext ct = crypto::Ciphertext::decode(env.bytes);
        const auto cache_key = std::make_pair(env.src, nonce_epoch(ct.nonce));
        auto hit = self.kd_cache.find(cache_key);
        if (hit != self.kd_cache.end()) {
          try {
            finish_flow(crypto::decrypt(hit->second, ct, config.suite));
            break;
          } catch (const Error& e) {
            if (e.code() != Errc::kAuthFailure) throw;
            self.kd_cache.erase(hit);
          }
        }
        self.pending[env.src].push_back(Pending{ct});
        if (active_flow != nullptr) ++active_flow->key_requests;
        transmit(self.identity.id, station->identity.id, MsgType::kKeyRequest, 0, 0,
                 be16_pair(env.src, self.identity.id));
        break;
      }
      case MsgType::kKeyResponse: {
        const crypto::DecryptionKeyResponse resp = crypto::DecryptionKeyResponse::decode(env.bytes);
        std::deque<Pending> waiting = std::move(self.pending[resp.sender_id]);
        self.pending.erase(resp.sender_id);
        if (!self.key) {
          fail_flow("receiver has no shared key");
          break;
        }
        crypto::SymmetricKey kd;
        try {
          kd = crypto::unwrap_kd(self.key->sym_key, resp, config.suite);
        } catch (const Error& e) {
          fail_flow(std::string("unwrap failed: ") + std::string(errc_name(e.code())));
          break;
        }
        for (const Pending& p : waiting) {
          kd.source_epoch = nonce_epoch(p.ct.nonce);
          try {
            std::vector<std::uint8_t> plain = crypto::decrypt(kd, p.ct, config.suite);
            self.kd_cache[{resp.sender_id, nonce_epoch(p.ct.nonce)}] = kd;
            finish_flow(std::move(plain));
          } catch (const Error& e) {
            fail_flow(std::string("decrypt failed: ") + std::string(errc_name(e.code())));
          }
        }
        break;
      }
      case MsgType::kKeyRefusal: {
        const Address sender = read_be16(env.bytes, 0);
        const auto code = env.bytes.size() > 4 ? static_cast<Errc>(env.bytes[4]) : Errc::kMalformed;
        self.pending.erase(sender);
        fail_flow(std::string("key generator refused: ") + std::string(errc_name(code)));
        break;
      }
      case MsgType::kRevocation: {
        const Address revoked = read_be16(env.bytes, 0);
        std::erase_if(self.kd_cache, [revoked](const auto& kv) { return kv.first.first == revoked; });
        break;
      }
      default:
        throw Error(Errc::kMalformed, "sensor cannot handle message type " +
                                          std::to_string(static_cast<int>(env.msg_type)));
    }
  }

  void install_key(Sensor& self, handshake::SharedKey key) {
    const std::uint64_t epoch = key.epoch;
    const Address id = self.identity.id;
    self.sealer.emplace(key.sym_key,
                        std::array<std::uint8_t, 4>{static_cast<std::uint8_t>(id >> 8), static_cast<std::uint8_t>(id),
                                                    static_cast<std::uint8_t>(epoch >> 8),
                                                    static_cast<std::uint8_t>(epoch)},
                        config.suite);
    self.key = std::move(key);
  }

  void finish_flow(std::vector<std::uint8_t> plain) {
    if (active_flow == nullptr) return;
    if (plain == active_plaintext) {
      active_flow->delivered = true;
      active_flow->reason.clear();
    } else {
      active_flow->delivered = false;
      active_flow->reason = "plaintext mismatch";
    }
  }

  void fail_flow(std::string reason) {
    if (active_flow == nullptr) return;
    active_flow->delivered = false;
    active_flow->reason = std::move(reason);
  }

  // ---- operations ------------------------------------------------------------

  HandshakeOutcome do_handshake(Address node) {
    if (!station) throw Error(Errc::kConfig, "no SBS configured");
    Sensor& self = sensor(node);
    HandshakeOutcome out{node, self.epoch, 0, false, false, 0, 0};
    const Station& sbs = *station;
    for (unsigned attempt = 0; attempt < kMaxHandshakeAttempts; ++attempt) {
      const LedgerEntry before = ledger.entry(node);
      const std::uint16_t session_id = self.next_session++;
      const gf::SeedStream seed{config.seed, gf::derive_stream(kNodeSecretTag, node, self.epoch, session_id)};
      auto [session, msg1] = handshake::node_init(params, seed, self.epoch, config.suite);
      self.session.emplace(std::move(session));
      self.last_msg1 = msg1;
      self.key.reset();
      self.sealer.reset();
      transmit(node, sbs.identity.id, MsgType::kHandshakeInit, session_id, dims_hint(params.n, params.n),
               handshake::encode(msg1));
      run();

      const LedgerEntry& after = ledger.entry(node);
      out.attempts = attempt + 1;
      out.node_tx_frames = after.frames_sent - before.frames_sent;
      out.node_rx_frames = after.frames_received - before.frames_received;

      const handshake::SbsSession& done = sbs.completed.at(node);
      const handshake::SharedKey& node_key = *self.session->key();
      const handshake::SharedKey& sbs_key = *done.key();
      traces.push_back(HandshakeTrace{node, self.epoch, session_id, *self.last_msg1, *self.last_msg2,
                                      *self.last_msg3, self.session->secret(), self.session->secret_inverse(),
                                      done.secret(), done.secret_inverse(), node_key, sbs_key});
      out.agreed = node_key.matrix == sbs_key.matrix && node_key.sym_key == sbs_key.sym_key;
      out.weak = node_key.weak();
      if (!out.weak) break;
    }
    handshake_log.push_back(out);
    return out;
  }

  FlowOutcome do_send(Address from, Address to, std::span<const std::uint8_t> plaintext) {
    FlowOutcome flow;
    flow.step = flow_log.size();
    flow.from = from;
    flow.to = to;
    Sensor& sender = sensor(from);
    sensor(to);
    if (!sender.sealer) {
      flow.reason = "sender has no shared key";
      flow_log.push_back(flow);
      return flow;
    }
    flow.reason = "no response";
    active_flow = &flow;
    active_plaintext.assign(plaintext.begin(), plaintext.end());
    const crypto::Ciphertext ct = sender.sealer->seal(plaintext);
    transmit(from, to, MsgType::kData, 0, 0, ct.encode());
    run();
    active_flow = nullptr;
    active_plaintext.clear();
    flow_log.push_back(flow);
    return flow;
  }

  RevocationOutcome do_revoke(Address node, bool rehandshake) {
    if (!station) throw Error(Errc::kConfig, "no SBS configured");
    Sensor& self = sensor(node);
    const std::uint64_t epoch = station->ckg.revoke(node);
    station->epochs[node] = epoch;
    self.epoch = epoch;
    // Other sensors drop any cached decryption key for the revoked node.
    for (auto& [id, other] : sensors) {
      if (id == node) continue;
      std::vector<std::uint8_t> body{static_cast<std::uint8_t>(node >> 8), static_cast<std::uint8_t>(node)};
      transmit(station->identity.id, id, MsgType::kRevocation, 0, 0, std::move(body));
    }
    run();
    RevocationOutcome out{node, epoch, rehandshake};
    revocation_log.push_back(out);
    if (rehandshake) do_handshake(node);
    return out;
  }
};

Simulator::Simulator(ScenarioConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

HandshakeOutcome Simulator::handshake(Address node) { return impl_->do_handshake(node); }

FlowOutcome Simulator::send(Address from, Address to, std::span<const std::uint8_t> plaintext) {
  return impl_->do_send(from, to, plaintext);
}

RevocationOutcome Simulator::revoke(Address node, bool rehandshake) { return impl_->do_revoke(node, rehandshake); }

void Simulator::run_script() {
  for (const ScriptStep& step : impl_->config.script) {
    switch (step.op) {
      case ScriptStep::Op::kHandshake:
        handshake(step.node);
        break;
      case ScriptStep::Op::kSend: {
        const std::vector<std::uint8_t> bytes(step.message.begin(), step.message.end());
        send(step.from, step.to, bytes);
        impl_->flow_log.back().expect_delivered = step.expect_delivered;
        break;
      }
      case ScriptStep::Op::kRevoke:
        revoke(step.node, step.rehandshake);
        break;
    }
  }
}

SimulationReport Simulator::report() const {
  SimulationReport r;
  const ScenarioConfig& c = impl_->config;
  r.config = nlohmann::json{{"field_modulus", c.field.modulus()},
                            {"dims", {{"m", c.m}, {"n", c.n}, {"k", c.k}}},
                            {"seed", c.seed},
                            {"auth_tag", c.suite.auth_tag},
                            {"hash", c.suite.hash_name}};
  r.nodes = c.nodes;
  r.ledger = impl_->ledger.entries();
  r.handshakes = impl_->handshake_log;
  r.flows = impl_->flow_log;
  r.revocations = impl_->revocation_log;
  r.total_frames = impl_->wire.size();
  return r;
}

const ScenarioConfig& Simulator::config() const noexcept { return impl_->config; }
const EnergyLedger& Simulator::ledger() const noexcept { return impl_->ledger; }
const std::vector<WireRecord>& Simulator::wire_log() const noexcept { return impl_->wire; }
const std::vector<HandshakeTrace>& Simulator::handshake_traces() const noexcept { return impl_->traces; }

const crypto::Ckg& Simulator::ckg() const noexcept {
  static const crypto::Ckg kEmpty;
  return impl_->station ? impl_->station->ckg : kEmpty;
}

Address Simulator::station() const noexcept { return impl_->station ? impl_->station->identity.id : 0; }

std::optional<handshake::SharedKey> Simulator::node_key(Address node) const {
  auto it = impl_->sensors.find(node);
  if (it == impl_->sensors.end()) return std::nullopt;
  return it->second.key;
}

nlohmann::json SimulationReport::to_json() const {
  using nlohmann::json;
  json out;
  out["config"] = config;

  json node_list = json::array();
  for (const NodeIdentity& id : nodes) {
    const LedgerEntry& e = ledger.at(id.id);
    node_list.push_back({{"id", id.id},
                         {"role", std::string(role_name(id.role))},
                         {"station_id", id.station_id},
                         {"tx_deci_uj", e.tx_energy.deci_uj()},
                         {"rx_deci_uj", e.rx_energy.deci_uj()},
                         {"total_mj", e.total().mj_string()},
                         {"tx_bytes", e.tx_bytes},
                         {"rx_bytes", e.rx_bytes},
                         {"frames_sent", e.frames_sent},
                         {"frames_received", e.frames_received},
                         {"messages_sent", e.messages_sent},
                         {"messages_received", e.messages_received}});
  }
  out["nodes"] = std::move(node_list);

  json hs = json::array();
  for (const HandshakeOutcome& h : handshakes) {
    hs.push_back({{"node", h.node},
                  {"epoch", h.epoch},
                  {"attempts", h.attempts},
                  {"agreement", h.agreed},
                  {"weak", h.weak},
                  {"node_tx_frames", h.node_tx_frames},
                  {"node_rx_frames", h.node_rx_frames}});
  }
  out["handshakes"] = std::move(hs);

  json fl = json::array();
  for (const FlowOutcome& f : flows) {
    fl.push_back({{"step", f.step},
                  {"from", f.from},
                  {"to", f.to},
                  {"outcome", f.delivered ? "delivered" : "failed"},
                  {"expected", f.expect_delivered ? "delivered" : "failed"},
                  {"reason", f.reason},
                  {"key_requests", f.key_requests},
                  {"sender_messages_sent", f.sender_messages_sent},
                  {"receiver_messages_received", f.receiver_messages_received},
                  {"receiver_messages_sent", f.receiver_messages_sent}});
  }
  out["flows"] = std::move(fl);

  json rv = json::array();
  for (const RevocationOutcome& r : revocations) {
    rv.push_back({{"node", r.node}, {"new_epoch", r.new_epoch}, {"rehandshake", r.rehandshake}});
  }
  out["revocations"] = std::move(rv);
  out["total_frames"] = total_frames;
  if (!analysis.is_null()) out["analysis"] = analysis;
  return out;
}

SimulationReport run_scenario(const ScenarioConfig& config) {
  Simulator sim(config);
  sim.run_script();
  SimulationReport report = sim.report();
  if (config.analysis) {
    nlohmann::json list = nlohmann::json::array();
    for (const HandshakeTrace& trace : sim.handshake_traces()) {
      const analysis::Transcript t = analysis::capture(trace);
      nlohmann::json entry{{"node", trace.node}, {"epoch", trace.epoch}, {"session", trace.session_id}};
      try {
        entry["ambiguity"] = analysis::count_consistent_keys(t, trace.node_key.matrix).to_json();
      } catch (const Error& e) {
        entry["error"] = std::string(errc_name(e.code())) + ": " + e.what();
      }
      entry["key_in_transcript"] = analysis::key_leak_scan(t, trace.node_key.matrix);
      list.push_back(std::move(entry));
    }
    report.analysis = std::move(list);
  }
  return report;
}

}  // namespace uhsn::netsim
