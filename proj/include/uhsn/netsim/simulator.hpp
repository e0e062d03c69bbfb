#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "uhsn/crypto/ckg.hpp"
#include "uhsn/handshake.hpp"
#include "uhsn/netsim/energy.hpp"
#include "uhsn/netsim/frame.hpp"
#include "uhsn/netsim/scenario.hpp"

namespace uhsn::netsim {

// Retries after a degenerate (all-zero) key before giving up.
inline constexpr unsigned kMaxHandshakeAttempts = 16;

struct HandshakeOutcome {
  Address node = 0;
  std::uint64_t epoch = 0;
  unsigned attempts = 0;
  bool agreed = false;
  bool weak = false;
  std::size_t node_tx_frames = 0;  // final attempt only
  std::size_t node_rx_frames = 0;
};

struct FlowOutcome {
  std::size_t step = 0;
  Address from = 0;
  Address to = 0;
  bool delivered = false;
  bool expect_delivered = true;
  std::string reason;
  std::size_t key_requests = 0;
  std::size_t sender_messages_sent = 0;
  std::size_t receiver_messages_received = 0;
  std::size_t receiver_messages_sent = 0;
};

struct RevocationOutcome {
  Address node = 0;
  std::uint64_t new_epoch = 0;
  bool rehandshake = false;
};

// Everything both ends did during one completed handshake attempt.
struct HandshakeTrace {
  Address node = 0;
  std::uint64_t epoch = 0;
  std::uint16_t session_id = 0;
  handshake::Msg1 msg1;
  handshake::Msg2 msg2;
  handshake::Msg3 msg3;
  gf::FieldMatrix node_secret;
  gf::FieldMatrix node_secret_inverse;
  gf::FieldMatrix sbs_secret;
  gf::FieldMatrix sbs_secret_inverse;
  handshake::SharedKey node_key;
  handshake::SharedKey sbs_key;
};

// Every frame put on the air, in transmission order.
struct WireRecord {
  std::uint64_t tick = 0;
  RawFrame frame{};
};

struct SimulationReport {
  nlohmann::json config;
  std::vector<NodeIdentity> nodes;
  std::map<Address, LedgerEntry> ledger;
  std::vector<HandshakeOutcome> handshakes;
  std::vector<FlowOutcome> flows;
  std::vector<RevocationOutcome> revocations;
  std::uint64_t total_frames = 0;
  nlohmann::json analysis;  // null unless requested

  nlohmann::json to_json() const;
};

// Single-threaded discrete-event network: one logical SBS hosting the key
// generator plus PT/HSS sensor nodes on a lossless, ordered channel. Each
// public call injects traffic and runs the event loop until it drains.
class Simulator {
 public:
  explicit Simulator(ScenarioConfig config);
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  HandshakeOutcome handshake(Address node);
  FlowOutcome send(Address from, Address to, std::span<const std::uint8_t> plaintext);
  RevocationOutcome revoke(Address node, bool rehandshake);

  // Executes config().script in order.
  void run_script();

  SimulationReport report() const;

  const ScenarioConfig& config() const noexcept;
  const EnergyLedger& ledger() const noexcept;
  const std::vector<WireRecord>& wire_log() const noexcept;
  const std::vector<HandshakeTrace>& handshake_traces() const noexcept;
  const crypto::Ckg& ckg() const noexcept;
  Address station() const noexcept;
  std::optional<handshake::SharedKey> node_key(Address node) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SimulationReport run_scenario(const ScenarioConfig& config);

}  // namespace uhsn::netsim
