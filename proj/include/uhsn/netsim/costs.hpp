#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uhsn/gf/field.hpp"
#include "uhsn/netsim/energy.hpp"

namespace uhsn::netsim {

// per_message: sender pays only the data transmission.
// scheme_total: sender also pays its own key handshake (2 tx + 1 rx).
enum class Accounting { kPerMessage, kSchemeTotal };

std::string_view accounting_name(Accounting a);
// Accepts "per_message" / "scheme_total"; throws kConfig.
Accounting parse_accounting(std::string_view name);

struct SchemeCost {
  std::string scheme;
  Energy sender;
  Energy receiver;
};

// Reference communication cost of two SSL-style schemes and of this one.
const std::array<SchemeCost, 3>& reference_costs();

struct HandshakeCostReport {
  std::size_t m = 0, n = 0, k = 0;
  std::uint32_t field_modulus = 0;
  unsigned attempts = 0;
  bool agreed = false;
  bool weak = false;
  // Final (non-degenerate) attempt.
  std::size_t node_tx_frames = 0;
  std::size_t node_rx_frames = 0;
  Energy rounded;  // frames x 2.9 / 1.4 mJ
  Energy exact;    // frames x 2900.8 / 1401.4 uJ
  // Matrix payload bits per message and in total, from the serialized matrices.
  std::uint64_t msg1_bits = 0;
  std::uint64_t msg2_bits = 0;
  std::uint64_t msg3_bits = 0;
  std::uint64_t transmitted_bits = 0;
  std::uint64_t payload_bytes = 0;
  // Everything the node spent, retries included.
  Energy ledger_total;

  nlohmann::json to_json() const;
};

// Runs a real handshake between one PT and the SBS on the simulator.
HandshakeCostReport handshake_cost_report(std::size_t m, std::size_t n, std::size_t k, gf::FieldSpec field,
                                          std::uint64_t seed = 1);

struct NodeToNodeCost {
  Energy sender;
  Energy receiver;
};

// One frame per message: receiver = 2 rx + 1 tx; sender = 1 tx, or
// 3 tx + 1 rx under scheme_total.
NodeToNodeCost node_to_node_cost_report(Accounting accounting, bool exact = false);

// C4W, this scheme (computed from the accounting above), SSSL.
std::vector<SchemeCost> comparison_table(Accounting accounting, bool exact = false);

nlohmann::json comparison_json(const std::vector<SchemeCost>& rows);
// scheme,sender_mj,receiver_mj
std::string comparison_csv(const std::vector<SchemeCost>& rows);

}  // namespace uhsn::netsim
