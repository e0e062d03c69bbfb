#include "uhsn/netsim/costs.hpp"

#include <sstream>

#include "uhsn/error.hpp"
#include "uhsn/gf/matrix_codec.hpp"
#include "uhsn/netsim/simulator.hpp"

namespace uhsn::netsim {

namespace {

constexpr Address kStationAddress = 1;
constexpr Address kPatientAddress = 10;

std::uint64_t bits_of(const gf::FieldMatrix& a) { return gf::encoded_bits(a.field(), a.rows(), a.cols()); }

Energy frame_cost(std::size_t tx, std::size_t rx, bool exact) {
  const auto t = static_cast<std::int64_t>(tx);
  const auto r = static_cast<std::int64_t>(rx);
  return exact ? kTxPerFrame * t + kRxPerFrame * r : kRoundedTxPerFrame * t + kRoundedRxPerFrame * r;
}

}  // namespace

std::string_view accounting_name(Accounting a) {
  return a == Accounting::kPerMessage ? "per_message" : "scheme_total";
}

Accounting parse_accounting(std::string_view name) {
  if (name == "per_message") return Accounting::kPerMessage;
  if (name == "scheme_total") return Accounting::kSchemeTotal;
  throw Error(Errc::kConfig, "accounting: expected per_message or scheme_total (got '" + std::string(name) + "')");
}

const std::array<SchemeCost, 3>& reference_costs() {
  static const std::array<SchemeCost, 3> kTable{{
      {"C4W", Energy::microjoules(6300), Energy::microjoules(4800)},
      {"Our Scheme", Energy::microjoules(10100), Energy::microjoules(5700)},
      {"SSSL", Energy::microjoules(19400), Energy::microjoules(19600)},
  }};
  return kTable;
}

HandshakeCostReport handshake_cost_report(std::size_t m, std::size_t n, std::size_t k, gf::FieldSpec field,
                                          std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.field = field;
  cfg.m = m;
  cfg.n = n;
  cfg.k = k;
  cfg.seed = seed;
  cfg.nodes = {{kStationAddress, Role::kBaseStation, 0}, {kPatientAddress, Role::kPatient, 0}};
  Simulator sim(cfg);
  const HandshakeOutcome hs = sim.handshake(kPatientAddress);
  const HandshakeTrace& trace = sim.handshake_traces().back();

  HandshakeCostReport r;
  r.m = m;
  r.n = n;
  r.k = k;
  r.field_modulus = field.modulus();
  r.attempts = hs.attempts;
  r.agreed = hs.agreed;
  r.weak = hs.weak;
  r.node_tx_frames = hs.node_tx_frames;
  r.node_rx_frames = hs.node_rx_frames;
  r.rounded = frame_cost(hs.node_tx_frames, hs.node_rx_frames, false);
  r.exact = frame_cost(hs.node_tx_frames, hs.node_rx_frames, true);
  r.msg1_bits = bits_of(trace.msg1.projector);
  r.msg2_bits = bits_of(trace.msg2.p1) + bits_of(trace.msg2.p2);
  r.msg3_bits = bits_of(trace.msg3.masked);
  r.transmitted_bits = r.msg1_bits + r.msg2_bits + r.msg3_bits;
  r.payload_bytes = handshake::encode(trace.msg1).size() + handshake::encode(trace.msg2).size() +
                    handshake::encode(trace.msg3).size();
  r.ledger_total = sim.ledger().entry(kPatientAddress).total();
  return r;
}

nlohmann::json HandshakeCostReport::to_json() const {
  return {{"dims", {{"m", m}, {"n", n}, {"k", k}}},
          {"field_modulus", field_modulus},
          {"attempts", attempts},
          {"agreement", agreed},
          {"weak", weak},
          {"key_dims", {m, k}},
          {"node_tx_frames", node_tx_frames},
          {"node_rx_frames", node_rx_frames},
          {"rounded_mj", rounded.millijoules()},
          {"rounded_deci_uj", rounded.deci_uj()},
          {"exact_mj", exact.millijoules()},
          {"exact_deci_uj", exact.deci_uj()},
          {"msg1_bits", msg1_bits},
          {"msg2_bits", msg2_bits},
          {"msg3_bits", msg3_bits},
          {"transmitted_bits", transmitted_bits},
          {"payload_bytes", payload_bytes},
          {"ledger_total_deci_uj", ledger_total.deci_uj()}};
}

NodeToNodeCost node_to_node_cost_report(Accounting accounting, bool exact) {
  const Energy receiver = frame_cost(1, 2, exact);
  const Energy sender = accounting == Accounting::kPerMessage ? frame_cost(1, 0, exact) : frame_cost(3, 1, exact);
  return {sender, receiver};
}

std::vector<SchemeCost> comparison_table(Accounting accounting, bool exact) {
  const auto& ref = reference_costs();
  const NodeToNodeCost ours = node_to_node_cost_report(accounting, exact);
  return {ref[0], SchemeCost{ref[1].scheme, ours.sender, ours.receiver}, ref[2]};
}

nlohmann::json comparison_json(const std::vector<SchemeCost>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const SchemeCost& row : rows) {
    out.push_back({{"scheme", row.scheme},
                   {"sender_mj", row.sender.millijoules()},
                   {"receiver_mj", row.receiver.millijoules()},
                   {"sender_deci_uj", row.sender.deci_uj()},
                   {"receiver_deci_uj", row.receiver.deci_uj()}});
  }
  return out;
}

std::string comparison_csv(const std::vector<SchemeCost>& rows) {
  std::ostringstream os;
  os << "scheme,sender_mj,receiver_mj\n";
  for (const SchemeCost& row : rows) os << row.scheme << ',' << row.sender.mj_string() << ',' << row.receiver.mj_string() << '\n';
  return os.str();
}

}  // namespace uhsn::netsim
