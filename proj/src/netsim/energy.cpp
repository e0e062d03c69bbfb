#include "uhsn/netsim/energy.hpp"

#include "uhsn/error.hpp"

namespace uhsn::netsim {

namespace {

// value / 10^scale rendered exactly, trailing zeros trimmed.
std::string fixed_decimal(std::int64_t value, int scale) {
  const bool negative = value < 0;
  std::uint64_t v = negative ? static_cast<std::uint64_t>(-value) : static_cast<std::uint64_t>(value);
  std::uint64_t div = 1;
  for (int i = 0; i < scale; ++i) div *= 10;
  std::string frac = std::to_string(v % div);
  frac.insert(0, static_cast<std::size_t>(scale) - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = (negative ? "-" : "") + std::to_string(v / div);
  if (!frac.empty()) out += "." + frac;
  return out;
}

}  // namespace

std::string Energy::mj_string() const { return fixed_decimal(v_, 4); }
std::string Energy::uj_string() const { return fixed_decimal(v_, 1); }

void EnergyLedger::add_node(Address node) { entries_.try_emplace(node); }

LedgerEntry& EnergyLedger::at(Address node) {
  auto it = entries_.find(node);
  if (it == entries_.end()) throw Error(Errc::kUnknownNode, "no ledger entry for node " + std::to_string(node));
  return it->second;
}

const LedgerEntry& EnergyLedger::entry(Address node) const {
  auto it = entries_.find(node);
  if (it == entries_.end()) throw Error(Errc::kUnknownNode, "no ledger entry for node " + std::to_string(node));
  return it->second;
}

void EnergyLedger::charge_tx(Address node, std::size_t frames) {
  LedgerEntry& e = at(node);
  const auto n = static_cast<std::int64_t>(frames);
  e.tx_energy += kTxPerFrame * n;
  e.tx_bytes += frames * kFrameSize;
  e.frames_sent += frames;
}

void EnergyLedger::charge_rx(Address node, std::size_t frames) {
  LedgerEntry& e = at(node);
  const auto n = static_cast<std::int64_t>(frames);
  e.rx_energy += kRxPerFrame * n;
  e.rx_bytes += frames * kFrameSize;
  e.frames_received += frames;
}

void EnergyLedger::count_message_sent(Address node) { ++at(node).messages_sent; }
void EnergyLedger::count_message_received(Address node) { ++at(node).messages_received; }

}  // namespace uhsn::netsim
