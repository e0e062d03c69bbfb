#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "uhsn/netsim/frame.hpp"

namespace uhsn::netsim {

// Energy in fixed-point tenths of a microjoule; all accounting is integer.
class Energy {
 public:
  constexpr Energy() = default;
  static constexpr Energy deci_microjoules(std::int64_t v) { return Energy(v); }
  static constexpr Energy microjoules(std::int64_t v) { return Energy(v * 10); }

  constexpr std::int64_t deci_uj() const noexcept { return v_; }
  double millijoules() const noexcept { return static_cast<double>(v_) / 10000.0; }
  double microjoules_f() const noexcept { return static_cast<double>(v_) / 10.0; }
  // Exact decimal rendering in mJ with trailing zeros trimmed ("2.9008", "7.2").
  std::string mj_string() const;
  std::string uj_string() const;

  constexpr Energy operator+(Energy o) const { return Energy(v_ + o.v_); }
  constexpr Energy& operator+=(Energy o) {
    v_ += o.v_;
    return *this;
  }
  constexpr Energy operator*(std::int64_t n) const { return Energy(v_ * n); }
  friend constexpr Energy operator*(std::int64_t n, Energy e) { return e * n; }
  constexpr auto operator<=>(const Energy&) const = default;

 private:
  explicit constexpr Energy(std::int64_t v) : v_(v) {}
  std::int64_t v_ = 0;
};

// Radio cost per byte on the reference mote.
inline constexpr Energy kTxPerByte = Energy::deci_microjoules(592);  // 59.2 uJ
inline constexpr Energy kRxPerByte = Energy::deci_microjoules(286);  // 28.6 uJ
inline constexpr Energy kTxPerFrame = kTxPerByte * static_cast<std::int64_t>(kFrameSize);  // 2900.8 uJ
inline constexpr Energy kRxPerFrame = kRxPerByte * static_cast<std::int64_t>(kFrameSize);  // 1401.4 uJ
// Per-frame figures rounded to 0.1 mJ, the granularity of the comparison table.
inline constexpr Energy kRoundedTxPerFrame = Energy::microjoules(2900);
inline constexpr Energy kRoundedRxPerFrame = Energy::microjoules(1400);
// Documented only; CPU energy is not simulated.
inline constexpr std::uint32_t kCyclesPerTransmittedBit = 2090;

struct LedgerEntry {
  Energy tx_energy;
  Energy rx_energy;
  std::uint64_t tx_bytes = 0;
  std::uint64_t rx_bytes = 0;
  std::uint64_t frames_sent = 0;
  std::uint64_t frames_received = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_received = 0;

  Energy total() const { return tx_energy + rx_energy; }
  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

class EnergyLedger {
 public:
  void add_node(Address node);
  bool has_node(Address node) const { return entries_.contains(node); }

  // Throws kUnknownNode.
  void charge_tx(Address node, std::size_t frames);
  void charge_rx(Address node, std::size_t frames);
  void count_message_sent(Address node);
  void count_message_received(Address node);

  const LedgerEntry& entry(Address node) const;
  const std::map<Address, LedgerEntry>& entries() const noexcept { return entries_; }

 private:
  LedgerEntry& at(Address node);
  std::map<Address, LedgerEntry> entries_;
};

}  // namespace uhsn::netsim
