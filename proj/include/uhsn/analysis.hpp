#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "uhsn/handshake.hpp"
#include "uhsn/netsim/simulator.hpp"

namespace uhsn::analysis {

// The four matrices an eavesdropper sees during one handshake.
struct Transcript {
  handshake::Params params;
  gf::FieldMatrix t1;  // X_g X        (n x n)
  gf::FieldMatrix t2;  // X_g X Y      (n x k)
  gf::FieldMatrix t3;  // X_g X Y Y_g  (n x n)
  gf::FieldMatrix t4;  // X Y Y_g      (m x n)

  // Concatenated canonical encodings, in wire order.
  std::vector<std::uint8_t> bytes() const;
  friend bool operator==(const Transcript&, const Transcript&) = default;
};

Transcript capture(const handshake::Run& run);
Transcript capture(const netsim::HandshakeTrace& trace);
// Rebuilds the transcript from raw frames on the air for one node/session.
// Throws kIncompleteRun if any of the three messages is missing.
Transcript capture(std::span<const netsim::WireRecord> wire, netsim::Address node, netsim::Address station,
                   std::uint16_t session_id, const handshake::Params& params);

struct AmbiguityReport {
  handshake::Params params;
  std::uint64_t total_secret_pairs_enumerated = 0;
  std::uint64_t consistent_pair_count = 0;
  std::uint64_t consistent_key_count = 0;
  bool true_key_found = false;

  nlohmann::json to_json() const;
};

// Upper bound on q^(mn + nk) for exhaustive enumeration.
inline constexpr std::uint64_t kMaxEnumeratedPairs = std::uint64_t{1} << 24;

// Exhaustive adversary: every (X', Y') together with every generalized
// inverse X'_g, Y'_g that reproduces all four transcript matrices is
// consistent; the report counts the distinct products X'Y'. Throws
// kSpaceTooLarge past kMaxEnumeratedPairs.
AmbiguityReport count_consistent_keys(const Transcript& transcript, const gf::FieldMatrix& true_key);

// True iff the encoded key equals a transcript matrix or occurs as a
// contiguous run of the concatenated transcript bytes.
bool key_leak_scan(const Transcript& transcript, const gf::FieldMatrix& key);

// Every generalized inverse of `a`, by enumeration of all cols x rows matrices.
std::vector<gf::FieldMatrix> all_generalized_inverses(const gf::FieldMatrix& a);

}  // namespace uhsn::analysis
