#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uhsn::netsim {

// On-air unit, always 49 bytes:
//   preamble (8): src(2) dst(2) length(1) packet_id(1) crc(1) control(1)
//   header   (9): msg_type(1) session_id(2) seq(2) frag_index(1) frag_total(1) dims_hint(2)
//   payload (32): zero-padded
// Multi-byte fields are big-endian. `length` is the number of meaningful
// payload bytes. `crc` is the XOR of the other 48 bytes.
inline constexpr std::size_t kPreambleSize = 8;
inline constexpr std::size_t kHeaderSize = 9;
inline constexpr std::size_t kPayloadSize = 32;
inline constexpr std::size_t kFrameSize = kPreambleSize + kHeaderSize + kPayloadSize;
inline constexpr std::size_t kMaxFragments = 255;
inline constexpr std::size_t kMaxMessageSize = kMaxFragments * kPayloadSize;
inline constexpr std::size_t kCrcOffset = 6;

inline constexpr std::uint8_t kControlLastFragment = 0x01;

using RawFrame = std::array<std::uint8_t, kFrameSize>;
using Address = std::uint16_t;

enum class MsgType : std::uint8_t {
  kHandshakeInit = 1,     // node -> SBS, X_g X
  kHandshakeReply = 2,    // SBS -> node, P1 || P2
  kHandshakeConfirm = 3,  // node -> SBS, X Y Y_g
  kData = 4,              // node -> node, ciphertext
  kKeyRequest = 5,        // receiver -> SBS, (sender, receiver)
  kKeyResponse = 6,       // SBS -> receiver, wrapped K_d
  kKeyRefusal = 7,        // SBS -> receiver, refusal code
  kRevocation = 8,        // SBS -> nodes, revoked address
};

struct Frame {
  Address src = 0;
  Address dst = 0;
  std::uint8_t length = 0;
  std::uint8_t packet_id = 0;
  std::uint8_t control = 0;
  MsgType msg_type = MsgType::kData;
  std::uint16_t session_id = 0;
  std::uint16_t seq = 0;
  std::uint8_t frag_index = 0;
  std::uint8_t frag_total = 0;
  std::uint16_t dims_hint = 0;
  std::array<std::uint8_t, kPayloadSize> payload{};

  // Computes the checksum while encoding.
  RawFrame encode() const;
  // Throws kCrcFailure on checksum mismatch, kMalformed on bad fields.
  static Frame decode(const RawFrame& raw);
};

std::uint8_t frame_checksum(const RawFrame& raw);

// A whole logical message before fragmentation.
struct Envelope {
  Address src = 0;
  Address dst = 0;
  MsgType msg_type = MsgType::kData;
  std::uint16_t session_id = 0;
  std::uint16_t seq = 0;
  std::uint16_t dims_hint = 0;
  std::vector<std::uint8_t> bytes;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

// ceil(len / 32) frames (one frame for an empty message). Packet ids run
// from `first_packet_id` and wrap mod 256. Throws kOversize.
std::vector<RawFrame> fragment(const Envelope& msg, std::uint8_t first_packet_id = 0);

// Inverse of fragment. Frames may arrive in any order; throws kCrcFailure,
// kFragmentGap (missing/duplicate index or inconsistent headers) or kMalformed.
Envelope reassemble(std::span<const RawFrame> frames);

}  // namespace uhsn::netsim
