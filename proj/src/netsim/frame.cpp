#include "uhsn/netsim/frame.hpp"

#include <algorithm>
#include <string>

#include "uhsn/error.hpp"

namespace uhsn::netsim {

namespace {

void put16(RawFrame& raw, std::size_t at, std::uint16_t v) {
  raw[at] = static_cast<std::uint8_t>(v >> 8);
  raw[at + 1] = static_cast<std::uint8_t>(v);
}

std::uint16_t get16(const RawFrame& raw, std::size_t at) {
  return static_cast<std::uint16_t>(raw[at] << 8 | raw[at + 1]);
}

}  // namespace

std::uint8_t frame_checksum(const RawFrame& raw) {
  std::uint8_t x = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i != kCrcOffset) x ^= raw[i];
  }
  return x;
}

RawFrame Frame::encode() const {
  RawFrame raw{};
  put16(raw, 0, src);
  put16(raw, 2, dst);
  raw[4] = length;
  raw[5] = packet_id;
  raw[7] = control;
  raw[8] = static_cast<std::uint8_t>(msg_type);
  put16(raw, 9, session_id);
  put16(raw, 11, seq);
  raw[13] = frag_index;
  raw[14] = frag_total;
  put16(raw, 15, dims_hint);
  std::copy(payload.begin(), payload.end(), raw.begin() + kPreambleSize + kHeaderSize);
  raw[kCrcOffset] = frame_checksum(raw);
  return raw;
}

Frame Frame::decode(const RawFrame& raw) {
  if (raw[kCrcOffset] != frame_checksum(raw)) throw Error(Errc::kCrcFailure, "frame checksum mismatch");
  Frame f;
  f.src = get16(raw, 0);
  f.dst = get16(raw, 2);
  f.length = raw[4];
  f.packet_id = raw[5];
  f.control = raw[7];
  f.msg_type = static_cast<MsgType>(raw[8]);
  f.session_id = get16(raw, 9);
  f.seq = get16(raw, 11);
  f.frag_index = raw[13];
  f.frag_total = raw[14];
  f.dims_hint = get16(raw, 15);
  std::copy_n(raw.begin() + kPreambleSize + kHeaderSize, kPayloadSize, f.payload.begin());
  if (f.length > kPayloadSize) throw Error(Errc::kMalformed, "payload length exceeds 32 bytes");
  if (f.frag_total == 0 || f.frag_index >= f.frag_total) throw Error(Errc::kMalformed, "bad fragment index");
  return f;
}

std::vector<RawFrame> fragment(const Envelope& msg, std::uint8_t first_packet_id) {
  if (msg.bytes.size() > kMaxMessageSize) {
    throw Error(Errc::kOversize, "message of " + std::to_string(msg.bytes.size()) + " bytes exceeds " +
                                     std::to_string(kMaxMessageSize));
  }
  const std::size_t total = std::max<std::size_t>(1, (msg.bytes.size() + kPayloadSize - 1) / kPayloadSize);
  std::vector<RawFrame> out;
  out.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    Frame f;
    f.src = msg.src;
    f.dst = msg.dst;
    f.packet_id = static_cast<std::uint8_t>(first_packet_id + i);
    f.control = i + 1 == total ? kControlLastFragment : 0;
    f.msg_type = msg.msg_type;
    f.session_id = msg.session_id;
    f.seq = msg.seq;
    f.frag_index = static_cast<std::uint8_t>(i);
    f.frag_total = static_cast<std::uint8_t>(total);
    f.dims_hint = msg.dims_hint;
    const std::size_t off = i * kPayloadSize;
    const std::size_t len = std::min(kPayloadSize, msg.bytes.size() - std::min(off, msg.bytes.size()));
    f.length = static_cast<std::uint8_t>(len);
    std::copy_n(msg.bytes.begin() + static_cast<std::ptrdiff_t>(off), len, f.payload.begin());
    out.push_back(f.encode());
  }
  return out;
}

Envelope reassemble(std::span<const RawFrame> frames) {
  if (frames.empty()) throw Error(Errc::kFragmentGap, "no fragments");
  std::vector<Frame> parts;
  parts.reserve(frames.size());
  for (const RawFrame& raw : frames) parts.push_back(Frame::decode(raw));
  std::sort(parts.begin(), parts.end(), [](const Frame& a, const Frame& b) { return a.frag_index < b.frag_index; });

  const Frame& head = parts.front();
  if (parts.size() != head.frag_total) {
    throw Error(Errc::kFragmentGap, "have " + std::to_string(parts.size()) + " of " +
                                        std::to_string(head.frag_total) + " fragments");
  }
  Envelope msg{head.src, head.dst, head.msg_type, head.session_id, head.seq, head.dims_hint, {}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Frame& f = parts[i];
    if (f.frag_index != i) throw Error(Errc::kFragmentGap, "missing fragment " + std::to_string(i));
    if (f.src != head.src || f.dst != head.dst || f.msg_type != head.msg_type || f.session_id != head.session_id ||
        f.seq != head.seq || f.frag_total != head.frag_total) {
      throw Error(Errc::kFragmentGap, "fragment " + std::to_string(i) + " belongs to a different message");
    }
    if (i + 1 < parts.size() && f.length != kPayloadSize) {
      throw Error(Errc::kMalformed, "short fragment before the last one");
    }
    msg.bytes.insert(msg.bytes.end(), f.payload.begin(), f.payload.begin() + f.length);
  }
  return msg;
}

}  // namespace uhsn::netsim
