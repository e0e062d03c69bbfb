#include "uhsn/crypto/ckg.hpp"

#include <algorithm>
#include <string>

#include "uhsn/error.hpp"

namespace uhsn::crypto {

namespace {

std::array<std::uint8_t, 4> wrap_prefix(NodeId node, std::uint64_t epoch) {
  // 0xFF marks nonces drawn by the key generator rather than by a node.
  return {0xFF, static_cast<std::uint8_t>(node >> 8), static_cast<std::uint8_t>(node),
          static_cast<std::uint8_t>(epoch)};
}

std::string node_name(NodeId id) { return "node " + std::to_string(id); }

}  // namespace

std::vector<std::uint8_t> DecryptionKeyResponse::encode() const {
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(sender_id >> 8), static_cast<std::uint8_t>(sender_id),
                                static_cast<std::uint8_t>(receiver_id >> 8),
                                static_cast<std::uint8_t>(receiver_id)};
  const auto body = wrapped.encode();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

DecryptionKeyResponse DecryptionKeyResponse::decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw Error(Errc::kMalformed, "key response too short");
  DecryptionKeyResponse resp;
  resp.sender_id = static_cast<NodeId>(bytes[0] << 8 | bytes[1]);
  resp.receiver_id = static_cast<NodeId>(bytes[2] << 8 | bytes[3]);
  resp.wrapped = Ciphertext::decode(bytes.subspan(4));
  return resp;
}

void Ckg::install(NodeId node, handshake::SharedKey key) {
  auto it = records_.find(node);
  if (it != records_.end() && it->second.record.revoked && key.epoch < it->second.record.next_epoch) {
    throw Error(Errc::kStaleEpoch, node_name(node) + " is revoked; replacement key must have epoch >= " +
                                       std::to_string(it->second.record.next_epoch));
  }
  if (it != records_.end() && it->second.record.shared_key.sym_key == key.sym_key) {
    // Same key material: keep the wrapper so its nonce sequence continues.
    it->second.record.revoked = false;
    return;
  }
  const std::uint64_t epoch = key.epoch;
  SealingKey wrapper(key.sym_key, wrap_prefix(node, epoch), suite_);
  CkgRecord record{node, std::move(key), false, epoch + 1};
  records_.insert_or_assign(node, Entry{std::move(record), std::move(wrapper)});
}

DecryptionKeyResponse Ckg::issue(NodeId sender, NodeId receiver) {
  auto s = records_.find(sender);
  if (s == records_.end()) throw Error(Errc::kUnknownNode, "sender " + node_name(sender) + " is not registered");
  auto r = records_.find(receiver);
  if (r == records_.end()) throw Error(Errc::kUnknownNode, "receiver " + node_name(receiver) + " is not registered");
  if (s->second.record.revoked) throw Error(Errc::kSenderRevoked, "sender " + node_name(sender) + " is revoked");
  if (r->second.record.revoked) throw Error(Errc::kReceiverRevoked, "receiver " + node_name(receiver) + " is revoked");

  const KeyBytes& kd = s->second.record.shared_key.sym_key.bytes;
  return DecryptionKeyResponse{r->second.wrapper.seal(kd), sender, receiver};
}

std::uint64_t Ckg::revoke(NodeId node) {
  auto it = records_.find(node);
  if (it == records_.end()) throw Error(Errc::kUnknownNode, node_name(node) + " is not registered");
  it->second.record.revoked = true;
  return it->second.record.next_epoch;
}

const CkgRecord* Ckg::find(NodeId node) const {
  auto it = records_.find(node);
  return it == records_.end() ? nullptr : &it->second.record;
}

SymmetricKey unwrap_kd(const SymmetricKey& receiver_key, const DecryptionKeyResponse& resp,
                       const CipherSuite& suite) {
  const std::vector<std::uint8_t> plain = decrypt(receiver_key, resp.wrapped, suite);
  if (plain.size() != sizeof(KeyBytes)) throw Error(Errc::kMalformed, "wrapped key has the wrong length");
  SymmetricKey kd;
  std::copy(plain.begin(), plain.end(), kd.bytes.begin());
  return kd;
}

}  // namespace uhsn::crypto
