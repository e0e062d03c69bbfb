#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "uhsn/crypto/cipher.hpp"
#include "uhsn/handshake.hpp"

namespace uhsn::crypto {

using NodeId = std::uint16_t;

struct CkgRecord {
  NodeId node_id = 0;
  handshake::SharedKey shared_key;
  bool revoked = false;
  // Minimum epoch a replacement key must carry once revoked.
  std::uint64_t next_epoch = 0;
};

// K_d (the sender's 32-byte symmetric key) sealed under the receiver's key.
struct DecryptionKeyResponse {
  Ciphertext wrapped;
  NodeId sender_id = 0;
  NodeId receiver_id = 0;

  // be16(sender) || be16(receiver) || wrapped.encode()
  std::vector<std::uint8_t> encode() const;
  static DecryptionKeyResponse decode(std::span<const std::uint8_t> bytes);
};

// Central key generator living at the base station: one record per node,
// keyed by address.
class Ckg {
 public:
  explicit Ckg(CipherSuite suite = {}) : suite_(std::move(suite)) {}

  // Registers or replaces a node key. A revoked record is only replaced by a
  // key whose epoch is >= its next_epoch (kStaleEpoch otherwise).
  void install(NodeId node, handshake::SharedKey key);

  // Throws kUnknownNode, kSenderRevoked or kReceiverRevoked.
  DecryptionKeyResponse issue(NodeId sender, NodeId receiver);

  // Marks the record revoked and returns the epoch the re-handshake must use.
  // Idempotent until a new key is installed.
  std::uint64_t revoke(NodeId node);

  const CkgRecord* find(NodeId node) const;
  std::size_t size() const noexcept { return records_.size(); }

 private:
  struct Entry {
    CkgRecord record;
    SealingKey wrapper;
  };

  CipherSuite suite_;
  std::map<NodeId, Entry> records_;
};

// Receiver side: opens the response with its own key. Throws kAuthFailure if
// the wrap was made for a different (or stale) key.
SymmetricKey unwrap_kd(const SymmetricKey& receiver_key, const DecryptionKeyResponse& resp,
                       const CipherSuite& suite = {});

}  // namespace uhsn::crypto
