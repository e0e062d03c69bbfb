#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "uhsn/crypto/hash.hpp"
#include "uhsn/gf/matrix.hpp"

namespace uhsn::crypto {

using KeyBytes = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, 12>;
using Tag = std::array<std::uint8_t, 16>;

inline constexpr std::string_view kKdfDomainTag = "uhsn/kdf/v1";

struct CipherSuite {
  std::string hash_name = "SHA256";
  // When false, tags are left zero and never checked (confidentiality only).
  bool auth_tag = true;
};

struct SymmetricKey {
  KeyBytes bytes{};
  std::uint64_t source_epoch = 0;

  friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;
};

struct Ciphertext {
  Nonce nonce{};
  std::vector<std::uint8_t> body;
  Tag tag{};

  // nonce || tag || body
  std::vector<std::uint8_t> encode() const;
  static Ciphertext decode(std::span<const std::uint8_t> bytes);

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

inline constexpr std::size_t kCiphertextOverhead = sizeof(Nonce) + sizeof(Tag);

// H(tag || q || m || k || epoch || canonical matrix bytes), integers big-endian
// (q, m, k as 32-bit, epoch as 64-bit).
SymmetricKey derive_sym_key(const gf::FieldMatrix& matrix_key, std::uint64_t epoch,
                            const CipherSuite& suite = {});

// body = plaintext XOR keystream, block i = H(key || nonce || be32(i));
// tag = H(key || 0x01 || nonce || body)[0..16).
Ciphertext encrypt(const SymmetricKey& key, const Nonce& nonce, std::span<const std::uint8_t> plaintext,
                   const CipherSuite& suite = {});

// Verifies the tag before releasing plaintext; throws kAuthFailure.
std::vector<std::uint8_t> decrypt(const SymmetricKey& key, const Ciphertext& ct,
                                  const CipherSuite& suite = {});

// Owns a key together with its nonce space: nonce = prefix (4 bytes) ||
// be64(counter). Explicit nonces are accepted once each.
class SealingKey {
 public:
  SealingKey(SymmetricKey key, std::array<std::uint8_t, 4> prefix, CipherSuite suite = {});

  Ciphertext seal(std::span<const std::uint8_t> plaintext);
  // Throws kNonceReuse if `nonce` was already used under this key.
  Ciphertext seal_with(const Nonce& nonce, std::span<const std::uint8_t> plaintext);

  const SymmetricKey& key() const noexcept { return key_; }
  const CipherSuite& suite() const noexcept { return suite_; }

 private:
  SymmetricKey key_;
  std::array<std::uint8_t, 4> prefix_;
  CipherSuite suite_;
  std::uint64_t counter_ = 0;
  std::set<Nonce> used_;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace uhsn::crypto
