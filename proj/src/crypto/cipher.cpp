#include "uhsn/crypto/cipher.hpp"

#include <algorithm>

#include "uhsn/error.hpp"
#include "uhsn/gf/matrix_codec.hpp"

namespace uhsn::crypto {

namespace {

std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

Tag compute_tag(const HashFunction& h, const SymmetricKey& key, const Nonce& nonce,
                std::span<const std::uint8_t> body) {
  const Digest d = h.begin().update(key.bytes).update_u8(0x01).update(nonce).update(body).finish();
  Tag tag{};
  std::copy_n(d.begin(), tag.size(), tag.begin());
  return tag;
}

void apply_keystream(const HashFunction& h, const SymmetricKey& key, const Nonce& nonce,
                     std::span<std::uint8_t> data) {
  std::uint32_t block = 0;
  for (std::size_t off = 0; off < data.size(); off += sizeof(Digest), ++block) {
    const Digest ks = h.begin().update(key.bytes).update(nonce).update_be32(block).finish();
    const std::size_t n = std::min(sizeof(Digest), data.size() - off);
    for (std::size_t i = 0; i < n; ++i) data[off + i] ^= ks[i];
  }
}

}  // namespace

std::vector<std::uint8_t> Ciphertext::encode() const {
  std::vector<std::uint8_t> out;
  out.reserve(kCiphertextOverhead + body.size());
  out.insert(out.end(), nonce.begin(), nonce.end());
  out.insert(out.end(), tag.begin(), tag.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Ciphertext Ciphertext::decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kCiphertextOverhead) throw Error(Errc::kMalformed, "ciphertext too short");
  Ciphertext ct;
  std::copy_n(bytes.begin(), ct.nonce.size(), ct.nonce.begin());
  std::copy_n(bytes.begin() + ct.nonce.size(), ct.tag.size(), ct.tag.begin());
  ct.body.assign(bytes.begin() + kCiphertextOverhead, bytes.end());
  return ct;
}

SymmetricKey derive_sym_key(const gf::FieldMatrix& matrix_key, std::uint64_t epoch,
                            const CipherSuite& suite) {
  const HashFunction h = HashFunction::named(suite.hash_name);
  const Digest d = h.begin()
                       .update(as_bytes(kKdfDomainTag))
                       .update_be32(matrix_key.field().modulus())
                       .update_be32(static_cast<std::uint32_t>(matrix_key.rows()))
                       .update_be32(static_cast<std::uint32_t>(matrix_key.cols()))
                       .update_be64(epoch)
                       .update(gf::mat_serialize(matrix_key))
                       .finish();
  return SymmetricKey{d, epoch};
}

Ciphertext encrypt(const SymmetricKey& key, const Nonce& nonce, std::span<const std::uint8_t> plaintext,
                   const CipherSuite& suite) {
  const HashFunction h = HashFunction::named(suite.hash_name);
  Ciphertext ct;
  ct.nonce = nonce;
  ct.body.assign(plaintext.begin(), plaintext.end());
  apply_keystream(h, key, nonce, ct.body);
  if (suite.auth_tag) ct.tag = compute_tag(h, key, nonce, ct.body);
  return ct;
}

std::vector<std::uint8_t> decrypt(const SymmetricKey& key, const Ciphertext& ct, const CipherSuite& suite) {
  const HashFunction h = HashFunction::named(suite.hash_name);
  if (suite.auth_tag) {
    const Tag expected = compute_tag(h, key, ct.nonce, ct.body);
    std::uint8_t diff = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) diff |= expected[i] ^ ct.tag[i];
    if (diff != 0) throw Error(Errc::kAuthFailure, "ciphertext authentication failed");
  }
  std::vector<std::uint8_t> out = ct.body;
  apply_keystream(h, key, ct.nonce, out);
  return out;
}

SealingKey::SealingKey(SymmetricKey key, std::array<std::uint8_t, 4> prefix, CipherSuite suite)
    : key_(key), prefix_(prefix), suite_(std::move(suite)) {}

Ciphertext SealingKey::seal(std::span<const std::uint8_t> plaintext) {
  Nonce nonce{};
  for (;;) {
    std::copy(prefix_.begin(), prefix_.end(), nonce.begin());
    for (int i = 0; i < 8; ++i) nonce[4 + i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
    ++counter_;
    if (!used_.contains(nonce)) break;
  }
  return seal_with(nonce, plaintext);
}

Ciphertext SealingKey::seal_with(const Nonce& nonce, std::span<const std::uint8_t> plaintext) {
  if (!used_.insert(nonce).second) throw Error(Errc::kNonceReuse, "nonce already used under this key");
  return encrypt(key_, nonce, plaintext, suite_);
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw Error(Errc::kMalformed, "odd-length hex string");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::kMalformed, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

}  // namespace uhsn::crypto
