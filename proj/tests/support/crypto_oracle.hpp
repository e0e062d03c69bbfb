#pragma once

#include <algorithm>

#include "support/oracles.hpp"
#include "uhsn/crypto/cipher.hpp"
#include "uhsn/gf/matrix_codec.hpp"

// KDF and cipher rebuilt on the oracle SHA-256; only the canonical matrix
// encoding is shared with the library.
inline uhsn::crypto::KeyBytes oracle_kdf(const uhsn::gf::FieldMatrix& a, std::uint64_t epoch) {
  std::vector<std::uint8_t> in(uhsn::crypto::kKdfDomainTag.begin(), uhsn::crypto::kKdfDomainTag.end());
  oracle::put_be(in, a.field().modulus(), 4);
  oracle::put_be(in, a.rows(), 4);
  oracle::put_be(in, a.cols(), 4);
  oracle::put_be(in, epoch, 8);
  const auto body = uhsn::gf::mat_serialize(a);
  in.insert(in.end(), body.begin(), body.end());
  oracle::Sha256 h;
  return h.update(in).digest();
}

inline uhsn::crypto::Ciphertext oracle_encrypt(const uhsn::crypto::KeyBytes& key, const uhsn::crypto::Nonce& nonce,
                                               const std::vector<std::uint8_t>& pt) {
  uhsn::crypto::Ciphertext ct;
  ct.nonce = nonce;
  ct.body.resize(pt.size());
  for (std::size_t block = 0; block * 32 < pt.size(); ++block) {
    std::vector<std::uint8_t> in(key.begin(), key.end());
    in.insert(in.end(), nonce.begin(), nonce.end());
    oracle::put_be(in, block, 4);
    oracle::Sha256 h;
    const auto ks = h.update(in).digest();
    for (std::size_t i = 0; i < 32 && block * 32 + i < pt.size(); ++i)
      ct.body[block * 32 + i] = pt[block * 32 + i] ^ ks[i];
  }
  std::vector<std::uint8_t> in(key.begin(), key.end());
  in.push_back(0x01);
  in.insert(in.end(), nonce.begin(), nonce.end());
  in.insert(in.end(), ct.body.begin(), ct.body.end());
  oracle::Sha256 h;
  const auto d = h.update(in).digest();
  std::copy_n(d.begin(), 16, ct.tag.begin());
  return ct;
}
