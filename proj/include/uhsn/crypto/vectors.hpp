#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uhsn/crypto/cipher.hpp"

namespace uhsn::crypto {

// Plain-text, hex-encoded test vectors for cross-implementation checks.
// One record per line, '#' starts a comment:
//   kdf q=<q> rows=<r> cols=<c> epoch=<e> matrix=<hex> key=<hex>
//   cipher auth=<0|1> key=<hex> nonce=<hex> plaintext=<hex> body=<hex> tag=<hex>
struct KdfVector {
  std::uint32_t modulus = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t epoch = 0;
  std::vector<std::uint8_t> matrix;  // canonical encoding
  KeyBytes key{};
};

struct CipherVector {
  bool auth = true;
  KeyBytes key{};
  Nonce nonce{};
  std::vector<std::uint8_t> plaintext;
  std::vector<std::uint8_t> body;
  Tag tag{};
};

struct VectorSet {
  std::vector<KdfVector> kdf;
  std::vector<CipherVector> cipher;
};

// Fixed inputs, outputs computed by this library.
VectorSet generate_reference_vectors();

std::string format_vectors(const VectorSet& set);
// Throws kMalformed with the offending line number.
VectorSet parse_vectors(std::string_view text);

struct VectorCheck {
  std::size_t checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty() && checked > 0; }
};

// Recomputes every record with this library and compares bit for bit.
VectorCheck verify_vectors(const VectorSet& frozen);

}  // namespace uhsn::crypto
