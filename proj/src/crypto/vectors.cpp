#include "uhsn/crypto/vectors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "uhsn/error.hpp"
#include "uhsn/gf/matrix_codec.hpp"

namespace uhsn::crypto {

namespace {

template <std::size_t N>
std::array<std::uint8_t, N> fixed_from_hex(std::string_view hex, const std::string& where) {
  const auto bytes = from_hex(hex);
  if (bytes.size() != N) throw Error(Errc::kMalformed, where + ": expected " + std::to_string(N) + " bytes");
  std::array<std::uint8_t, N> out{};
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

gf::FieldMatrix matrix_of(std::uint32_t q, std::size_t rows, std::size_t cols, std::vector<gf::Element> e) {
  return gf::FieldMatrix(gf::FieldSpec(q), rows, cols, std::move(e));
}

}  // namespace

VectorSet generate_reference_vectors() {
  struct KdfInput {
    gf::FieldMatrix matrix;
    std::uint64_t epoch;
  };
  const std::vector<KdfInput> kdf_inputs{
      {matrix_of(5, 1, 1, {3}), 1},
      {matrix_of(5, 1, 1, {0}), 0},
      {matrix_of(5, 2, 2, {0, 0, 0, 0}), 0},
      {matrix_of(251, 2, 2, {1, 0, 0, 1}), 0},
      {matrix_of(2, 1, 8, {1, 1, 1, 1, 1, 1, 1, 1}), 2},
      {matrix_of(2, 2, 3, {1, 0, 1, 1, 1, 0}), 5},
      {matrix_of(257, 3, 2, {256, 0, 1, 128, 255, 17}), 7},
  };
  VectorSet set;
  for (const KdfInput& in : kdf_inputs) {
    set.kdf.push_back(KdfVector{in.matrix.field().modulus(), in.matrix.rows(), in.matrix.cols(), in.epoch,
                                gf::mat_serialize(in.matrix), derive_sym_key(in.matrix, in.epoch).bytes});
  }

  const SymmetricKey key = derive_sym_key(matrix_of(5, 1, 1, {3}), 1);
  std::vector<std::uint8_t> long_pt(100);
  for (std::size_t i = 0; i < long_pt.size(); ++i) long_pt[i] = static_cast<std::uint8_t>(i);
  const std::string hello = "hello, ward 7";
  struct CipherInput {
    bool auth;
    Nonce nonce;
    std::vector<std::uint8_t> plaintext;
  };
  const std::vector<CipherInput> cipher_inputs{
      {true, Nonce{}, {}},
      {true, Nonce{0, 10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}, std::vector<std::uint8_t>(hello.begin(), hello.end())},
      {true, Nonce{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, long_pt},
      {false, Nonce{0, 10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2}, std::vector<std::uint8_t>(hello.begin(), hello.end())},
  };
  for (const CipherInput& in : cipher_inputs) {
    CipherSuite suite;
    suite.auth_tag = in.auth;
    const Ciphertext ct = encrypt(key, in.nonce, in.plaintext, suite);
    set.cipher.push_back(CipherVector{in.auth, key.bytes, in.nonce, in.plaintext, ct.body, ct.tag});
  }
  return set;
}

std::string format_vectors(const VectorSet& set) {
  std::ostringstream os;
  os << "# uhsn key-derivation and cipher vectors (hash: SHA256)\n";
  for (const KdfVector& v : set.kdf) {
    os << "kdf q=" << v.modulus << " rows=" << v.rows << " cols=" << v.cols << " epoch=" << v.epoch
       << " matrix=" << to_hex(v.matrix) << " key=" << to_hex(v.key) << '\n';
  }
  for (const CipherVector& v : set.cipher) {
    os << "cipher auth=" << (v.auth ? 1 : 0) << " key=" << to_hex(v.key) << " nonce=" << to_hex(v.nonce)
       << " plaintext=" << to_hex(v.plaintext) << " body=" << to_hex(v.body) << " tag=" << to_hex(v.tag) << '\n';
  }
  return os.str();
}

VectorSet parse_vectors(std::string_view text) {
  VectorSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::string kind;
    words >> kind;
    std::map<std::string, std::string> fields;
    for (std::string w; words >> w;) {
      const auto eq = w.find('=');
      if (eq == std::string::npos) throw Error(Errc::kMalformed, where + ": expected key=value, got '" + w + "'");
      fields[w.substr(0, eq)] = w.substr(eq + 1);
    }
    auto get = [&](const char* name) -> const std::string& {
      auto it = fields.find(name);
      if (it == fields.end()) throw Error(Errc::kMalformed, where + ": missing field '" + name + "'");
      return it->second;
    };
    try {
      if (kind == "kdf") {
        KdfVector v;
        v.modulus = static_cast<std::uint32_t>(std::stoul(get("q")));
        v.rows = std::stoul(get("rows"));
        v.cols = std::stoul(get("cols"));
        v.epoch = std::stoull(get("epoch"));
        v.matrix = from_hex(get("matrix"));
        v.key = fixed_from_hex<32>(get("key"), where);
        set.kdf.push_back(std::move(v));
      } else if (kind == "cipher") {
        CipherVector v;
        v.auth = get("auth") == "1";
        v.key = fixed_from_hex<32>(get("key"), where);
        v.nonce = fixed_from_hex<12>(get("nonce"), where);
        v.plaintext = from_hex(get("plaintext"));
        v.body = from_hex(get("body"));
        v.tag = fixed_from_hex<16>(get("tag"), where);
        set.cipher.push_back(std::move(v));
      } else {
        throw Error(Errc::kMalformed, where + ": unknown record type '" + kind + "'");
      }
    } catch (const std::logic_error& e) {
      throw Error(Errc::kMalformed, where + ": " + e.what());
    }
  }
  return set;
}

VectorCheck verify_vectors(const VectorSet& frozen) {
  VectorCheck check;
  for (std::size_t i = 0; i < frozen.kdf.size(); ++i) {
    const KdfVector& v = frozen.kdf[i];
    ++check.checked;
    try {
      const gf::FieldMatrix m = gf::mat_deserialize(v.matrix, gf::FieldSpec(v.modulus), v.rows, v.cols);
      if (derive_sym_key(m, v.epoch).bytes != v.key) check.mismatches.push_back("kdf[" + std::to_string(i) + "]: key differs");
    } catch (const Error& e) {
      check.mismatches.push_back("kdf[" + std::to_string(i) + "]: " + e.what());
    }
  }
  for (std::size_t i = 0; i < frozen.cipher.size(); ++i) {
    const CipherVector& v = frozen.cipher[i];
    ++check.checked;
    CipherSuite suite;
    suite.auth_tag = v.auth;
    const SymmetricKey key{v.key, 0};
    const Ciphertext ct = encrypt(key, v.nonce, v.plaintext, suite);
    const std::string tag = "cipher[" + std::to_string(i) + "]";
    if (ct.body != v.body) check.mismatches.push_back(tag + ": body differs");
    if (ct.tag != v.tag) check.mismatches.push_back(tag + ": tag differs");
    try {
      if (decrypt(key, Ciphertext{v.nonce, v.body, v.tag}, suite) != v.plaintext) {
        check.mismatches.push_back(tag + ": decryption differs");
      }
    } catch (const Error& e) {
      check.mismatches.push_back(tag + ": " + e.what());
    }
  }
  return check;
}

}  // namespace uhsn::crypto
