#include "uhsn/crypto/hash.hpp"

#include <openssl/evp.h>

#include "uhsn/error.hpp"

namespace uhsn::crypto {

HashFunction HashFunction::named(std::string_view name) {
  const std::string owned(name);
  const EVP_MD* md = EVP_get_digestbyname(owned.c_str());
  if (md == nullptr) throw Error(Errc::kConfig, "unknown hash function '" + owned + "'");
  if (EVP_MD_size(md) != 32) {
    throw Error(Errc::kConfig, "hash function '" + owned + "' does not produce 256-bit digests");
  }
  return HashFunction(owned, md);
}

void HashFunction::Hasher::CtxDeleter::operator()(evp_md_ctx_st* ctx) const { EVP_MD_CTX_free(ctx); }

HashFunction::Hasher::Hasher(const evp_md_st* md) : ctx_(EVP_MD_CTX_new()) {
  if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), md, nullptr) != 1) {
    throw Error(Errc::kConfig, "hash initialisation failed");
  }
}

HashFunction::Hasher& HashFunction::Hasher::update(std::span<const std::uint8_t> bytes) {
  if (!bytes.empty() && EVP_DigestUpdate(ctx_.get(), bytes.data(), bytes.size()) != 1) {
    throw Error(Errc::kConfig, "hash update failed");
  }
  return *this;
}

HashFunction::Hasher& HashFunction::Hasher::update_u8(std::uint8_t v) {
  return update(std::span<const std::uint8_t>(&v, 1));
}

HashFunction::Hasher& HashFunction::Hasher::update_be32(std::uint32_t v) {
  const std::array<std::uint8_t, 4> b{static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                                      static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
  return update(b);
}

HashFunction::Hasher& HashFunction::Hasher::update_be64(std::uint64_t v) {
  update_be32(static_cast<std::uint32_t>(v >> 32));
  return update_be32(static_cast<std::uint32_t>(v));
}

Digest HashFunction::Hasher::finish() {
  Digest out{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1 || len != out.size()) {
    throw Error(Errc::kConfig, "hash finalisation failed");
  }
  return out;
}

}  // namespace uhsn::crypto
