#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

struct evp_md_st;
struct evp_md_ctx_st;

namespace uhsn::crypto {

using Digest = std::array<std::uint8_t, 32>;

// A 256-bit hash selected by name ("SHA256" by default). Any digest the
// OpenSSL provider knows under that name is accepted as long as its output
// is exactly 32 bytes.
class HashFunction {
 public:
  static HashFunction named(std::string_view name);
  static HashFunction sha256() { return named("SHA256"); }

  const std::string& name() const noexcept { return name_; }

  class Hasher {
   public:
    Hasher& update(std::span<const std::uint8_t> bytes);
    Hasher& update_u8(std::uint8_t v);
    Hasher& update_be32(std::uint32_t v);
    Hasher& update_be64(std::uint64_t v);
    Digest finish();

   private:
    friend class HashFunction;
    struct CtxDeleter {
      void operator()(evp_md_ctx_st* ctx) const;
    };
    explicit Hasher(const evp_md_st* md);
    std::unique_ptr<evp_md_ctx_st, CtxDeleter> ctx_;
  };

  Hasher begin() const { return Hasher(md_); }
  Digest digest(std::span<const std::uint8_t> bytes) const { return begin().update(bytes).finish(); }

 private:
  HashFunction(std::string name, const evp_md_st* md) : name_(std::move(name)), md_(md) {}
  std::string name_;
  const evp_md_st* md_;
};

}  // namespace uhsn::crypto
