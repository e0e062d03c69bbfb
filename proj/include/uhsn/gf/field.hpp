#pragma once

#include <cstdint>

namespace uhsn::gf {

using Element = std::uint32_t;

// Deterministic primality test, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Prime field GF(q). Elements are canonical residues in [0, q).
class FieldSpec {
 public:
  // Throws Error(kNotPrime) unless `modulus` is a prime >= 2.
  explicit FieldSpec(std::uint32_t modulus);

  std::uint32_t modulus() const noexcept { return modulus_; }
  // ceil(log2(q)); one bit per element for GF(2).
  unsigned element_bits() const noexcept { return element_bits_; }
  unsigned element_bytes() const noexcept { return (element_bits_ + 7) / 8; }

  Element add(Element a, Element b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Element>(s >= modulus_ ? s - modulus_ : s);
  }
  Element sub(Element a, Element b) const noexcept {
    return a >= b ? a - b : static_cast<Element>(std::uint64_t{a} + modulus_ - b);
  }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : modulus_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>(std::uint64_t{a} * b % modulus_);
  }
  // Multiplicative inverse; `a` must be nonzero.
  Element inv(Element a) const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  std::uint32_t modulus_;
  unsigned element_bits_;
};

}  // namespace uhsn::gf
