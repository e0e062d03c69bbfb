#include "uhsn/gf/field.hpp"

#include <bit>
#include <string>

#include "uhsn/error.hpp"

namespace uhsn::gf {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  // Miller-Rabin with the first twelve primes as witnesses is exact below 3.3e24.
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec::FieldSpec(std::uint32_t modulus)
    : modulus_(modulus),
      element_bits_(static_cast<unsigned>(std::bit_width(modulus > 0 ? modulus - 1 : 0u))) {
  if (!is_prime(modulus)) {
    throw Error(Errc::kNotPrime, "field modulus " + std::to_string(modulus) + " is not prime");
  }
}

Element FieldSpec::inv(Element a) const {
  if (a % modulus_ == 0) throw Error(Errc::kInvalidArgument, "zero has no inverse");
  return static_cast<Element>(powmod(a, modulus_ - 2, modulus_));
}

}  // namespace uhsn::gf
