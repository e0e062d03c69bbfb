#include "uhsn/gf/rng.hpp"

#include "uhsn/error.hpp"

namespace uhsn::gf {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix64(base + kGolden);
  h = mix64(h ^ (a + 0x632BE59BD9B4E019ULL));
  h = mix64(h ^ (b + 0x8CB92BA72F3D8DD7ULL));
  return mix64(h ^ (c + 0xD6E8FEB86659FD93ULL));
}

CounterRng::CounterRng(SeedStream s)
    : key_(mix64(s.seed) ^ mix64(s.stream ^ 0xD1B54A32D192ED03ULL)) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

std::uint64_t CounterRng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::kInvalidArgument, "uniform_below(0)");
  // 2^64 mod bound; draws below it would bias the low residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) return x % bound;
  }
}

FieldMatrix mat_random(SeedStream s, std::size_t rows, std::size_t cols, FieldSpec field) {
  if (rows == 0 || cols == 0) throw Error(Errc::kInvalidArgument, "random matrix needs rows, cols >= 1");
  CounterRng rng(s);
  std::vector<Element> entries(rows * cols);
  for (auto& e : entries) e = static_cast<Element>(rng.uniform_below(field.modulus()));
  return FieldMatrix(field, rows, cols, std::move(entries));
}

}  // namespace uhsn::gf
