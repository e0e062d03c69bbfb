#pragma once

#include <cstdint>

#include "uhsn/gf/matrix.hpp"

namespace uhsn::gf {

// Identifies an independent random stream: one scenario seed fans out into
// many streams (per node, per epoch, per attempt).
struct SeedStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Folds extra words into a stream id; used to derive per-role sub-streams.
std::uint64_t derive_stream(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                            std::uint64_t c = 0);

// Counter-based generator: output i is a SplitMix64 finalization of
// key + (i + 1) * golden, where key mixes seed and stream. Not for production
// key material; swap in an OS entropy source for deployment.
class CounterRng {
 public:
  explicit CounterRng(SeedStream s);

  std::uint64_t next_u64();
  // Uniform in [0, bound) by rejection sampling; `bound` must be nonzero.
  std::uint64_t uniform_below(std::uint64_t bound);

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Entries i.i.d. uniform in [0, q). Throws kInvalidArgument for zero dims.
FieldMatrix mat_random(SeedStream s, std::size_t rows, std::size_t cols, FieldSpec field);

}  // namespace uhsn::gf
