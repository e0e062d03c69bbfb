#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "support/convert.hpp"
#include "uhsn/analysis.hpp"
#include "uhsn/error.hpp"
#include "uhsn/gf/generalized_inverse.hpp"
#include "uhsn/gf/matrix_codec.hpp"
#include "uhsn/gf/rng.hpp"

using namespace uhsn;
using namespace uhsn::gf;

namespace {

FieldMatrix from_index(FieldSpec f, std::size_t rows, std::size_t cols, std::uint64_t idx) {
  FieldMatrix a(f, rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    a.set(i / cols, i % cols, idx % f.modulus());
    idx /= f.modulus();
  }
  return a;
}

}  // namespace

TEST(Field, RejectsNonPrimes) {
  for (std::uint32_t q : {0u, 1u, 4u, 9u, 15u, 256u, 561u}) {
    try {
      FieldSpec f(q);
      FAIL() << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kNotPrime);
    }
  }
  EXPECT_NO_THROW(FieldSpec(2));
  EXPECT_NO_THROW(FieldSpec(251));
  EXPECT_NO_THROW(FieldSpec(65521));
}

TEST(Field, PrimalityAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool p = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && p; ++d) p = n % d != 0;
    EXPECT_EQ(is_prime(n), p) << n;
  }
}

TEST(Field, InverseIsExhaustivelyCorrect) {
  for (std::uint32_t q : {2u, 3u, 5u, 251u}) {
    FieldSpec f(q);
    for (Element a = 1; a < q; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_EQ(f.element_bits(), static_cast<unsigned>(std::bit_width(q - 1)));
  }
  EXPECT_EQ(FieldSpec(2).element_bits(), 1u);
  EXPECT_EQ(FieldSpec(251).element_bits(), 8u);
}

TEST(Matrix, RejectsOutOfRangeEntries) {
  FieldSpec f(5);
  EXPECT_THROW(FieldMatrix(f, 1, 2, {1, 5}), Error);
  EXPECT_THROW(FieldMatrix(f, 1, 2, {1}), Error);
}

TEST(Matrix, MultiplyMatchesSchoolbook) {
  for (std::uint32_t q : {2u, 5u, 251u}) {
    FieldSpec f(q);
    for (std::uint64_t t = 0; t < 200; ++t) {
      CounterRng dims({t, q});
      const std::size_t a = 1 + dims.uniform_below(6), b = 1 + dims.uniform_below(6), c = 1 + dims.uniform_below(6);
      auto x = mat_random({t, 1}, a, b, f);
      auto y = mat_random({t, 2}, b, c, f);
      EXPECT_EQ(to_oracle(x * y), oracle::schoolbook_mul(to_oracle(x), to_oracle(y), q));
    }
  }
}

TEST(Matrix, MultiplyIsAssociativeAndDistributive) {
  FieldSpec f(251);
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto a = mat_random({t, 1}, 3, 4, f);
    auto b = mat_random({t, 2}, 4, 2, f);
    auto b2 = mat_random({t, 5}, 4, 2, f);
    auto c = mat_random({t, 3}, 2, 5, f);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * mat_add(b, b2), mat_add(a * b, a * b2));
    EXPECT_EQ(FieldMatrix::identity(f, 3) * a, a);
  }
}

TEST(Matrix, ShapeAndFieldMismatchThrow) {
  FieldMatrix a(FieldSpec(5), 2, 3), b(FieldSpec(5), 2, 3), c(FieldSpec(7), 3, 1);
  try {
    (void)(a * b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDimensionMismatch);
  }
  try {
    (void)(a * c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kFieldMismatch);
  }
}

TEST(Rank, HandExample) {
  FieldSpec f(5);
  auto a = FieldMatrix::from_rows(f, {{1, 2}, {2, 4}});
  EXPECT_EQ(rank(a), 1u);
  auto fac = rank_factorize(a);
  EXPECT_EQ(fac.column_factor * fac.row_factor, a);
  EXPECT_EQ(rank(FieldMatrix(f, 3, 2)), 0u);
  EXPECT_EQ(rank(FieldMatrix::identity(f, 4)), 4u);
}

TEST(Rank, MatchesLargestNonzeroMinor) {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    FieldSpec f(q);
    for (std::uint64_t t = 0; t < 300; ++t) {
      CounterRng dims({t, 100 + q});
      const std::size_t r = 1 + dims.uniform_below(4), c = 1 + dims.uniform_below(4);
      auto a = mat_random({t, q}, r, c, f);
      auto fac = rank_factorize(a);
      EXPECT_EQ(fac.rank, oracle::rank_by_minors(to_oracle(a), q));
      EXPECT_EQ(fac.column_factor * fac.row_factor, a);
      EXPECT_EQ(fac.column_factor.cols(), fac.rank);
      EXPECT_EQ(fac.row_factor.rows(), fac.rank);
    }
  }
}

TEST(GeneralizedInverse, HandExampleOverGf5) {
  FieldSpec f(5);
  auto x = FieldMatrix::from_rows(f, {{2}});
  EXPECT_EQ(generalized_inverse(x), FieldMatrix::from_rows(f, {{3}}));
  EXPECT_EQ(generalized_inverse(FieldMatrix::from_rows(f, {{4}})), FieldMatrix::from_rows(f, {{4}}));
  EXPECT_EQ(generalized_inverse(FieldMatrix(f, 2, 3)), FieldMatrix(f, 3, 2));
}

TEST(GeneralizedInverse, IdentitiesHoldOnRandomMatrices) {
  for (std::uint32_t q : {2u, 3u, 5u, 251u}) {
    FieldSpec f(q);
    for (std::uint64_t t = 0; t < 300; ++t) {
      CounterRng dims({t, 200 + q});
      const std::size_t r = 1 + dims.uniform_below(5), c = 1 + dims.uniform_below(5);
      auto a = mat_random({t, 7}, r, c, f);
      auto b = generalized_inverse(a);
      ASSERT_EQ(b.rows(), c);
      ASSERT_EQ(b.cols(), r);
      EXPECT_EQ(a * b * a, a);
      EXPECT_EQ(b * a * b, b);
      EXPECT_TRUE(is_generalized_inverse(a, b));
    }
  }
}

TEST(GeneralizedInverse, FullRankSquareGivesTrueInverse) {
  FieldSpec f(251);
  int checked = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto a = mat_random({t, 9}, 4, 4, f);
    if (rank(a) != 4) continue;
    ++checked;
    EXPECT_EQ(a * generalized_inverse(a), FieldMatrix::identity(f, 4));
  }
  EXPECT_GT(checked, 40);
}

TEST(GeneralizedInverse, InBruteForceSetForAllSmallBinaryMatrices) {
  FieldSpec f(2);
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}}) {
    for (std::uint64_t idx = 0; idx < (1u << (r * c)); ++idx) {
      auto a = from_index(f, r, c, idx);
      auto all = oracle::all_generalized_inverses(to_oracle(a), 2);
      auto b = to_oracle(generalized_inverse(a));
      EXPECT_NE(std::find(all.begin(), all.end(), b), all.end()) << a.to_string();
    }
  }
}

TEST(GeneralizedInverse, LibraryEnumerationMatchesOracle) {
  FieldSpec f(3);
  for (std::uint64_t idx = 0; idx < 81; ++idx) {
    auto a = from_index(f, 2, 2, idx);
    auto lib = analysis::all_generalized_inverses(a);
    auto ref = oracle::all_generalized_inverses(to_oracle(a), 3);
    std::set<oracle::Mat> lib_set, ref_set(ref.begin(), ref.end());
    for (const auto& b : lib) lib_set.insert(to_oracle(b));
    EXPECT_EQ(lib_set, ref_set);
  }
}

TEST(Rng, DeterministicAndStreamSeparated) {
  CounterRng a({1, 2}), b({1, 2}), c({1, 3}), d({2, 2});
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 64; ++i) {
    va.push_back(a.next_u64());
    vb.push_back(b.next_u64());
    vc.push_back(c.next_u64());
    vd.push_back(d.next_u64());
  }
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_NE(va, vd);
  EXPECT_NE(derive_stream(1, 2, 3), derive_stream(1, 3, 2));
}

TEST(Rng, UniformBelowPassesChiSquare) {
  for (std::uint64_t q : {2u, 5u, 251u}) {
    CounterRng rng({42, q});
    const std::uint64_t samples = 200000;
    std::vector<std::uint64_t> counts(q, 0);
    for (std::uint64_t i = 0; i < samples; ++i) ++counts[rng.uniform_below(q)];
    const double expected = static_cast<double>(samples) / q;
    double chi = 0;
    for (auto cnt : counts) chi += (cnt - expected) * (cnt - expected) / expected;
    const double dof = static_cast<double>(q - 1);
    // 5 sigma above the mean of a chi-square with q-1 degrees of freedom.
    EXPECT_LT(chi, dof + 5 * std::sqrt(2 * dof)) << "q=" << q;
  }
}

TEST(Codec, RoundTripsAndSizes) {
  for (std::uint32_t q : {2u, 3u, 5u, 251u, 65521u}) {
    FieldSpec f(q);
    for (std::size_t r = 1; r <= 5; ++r)
      for (std::size_t c = 1; c <= 5; ++c) {
        auto a = mat_random({r * 10 + c, q}, r, c, f);
        auto bytes = mat_serialize(a);
        EXPECT_EQ(bytes.size(), encoded_size(f, r, c));
        EXPECT_EQ(mat_deserialize(bytes, f, r, c), a);
      }
  }
  EXPECT_EQ(encoded_size(FieldSpec(2), 3, 3), 2u);
  EXPECT_EQ(encoded_bits(FieldSpec(2), 3, 3), 9u);
  EXPECT_EQ(encoded_size(FieldSpec(65521), 2, 2), 8u);
}

TEST(Codec, Gf2PacksMsbFirst) {
  FieldSpec f(2);
  auto a = FieldMatrix::from_rows(f, {{1, 0, 1}, {1, 0, 0}, {0, 0, 1}});
  auto bytes = mat_serialize(a);
  ASSERT_EQ(bytes.size(), 2u);
  EXPECT_EQ(bytes[0], 0b10110000);
  EXPECT_EQ(bytes[1], 0b10000000);
}

TEST(Codec, RejectsMalformedInput) {
  FieldSpec f2(2), f5(5);
  const std::vector<std::uint8_t> padded{0b10110000, 0b11000000};
  EXPECT_THROW(mat_deserialize(padded, f2, 3, 3), Error);
  const std::vector<std::uint8_t> big{1, 5};
  EXPECT_THROW(mat_deserialize(big, f5, 1, 2), Error);
  const std::vector<std::uint8_t> short_input{1};
  EXPECT_THROW(mat_deserialize(short_input, f5, 1, 2), Error);
}
