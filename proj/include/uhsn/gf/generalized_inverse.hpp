#pragma once

#include <cstddef>
#include <vector>

#include "uhsn/gf/matrix.hpp"

namespace uhsn::gf {

// a = column_factor * row_factor with column_factor (rows x rank) of full
// column rank and row_factor (rank x cols) of full row rank. row_factor is
// the nonzero part of the reduced row echelon form of `a`, and
// column_factor is `a` restricted to the pivot columns.
struct RankFactorization {
  FieldMatrix column_factor;
  FieldMatrix row_factor;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

// Gauss-Jordan elimination; the pivot for each column is the first nonzero
// entry at or below the current row.
RankFactorization rank_factorize(const FieldMatrix& a);

std::size_t rank(const FieldMatrix& a);

// Returns B with a*B*a = a and B*a*B = B, built as B = R * L where L is a
// left inverse of the column factor and R a right inverse of the row factor.
// Deterministic; the zero matrix maps to the zero matrix of transposed shape.
FieldMatrix generalized_inverse(const FieldMatrix& a);

// Checks both defining identities.
bool is_generalized_inverse(const FieldMatrix& a, const FieldMatrix& b);

}  // namespace uhsn::gf
