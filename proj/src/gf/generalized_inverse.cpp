#include "uhsn/gf/generalized_inverse.hpp"

#include <utility>

namespace uhsn::gf {

namespace {

struct Echelon {
  FieldMatrix reduced;    // E * a
  FieldMatrix transform;  // E, invertible
  std::vector<std::size_t> pivots;
};

Echelon reduce(const FieldMatrix& a) {
  const FieldSpec& f = a.field();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  FieldMatrix m = a;
  FieldMatrix e = FieldMatrix::identity(f, rows);
  std::vector<std::size_t> pivots;

  auto swap_rows = [](FieldMatrix& x, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const Element t = x.at(i, c);
      x.set(i, c, x.at(j, c));
      x.set(j, c, t);
    }
  };
  auto scale_row = [&f](FieldMatrix& x, std::size_t i, Element s) {
    for (std::size_t c = 0; c < x.cols(); ++c) x.set(i, c, f.mul(x.at(i, c), s));
  };
  // row_i -= s * row_j
  auto eliminate = [&f](FieldMatrix& x, std::size_t i, std::size_t j, Element s) {
    for (std::size_t c = 0; c < x.cols(); ++c) x.set(i, c, f.sub(x.at(i, c), f.mul(s, x.at(j, c))));
  };

  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && m.at(p, col) == 0) ++p;
    if (p == rows) continue;
    if (p != row) {
      swap_rows(m, p, row);
      swap_rows(e, p, row);
    }
    const Element s = f.inv(m.at(row, col));
    scale_row(m, row, s);
    scale_row(e, row, s);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row) continue;
      const Element factor = m.at(r, col);
      if (factor == 0) continue;
      eliminate(m, r, row, factor);
      eliminate(e, r, row, factor);
    }
    pivots.push_back(col);
    ++row;
  }
  return Echelon{std::move(m), std::move(e), std::move(pivots)};
}

}  // namespace

RankFactorization rank_factorize(const FieldMatrix& a) {
  Echelon ech = reduce(a);
  const std::size_t r = ech.pivots.size();
  return RankFactorization{a.select_columns(ech.pivots), ech.reduced.row_block(0, r), r,
                           std::move(ech.pivots)};
}

std::size_t rank(const FieldMatrix& a) { return reduce(a).pivots.size(); }

FieldMatrix generalized_inverse(const FieldMatrix& a) {
  const RankFactorization rf = rank_factorize(a);
  const std::size_t r = rf.rank;

  // The column factor has full column rank, so its reduced form is [I_r; 0]
  // and the first r rows of the transform form a left inverse.
  const FieldMatrix left_inv = reduce(rf.column_factor).transform.row_block(0, r);

  // The row factor carries I_r in its pivot columns: selecting them is a
  // right inverse.
  FieldMatrix right_inv(a.field(), a.cols(), r);
  for (std::size_t i = 0; i < r; ++i) right_inv.set(rf.pivot_columns[i], i, 1);

  return right_inv * left_inv;
}

bool is_generalized_inverse(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.field() == b.field()) || a.rows() != b.cols() || a.cols() != b.rows()) return false;
  return a * b * a == a && b * a * b == b;
}

}  // namespace uhsn::gf
