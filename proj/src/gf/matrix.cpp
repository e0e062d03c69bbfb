#include "uhsn/gf/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "uhsn/error.hpp"

namespace uhsn::gf {

FieldMatrix::FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols,
                         std::vector<Element> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(Errc::kMalformed, "matrix entry count " + std::to_string(entries_.size()) +
                                      " does not match " + std::to_string(rows_) + "x" +
                                      std::to_string(cols_));
  }
  for (Element e : entries_) {
    if (e >= field_.modulus()) {
      throw Error(Errc::kMalformed, "matrix entry " + std::to_string(e) + " outside GF(" +
                                        std::to_string(field_.modulus()) + ")");
    }
  }
}

FieldMatrix FieldMatrix::identity(FieldSpec field, std::size_t n) {
  FieldMatrix out(field, n, n);
  for (std::size_t i = 0; i < n; ++i) out.entries_[i * n + i] = 1;
  return out;
}

FieldMatrix FieldMatrix::from_rows(FieldSpec field,
                                   std::initializer_list<std::initializer_list<Element>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  std::vector<Element> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw Error(Errc::kMalformed, "ragged matrix rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return FieldMatrix(field, rows.size(), cols, std::move(entries));
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Element e) { return e == 0; });
}

FieldMatrix FieldMatrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw Error(Errc::kDimensionMismatch, "row block out of range");
  std::vector<Element> out(entries_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
                           entries_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_));
  return FieldMatrix(field_, count, cols_, std::move(out));
}

FieldMatrix FieldMatrix::select_columns(std::span<const std::size_t> columns) const {
  FieldMatrix out(field_, rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j] >= cols_) throw Error(Errc::kDimensionMismatch, "column out of range");
      out.entries_[r * columns.size() + j] = at(r, columns[j]);
    }
  }
  return out;
}

std::string FieldMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r == 0 ? "[" : ",[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c == 0 ? "" : ",") << at(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.field() == b.field())) throw Error(Errc::kFieldMismatch, "operands over different fields");
  if (a.cols() != b.rows()) {
    throw Error(Errc::kDimensionMismatch,
                "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  const std::uint64_t q = a.field().modulus();
  std::vector<Element> out(a.rows() * b.cols(), 0);
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const std::uint64_t s = a.at(i, l);
      if (s == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + s * b.at(l, j)) % q;
    }
    for (std::size_t j = 0; j < b.cols(); ++j) out[i * b.cols() + j] = static_cast<Element>(acc[j]);
  }
  return FieldMatrix(a.field(), a.rows(), b.cols(), std::move(out));
}

FieldMatrix mat_add(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.field() == b.field())) throw Error(Errc::kFieldMismatch, "operands over different fields");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::kDimensionMismatch, "cannot add matrices of different shape");
  }
  FieldMatrix out(a.field(), a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.field().add(a.at(r, c), b.at(r, c)));
  return out;
}

}  // namespace uhsn::gf
