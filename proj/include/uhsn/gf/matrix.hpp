#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "uhsn/gf/field.hpp"

namespace uhsn::gf {

// Dense row-major matrix over a prime field. Zero-sized dimensions are
// allowed so that rank-0 factorizations stay representable.
class FieldMatrix {
 public:
  // All-zero matrix.
  FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols);
  // Throws kMalformed if `entries` has the wrong length or holds a value >= q.
  FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Element> entries);

  static FieldMatrix identity(FieldSpec field, std::size_t n);
  static FieldMatrix from_rows(FieldSpec field,
                               std::initializer_list<std::initializer_list<Element>> rows);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Element> entries() const noexcept { return entries_; }

  Element at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  // Reduces `value` mod q.
  void set(std::size_t r, std::size_t c, std::uint64_t value) {
    entries_[r * cols_ + c] = static_cast<Element>(value % field_.modulus());
  }

  bool is_zero() const noexcept;
  bool same_shape(const FieldMatrix& other) const noexcept {
    return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_;
  }

  // Rows [first, first + count) and the listed columns, respectively.
  FieldMatrix row_block(std::size_t first, std::size_t count) const;
  FieldMatrix select_columns(std::span<const std::size_t> columns) const;

  std::string to_string() const;

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

// Product reduced mod q. Throws kDimensionMismatch / kFieldMismatch.
FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);

inline FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) { return mat_mul(a, b); }

FieldMatrix mat_add(const FieldMatrix& a, const FieldMatrix& b);

}  // namespace uhsn::gf
