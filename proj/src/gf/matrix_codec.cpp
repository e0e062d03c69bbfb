#include "uhsn/gf/matrix_codec.hpp"

#include <string>

#include "uhsn/error.hpp"

namespace uhsn::gf {

std::size_t encoded_size(const FieldSpec& field, std::size_t rows, std::size_t cols) {
  const std::size_t n = rows * cols;
  if (field.modulus() == 2) return (n + 7) / 8;
  return n * field.element_bytes();
}

std::uint64_t encoded_bits(const FieldSpec& field, std::size_t rows, std::size_t cols) {
  const std::uint64_t n = std::uint64_t{rows} * cols;
  if (field.modulus() == 2) return n;
  return n * 8 * field.element_bytes();
}

std::vector<std::uint8_t> mat_serialize(const FieldMatrix& a) {
  const FieldSpec& field = a.field();
  std::vector<std::uint8_t> out(encoded_size(field, a.rows(), a.cols()), 0);
  const auto entries = a.entries();
  if (field.modulus() == 2) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i] != 0) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return out;
  }
  const unsigned width = field.element_bytes();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (unsigned b = 0; b < width; ++b) {
      out[i * width + b] = static_cast<std::uint8_t>(entries[i] >> (8 * (width - 1 - b)));
    }
  }
  return out;
}

FieldMatrix mat_deserialize(std::span<const std::uint8_t> bytes, FieldSpec field, std::size_t rows,
                            std::size_t cols) {
  const std::size_t expected = encoded_size(field, rows, cols);
  if (bytes.size() != expected) {
    throw Error(Errc::kMalformed, "matrix encoding is " + std::to_string(bytes.size()) +
                                      " bytes, expected " + std::to_string(expected));
  }
  const std::size_t n = rows * cols;
  std::vector<Element> entries(n);
  if (field.modulus() == 2) {
    for (std::size_t i = 0; i < n; ++i) entries[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    if (n % 8 != 0) {
      const std::uint8_t pad_mask = static_cast<std::uint8_t>(0xFFu >> (n % 8));
      if ((bytes.back() & pad_mask) != 0) throw Error(Errc::kMalformed, "nonzero GF(2) padding bits");
    }
    return FieldMatrix(field, rows, cols, std::move(entries));
  }
  const unsigned width = field.element_bytes();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t v = 0;
    for (unsigned b = 0; b < width; ++b) v = (v << 8) | bytes[i * width + b];
    entries[i] = v;
  }
  // The constructor rejects entries >= q.
  return FieldMatrix(field, rows, cols, std::move(entries));
}

}  // namespace uhsn::gf
