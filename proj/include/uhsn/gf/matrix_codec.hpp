#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uhsn/gf/matrix.hpp"

namespace uhsn::gf {

// Canonical wire encoding. Row-major; each entry is element_bytes()
// big-endian bytes, except GF(2) which packs eight entries per byte (first
// entry in the most significant bit) and zero-pads the final byte.
std::vector<std::uint8_t> mat_serialize(const FieldMatrix& a);

// Throws kMalformed on a length mismatch, an entry >= q, or nonzero padding.
FieldMatrix mat_deserialize(std::span<const std::uint8_t> bytes, FieldSpec field, std::size_t rows,
                            std::size_t cols);

std::size_t encoded_size(const FieldSpec& field, std::size_t rows, std::size_t cols);

// Significant payload bits, i.e. the encoding length without GF(2) padding.
std::uint64_t encoded_bits(const FieldSpec& field, std::size_t rows, std::size_t cols);

}  // namespace uhsn::gf
