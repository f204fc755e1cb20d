#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "witness/keys.hpp"

namespace witness {

/// Dense 0/1 incidence matrix: entry(r, c) = 1 iff the generator key in
/// column c extends the target key in row r. Entries are exact integers;
/// floating conversion happens only at the LP boundary.
struct IncidenceMatrix {
    std::vector<TailKey> row_keys;
    std::vector<TailKey> col_keys;
    std::vector<std::int8_t> values;  // row-major

    std::size_t rows() const { return row_keys.size(); }
    std::size_t cols() const { return col_keys.size(); }
    int at(std::size_t r, std::size_t c) const { return values[r * col_keys.size() + c]; }
};

/// Dense materialization is limited to d <= 7 (3^7 - 1 = 2186 keys); the
/// core algorithms never require it and operate by key iteration.
inline constexpr int kMaxDenseDimension = 7;

IncidenceMatrix build_incidence_matrix(int d, std::span<const TailKey> targets,
                                       std::span<const TailKey> generators);

/// Full family in canonical key order; upper triangular with unit diagonal.
IncidenceMatrix build_incidence_matrix(int d, SignAlphabet alphabet);

}  // namespace witness
