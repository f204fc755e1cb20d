#include "witness/incidence.hpp"

#include <string>

#include "witness/errors.hpp"

namespace witness {

IncidenceMatrix build_incidence_matrix(int d, std::span<const TailKey> targets,
                                       std::span<const TailKey> generators) {
    if (d < 1) throw input_error("incidence matrix: dimension must be positive");
    if (d > kMaxDenseDimension)
        throw input_error("dense incidence matrices are limited to d <= " +
                          std::to_string(kMaxDenseDimension));

    IncidenceMatrix m;
    m.row_keys.assign(targets.begin(), targets.end());
    m.col_keys.assign(generators.begin(), generators.end());
    for (const TailKey& key : m.row_keys) validate_key_for(key, d, SignAlphabet::lower_upper);
    for (const TailKey& key : m.col_keys) validate_key_for(key, d, SignAlphabet::lower_upper);

    m.values.assign(m.rows() * m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (extends(m.col_keys[c], m.row_keys[r])) m.values[r * m.cols() + c] = 1;
        }
    }
    return m;
}

IncidenceMatrix build_incidence_matrix(int d, SignAlphabet alphabet) {
    const std::vector<TailKey> keys = enumerate_keys(d, alphabet);
    return build_incidence_matrix(d, keys, keys);
}

}  // namespace witness
