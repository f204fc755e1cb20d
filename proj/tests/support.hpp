#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "witness/family.hpp"
#include "witness/keys.hpp"
#include "witness/rng.hpp"

namespace witness::test {

inline TailKey k(std::vector<int> active, std::string_view pattern) {
    return make_key(std::move(active), pattern);
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Parse a whitespace-separated 0/1 block into rows of ints.
inline std::vector<std::vector<int>> parse_matrix(const std::string& text, std::size_t cols) {
    std::vector<std::vector<int>> rows;
    std::istringstream in(text);
    int value = 0;
    std::vector<int> row;
    while (in >> value) {
        row.push_back(value);
        if (row.size() == cols) {
            rows.push_back(row);
            row.clear();
        }
    }
    return rows;
}

/// Uniform weights in [0, 1) on every key of the family.
inline WeightSystem random_dense_system(int d, SignAlphabet alphabet, Xoshiro256& rng) {
    WeightSystem w(d, alphabet);
    for (TailKey& key : enumerate_keys(d, alphabet)) w.set(std::move(key), rng.next_double());
    return w;
}

/// Random nonnegative system with exact unit margin sums: scatter weights on
/// random higher-order keys, scale the per-coordinate sign sums below 1, then
/// top up with singleton weights.
inline WeightSystem random_margin_system(int d, SignAlphabet alphabet, Xoshiro256& rng,
                                         int scattered_keys = 6) {
    const std::vector<TailKey> keys = enumerate_keys(d, alphabet);
    WeightSystem w(d, alphabet);
    for (int i = 0; i < scattered_keys; ++i) {
        const auto& key = keys[static_cast<std::size_t>(rng.next_u64() % keys.size())];
        w.add(key, rng.next_double());
    }

    const auto signs = alphabet_signs(alphabet);
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(d),
                                          std::vector<double>(signs.size(), 0.0));
    const auto sign_slot = [&](Sign s) { return alphabet == SignAlphabet::upper_only ? 0u : static_cast<unsigned>(s); };
    double worst = 0.0;
    for (const auto& [key, value] : w.entries()) {
        for (std::size_t i = 0; i < key.active.size(); ++i) {
            double& cell = sums[static_cast<std::size_t>(key.active[i] - 1)][sign_slot(key.pattern[i])];
            cell += value;
            worst = std::max(worst, cell);
        }
    }
    if (worst > 0.9) {
        const double scale = 0.9 / worst;
        WeightSystem scaled(d, alphabet);
        for (const auto& [key, value] : w.entries()) scaled.set(key, value * scale);
        w = std::move(scaled);
        for (auto& row : sums)
            for (double& cell : row) cell *= scale;
    }
    for (int i = 1; i <= d; ++i) {
        for (Sign s : signs) {
            const double fill = 1.0 - sums[static_cast<std::size_t>(i - 1)][sign_slot(s)];
            w.add(make_key({i}, std::vector<Sign>{s}), fill);
        }
    }
    return w;
}

// Reference incidence matrices under the canonical key order: the complete
// signed families in dimensions 2 and 3, and the upper-tail family in
// dimension 4.
inline const std::string kIncidence2Signed = R"(
1 0 0 0 1 1 0 0
0 1 0 0 0 0 1 1
0 0 1 0 1 0 1 0
0 0 0 1 0 1 0 1
0 0 0 0 1 0 0 0
0 0 0 0 0 1 0 0
0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 1
)";

inline const std::string kIncidence3Signed = R"(
1 0 0 0 0 0 1 1 0 0 1 1 0 0 0 0 0 0 1 1 1 1 0 0 0 0
0 1 0 0 0 0 0 0 1 1 0 0 1 1 0 0 0 0 0 0 0 0 1 1 1 1
0 0 1 0 0 0 1 0 1 0 0 0 0 0 1 1 0 0 1 1 0 0 1 1 0 0
0 0 0 1 0 0 0 1 0 1 0 0 0 0 0 0 1 1 0 0 1 1 0 0 1 1
0 0 0 0 1 0 0 0 0 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0
0 0 0 0 0 1 0 0 0 0 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 1
0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 1 1 0 0 0 0 0 0
0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 1 1 0 0 0 0
0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 0 0
0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1
0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 1 0 1 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 1 0 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 1 0 1 0
0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 1 0 1
0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 1 0 0 0 1 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 1 0 0 0 1 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 1 0 0 0 1 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 1 0 0 0 1
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1
)";

inline const std::string kIncidence4Upper = R"(
1 0 0 0 1 1 1 0 0 0 1 1 1 0 1
0 1 0 0 1 0 0 1 1 0 1 1 0 1 1
0 0 1 0 0 1 0 1 0 1 1 0 1 1 1
0 0 0 1 0 0 1 0 1 1 0 1 1 1 1
0 0 0 0 1 0 0 0 0 0 1 1 0 0 1
0 0 0 0 0 1 0 0 0 0 1 0 1 0 1
0 0 0 0 0 0 1 0 0 0 0 1 1 0 1
0 0 0 0 0 0 0 1 0 0 1 0 0 1 1
0 0 0 0 0 0 0 0 1 0 0 1 0 1 1
0 0 0 0 0 0 0 0 0 1 0 0 1 1 1
0 0 0 0 0 0 0 0 0 0 1 0 0 0 1
0 0 0 0 0 0 0 0 0 0 0 1 0 0 1
0 0 0 0 0 0 0 0 0 0 0 0 1 0 1
0 0 0 0 0 0 0 0 0 0 0 0 0 1 1
0 0 0 0 0 0 0 0 0 0 0 0 0 0 1
)";

}  // namespace witness::test
