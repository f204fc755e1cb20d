#include "emitters.hpp"

#include <algorithm>
#include <charconv>

#include "witness/errors.hpp"

namespace witness::cli {

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

std::string incidence_csv(const IncidenceMatrix& matrix) {
    std::string out = "target";
    for (const TailKey& key : matrix.col_keys) out += "," + format_key(key);
    out += '\n';
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        out += format_key(matrix.row_keys[r]);
        for (std::size_t c = 0; c < matrix.cols(); ++c) {
            out += ',';
            out += static_cast<char>('0' + matrix.at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string mass_table_csv(const TernaryMassTable& table) {
    std::string out = "state,mass\n";
    for (const auto& [key, mass] : table.noncentral())
        out += key_to_state(key, table.dimension()).word + "," + format_double(mass) + "\n";
    out += std::string(static_cast<std::size_t>(table.dimension()), 'M') + "," +
           format_double(table.central_mass()) + "\n";
    return out;
}

std::string samples_csv(const SampleMatrix& samples) {
    std::string out;
    for (std::size_t c = 0; c < samples.d; ++c) {
        if (c > 0) out += ',';
        out += "u" + std::to_string(c + 1);
    }
    out += '\n';
    for (std::size_t r = 0; r < samples.n; ++r) {
        for (std::size_t c = 0; c < samples.d; ++c) {
            if (c > 0) out += ',';
            out += format_double(samples.at(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string hasse_dot(int d, SignAlphabet alphabet) {
    if (d > kMaxDenseDimension)
        throw input_error("hasse export is limited to d <= " + std::to_string(kMaxDenseDimension));
    const std::vector<TailKey> keys = enumerate_keys(d, alphabet);

    std::string out = "digraph witness_keys {\n  rankdir=BT;\n";
    for (const TailKey& key : keys) out += "  \"" + format_key(key) + "\";\n";
    for (const TailKey& key : keys) {
        // Immediate supersets: activate one more coordinate with one sign.
        for (int coordinate = 1; coordinate <= d; ++coordinate) {
            if (std::binary_search(key.active.begin(), key.active.end(), coordinate)) continue;
            for (Sign sign : alphabet_signs(alphabet)) {
                std::vector<int> active = key.active;
                std::vector<Sign> pattern = key.pattern;
                active.push_back(coordinate);
                pattern.push_back(sign);
                out += "  \"" + format_key(key) + "\" -> \"" +
                       format_key(make_key(std::move(active), std::move(pattern))) + "\";\n";
            }
        }
    }
    out += "}\n";
    return out;
}

}  // namespace witness::cli
