#include "witness/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "witness/errors.hpp"

namespace witness {

namespace {

double snap(double value) { return std::abs(value) < kSnapTolerance ? 0.0 : value; }

// Visits every sign-extension (K, rho) of `key` within dimension d, i.e. all
// keys with K containing the active set and rho agreeing on it. Each free
// coordinate is either left inactive or activated with one alphabet sign, so
// there are (|signs|+1)^(d-|I|) extensions including the key itself. The
// visitor receives the extension and |K| - |I|.
template <typename Visitor>
void for_each_extension(const TailKey& key, int d, std::span<const Sign> signs, Visitor&& visit) {
    std::vector<int> free_coords;
    free_coords.reserve(static_cast<std::size_t>(d));
    {
        std::size_t pos = 0;
        for (int c = 1; c <= d; ++c) {
            if (pos < key.active.size() && key.active[pos] == c) {
                ++pos;
            } else {
                free_coords.push_back(c);
            }
        }
    }

    const std::size_t base = signs.size() + 1;  // digit 0 = inactive
    std::vector<std::size_t> digit(free_coords.size(), 0);
    TailKey extension;
    while (true) {
        extension.active.clear();
        extension.pattern.clear();
        std::size_t pos = 0;
        int added = 0;
        for (std::size_t f = 0; f < free_coords.size(); ++f) {
            if (digit[f] == 0) continue;
            while (pos < key.active.size() && key.active[pos] < free_coords[f]) {
                extension.active.push_back(key.active[pos]);
                extension.pattern.push_back(key.pattern[pos]);
                ++pos;
            }
            extension.active.push_back(free_coords[f]);
            extension.pattern.push_back(signs[digit[f] - 1]);
            ++added;
        }
        while (pos < key.active.size()) {
            extension.active.push_back(key.active[pos]);
            extension.pattern.push_back(key.pattern[pos]);
            ++pos;
        }
        visit(extension, added);

        std::size_t f = 0;
        while (f < digit.size() && digit[f] + 1 == base) digit[f++] = 0;
        if (f == digit.size()) break;
        ++digit[f];
    }
}

void require_complete(const TailFamily& lambda) {
    if (lambda.is_complete()) return;
    const std::size_t missing = key_count(lambda.dimension(), lambda.alphabet()) - lambda.size();
    std::string message = "incomplete family: missing " + std::to_string(missing) + " coefficients";
    const auto examples = lambda.missing_keys(4);
    if (!examples.empty()) {
        message += " (first:";
        for (const TailKey& key : examples) message += " " + format_key(key);
        message += ")";
    }
    throw input_error(message);
}

}  // namespace

TailFamily tail_values_from_weights(const WeightSystem& w, std::span<const TailKey> targets) {
    // Distribute each weight onto all restrictions of its key; this is
    // output-sensitive in the stored entries rather than quadratic in the
    // family size.
    std::map<TailKey, double> accumulated;
    for (const auto& [key, value] : w.entries()) {
        if (value == 0.0) continue;
        const std::size_t k = key.active.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            TailKey sub;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (std::size_t{1} << i)) {
                    sub.active.push_back(key.active[i]);
                    sub.pattern.push_back(key.pattern[i]);
                }
            }
            accumulated[std::move(sub)] += value;
        }
    }

    TailFamily out(w.dimension(), w.alphabet());
    for (const TailKey& target : targets) {
        validate_key_for(target, w.dimension(), w.alphabet());
        auto it = accumulated.find(target);
        out.set(target, it == accumulated.end() ? 0.0 : it->second);
    }
    return out;
}

TailFamily tail_values_from_weights(const WeightSystem& w) {
    const auto keys = detail::all_keys(w.dimension(), w.alphabet());
    return tail_values_from_weights(w, keys);
}

WeightSystem invert_complete(const TailFamily& lambda) {
    require_complete(lambda);
    const int d = lambda.dimension();
    const auto signs = alphabet_signs(lambda.alphabet());

    std::vector<TailKey> keys = detail::all_keys(d, lambda.alphabet());
    std::stable_sort(keys.begin(), keys.end(),
                     [](const TailKey& a, const TailKey& b) { return a.order() > b.order(); });

    WeightSystem w(d, lambda.alphabet());
    std::map<TailKey, double> recovered;
    for (const TailKey& key : keys) {
        double correction = 0.0;
        for_each_extension(key, d, signs, [&](const TailKey& extension, int added) {
            if (added == 0) return;  // the key itself
            correction += recovered.at(extension);
        });
        const double value = snap(lambda.at(key) - correction);
        recovered[key] = value;
        w.set(key, value);
    }
    return w;
}

WeightSystem mobius_transform(const TailFamily& lambda) {
    require_complete(lambda);
    const int d = lambda.dimension();
    const auto signs = alphabet_signs(lambda.alphabet());

    WeightSystem w(d, lambda.alphabet());
    for (const TailKey& key : detail::all_keys(d, lambda.alphabet())) {
        double value = 0.0;
        for_each_extension(key, d, signs, [&](const TailKey& extension, int added) {
            const double term = lambda.at(extension);
            value += (added % 2 == 0) ? term : -term;
        });
        w.set(key, snap(value));
    }
    return w;
}

WeightSystem invert_unsigned_upper(const TailFamily& lambda) {
    if (lambda.alphabet() != SignAlphabet::upper_only)
        throw input_error("invert_unsigned_upper requires the upper-only alphabet");
    require_complete(lambda);
    const int d = lambda.dimension();

    // Over {U} every key is determined by its active set, so the inversion is
    // plain subset-lattice Moebius: w_I = sum over K >= I of (-1)^(|K|-|I|) lambda_K.
    WeightSystem w(d, SignAlphabet::upper_only);
    for (const TailKey& key : detail::all_keys(d, SignAlphabet::upper_only)) {
        std::vector<int> free_coords;
        for (int c = 1; c <= d; ++c) {
            if (!std::binary_search(key.active.begin(), key.active.end(), c))
                free_coords.push_back(c);
        }
        double value = 0.0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << free_coords.size()); ++mask) {
            std::vector<int> active = key.active;
            for (std::size_t i = 0; i < free_coords.size(); ++i) {
                if (mask & (std::size_t{1} << i)) active.push_back(free_coords[i]);
            }
            const int added = static_cast<int>(active.size() - key.active.size());
            const TailKey superset =
                make_key(std::move(active), std::vector<Sign>(key.active.size() + added, Sign::upper));
            value += (added % 2 == 0) ? lambda.at(superset) : -lambda.at(superset);
        }
        w.set(key, snap(value));
    }
    return w;
}

RecoveryReport complete_recovery_report(const TailFamily& lambda, double tol) {
    WeightSystem weights = invert_complete(lambda);
    const TailFamily recovered = tail_values_from_weights(weights);

    double residual = 0.0;
    for (const auto& [key, value] : recovered.entries())
        residual = std::max(residual, std::abs(value - lambda.at(key)));

    bool margins_ok = true;
    for (const auto& [key, value] : recovered.entries()) {
        if (key.order() == 1 && std::abs(value - 1.0) > tol) margins_ok = false;
    }

    RecoveryReport report{.weights = std::move(weights)};
    report.min_weight = report.weights.min_value();
    report.nonnegative = report.min_weight >= -tol;
    report.margins_ok = margins_ok;
    report.max_abs_residual = residual;
    report.total_mass = report.weights.total_mass();
    report.p_max = report.total_mass <= 0.0 ? 0.5 : std::min(0.5, 1.0 / report.total_mass);
    return report;
}

}  // namespace witness
