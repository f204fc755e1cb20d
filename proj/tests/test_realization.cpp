#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "witness/errors.hpp"
#include "witness/inversion.hpp"
#include "witness/realization.hpp"
#include "witness/simulation.hpp"

using namespace witness;
using witness::test::close;
using witness::test::k;

namespace {

// Brute-force oracle: enumerate all 3^d states and sum the matching masses.
double tail_total_brute_force(const TernaryMassTable& q, const TailKey& target) {
    const int d = q.dimension();
    std::string word(static_cast<std::size_t>(d), 'L');
    const char symbols[] = {'L', 'M', 'U'};
    std::vector<int> digits(static_cast<std::size_t>(d), 0);
    double total = 0.0;
    while (true) {
        for (int i = 0; i < d; ++i) word[static_cast<std::size_t>(i)] = symbols[digits[static_cast<std::size_t>(i)]];
        bool matches = true;
        for (std::size_t i = 0; i < target.active.size(); ++i) {
            if (word[static_cast<std::size_t>(target.active[i] - 1)] != sign_char(target.pattern[i]))
                matches = false;
        }
        if (matches) total += q.mass(TernaryState{word});
        int pos = 0;
        while (pos < d && digits[static_cast<std::size_t>(pos)] == 2) digits[static_cast<std::size_t>(pos++)] = 0;
        if (pos == d) break;
        ++digits[static_cast<std::size_t>(pos)];
    }
    return total;
}

}  // namespace

TEST_CASE("threshold validates the open interval") {
    CHECK_THROWS_AS(Threshold(0.0), input_error);
    CHECK_THROWS_AS(Threshold(0.5), input_error);
    CHECK_THROWS_AS(Threshold(-0.1), input_error);
    CHECK(Threshold(0.25).value() == 0.25);
}

TEST_CASE("rescaling weights to cell masses hits the reference central values") {
    const TernaryMassTable q20 = q_from_weights(benchmark_expected_weights(0.20), Threshold(0.10));
    CHECK(close(q20.central_mass(), 0.560, 1e-12));
    CHECK(close(q20.total_mass(), 1.0, 1e-12));

    const TernaryMassTable q00 = q_from_weights(benchmark_expected_weights(0.0), Threshold(0.10));
    CHECK(close(q00.central_mass(), 0.400, 1e-12));

    const WeightSystem zero(4, SignAlphabet::lower_upper);
    const TernaryMassTable empty = q_from_weights(zero, Threshold(0.3));
    CHECK(empty.central_mass() == 1.0);
    CHECK(empty.noncentral().empty());
}

TEST_CASE("rescaling rejects negative weights and inadmissible scales") {
    WeightSystem negative(2, SignAlphabet::lower_upper);
    negative.set(k({1}, "L"), -0.5);
    CHECK_THROWS_AS(q_from_weights(negative, Threshold(0.1)), input_error);

    // alpha = 0.10 at p0 = 0.20: central mass would be -0.04.
    CHECK_THROWS_AS(q_from_weights(benchmark_expected_weights(0.10), Threshold(0.20)),
                    admissibility_error);
    // alpha = 0.20 at p0 = 0.20 is admissible with central mass 0.12.
    const TernaryMassTable edge = q_from_weights(benchmark_expected_weights(0.20), Threshold(0.20));
    CHECK(close(edge.central_mass(), 0.12, 1e-12));
}

TEST_CASE("weight dust below the solver tolerance reads as zero mass") {
    WeightSystem dusty(2, SignAlphabet::lower_upper);
    dusty.set(k({1}, "L"), -1e-10);
    dusty.set(k({2}, "U"), 0.5);
    const TernaryMassTable q = q_from_weights(dusty, Threshold(0.1));
    CHECK(q.mass(TernaryState{"LM"}) == 0.0);
    CHECK(close(q.mass(TernaryState{"MU"}), 0.05, 1e-15));
}

TEST_CASE("noncentral rescaling is a bijection") {
    const TernaryMassTable q = q_from_weights(benchmark_expected_weights(0.20), Threshold(0.10));
    const WeightSystem back = weights_from_q(q);
    const WeightSystem original = benchmark_expected_weights(0.20);
    for (const auto& [key, value] : original.entries()) {
        if (value > 0.0) CHECK(close(back.at(key), value, 1e-14));
    }

    TernaryMassTable single(3, Threshold(0.10), 0.95, {{k({1, 3}, "LU"), 0.05}});
    CHECK(close(weights_from_q(single).at(k({1, 3}, "LU")), 0.5, 1e-15));

    Xoshiro256 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        WeightSystem w(4, SignAlphabet::lower_upper);
        for (TailKey& key : enumerate_keys(4, SignAlphabet::lower_upper))
            w.set(std::move(key), 0.05 * rng.next_double());
        const TernaryMassTable table = q_from_weights(w, Threshold(0.1));
        const WeightSystem round = weights_from_q(table);
        for (const auto& [key, value] : w.entries())
            CHECK(close(round.at(key), value, 1e-14));
    }
}

TEST_CASE("tail totals match the brute-force state sum and p0 * lambda") {
    SUBCASE("three-state support set from the d=3 illustration") {
        WeightSystem w(3, SignAlphabet::lower_upper);
        w.set(k({1, 3}, "LU"), 0.8);
        w.set(k({1, 2, 3}, "LLU"), 0.4);
        w.set(k({1, 2, 3}, "LUU"), 0.3);
        w.set(k({2}, "L"), 0.2);  // does not extend the target
        const TernaryMassTable q = q_from_weights(w, Threshold(0.2));
        const double total = tail_total(q, k({1, 3}, "LU"));
        CHECK(close(total, 0.2 * (0.8 + 0.4 + 0.3), 1e-14));
        CHECK(close(total, tail_total_brute_force(q, k({1, 3}, "LU")), 1e-14));
    }

    SUBCASE("central-only table yields zero totals") {
        const WeightSystem zero(3, SignAlphabet::lower_upper);
        const TernaryMassTable q = q_from_weights(zero, Threshold(0.1));
        for (const TailKey& key : enumerate_keys(3, SignAlphabet::lower_upper))
            CHECK(tail_total(q, key) == 0.0);
    }

    SUBCASE("reference family pair total") {
        const TernaryMassTable q = q_from_weights(benchmark_expected_weights(0.20), Threshold(0.10));
        CHECK(close(tail_total(q, k({1, 2}, "UL")), 0.10, 1e-12));
        CHECK(close(tail_total_brute_force(q, k({1, 2}, "UL")), 0.10, 1e-12));
    }

    SUBCASE("identity against the forward map on random systems") {
        Xoshiro256 rng(17);
        for (int d = 2; d <= 4; ++d) {
            WeightSystem w(d, SignAlphabet::lower_upper);
            for (TailKey& key : enumerate_keys(d, SignAlphabet::lower_upper))
                w.set(std::move(key), 0.02 * rng.next_double());
            const TernaryMassTable q = q_from_weights(w, Threshold(0.15));
            const TailFamily lambda = tail_values_from_weights(w);
            for (const auto& [key, value] : lambda.entries()) {
                CHECK(close(tail_total(q, key), 0.15 * value, 1e-12));
                CHECK(close(tail_total_brute_force(q, key), 0.15 * value, 1e-12));
            }
        }
    }
}

TEST_CASE("margin sums per coordinate and sign") {
    const MarginReport good = check_margins(benchmark_expected_weights(0.20), 1e-9);
    CHECK(good.ok);
    REQUIRE(good.lower_sums.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(close(good.lower_sums[static_cast<std::size_t>(i)], 1.0, 1e-12));
        CHECK(close(good.upper_sums[static_cast<std::size_t>(i)], 1.0, 1e-12));
    }

    WeightSystem lopsided(2, SignAlphabet::lower_upper);
    lopsided.set(k({1}, "L"), 1.0);
    const MarginReport bad = check_margins(lopsided, 1e-9);
    CHECK_FALSE(bad.ok);
    CHECK(bad.upper_sums[0] == 0.0);
    CHECK(bad.lower_sums[0] == 1.0);
}

TEST_CASE("margin identity pins the weighted order sum at 2d") {
    Xoshiro256 rng(23);
    for (int d = 2; d <= 5; ++d) {
        const WeightSystem w = witness::test::random_margin_system(d, SignAlphabet::lower_upper, rng);
        double weighted = 0.0;
        for (const auto& [key, value] : w.entries()) weighted += key.order() * value;
        CHECK(close(weighted, 2.0 * d, 1e-9));
        CHECK(w.total_mass() <= 2.0 * d + 1e-9);
    }
}

TEST_CASE("admissible scale bound") {
    CHECK(close(admissible_p_max(benchmark_expected_weights(0.0)), 1.0 / 6.0, 1e-15));
    CHECK(close(admissible_p_max(benchmark_expected_weights(0.25)), 0.25, 1e-15));

    WeightSystem singleton(3, SignAlphabet::lower_upper);
    for (int i = 1; i <= 3; ++i) {
        singleton.set(k({i}, "L"), 1.0);
        singleton.set(k({i}, "U"), 1.0);
    }
    CHECK(close(admissible_p_max(singleton), 1.0 / 6.0, 1e-15));

    const WeightSystem zero(2, SignAlphabet::lower_upper);
    CHECK(admissible_p_max(zero) == 0.5);

    WeightSystem negative(2, SignAlphabet::lower_upper);
    negative.set(k({1}, "L"), -0.1);
    CHECK_THROWS_AS(admissible_p_max(negative), input_error);
}

TEST_CASE("endpoint scale p0 = 1/S is admissible when below one half") {
    const WeightSystem w = benchmark_expected_weights(0.20);  // S = 4.4
    const double p_max = admissible_p_max(w);
    const TernaryMassTable q = q_from_weights(w, Threshold(p_max));
    CHECK(q.central_mass() >= 0.0);
    CHECK(close(q.central_mass(), 0.0, 1e-12));
}

TEST_CASE("marginalization preserves the coefficients on kept coordinates") {
    const WeightSystem full = benchmark_expected_weights(0.20);
    const int keep[] = {1, 2, 5};
    const MarginalizedSystem projected = marginalize(full, keep);
    CHECK(projected.weights.dimension() == 3);
    CHECK(projected.index_map == std::vector<int>{1, 2, 5});

    const TailFamily before = tail_values_from_weights(full);
    const TailFamily after = tail_values_from_weights(projected.weights);
    for (const auto& [key, value] : after.entries()) {
        TailKey original;
        for (std::size_t i = 0; i < key.active.size(); ++i) {
            original.active.push_back(projected.index_map[static_cast<std::size_t>(key.active[i] - 1)]);
            original.pattern.push_back(key.pattern[i]);
        }
        CHECK(close(value, before.at(original), 1e-12));
    }
}

TEST_CASE("marginalization over the full set is the identity") {
    const WeightSystem w = benchmark_expected_weights(0.10);
    const int keep[] = {1, 2, 3, 4, 5};
    const MarginalizedSystem projected = marginalize(w, keep);
    for (const auto& [key, value] : w.entries()) CHECK(projected.weights.at(key) == value);
}

TEST_CASE("marginalizing to one coordinate keeps both unit margins") {
    const int keep[] = {5};
    const MarginalizedSystem projected = marginalize(benchmark_expected_weights(0.20), keep);
    CHECK(projected.weights.dimension() == 1);
    const MarginReport margins = check_margins(projected.weights, 1e-12);
    CHECK(margins.ok);
}

TEST_CASE("marginalization on random systems and keep sets") {
    Xoshiro256 rng(31);
    for (int d = 3; d <= 5; ++d) {
        const WeightSystem w = witness::test::random_margin_system(d, SignAlphabet::lower_upper, rng);
        std::vector<int> keep;
        for (int c = 1; c <= d; ++c)
            if (rng.next_double() < 0.6) keep.push_back(c);
        if (keep.empty()) keep.push_back(1 + static_cast<int>(rng.next_u64() % d));

        const MarginalizedSystem projected = marginalize(w, keep);
        const TailFamily before = tail_values_from_weights(w);
        const TailFamily after = tail_values_from_weights(projected.weights);
        for (const auto& [key, value] : after.entries()) {
            TailKey original;
            for (std::size_t i = 0; i < key.active.size(); ++i) {
                original.active.push_back(projected.index_map[static_cast<std::size_t>(key.active[i] - 1)]);
                original.pattern.push_back(key.pattern[i]);
            }
            CHECK(close(value, before.at(original), 1e-12));
        }
    }

    const WeightSystem w = benchmark_expected_weights(0.1);
    CHECK_THROWS_AS(marginalize(w, std::span<const int>{}), input_error);
    const int outside[] = {6};
    CHECK_THROWS_AS(marginalize(w, outside), input_error);
}

TEST_CASE("theoretical family is constant across thresholds below p0") {
    const WeightSystem w = benchmark_expected_weights(0.20);
    const auto targets = enumerate_keys(5, SignAlphabet::lower_upper);
    const Threshold p0(0.10);
    const TailFamily at_p0 = theoretical_lambda_at(w, 0.10, p0, targets);
    const TailFamily at_half = theoretical_lambda_at(w, 0.05, p0, targets);
    const TailFamily forward = tail_values_from_weights(w, targets);
    for (const auto& [key, value] : forward.entries()) {
        CHECK(at_p0.at(key) == value);
        CHECK(at_half.at(key) == value);
    }
    CHECK_THROWS_AS(theoretical_lambda_at(w, 0.11, p0, targets), input_error);
    CHECK_THROWS_AS(theoretical_lambda_at(w, 0.0, p0, targets), input_error);
}

TEST_CASE("central-mass sequence along vanishing thresholds") {
    const WeightSystem w = benchmark_expected_weights(0.20);  // S = 4.4
    const double grid[] = {0.2, 0.1, 0.05, 0.01};
    const std::vector<double> central = vanishing_threshold_check(w, grid);
    const double expected[] = {0.12, 0.56, 0.78, 0.956};
    REQUIRE(central.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(close(central[i], expected[i], 1e-12));
    for (std::size_t i = 1; i < 4; ++i) CHECK(central[i] > central[i - 1]);

    const double at_p_max[] = {1.0 / 4.4};
    CHECK_THROWS_AS(vanishing_threshold_check(w, at_p_max), input_error);

    const WeightSystem zero(3, SignAlphabet::lower_upper);
    const double some[] = {0.4, 0.2};
    for (double value : vanishing_threshold_check(zero, some)) CHECK(value == 1.0);

    // Table row alpha = 0.10 at p = 0.10.
    const double single[] = {0.10};
    CHECK(close(vanishing_threshold_check(benchmark_expected_weights(0.10), single)[0], 0.480, 1e-12));
}

TEST_CASE("total probability of generated tables") {
    Xoshiro256 rng(41);
    for (int d = 2; d <= 5; ++d) {
        const WeightSystem w = witness::test::random_margin_system(d, SignAlphabet::lower_upper, rng);
        const double p0 = 0.9 / w.total_mass();
        const TernaryMassTable q = q_from_weights(w, Threshold(std::min(p0, 0.49)));
        CHECK(close(q.total_mass(), 1.0, 1e-12));
    }
}

TEST_CASE("cell geometry table") {
    const auto rows = cell_geometry(5, Threshold(0.1));
    REQUIRE(rows.size() == 5);
    long long total = 0;
    double volume = 0.0;
    for (const auto& row : rows) {
        total += row.cell_count;
        volume += row.cell_count * row.cell_volume;
        CHECK(row.support_dim == 5 - row.order + 1);
        CHECK(row.contact_dim == 5 - row.order);
        CHECK(row.inward_neighbors == row.order);
        CHECK(row.outward_neighbors == 2 * (5 - row.order));
        CHECK(row.affected_coefficients == (1LL << row.order) - 1);
    }
    CHECK(total == 242);
    CHECK(close(volume, 1.0 - std::pow(0.8, 5), 1e-12));
    CHECK(rows[1].cell_count == 40);  // C(5,2) * 4
}
