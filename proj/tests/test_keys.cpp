#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "support.hpp"
#include "witness/errors.hpp"
#include "witness/incidence.hpp"
#include "witness/keys.hpp"

using namespace witness;
using witness::test::k;

TEST_CASE("make_key canonicalizes coordinates and co-permutes signs") {
    const TailKey key = make_key({2, 1}, "UL");
    CHECK(key == k({1, 2}, "LU"));
    CHECK(make_key({5}, "U") == k({5}, "U"));
    CHECK(format_key(key) == "(1,2):LU");
}

TEST_CASE("make_key rejects malformed input") {
    CHECK_THROWS_AS(make_key({}, ""), input_error);
    CHECK_THROWS_AS(make_key({1, 1}, "LU"), input_error);
    CHECK_THROWS_AS(make_key({1, 2}, "L"), input_error);
    CHECK_THROWS_AS(make_key({1}, "M"), input_error);
    CHECK_THROWS_AS(make_key({0}, "L"), input_error);
}

TEST_CASE("key parsing round-trips the file rendering") {
    for (const auto& text : {"(1,3):LU", "(5):U", "(1,2,3,4):ULLU"}) {
        CHECK(format_key(parse_key(text)) == text);
    }
    CHECK_THROWS_AS(parse_key("1,3:LU"), input_error);
    CHECK_THROWS_AS(parse_key("(1,3)LU"), input_error);
    CHECK_THROWS_AS(parse_key("(1,x):LU"), input_error);
}

TEST_CASE("enumerate_keys counts and canonical order") {
    const std::size_t expected[] = {8, 26, 80, 242, 728, 2186, 6560};
    for (int d = 2; d <= 8; ++d) {
        CHECK(enumerate_keys(d, SignAlphabet::lower_upper).size() == expected[d - 2]);
        CHECK(enumerate_keys(d, SignAlphabet::upper_only).size() == (std::size_t{1} << d) - 1);
    }

    const auto keys = enumerate_keys(2, SignAlphabet::lower_upper);
    const std::vector<TailKey> want = {k({1}, "L"), k({1}, "U"),    k({2}, "L"),
                                       k({2}, "U"), k({1, 2}, "LL"), k({1, 2}, "LU"),
                                       k({1, 2}, "UL"), k({1, 2}, "UU")};
    CHECK(keys == want);

    const auto upper4 = enumerate_keys(4, SignAlphabet::upper_only);
    CHECK(upper4.size() == 15);
    CHECK(upper4.back() == k({1, 2, 3, 4}, "UUUU"));

    CHECK_THROWS_AS(enumerate_keys(1, SignAlphabet::lower_upper), input_error);
    const int bad_orders[] = {0};
    CHECK_THROWS_AS(enumerate_keys(3, SignAlphabet::lower_upper, bad_orders), input_error);

    const int pair_orders[] = {2};
    const auto pairs = enumerate_keys(3, SignAlphabet::lower_upper, pair_orders);
    CHECK(pairs.size() == 12);
    for (const TailKey& key : pairs) CHECK(key.order() == 2);
}

TEST_CASE("extends implements signed sub-pattern containment") {
    CHECK(extends(k({1, 2, 3}, "LLU"), k({1, 3}, "LU")));
    CHECK(extends(k({1, 2}, "UL"), k({1, 2}, "UL")));
    CHECK_FALSE(extends(k({1, 2}, "UU"), k({2}, "L")));
    CHECK_FALSE(extends(k({1, 3}, "LU"), k({1, 2, 3}, "LLU")));
    CHECK_FALSE(extends(k({2, 3}, "LU"), k({1}, "L")));
}

TEST_CASE("mobius_value alternates sign over the interval rank") {
    CHECK(mobius_value(k({1}, "L"), k({1, 2}, "LU")) == -1);
    CHECK(mobius_value(k({1}, "L"), k({1}, "L")) == 1);
    CHECK(mobius_value(k({1}, "U"), k({1, 2}, "LU")) == 0);
    CHECK(mobius_value(k({1}, "L"), k({1, 2, 3}, "LUU")) == 1);
}

TEST_CASE("state and key conversions are mutually inverse") {
    CHECK(state_to_key(make_state("LMU")).value() == k({1, 3}, "LU"));
    CHECK_FALSE(state_to_key(make_state("MMM")).has_value());
    CHECK(state_to_key(make_state("UU")).value() == k({1, 2}, "UU"));
    CHECK(key_to_state(k({1, 3}, "LU"), 3) == make_state("LMU"));
    CHECK(key_to_state(k({5}, "U"), 5) == make_state("MMMMU"));
    CHECK_THROWS_AS(make_state("LMX"), input_error);
    CHECK_THROWS_AS(key_to_state(k({4}, "U"), 3), input_error);

    // Exhaustive round trip over every noncentral state up to d = 5,
    // walked from both sides of the bijection.
    for (int d = 2; d <= 5; ++d) {
        const auto keys = enumerate_keys(d, SignAlphabet::lower_upper);
        std::size_t seen = 0;
        for (const TailKey& key : keys) {
            const TernaryState state = key_to_state(key, d);
            CHECK(state_to_key(state).value() == key);
            ++seen;
        }
        CHECK(seen == key_count(d, SignAlphabet::lower_upper));

        std::string word(static_cast<std::size_t>(d), 'L');
        std::vector<int> digit(static_cast<std::size_t>(d), 0);
        const char symbols[] = {'L', 'M', 'U'};
        std::size_t noncentral = 0;
        while (true) {
            for (int i = 0; i < d; ++i)
                word[static_cast<std::size_t>(i)] = symbols[digit[static_cast<std::size_t>(i)]];
            const TernaryState state = make_state(word);
            const auto key = state_to_key(state);
            if (key) {
                ++noncentral;
                CHECK(key_to_state(*key, d) == state);
            } else {
                CHECK(state.is_central());
            }
            int pos = 0;
            while (pos < d && digit[static_cast<std::size_t>(pos)] == 2)
                digit[static_cast<std::size_t>(pos++)] = 0;
            if (pos == d) break;
            ++digit[static_cast<std::size_t>(pos)];
        }
        CHECK(noncentral == key_count(d, SignAlphabet::lower_upper));
    }
}

TEST_CASE("full incidence matrix is unit upper triangular in key order") {
    for (int d = 2; d <= 5; ++d) {
        const IncidenceMatrix m = build_incidence_matrix(d, SignAlphabet::lower_upper);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            CHECK(m.at(r, r) == 1);
            for (std::size_t c = 0; c < r; ++c) CHECK(m.at(r, c) == 0);
        }
    }
}

TEST_CASE("incidence times mobius is the identity in exact integers") {
    for (SignAlphabet alphabet : {SignAlphabet::lower_upper, SignAlphabet::upper_only}) {
        for (int d = 2; d <= 3; ++d) {
            const auto keys = enumerate_keys(d, alphabet);
            const IncidenceMatrix zeta = build_incidence_matrix(d, keys, keys);
            const std::size_t n = keys.size();
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = 0; c < n; ++c) {
                    long long entry = 0;
                    for (std::size_t j = 0; j < n; ++j)
                        entry += static_cast<long long>(zeta.at(r, j)) * mobius_value(keys[j], keys[c]);
                    CHECK(entry == (r == c ? 1 : 0));
                }
            }
        }
    }
}

TEST_CASE("dense incidence materialization is capped at d = 7") {
    CHECK_THROWS_AS(build_incidence_matrix(8, SignAlphabet::upper_only), input_error);
    const auto small = build_incidence_matrix(2, SignAlphabet::upper_only);
    CHECK(small.rows() == 3);
}

TEST_CASE("golden incidence fixtures match the generated matrices") {
    struct Fixture {
        int d;
        SignAlphabet alphabet;
        const std::string* text;
    };
    const Fixture fixtures[] = {
        {2, SignAlphabet::lower_upper, &witness::test::kIncidence2Signed},
        {3, SignAlphabet::lower_upper, &witness::test::kIncidence3Signed},
        {4, SignAlphabet::upper_only, &witness::test::kIncidence4Upper},
    };
    for (const Fixture& fixture : fixtures) {
        const IncidenceMatrix m = build_incidence_matrix(fixture.d, fixture.alphabet);
        const auto expected = witness::test::parse_matrix(*fixture.text, m.cols());
        REQUIRE(expected.size() == m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                CHECK(m.at(r, c) == expected[r][c]);
    }
}
