#include "witness/keys.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <sstream>

#include "witness/errors.hpp"

namespace witness {

namespace {

constexpr std::array<Sign, 1> kUpperOnly{Sign::upper};
constexpr std::array<Sign, 2> kLowerUpper{Sign::lower, Sign::upper};

}  // namespace

char sign_char(Sign s) { return s == Sign::lower ? 'L' : 'U'; }

std::optional<Sign> sign_from_char(char c) {
    switch (c) {
        case 'L': return Sign::lower;
        case 'U': return Sign::upper;
        default: return std::nullopt;
    }
}

std::span<const Sign> alphabet_signs(SignAlphabet a) {
    if (a == SignAlphabet::upper_only) return kUpperOnly;
    return kLowerUpper;
}

bool alphabet_contains(SignAlphabet a, Sign s) {
    return a == SignAlphabet::lower_upper || s == Sign::upper;
}

std::string_view alphabet_name(SignAlphabet a) {
    return a == SignAlphabet::upper_only ? "U" : "LU";
}

std::optional<SignAlphabet> alphabet_from_name(std::string_view name) {
    if (name == "U") return SignAlphabet::upper_only;
    if (name == "LU") return SignAlphabet::lower_upper;
    return std::nullopt;
}

std::strong_ordering TailKey::operator<=>(const TailKey& other) const {
    if (auto c = active.size() <=> other.active.size(); c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(
            active.begin(), active.end(), other.active.begin(), other.active.end());
        c != 0)
        return c;
    return std::lexicographical_compare_three_way(
        pattern.begin(), pattern.end(), other.pattern.begin(), other.pattern.end());
}

TailKey make_key(std::vector<int> active, std::vector<Sign> pattern) {
    if (active.empty()) throw input_error("tail key: active set must be nonempty");
    if (active.size() != pattern.size())
        throw input_error("tail key: active set and sign pattern must have the same length");
    for (int coordinate : active) {
        if (coordinate < 1) throw input_error("tail key: coordinates must be positive (1-based)");
    }

    std::vector<std::size_t> idx(active.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return active[a] < active[b]; });

    TailKey key;
    key.active.reserve(active.size());
    key.pattern.reserve(pattern.size());
    for (std::size_t i : idx) {
        key.active.push_back(active[i]);
        key.pattern.push_back(pattern[i]);
    }
    for (std::size_t i = 1; i < key.active.size(); ++i) {
        if (key.active[i] == key.active[i - 1])
            throw input_error("tail key: duplicate coordinate " + std::to_string(key.active[i]));
    }
    return key;
}

TailKey make_key(std::vector<int> active, std::string_view pattern) {
    std::vector<Sign> signs;
    signs.reserve(pattern.size());
    for (char c : pattern) {
        auto s = sign_from_char(c);
        if (!s) throw input_error(std::string("tail key: invalid sign character '") + c + "'");
        signs.push_back(*s);
    }
    return make_key(std::move(active), std::move(signs));
}

std::string format_key(const TailKey& key) {
    std::string out = "(";
    for (std::size_t i = 0; i < key.active.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(key.active[i]);
    }
    out += "):";
    for (Sign s : key.pattern) out += sign_char(s);
    return out;
}

TailKey parse_key(std::string_view text) {
    const auto fail = [&] { throw input_error("malformed key '" + std::string(text) + "', expected e.g. (1,3):LU"); };
    if (text.empty() || text.front() != '(') fail();
    const auto close = text.find(')');
    if (close == std::string_view::npos || close + 1 >= text.size() || text[close + 1] != ':') fail();

    std::vector<int> active;
    std::string_view body = text.substr(1, close - 1);
    while (!body.empty()) {
        const auto comma = body.find(',');
        std::string_view token = body.substr(0, comma);
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size()) fail();
        active.push_back(value);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return make_key(std::move(active), text.substr(close + 2));
}

void validate_key_for(const TailKey& key, int d, SignAlphabet alphabet) {
    if (key.active.empty() || key.active.size() != key.pattern.size())
        throw input_error("tail key is not canonical");
    if (key.active.back() > d)
        throw input_error("key " + format_key(key) + " exceeds dimension " + std::to_string(d));
    for (Sign s : key.pattern) {
        if (!alphabet_contains(alphabet, s))
            throw input_error("key " + format_key(key) + " uses sign outside the alphabet " +
                              std::string(alphabet_name(alphabet)));
    }
}

bool extends(const TailKey& generator, const TailKey& target) {
    if (target.active.size() > generator.active.size()) return false;
    std::size_t g = 0;
    for (std::size_t t = 0; t < target.active.size(); ++t) {
        while (g < generator.active.size() && generator.active[g] < target.active[t]) ++g;
        if (g == generator.active.size() || generator.active[g] != target.active[t]) return false;
        if (generator.pattern[g] != target.pattern[t]) return false;
        ++g;
    }
    return true;
}

int mobius_value(const TailKey& x, const TailKey& y) {
    if (!extends(y, x)) return 0;
    return ((y.order() - x.order()) % 2 == 0) ? 1 : -1;
}

std::size_t key_count(int d, SignAlphabet a) {
    const std::size_t base = alphabet_signs(a).size() + 1;
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= base;
    return total - 1;
}

namespace detail {

std::vector<TailKey> all_keys(int d, SignAlphabet a) {
    std::vector<int> orders(static_cast<std::size_t>(d));
    std::iota(orders.begin(), orders.end(), 1);

    const auto signs = alphabet_signs(a);
    std::vector<TailKey> keys;
    keys.reserve(key_count(d, a));

    for (int k : orders) {
        // Lexicographic k-combinations of 1..d.
        std::vector<int> combo(static_cast<std::size_t>(k));
        std::iota(combo.begin(), combo.end(), 1);
        while (true) {
            // All sign patterns on this active set, first coordinate most significant.
            std::vector<std::size_t> digit(static_cast<std::size_t>(k), 0);
            while (true) {
                TailKey key;
                key.active = combo;
                key.pattern.reserve(digit.size());
                for (std::size_t s : digit) key.pattern.push_back(signs[s]);
                keys.push_back(std::move(key));

                int pos = k - 1;
                while (pos >= 0 && digit[static_cast<std::size_t>(pos)] + 1 == signs.size()) {
                    digit[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++digit[static_cast<std::size_t>(pos)];
            }

            int pos = k - 1;
            while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == d - (k - 1 - pos)) --pos;
            if (pos < 0) break;
            ++combo[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                combo[static_cast<std::size_t>(i)] = combo[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return keys;
}

}  // namespace detail

std::vector<TailKey> enumerate_keys(int d, SignAlphabet a) {
    if (d < 2) throw input_error("enumerate_keys requires d >= 2");
    return detail::all_keys(d, a);
}

std::vector<TailKey> enumerate_keys(int d, SignAlphabet a, std::span<const int> orders) {
    if (d < 2) throw input_error("enumerate_keys requires d >= 2");
    std::vector<int> wanted(orders.begin(), orders.end());
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    for (int k : wanted) {
        if (k < 1 || k > d)
            throw input_error("enumerate_keys: order " + std::to_string(k) + " outside 1.." + std::to_string(d));
    }
    std::vector<TailKey> keys;
    for (TailKey& key : detail::all_keys(d, a)) {
        if (std::binary_search(wanted.begin(), wanted.end(), key.order())) keys.push_back(std::move(key));
    }
    return keys;
}

bool TernaryState::is_central() const {
    return word.find_first_not_of('M') == std::string::npos;
}

TernaryState make_state(std::string word) {
    for (char c : word) {
        if (c != 'L' && c != 'M' && c != 'U')
            throw input_error(std::string("ternary state: invalid symbol '") + c + "'");
    }
    return TernaryState{std::move(word)};
}

std::optional<TailKey> state_to_key(const TernaryState& state) {
    TailKey key;
    for (std::size_t i = 0; i < state.word.size(); ++i) {
        const char c = state.word[i];
        if (c == 'M') continue;
        auto s = sign_from_char(c);
        if (!s) throw input_error(std::string("ternary state: invalid symbol '") + c + "'");
        key.active.push_back(static_cast<int>(i) + 1);
        key.pattern.push_back(*s);
    }
    if (key.active.empty()) return std::nullopt;
    return key;
}

TernaryState key_to_state(const TailKey& key, int d) {
    if (key.active.back() > d)
        throw input_error("key " + format_key(key) + " exceeds dimension " + std::to_string(d));
    std::string word(static_cast<std::size_t>(d), 'M');
    for (std::size_t i = 0; i < key.active.size(); ++i)
        word[static_cast<std::size_t>(key.active[i] - 1)] = sign_char(key.pattern[i]);
    return TernaryState{std::move(word)};
}

}  // namespace witness
