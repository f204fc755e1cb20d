#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace witness {

/// Tail sign of an active coordinate. Ordering is fixed as L < U.
enum class Sign : std::uint8_t { lower = 0, upper = 1 };

char sign_char(Sign s);
std::optional<Sign> sign_from_char(char c);

/// The set of admissible signs: upper-only (the Boolean restriction) or the
/// full signed case. No other alphabets exist.
enum class SignAlphabet : std::uint8_t { upper_only, lower_upper };

std::span<const Sign> alphabet_signs(SignAlphabet a);
bool alphabet_contains(SignAlphabet a, Sign s);
std::string_view alphabet_name(SignAlphabet a);  // "U" or "LU"
std::optional<SignAlphabet> alphabet_from_name(std::string_view name);

/// A signed index (I, sigma): strictly increasing 1-based active coordinates
/// plus one sign per active coordinate. Indexes both generators and target
/// coefficients. Construct through make_key, which canonicalizes.
///
/// The comparison operator is the canonical key order: active-set size
/// ascending, then active set lexicographic, then sign pattern lexicographic
/// with L < U. Under this order the full incidence matrix is upper triangular
/// with unit diagonal.
struct TailKey {
    std::vector<int> active;
    std::vector<Sign> pattern;

    int order() const { return static_cast<int>(active.size()); }

    bool operator==(const TailKey& other) const = default;
    std::strong_ordering operator<=>(const TailKey& other) const;
};

/// Canonicalize (sort coordinates, co-permute signs) and validate.
/// Throws input_error on empty/duplicate coordinates or length mismatch.
TailKey make_key(std::vector<int> active, std::vector<Sign> pattern);

/// Convenience overload taking the pattern as a string over 'L'/'U'.
TailKey make_key(std::vector<int> active, std::string_view pattern);

/// Render a key as "(1,3):LU"; parse_key is its inverse.
std::string format_key(const TailKey& key);
TailKey parse_key(std::string_view text);

/// Throws input_error unless every coordinate lies in 1..d and every sign
/// belongs to the alphabet.
void validate_key_for(const TailKey& key, int d, SignAlphabet alphabet);

/// True iff generator extends target: target.active is a subset of
/// generator.active and the signs agree on target.active.
bool extends(const TailKey& generator, const TailKey& target);

/// Moebius function of the signed ternary poset:
/// (-1)^(|y.active| - |x.active|) when y extends x, 0 otherwise.
int mobius_value(const TailKey& x, const TailKey& y);

/// Number of keys for dimension d: (|signs|+1)^d - 1.
std::size_t key_count(int d, SignAlphabet a);

/// All keys for dimension d in canonical key order. Requires d >= 2;
/// the orders overload restricts to the requested active-set sizes.
std::vector<TailKey> enumerate_keys(int d, SignAlphabet a);
std::vector<TailKey> enumerate_keys(int d, SignAlphabet a, std::span<const int> orders);

/// A ternary word over {L, M, U}; the all-M word is the central state.
struct TernaryState {
    std::string word;

    int dimension() const { return static_cast<int>(word.size()); }
    bool is_central() const;

    bool operator==(const TernaryState& other) const = default;
    auto operator<=>(const TernaryState& other) const = default;
};

TernaryState make_state(std::string word);  // validates the alphabet

/// The unique key of a noncentral state (active set = non-M coordinates),
/// or nullopt for the central state.
std::optional<TailKey> state_to_key(const TernaryState& state);

/// Inverse of state_to_key on noncentral states.
TernaryState key_to_state(const TailKey& key, int d);

namespace detail {
/// Key enumeration without the public d >= 2 gate; marginalized systems may
/// legitimately live in dimension 1.
std::vector<TailKey> all_keys(int d, SignAlphabet a);
}  // namespace detail

}  // namespace witness
