#pragma once

#include <map>
#include <optional>
#include <vector>

#include "witness/keys.hpp"

namespace witness {

/// Nonnegative reals keyed by TailKey: the tail-level parameter vector w.
/// Entries are stored sparsely; an absent key reads as weight zero. Iteration
/// over entries() follows the canonical key order. Immutable values are safe
/// to share across threads once built.
class WeightSystem {
public:
    WeightSystem(int d, SignAlphabet alphabet);

    int dimension() const { return d_; }
    SignAlphabet alphabet() const { return alphabet_; }

    double at(const TailKey& key) const;
    bool contains(const TailKey& key) const;
    void set(TailKey key, double value);
    void add(const TailKey& key, double value);

    const std::map<TailKey, double>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    /// S(w): sum of all stored weights.
    double total_mass() const;
    /// Minimum over stored entries; 0 for an empty system.
    double min_value() const;
    bool nonnegative(double tol) const;

private:
    int d_;
    SignAlphabet alphabet_;
    std::map<TailKey, double> entries_;
};

/// Reals keyed by TailKey: a (possibly partial) target family lambda.
class TailFamily {
public:
    TailFamily(int d, SignAlphabet alphabet);

    int dimension() const { return d_; }
    SignAlphabet alphabet() const { return alphabet_; }

    std::optional<double> find(const TailKey& key) const;
    /// Throws input_error when the key has no entry.
    double at(const TailKey& key) const;
    void set(TailKey key, double value);

    const std::map<TailKey, double>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    /// Complete iff every key of the (d, alphabet) family has an entry.
    bool is_complete() const;
    std::vector<TailKey> missing_keys(std::size_t max_count) const;

private:
    int d_;
    SignAlphabet alphabet_;
    std::map<TailKey, double> entries_;
};

}  // namespace witness
