#include "witness/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "witness/errors.hpp"

namespace witness {

namespace {

void require_finite(double value, const TailKey& key) {
    if (!std::isfinite(value))
        throw input_error("non-finite value for key " + format_key(key));
}

}  // namespace

WeightSystem::WeightSystem(int d, SignAlphabet alphabet) : d_(d), alphabet_(alphabet) {
    if (d < 1) throw input_error("weight system: dimension must be positive");
}

double WeightSystem::at(const TailKey& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0.0 : it->second;
}

bool WeightSystem::contains(const TailKey& key) const { return entries_.contains(key); }

void WeightSystem::set(TailKey key, double value) {
    validate_key_for(key, d_, alphabet_);
    require_finite(value, key);
    entries_[std::move(key)] = value;
}

void WeightSystem::add(const TailKey& key, double value) {
    validate_key_for(key, d_, alphabet_);
    require_finite(value, key);
    entries_[key] += value;
}

double WeightSystem::total_mass() const {
    double total = 0.0;
    for (const auto& [key, value] : entries_) total += value;
    return total;
}

double WeightSystem::min_value() const {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& [key, value] : entries_) lowest = std::min(lowest, value);
    return entries_.empty() ? 0.0 : lowest;
}

bool WeightSystem::nonnegative(double tol) const { return min_value() >= -tol; }

TailFamily::TailFamily(int d, SignAlphabet alphabet) : d_(d), alphabet_(alphabet) {
    if (d < 1) throw input_error("tail family: dimension must be positive");
}

std::optional<double> TailFamily::find(const TailKey& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

double TailFamily::at(const TailKey& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end())
        throw input_error("tail family has no entry for key " + format_key(key));
    return it->second;
}

void TailFamily::set(TailKey key, double value) {
    validate_key_for(key, d_, alphabet_);
    require_finite(value, key);
    entries_[std::move(key)] = value;
}

bool TailFamily::is_complete() const {
    // Keys are validated and deduplicated, so a count match implies coverage.
    return entries_.size() == key_count(d_, alphabet_);
}

std::vector<TailKey> TailFamily::missing_keys(std::size_t max_count) const {
    std::vector<TailKey> missing;
    for (TailKey& key : detail::all_keys(d_, alphabet_)) {
        if (!entries_.contains(key)) {
            missing.push_back(std::move(key));
            if (missing.size() >= max_count) break;
        }
    }
    return missing;
}

}  // namespace witness
