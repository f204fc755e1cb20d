#pragma once

#include <stdexcept>
#include <string>

namespace witness {

/// Malformed or inconsistent input: bad keys, incomplete families,
/// out-of-range parameters. Maps to CLI exit code 1.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A structurally valid request that cannot be realized: negative central
/// mass, thresholds beyond the admissible scale. Maps to CLI exit code 2.
class admissibility_error : public std::runtime_error {
public:
    explicit admissibility_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace witness
