#pragma once

#include <string>

#include "witness/incidence.hpp"
#include "witness/realization.hpp"
#include "witness/simulation.hpp"

namespace witness::cli {

/// Shortest decimal rendering that round-trips the double exactly.
std::string format_double(double value);

/// Header row of generator keys, one row per target key, 0/1 entries.
std::string incidence_csv(const IncidenceMatrix& matrix);

/// "state,mass" rows: noncentral cells in key order, the central cell last.
std::string mass_table_csv(const TernaryMassTable& table);

/// One sample per row, columns u1..ud.
std::string samples_csv(const SampleMatrix& samples);

/// Directed graph over all keys with edges to immediate signed supersets.
std::string hasse_dot(int d, SignAlphabet alphabet);

}  // namespace witness::cli
