#pragma once

// Text documents for distributions, channels and constraint sets.
//
//   distribution: {"masses": [0.5, 0.5]}
//   channel:      {"inputs": 2, "outputs": 2, "rows": [[0.9, 0.1], [0.1, 0.9]]}
//   constraint:   {"kind": "all"}
//                 {"kind": "cost", "costs": [0, 1], "budget": 0.3}
//                 {"kind": "single", "masses": [...]}
//                 {"kind": "list", "members": [[...], [...]]}

#include <string>

#include "spb/augustin.hpp"
#include "spb/measures.hpp"

namespace spb::io {

/// Row sums and masses may be off by at most this much.
inline constexpr double kFileTolerance = 1e-9;

FiniteDist parse_distribution(const std::string& text);
DiscreteChannel parse_channel(const std::string& text);
ConstraintSet parse_constraint(const std::string& text);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_file(const std::string& path);

std::string format_distribution(const FiniteDist& p);
std::string format_channel(const DiscreteChannel& w);

/// x rounded to 9 significant digits (round trip through "%.9g").
double round9(double x);

}  // namespace spb::io
