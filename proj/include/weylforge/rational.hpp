#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "weylforge/errors.hpp"

namespace weylforge {

/// Exact rational scalar. All linear algebra and polynomial arithmetic in the
/// project runs over Rat; nothing is ever rounded.
using Rat = mpq_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_one(const Rat& x) { return x == 1; }

/// Parses "p", "-p" or "p/q". Throws Error(InvalidInput) on malformed input.
Rat rat_parse(const std::string& s);

/// Canonical form: "p" for integers, "p/q" otherwise.
std::string rat_str(const Rat& x);

/// The value must be an integer fitting in long; throws otherwise.
long rat_long(const Rat& x);

std::string point_str(const std::vector<Rat>& p);

}  // namespace weylforge
