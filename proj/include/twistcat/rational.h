// Exact scalar arithmetic for the whole engine.
//
// Everything homological in this project (differentials, Hom-space bases,
// ranks of cohomology) is computed over Q with exact rationals, so results
// are independent of evaluation order and of the parallel schedule.  Only
// the entropy estimators at the very end convert to double.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace twistcat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Render as "n" or "n/d" in lowest terms (cpp_rational keeps itself reduced).
std::string rat_to_string(const Rat& x);

// Accepts "n", "-n", "n/d"; returns nullopt on malformed input or zero
// denominator.  Used by the JSON reader for differential coefficients.
std::optional<Rat> rat_from_string(const std::string& s);

} // namespace twistcat
