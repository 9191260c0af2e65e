#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace ordmat {

// Exact arbitrary-precision rational. mpq_class arithmetic keeps values in
// lowest terms with positive denominator; construction from user input goes
// through rat_from_string which canonicalizes.
using Rat = mpq_class;

Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);

Rat rat_abs(const Rat& r);
// r^e with e possibly negative; throws for 0^negative.
Rat rat_pow(const Rat& r, long e);
// e with r == 2^e, if any.
std::optional<long> log2_exact(const Rat& r);

} // namespace ordmat
