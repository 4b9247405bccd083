#pragma once

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace srr {

// Exact rational scalar used throughout the library. All region math is
// done over Rat; IEEE doubles appear only inside the float LP mode and in
// serialized output.
using Rat = mpq_class;

inline double to_double(const Rat& v) { return v.get_d(); }

// num/den in canonical form (mpq_class's two-argument constructor does not
// reduce on its own).
inline Rat frac(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Largest integer <= v, returned as a Rat with denominator 1.
inline Rat rat_floor(const Rat& v) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    return Rat(q);
}

// Exact conversion from a double (the double's binary value, not its
// decimal rendering). Rejects non-finite input.
Rat rat_from_double(double v);

// Parses "p/q", integers, and decimal literals (optionally with exponent:
// "1.5", ".25", "3e-2") into an exact rational. Throws std::invalid_argument
// on malformed input or zero denominator.
Rat parse_rational(std::string_view text);

// Canonical exact text form: "p" or "p/q".
std::string to_string(const Rat& v);

// Decimal rendering with the given number of significant digits (used for
// CSV/SVG output; 12 digits per the file-format contract).
std::string to_decimal_string(const Rat& v, int significant_digits = 12);

inline Rat sum(std::span<const Rat> values) {
    Rat total = 0;
    for (const Rat& v : values) total += v;
    return total;
}

}  // namespace srr
