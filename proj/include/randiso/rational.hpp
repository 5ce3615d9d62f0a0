#ifndef RANDISO_RATIONAL_HPP
#define RANDISO_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace randiso
{

/// Exact rational number. Every measure and distance in the library is one of
/// these; nothing in the core touches floating point.
using Rational = mpq_class;

/// count * 2^-level, exactly.
Rational dyadic(std::uint64_t count, unsigned level);

/// 2^-exponent.
Rational pow2_inverse(unsigned exponent);

/// Canonical `p/q` rendering (`p` alone when q = 1).
std::string to_string(Rational const &q);

/// Accepts `p`, `p/q` and `-p/q`. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

inline Rational min(Rational const &a, Rational const &b) { return a < b ? a : b; }
inline Rational max(Rational const &a, Rational const &b) { return a < b ? b : a; }

} // namespace randiso

#endif
