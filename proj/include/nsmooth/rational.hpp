#ifndef NSMOOTH_RATIONAL_HPP
#define NSMOOTH_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsmooth {

using Rational = mpq_class;

// Parse "p/q", "p" or a signed variant. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

std::string to_string(const std::vector<Rational>& v);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline double to_double(const Rational& q) { return q.get_d(); }

// Floor of q as a signed long. Values here are small (exponents, orders).
long floor_to_long(const Rational& q);

Rational min_of(const std::vector<Rational>& v);
Rational max_of(const std::vector<Rational>& v);

// Rescales v in place to a primitive integer vector (same direction).
void make_primitive(std::vector<Rational>& v);

}  // namespace nsmooth

#endif
