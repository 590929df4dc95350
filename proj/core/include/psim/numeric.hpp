#pragma once

#include <gmpxx.h>

#include <string>

namespace psim {

using Integer = mpz_class;
using Rational = mpq_class;

/// Lowest-terms `num/den`; integers print without a denominator.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_dyadic(const Rational& q);

/// 2^-depth as an exact rational.
Rational dyadic(unsigned depth);

Integer lcm(const Integer& a, const Integer& b);

}  // namespace psim
