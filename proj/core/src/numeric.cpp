#include "psim/numeric.hpp"

namespace psim {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

bool is_dyadic(const Rational& q) {
  const Integer& den = q.get_den();
  // A positive integer is a power of two iff it has a single set bit.
  return mpz_popcount(den.get_mpz_t()) == 1;
}

Rational dyadic(unsigned depth) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, depth);
  return Rational(Integer(1), den);
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace psim
