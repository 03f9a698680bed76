#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>

namespace fhl {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

Int binomial(long long n, long long k);
Int catalan(long long k);

// b^e for integer e of either sign; throws std::invalid_argument on 0^negative.
Rat rat_pow(const Rat& b, long long e);
Int int_pow(const Int& b, unsigned long long e);

// Canonical "p/q" form, lowest terms, positive denominator, e.g. "1/1", "-3/7".
std::string rat_to_string(const Rat& r);

// Shortest round-trip decimal for doubles ("0.1", "1e-09", ...).
std::string double_to_string(double x);

// Fixed 12-significant-digit decimal, for complex components in reports.
std::string double_to_string_fixed(double x);

Real rat_to_real(const Rat& r, unsigned digits10);

// Exact inverse of an integer matrix via fraction-free (Bareiss) elimination
// in Gauss-Jordan form with row pivoting.  Throws SingularGramError if the
// matrix is singular; the message includes `context`.
RatMatrix bareiss_inverse(const IntMatrix& a, const std::string& context = "matrix");

}  // namespace fhl
