#include "fhl/exact.hpp"
#include "fhl/errors.hpp"

#include <charconv>
#include <stdexcept>

namespace fhl {

Int binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (2 * k > n) k = n - k;
  Int r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= Int(n - k + i);
    r /= Int(i);
  }
  return r;
}

Int catalan(long long k) {
  if (k < 0) throw std::invalid_argument("catalan: negative index");
  return Int(binomial(2 * k, k) / Int(k + 1));
}

Int int_pow(const Int& b, unsigned long long e) {
  return Int(boost::multiprecision::pow(b, static_cast<unsigned>(e)));
}

Rat rat_pow(const Rat& b, long long e) {
  if (e == 0) return Rat(1);
  if (b == 0 && e < 0) throw std::invalid_argument("rat_pow: zero base with negative exponent");
  const auto a = static_cast<unsigned long long>(e < 0 ? -e : e);
  Int num = int_pow(Int(numerator(b)), a);
  Int den = int_pow(Int(denominator(b)), a);
  return e > 0 ? Rat(num, den) : Rat(den, num);
}

std::string rat_to_string(const Rat& r) {
  return Int(numerator(r)).str() + "/" + Int(denominator(r)).str();
}

std::string double_to_string(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string double_to_string_fixed(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

Real rat_to_real(const Rat& r, unsigned digits10) {
  const unsigned old = Real::default_precision();
  Real::default_precision(digits10);
  Real out(r);
  Real::default_precision(old);
  return out;
}

namespace {

Int exact_div(const Int& num, const Int& den, const std::string& context) {
  Int q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) throw std::logic_error(context + ": inexact division in fraction-free elimination");
  return q;
}

}  // namespace

RatMatrix bareiss_inverse(const IntMatrix& a, const std::string& context) {
  const Eigen::Index d = a.rows();
  if (d != a.cols()) throw std::invalid_argument("bareiss_inverse: matrix must be square");
  if (d == 0) return RatMatrix(0, 0);

  IntMatrix m(d, 2 * d);
  m.leftCols(d) = a;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, d + j) = Int(i == j ? 1 : 0);

  Int prev = 1;
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = k; r < d; ++r) {
      if (m(r, k) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw SingularGramError(context + ": singular matrix (column " + std::to_string(k) + ")");
    if (piv != k) m.row(piv).swap(m.row(k));
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i == k) continue;
      for (Eigen::Index j = 0; j < 2 * d; ++j) {
        if (j == k) continue;
        m(i, j) = exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev, context);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }

  RatMatrix w(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) w(i, j) = Rat(m(i, d + j), m(i, i));
  return w;
}

}  // namespace fhl
