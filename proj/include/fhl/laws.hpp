#pragma once

#include <vector>

#include "fhl/exact.hpp"
#include "fhl/report.hpp"

namespace fhl::laws {

// Order-indexed sequences: values[p-1] holds the order-p moment or cumulant.
using MomentSequence = std::vector<Rat>;
using CumulantSequence = std::vector<Rat>;

// Moebius inversion over the noncrossing lattice:
//   kappa_p = sum over pi in NC(p) of mu(pi, 1_p) * prod over blocks V of m_|V|.
CumulantSequence moments_to_cumulants(const MomentSequence& moments);

// Inverse direction: m_p = sum over pi in NC(p) of prod over blocks V of kappa_|V|.
MomentSequence cumulants_to_moments(const CumulantSequence& cumulants);

// m_p = sum over pi in NC(p) of lambda^|pi|; all free cumulants equal lambda.
MomentSequence free_poisson_moments(const Rat& lambda, int p_max);

// Standard semicircle (mean 0, variance 1): m_{2t} = Catalan(t), odd moments 0.
MomentSequence semicircle_moments(int p_max);

// k-th moment of X(n, n, n^2) from the closed form
//   [n/(n+2)]^k * (q+1)/(q-1) * 1/(k+1)
//     * sum_{r=-k-1..k+1} (-1)^r * C(2k+2, k+r+1) * r / (1+q^r)
// with q = (-n + sqrt(n^2-4))/2, the root of q^2 + n q + 1 = 0 in (-1, 0).
// Evaluated at `digits` working decimal digits (at least 30) to absorb the
// cancellation in the alternating binomial sum.  n = 2 puts q at -1 where the
// odd-r terms are singular and is rejected as unsupported; n < 2, k < 1 and
// digits < 30 are invalid arguments.
double closed_form_moment(long long n, long long k, unsigned digits = 30);

enum class Regime { FreePoisson, Semicircle };

std::string regime_name(Regime regime);

struct ScanSize {
  long long n = 0;
  long long m = 0;
  long long N = 0;
};

// Element u + v*sqrt(r) of the quadratic extension used for standardized
// moments; r is carried by the surrounding ScanRow.
struct Quad {
  Rat u;
  Rat v;

  bool operator==(const Quad& o) const { return u == o.u && v == o.v; }
};

double quad_to_double(const Quad& q, const Rat& r);

struct ScanRow {
  ScanSize size;
  MomentSequence x_moments;
  CumulantSequence x_cumulants;
  // Variance scale m*nu*(1-nu) of the standardization S = (X - m*nu)/sqrt(r);
  // zero outside the semicircle regime.
  Rat r;
  std::vector<Quad> s_moments;
  std::vector<Quad> s_cumulants;
  // Exact square of max over p <= p_max of |m_p - m_p^limit|, where the limit
  // law is free Poisson (regime 1, distance on X) or standard semicircle
  // (regime 2, distance on S).
  Rat distance_sq;
  double distance = 0;
};

struct ScanReport {
  Regime regime = Regime::FreePoisson;
  Rat param;  // lambda (free Poisson) or nu (semicircle)
  int p_max = 0;
  std::vector<ScanRow> rows;
  // Squared distances are non-increasing along the ladder (ties allowed).
  bool monotone = false;
};

// Exact moment/cumulant ladder toward the limit law.  Every size must satisfy
// n*m/N == lambda (free Poisson) or n/N == nu in (0,1) (semicircle); an empty
// ladder or an inconsistent size is invalid-argument.
ScanReport asymptotic_scan(Regime regime, const Rat& param, const std::vector<ScanSize>& sizes,
                           int p_max);

// Closed form vs the exact Weingarten moment, relative error below rel_tol.
report::CheckReport verify_closed_form(const std::vector<long long>& ns, long long k_max,
                                       double rel_tol, unsigned digits = 30);

// Strict decrease of the moment distance along a free Poisson ladder.
report::CheckReport verify_free_poisson_limit(const Rat& lambda, const std::vector<ScanSize>& sizes,
                                              int p_max);

// |kappa_2(S) - 1| strictly decreasing, |kappa_3(S)| and |kappa_4(S)|
// non-increasing along a semicircle ladder; needs p_max >= 4.
report::CheckReport verify_semicircle_limit(const Rat& nu, const std::vector<ScanSize>& sizes,
                                            int p_max);

}  // namespace fhl::laws
