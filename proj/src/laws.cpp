#include "fhl/laws.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fhl/errors.hpp"
#include "fhl/partitions.hpp"
#include "fhl/weingarten.hpp"

namespace fhl::laws {

namespace {

using partitions::FamilyKind;
using partitions::MoebiusTable;
using partitions::PartitionFamily;

std::shared_ptr<const MoebiusTable> moebius_for(int p) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const MoebiusTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const MoebiusTable>(partitions::enumerate(FamilyKind::NC, p));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(p, std::move(table)).first->second;
}

struct RatRing {
  using Value = Rat;
  Value zero() const { return Rat(0); }
  Value from_ll(long long v) const { return Rat(v); }
  Value add(const Value& a, const Value& b) const { return Rat(a + b); }
  Value mul(const Value& a, const Value& b) const { return Rat(a * b); }
};

struct QuadRing {
  Rat r;
  using Value = Quad;
  Value zero() const { return {Rat(0), Rat(0)}; }
  Value from_ll(long long v) const { return {Rat(v), Rat(0)}; }
  Value add(const Value& a, const Value& b) const { return {Rat(a.u + b.u), Rat(a.v + b.v)}; }
  Value mul(const Value& a, const Value& b) const {
    return {Rat(a.u * b.u + a.v * b.v * r), Rat(a.u * b.v + a.v * b.u)};
  }
};

template <typename Ring>
std::vector<typename Ring::Value> transform_to_cumulants(const Ring& ring,
                                                         const std::vector<typename Ring::Value>& m) {
  if (m.empty()) throw std::invalid_argument("moments_to_cumulants: empty moment sequence");
  const int p_max = static_cast<int>(m.size());
  std::vector<typename Ring::Value> out;
  out.reserve(m.size());
  for (int p = 1; p <= p_max; ++p) {
    auto family = partitions::enumerate(FamilyKind::NC, p);
    auto mu = moebius_for(p)->column_to_one();
    auto acc = ring.zero();
    for (int idx = 0; idx < family->size(); ++idx) {
      auto prod = ring.from_ll(mu[static_cast<size_t>(idx)]);
      for (const auto& block : family->at(idx).blocks()) {
        prod = ring.mul(prod, m[block.size() - 1]);
      }
      acc = ring.add(acc, prod);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

template <typename Ring>
std::vector<typename Ring::Value> transform_to_moments(const Ring& ring,
                                                       const std::vector<typename Ring::Value>& k) {
  if (k.empty()) throw std::invalid_argument("cumulants_to_moments: empty cumulant sequence");
  const int p_max = static_cast<int>(k.size());
  std::vector<typename Ring::Value> out;
  out.reserve(k.size());
  for (int p = 1; p <= p_max; ++p) {
    auto family = partitions::enumerate(FamilyKind::NC, p);
    auto acc = ring.zero();
    for (const auto& pi : family->members()) {
      auto prod = ring.from_ll(1);
      for (const auto& block : pi.blocks()) prod = ring.mul(prod, k[block.size() - 1]);
      acc = ring.add(acc, prod);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

// Sets the working mpfr precision for the current scope.
struct PrecisionGuard {
  unsigned saved;
  explicit PrecisionGuard(unsigned digits) : saved(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionGuard() { Real::default_precision(saved); }
};

Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

std::string sizes_to_string(const std::vector<ScanSize>& sizes) {
  std::ostringstream os;
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (i) os << ";";
    os << sizes[i].n << "," << sizes[i].m << "," << sizes[i].N;
  }
  return os.str();
}

}  // namespace

CumulantSequence moments_to_cumulants(const MomentSequence& moments) {
  return transform_to_cumulants(RatRing{}, moments);
}

MomentSequence cumulants_to_moments(const CumulantSequence& cumulants) {
  return transform_to_moments(RatRing{}, cumulants);
}

MomentSequence free_poisson_moments(const Rat& lambda, int p_max) {
  if (lambda <= 0) throw std::invalid_argument("free_poisson_moments: lambda must be positive");
  if (p_max < 1) throw std::invalid_argument("free_poisson_moments: p_max must be at least 1");
  MomentSequence out;
  out.reserve(static_cast<size_t>(p_max));
  for (int p = 1; p <= p_max; ++p) {
    auto family = partitions::enumerate(FamilyKind::NC, p);
    Rat acc(0);
    for (const auto& pi : family->members()) acc += rat_pow(lambda, pi.block_count());
    out.push_back(acc);
  }
  return out;
}

MomentSequence semicircle_moments(int p_max) {
  if (p_max < 1) throw std::invalid_argument("semicircle_moments: p_max must be at least 1");
  MomentSequence out;
  out.reserve(static_cast<size_t>(p_max));
  for (int p = 1; p <= p_max; ++p) {
    out.push_back(p % 2 == 0 ? Rat(catalan(p / 2)) : Rat(0));
  }
  return out;
}

double closed_form_moment(long long n, long long k, unsigned digits) {
  if (n < 2) throw std::invalid_argument("closed_form_moment: n must be at least 2");
  if (n == 2) {
    throw UnsupportedParameterError(
        "closed_form_moment: n = 2 puts q at -1, where the odd-order terms are singular; "
        "the n = 2 moments remain available exactly through fhg_moment");
  }
  if (k < 1) throw std::invalid_argument("closed_form_moment: k must be at least 1");
  if (digits < 30) {
    throw std::invalid_argument("closed_form_moment: precision must be at least 30 decimal digits");
  }

  PrecisionGuard guard(digits);
  const Real nn(n);
  const Real q = Real((-nn + sqrt(Real(nn * nn - 4))) / 2);
  Real sum(0);
  for (long long r = -(k + 1); r <= k + 1; ++r) {
    if (r == 0) continue;
    const Real c = rat_to_real(Rat(binomial(2 * k + 2, k + r + 1)), digits);
    const Real term = Real(c * Real(r) / (1 + pow(q, r)));
    if ((r % 2 + 2) % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  const Real prefactor = Real(pow(nn / (nn + 2), k) * (q + 1) / (q - 1) / (k + 1));
  return Real(prefactor * sum).convert_to<double>();
}

std::string regime_name(Regime regime) {
  return regime == Regime::FreePoisson ? "free-poisson" : "semicircle";
}

double quad_to_double(const Quad& q, const Rat& r) {
  const double u = rat_to_real(q.u, 30).convert_to<double>();
  const double v = rat_to_real(q.v, 30).convert_to<double>();
  const double rr = rat_to_real(r, 30).convert_to<double>();
  return u + v * std::sqrt(rr);
}

ScanReport asymptotic_scan(Regime regime, const Rat& param, const std::vector<ScanSize>& sizes,
                           int p_max) {
  if (p_max < 1) throw std::invalid_argument("asymptotic_scan: p_max must be at least 1");
  if (sizes.empty()) throw std::invalid_argument("asymptotic_scan: empty size ladder");
  if (regime == Regime::FreePoisson) {
    if (param <= 0) throw std::invalid_argument("asymptotic_scan: lambda must be positive");
  } else if (!(param > 0 && param < 1)) {
    throw std::invalid_argument("asymptotic_scan: nu must lie strictly between 0 and 1");
  }

  const MomentSequence limit = regime == Regime::FreePoisson ? free_poisson_moments(param, p_max)
                                                             : semicircle_moments(p_max);

  ScanReport rep;
  rep.regime = regime;
  rep.param = param;
  rep.p_max = p_max;
  for (const auto& size : sizes) {
    if (regime == Regime::FreePoisson) {
      if (Rat(Int(size.n) * Int(size.m), Int(size.N)) != param) {
        throw std::invalid_argument("asymptotic_scan: size " + std::to_string(size.n) + "," +
                                    std::to_string(size.m) + "," + std::to_string(size.N) +
                                    " violates n*m/N = lambda");
      }
    } else if (Rat(Int(size.n), Int(size.N)) != param) {
      throw std::invalid_argument("asymptotic_scan: size " + std::to_string(size.n) + "," +
                                  std::to_string(size.m) + "," + std::to_string(size.N) +
                                  " violates n/N = nu");
    }

    ScanRow row;
    row.size = size;
    row.r = Rat(0);
    for (int p = 1; p <= p_max; ++p) {
      row.x_moments.push_back(weingarten::fhg_moment(size.n, size.m, size.N, p));
    }
    row.x_cumulants = moments_to_cumulants(row.x_moments);

    Rat worst(0);
    if (regime == Regime::FreePoisson) {
      for (int p = 1; p <= p_max; ++p) {
        const Rat d = Rat(row.x_moments[static_cast<size_t>(p - 1)] - limit[static_cast<size_t>(p - 1)]);
        const Rat dsq = Rat(d * d);
        if (dsq > worst) worst = dsq;
      }
    } else {
      const Rat& nu = param;
      const Rat c = Rat(Rat(size.m) * nu);
      row.r = Rat(Rat(size.m) * nu * (1 - nu));
      for (int p = 1; p <= p_max; ++p) {
        Rat a(0);
        for (int t = 0; t <= p; ++t) {
          const Rat mt = t == 0 ? Rat(1) : row.x_moments[static_cast<size_t>(t - 1)];
          a += Rat(binomial(p, t)) * rat_pow(Rat(-c), p - t) * mt;
        }
        if (p % 2 == 0) {
          row.s_moments.push_back({Rat(a / rat_pow(row.r, p / 2)), Rat(0)});
        } else {
          row.s_moments.push_back({Rat(0), Rat(a / rat_pow(row.r, (p + 1) / 2))});
        }
      }
      row.s_cumulants = transform_to_cumulants(QuadRing{row.r}, row.s_moments);
      for (int p = 1; p <= p_max; ++p) {
        const Quad& sm = row.s_moments[static_cast<size_t>(p - 1)];
        Rat dsq;
        if (p % 2 == 0) {
          const Rat d = Rat(sm.u - limit[static_cast<size_t>(p - 1)]);
          dsq = Rat(d * d);
        } else {
          dsq = Rat(sm.v * sm.v * row.r);
        }
        if (dsq > worst) worst = dsq;
      }
    }
    row.distance_sq = worst;
    row.distance = std::sqrt(rat_to_real(worst, 30).convert_to<double>());
    rep.rows.push_back(std::move(row));
  }

  rep.monotone = true;
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    if (rep.rows[i].distance_sq > rep.rows[i - 1].distance_sq) rep.monotone = false;
  }
  return rep;
}

report::CheckReport verify_closed_form(const std::vector<long long>& ns, long long k_max,
                                       double rel_tol, unsigned digits) {
  if (ns.empty()) throw std::invalid_argument("verify_closed_form: empty n list");
  if (k_max < 1) throw std::invalid_argument("verify_closed_form: k_max must be at least 1");

  report::CheckReport rep;
  rep.identity = "closed-form moments";
  std::ostringstream nstr;
  for (size_t i = 0; i < ns.size(); ++i) nstr << (i ? "," : "") << ns[i];
  rep.parameters = {{"n_values", nstr.str()},
                    {"k_max", std::to_string(k_max)},
                    {"rel_tol", double_to_string(rel_tol)},
                    {"digits", std::to_string(digits)}};
  double worst = 0;
  for (long long n : ns) {
    for (long long k = 1; k <= k_max; ++k) {
      const double cf = closed_form_moment(n, k, digits);
      const Rat exact = weingarten::fhg_moment(n, n, n * n, static_cast<int>(k));
      const double ex = rat_to_real(exact, digits).convert_to<double>();
      const double rel = std::abs(cf - ex) / std::abs(ex);
      if (rel > worst) worst = rel;
      ++rep.pairs_checked;
      if (!(rel < rel_tol)) {
        rep.failures.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) +
                               ": closed form " + double_to_string(cf) + " vs exact " +
                               rat_to_string(exact) + " (rel " + double_to_string(rel) + ")");
      }
    }
  }
  rep.metrics = {{"worst_rel_error", double_to_string(worst)}};
  return rep;
}

report::CheckReport verify_free_poisson_limit(const Rat& lambda, const std::vector<ScanSize>& sizes,
                                              int p_max) {
  const ScanReport scan = asymptotic_scan(Regime::FreePoisson, lambda, sizes, p_max);

  report::CheckReport rep;
  rep.identity = "free Poisson moment ladder";
  rep.parameters = {{"lambda", rat_to_string(lambda)},
                    {"sizes", sizes_to_string(sizes)},
                    {"p_max", std::to_string(p_max)}};
  rep.pairs_checked = static_cast<long long>(scan.rows.size());
  std::ostringstream dist;
  for (size_t i = 0; i < scan.rows.size(); ++i) {
    dist << (i ? "," : "") << double_to_string(scan.rows[i].distance);
    if (i > 0 && !(scan.rows[i].distance_sq < scan.rows[i - 1].distance_sq)) {
      rep.failures.push_back("step " + std::to_string(i) + ": distance " +
                             double_to_string(scan.rows[i].distance) +
                             " does not strictly decrease from " +
                             double_to_string(scan.rows[i - 1].distance));
    }
  }
  rep.metrics = {{"distances", dist.str()}};
  return rep;
}

report::CheckReport verify_semicircle_limit(const Rat& nu, const std::vector<ScanSize>& sizes,
                                            int p_max) {
  if (p_max < 4) {
    throw std::invalid_argument("verify_semicircle_limit: needs p_max >= 4 to see kappa_4");
  }
  const ScanReport scan = asymptotic_scan(Regime::Semicircle, nu, sizes, p_max);

  report::CheckReport rep;
  rep.identity = "semicircle cumulant ladder";
  rep.parameters = {{"nu", rat_to_string(nu)},
                    {"sizes", sizes_to_string(sizes)},
                    {"p_max", std::to_string(p_max)}};
  rep.pairs_checked = static_cast<long long>(scan.rows.size());

  std::vector<Rat> dev2, abs3_sq, abs4;
  std::ostringstream k2s, k3s, k4s;
  for (size_t i = 0; i < scan.rows.size(); ++i) {
    const ScanRow& row = scan.rows[i];
    const Quad& k2 = row.s_cumulants[1];
    const Quad& k3 = row.s_cumulants[2];
    const Quad& k4 = row.s_cumulants[3];
    if (k2.v != 0 || k3.u != 0 || k4.v != 0) {
      rep.failures.push_back("row " + std::to_string(i) +
                             ": standardized cumulants leave their parity component");
    }
    dev2.push_back(abs_rat(Rat(k2.u - 1)));
    abs3_sq.push_back(Rat(k3.v * k3.v * row.r));
    abs4.push_back(abs_rat(k4.u));
    k2s << (i ? "," : "") << double_to_string(quad_to_double(k2, row.r));
    k3s << (i ? "," : "") << double_to_string(quad_to_double(k3, row.r));
    k4s << (i ? "," : "") << double_to_string(quad_to_double(k4, row.r));
  }
  for (size_t i = 1; i < scan.rows.size(); ++i) {
    if (!(dev2[i] < dev2[i - 1])) {
      rep.failures.push_back("step " + std::to_string(i) + ": |kappa_2 - 1| does not decrease");
    }
    if (abs3_sq[i] > abs3_sq[i - 1]) {
      rep.failures.push_back("step " + std::to_string(i) + ": |kappa_3| increases");
    }
    if (abs4[i] > abs4[i - 1]) {
      rep.failures.push_back("step " + std::to_string(i) + ": |kappa_4| increases");
    }
  }
  rep.metrics = {{"kappa_2", k2s.str()}, {"kappa_3", k3s.str()}, {"kappa_4", k4s.str()}};
  return rep;
}

}  // namespace fhl::laws
