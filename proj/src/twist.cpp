#include "fhl/twist.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fhl/errors.hpp"
#include "fhl/weingarten.hpp"

namespace fhl::twist {

namespace {

int mod(int v, int n) { return (v % n + n) % n; }

int flat(const GroupElem& g, int n) { return g.i * n + g.j; }

GroupElem unflat(int idx, int n) { return {idx / n, idx % n}; }

std::vector<Complex> root_powers(int n) {
  std::vector<Complex> w(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e) {
    const double arg = 2.0 * std::numbers::pi * e / n;
    w[static_cast<size_t>(e)] = Complex(std::cos(arg), std::sin(arg));
  }
  return w;
}

std::string elem_string(const GroupElem& g) {
  return "(" + std::to_string(g.i) + "," + std::to_string(g.j) + ")";
}

}  // namespace

GroupElem add(const GroupElem& a, const GroupElem& b, int n) {
  return {mod(a.i + b.i, n), mod(a.j + b.j, n)};
}

Cocycle::Cocycle(int n, std::vector<std::vector<int>> exponents)
    : n_(n), exponents_(std::move(exponents)) {
  if (n_ < 2) throw std::invalid_argument("Cocycle: modulus must be at least 2");
  const size_t dim = static_cast<size_t>(n_) * static_cast<size_t>(n_);
  if (exponents_.size() != dim) {
    throw std::invalid_argument("Cocycle: exponent table must have n^2 rows");
  }
  for (auto& row : exponents_) {
    if (row.size() != dim) throw std::invalid_argument("Cocycle: exponent table must be square");
    for (int& e : row) e = mod(e, n_);
  }
  for (size_t g = 0; g < dim; ++g) {
    if (exponents_[g][0] != 0 || exponents_[0][g] != 0) {
      throw std::invalid_argument("Cocycle: normalization sigma(g,1) = sigma(1,g) = 1 fails");
    }
  }
  if (n_ <= 8) {
    for (int g = 0; g < static_cast<int>(dim); ++g) {
      for (int h = 0; h < static_cast<int>(dim); ++h) {
        const int gh = flat(add(unflat(g, n_), unflat(h, n_), n_), n_);
        for (int s = 0; s < static_cast<int>(dim); ++s) {
          const int hs = flat(add(unflat(h, n_), unflat(s, n_), n_), n_);
          const int left = exponents_[static_cast<size_t>(gh)][static_cast<size_t>(s)] +
                           exponents_[static_cast<size_t>(g)][static_cast<size_t>(h)];
          const int right = exponents_[static_cast<size_t>(g)][static_cast<size_t>(hs)] +
                            exponents_[static_cast<size_t>(h)][static_cast<size_t>(s)];
          if (mod(left - right, n_) != 0) {
            throw std::invalid_argument("Cocycle: cocycle identity fails at g=" +
                                        elem_string(unflat(g, n_)) + " h=" +
                                        elem_string(unflat(h, n_)) + " s=" +
                                        elem_string(unflat(s, n_)));
          }
        }
      }
    }
  }
}

Cocycle Cocycle::standard(int n) {
  if (n < 2) throw std::invalid_argument("standard_cocycle: n must be at least 2");
  const size_t dim = static_cast<size_t>(n) * static_cast<size_t>(n);
  std::vector<std::vector<int>> table(dim, std::vector<int>(dim, 0));
  for (int gi = 0; gi < static_cast<int>(dim); ++gi) {
    const GroupElem g = unflat(gi, n);
    for (int hi = 0; hi < static_cast<int>(dim); ++hi) {
      const GroupElem h = unflat(hi, n);
      table[static_cast<size_t>(gi)][static_cast<size_t>(hi)] = mod(g.j * h.i, n);
    }
  }
  return Cocycle(n, std::move(table));
}

Cocycle Cocycle::trivial(int n) {
  if (n < 2) throw std::invalid_argument("trivial cocycle: n must be at least 2");
  const size_t dim = static_cast<size_t>(n) * static_cast<size_t>(n);
  return Cocycle(n, std::vector<std::vector<int>>(dim, std::vector<int>(dim, 0)));
}

Cocycle Cocycle::from_table(int n, std::vector<std::vector<int>> exponents) {
  return Cocycle(n, std::move(exponents));
}

int Cocycle::exponent(const GroupElem& g, const GroupElem& h) const {
  return exponents_[static_cast<size_t>(flat({mod(g.i, n_), mod(g.j, n_)}, n_))]
                   [static_cast<size_t>(flat({mod(h.i, n_), mod(h.j, n_)}, n_))];
}

Complex Cocycle::value(const GroupElem& g, const GroupElem& h) const {
  const double arg = 2.0 * std::numbers::pi * exponent(g, h) / n_;
  return Complex(std::cos(arg), std::sin(arg));
}

int omega_exponent(const Cocycle& c, const std::vector<GroupElem>& word) {
  if (word.empty()) throw std::invalid_argument("omega: empty word");
  const int n = c.modulus();
  int e = 0;
  GroupElem prefix = word[0];
  for (size_t k = 1; k < word.size(); ++k) {
    e = mod(e + c.exponent(prefix, word[k]), n);
    prefix = add(prefix, word[k], n);
  }
  return e;
}

Complex omega(const Cocycle& c, const std::vector<GroupElem>& word) {
  const double arg = 2.0 * std::numbers::pi * omega_exponent(c, word) / c.modulus();
  return Complex(std::cos(arg), std::sin(arg));
}

ComplexMatrix psi_matrix(int n, const GroupElem& g) {
  const auto w = root_powers(n);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    m(k, mod(k + g.j, n)) = w[static_cast<size_t>(mod(k * g.i, n))];
  }
  return m;
}

PsiMaps build_psi(int n) {
  if (n < 2) throw std::invalid_argument("build_psi: n must be at least 2");
  const int dim = n * n;
  const auto w = root_powers(n);
  PsiMaps maps;
  maps.n = n;
  maps.forward = ComplexMatrix::Zero(dim, dim);
  maps.inverse = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int col = i * n + j;
      // e_{(i,j)} -> sum_k w^{ki} E_{k,k+j}
      for (int k = 0; k < n; ++k) {
        maps.forward(k * n + mod(k + j, n), col) = w[static_cast<size_t>(mod(k * i, n))];
      }
      // E_{ij} -> (1/n) sum_k w^{-ik} e_{(k,j-i)}
      for (int k = 0; k < n; ++k) {
        maps.inverse(k * n + mod(j - i, n), col) =
            w[static_cast<size_t>(mod(-i * k, n))] / static_cast<double>(n);
      }
    }
  }
  return maps;
}

report::CheckReport verify_psi_iso(int n, double tolerance) {
  return verify_psi_iso(n, tolerance, Cocycle::standard(n));
}

report::CheckReport verify_psi_iso(int n, double tolerance, const Cocycle& cocycle) {
  if (n < 2) throw std::invalid_argument("verify_psi_iso: n must be at least 2");
  if (cocycle.modulus() != n) {
    throw std::invalid_argument("verify_psi_iso: cocycle modulus does not match n");
  }

  report::CheckReport rep;
  rep.identity = "twisted algebra matrix model";
  rep.parameters = {{"n", std::to_string(n)}, {"tolerance", double_to_string(tolerance)}};

  const int dim = n * n;
  std::vector<ComplexMatrix> images;
  images.reserve(static_cast<size_t>(dim));
  for (int gi = 0; gi < dim; ++gi) images.push_back(psi_matrix(n, unflat(gi, n)));

  double worst_mult = 0;
  GroupElem worst_g, worst_h;
  for (int gi = 0; gi < dim; ++gi) {
    const GroupElem g = unflat(gi, n);
    for (int hi = 0; hi < dim; ++hi) {
      const GroupElem h = unflat(hi, n);
      const GroupElem gh = add(g, h, n);
      const ComplexMatrix lhs = images[static_cast<size_t>(gi)] * images[static_cast<size_t>(hi)];
      const ComplexMatrix rhs = cocycle.value(g, h) * images[static_cast<size_t>(flat(gh, n))];
      const double res = (lhs - rhs).cwiseAbs().maxCoeff();
      if (res > worst_mult) {
        worst_mult = res;
        worst_g = g;
        worst_h = h;
      }
      ++rep.pairs_checked;
    }
  }
  if (!(worst_mult < tolerance)) {
    rep.failures.push_back("multiplicativity: residual " + double_to_string(worst_mult) + " at g=" +
                           elem_string(worst_g) + " h=" + elem_string(worst_h));
  }

  const PsiMaps maps = build_psi(n);
  const ComplexMatrix composed = maps.inverse * maps.forward;
  const double worst_inv =
      (composed - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  rep.pairs_checked += dim;
  if (!(worst_inv < tolerance)) {
    rep.failures.push_back("inverse composition: residual " + double_to_string(worst_inv));
  }

  double worst_trace = 0;
  for (int gi = 0; gi < dim; ++gi) {
    const double expected = gi == 0 ? 1.0 : 0.0;
    const Complex tr = images[static_cast<size_t>(gi)].trace() / static_cast<double>(n);
    const double res = std::abs(tr - Complex(expected, 0));
    if (res > worst_trace) worst_trace = res;
    ++rep.pairs_checked;
  }
  if (!(worst_trace < tolerance)) {
    rep.failures.push_back("trace transport: residual " + double_to_string(worst_trace));
  }

  const double worst = std::max(worst_mult, std::max(worst_inv, worst_trace));
  rep.metrics = {{"worst_residual", double_to_string(worst)},
                 {"multiplicativity", double_to_string(worst_mult)},
                 {"inverse_composition", double_to_string(worst_inv)},
                 {"trace_transport", double_to_string(worst_trace)}};
  return rep;
}

TwistedGroupAlgebra::TwistedGroupAlgebra(Cocycle cocycle) : cocycle_(std::move(cocycle)) {}

ComplexMatrix TwistedGroupAlgebra::left_regular(const std::vector<Complex>& coeffs) const {
  const int d = dim();
  if (static_cast<int>(coeffs.size()) != d) {
    throw std::invalid_argument("left_regular: coefficient vector must have length n^2");
  }
  const int nn = n();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int gi = 0; gi < d; ++gi) {
    if (coeffs[static_cast<size_t>(gi)] == Complex(0, 0)) continue;
    const GroupElem g = unflat(gi, nn);
    for (int hi = 0; hi < d; ++hi) {
      const GroupElem h = unflat(hi, nn);
      m(flat(add(g, h, nn), nn), hi) += coeffs[static_cast<size_t>(gi)] * cocycle_.value(g, h);
    }
  }
  return m;
}

Complex TwistedGroupAlgebra::canonical_trace(const std::vector<Complex>& coeffs) const {
  return left_regular(coeffs).trace() / static_cast<double>(dim());
}

report::TransportReport verify_haar_transport(int n, const std::vector<UWordLetter>& word,
                                              double tolerance) {
  if (n != 2 && n != 3) {
    throw SizeLimitError("verify_haar_transport: supported moduli are n = 2 and n = 3");
  }
  if (word.empty()) throw std::invalid_argument("verify_haar_transport: empty word");
  if (word.size() > 2) {
    throw SizeLimitError("verify_haar_transport: at most 2 letters (degree 4 in the generators)");
  }
  for (const auto& letter : word) {
    for (int v : {letter.i, letter.j, letter.k, letter.l}) {
      if (v < 1 || v > n) {
        throw std::invalid_argument("verify_haar_transport: word indices must lie in 1..n");
      }
    }
  }

  const int m = static_cast<int>(word.size());

  std::vector<std::pair<int, int>> flat_word;
  std::ostringstream word_str;
  for (const auto& letter : word) {
    flat_word.emplace_back(letter.i, letter.j);
    flat_word.emplace_back(letter.k, letter.l);
    word_str << "(" << letter.i << "," << letter.j << ")(" << letter.k << "," << letter.l << ")";
  }
  const Rat lhs = weingarten::joint_moment_ao(n, flat_word);
  const double lhs_d = rat_to_real(lhs, 30).convert_to<double>();

  const auto w = root_powers(n);
  const Cocycle sigma = Cocycle::standard(n);
  const long long n2 = static_cast<long long>(n) * n;

  // The only data a p-monomial integral depends on are the equality patterns
  // of its row and column index tuples.
  const double as_single = rat_to_real(Rat(1, Int(n2)), 30).convert_to<double>();
  double as_pair[2][2] = {{0, 0}, {0, 0}};
  if (m == 2) {
    for (int row_eq = 0; row_eq < 2; ++row_eq) {
      for (int col_eq = 0; col_eq < 2; ++col_eq) {
        const std::vector<std::pair<int, int>> pw = {{1, 1}, {row_eq ? 1 : 2, col_eq ? 1 : 2}};
        as_pair[row_eq][col_eq] = rat_to_real(weingarten::joint_moment_as(n2, pw), 30)
                                      .convert_to<double>();
      }
    }
  }

  // Expansion of one x_{g,h} into p-monomial letters: coefficient exponent,
  // row index (r,s) and column index (k,l), from
  // rho(x_{(a,b),(i,j)}) = (1/n^2) sum_{klrs} w^{ki+lj-ra-sb} p_{(r,s),(k,l)}.
  struct RhoTerm {
    int exp;
    int row;
    int col;
  };
  const auto rho_terms = [&](const GroupElem& g, const GroupElem& h) {
    std::vector<RhoTerm> terms;
    terms.reserve(static_cast<size_t>(n2 * n2));
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) {
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l) {
            const int e = mod(k * h.i + l * h.j - r * g.i - s * g.j, n);
            terms.push_back({e, r * n + s, k * n + l});
          }
        }
      }
    }
    return terms;
  };

  // Residues of the 1-based generator indices.
  struct LetterR {
    int i, j, k, l;
  };
  std::vector<LetterR> res;
  for (const auto& letter : word) {
    res.push_back({letter.i % n, letter.j % n, letter.k % n, letter.l % n});
  }

  Complex acc(0, 0);
  std::vector<int> ab(static_cast<size_t>(2 * m), 0);
  while (true) {
    // ab holds (a_1, b_1, ..., a_m, b_m) for the generator change of basis
    // phi(u_{ij}u_{kl}) = (1/n) sum_{ab} w^{ai-bj} x_{(a,k-i),(b,l-j)}.
    int base = 0;
    std::vector<GroupElem> gs, hs;
    for (int t = 0; t < m; ++t) {
      const int a = ab[static_cast<size_t>(2 * t)];
      const int b = ab[static_cast<size_t>(2 * t + 1)];
      const LetterR& lr = res[static_cast<size_t>(t)];
      base = mod(base + a * lr.i - b * lr.j, n);
      gs.push_back({a, mod(lr.k - lr.i, n)});
      hs.push_back({b, mod(lr.l - lr.j, n)});
    }
    // Phase rule: the x-monomial picks up Omega(g)^{-1} Omega(h).
    base = mod(base - omega_exponent(sigma, gs) + omega_exponent(sigma, hs), n);

    if (m == 1) {
      for (const RhoTerm& t1 : rho_terms(gs[0], hs[0])) {
        acc += w[static_cast<size_t>(mod(base + t1.exp, n))] * as_single;
      }
    } else {
      const auto terms1 = rho_terms(gs[0], hs[0]);
      const auto terms2 = rho_terms(gs[1], hs[1]);
      for (const RhoTerm& t1 : terms1) {
        for (const RhoTerm& t2 : terms2) {
          const double val = as_pair[t1.row == t2.row ? 1 : 0][t1.col == t2.col ? 1 : 0];
          acc += w[static_cast<size_t>(mod(base + t1.exp + t2.exp, n))] * val;
        }
      }
    }

    int pos = 0;
    while (pos < 2 * m && ++ab[static_cast<size_t>(pos)] == n) {
      ab[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == 2 * m) break;
  }

  double scale = 1;
  for (int t = 0; t < 3 * m; ++t) scale *= n;
  acc /= scale;

  report::TransportReport rep;
  rep.check = "haar-transport";
  rep.n = n;
  rep.word = word_str.str();
  rep.lhs = rat_to_string(lhs);
  rep.rhs_re = acc.real();
  rep.rhs_im = acc.imag();
  rep.residual = std::abs(Complex(lhs_d, 0) - acc);
  rep.pass = rep.residual < tolerance;
  return rep;
}

}  // namespace fhl::twist
