#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "fhl/exact.hpp"
#include "fhl/report.hpp"

namespace fhl::twist {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

// Element (i, j) of Z_n x Z_n; residues are kept reduced mod n.
struct GroupElem {
  int i = 0;
  int j = 0;

  bool operator==(const GroupElem& o) const { return i == o.i && j == o.j; }
};

GroupElem add(const GroupElem& a, const GroupElem& b, int n);

// A 2-cocycle on Z_n^2 whose values are n-th roots of unity, stored as the
// integer exponent table sigma(g, h) = w^exponent(g,h) with w = exp(2*pi*i/n).
// Normalization and the cocycle identity are verified on construction for
// n <= 8 (all triples, exact integer arithmetic mod n).
class Cocycle {
 public:
  // The bicharacter sigma((i,j),(k,l)) = w^{jk}.
  static Cocycle standard(int n);
  // sigma == 1; a valid cocycle, useful as a negative control.
  static Cocycle trivial(int n);
  // Arbitrary exponent table, indexed [i*n+j][k*n+l]; entries reduced mod n.
  static Cocycle from_table(int n, std::vector<std::vector<int>> exponents);

  int modulus() const { return n_; }
  int exponent(const GroupElem& g, const GroupElem& h) const;
  Complex value(const GroupElem& g, const GroupElem& h) const;
  const std::vector<std::vector<int>>& exponent_table() const { return exponents_; }

 private:
  Cocycle(int n, std::vector<std::vector<int>> exponents);

  int n_;
  std::vector<std::vector<int>> exponents_;
};

// Omega(g_1..g_m) = prod_{k=1}^{m-1} sigma(g_1+...+g_k, g_{k+1}); 1 on
// single-element words.  Returned as the exponent of w, reduced mod n.
int omega_exponent(const Cocycle& c, const std::vector<GroupElem>& word);
Complex omega(const Cocycle& c, const std::vector<GroupElem>& word);

// The change of basis between the twisted group algebra of Z_n^2 and n x n
// matrices, as n^2 x n^2 matrices over the flattened bases (basis element
// (i,j) and matrix unit E_{ij} both flatten to index i*n+j):
//   forward: e_{(i,j)} -> sum_k w^{ki} E_{k,k+j}
//   inverse: E_{ij} -> (1/n) sum_k w^{-ik} e_{(k,j-i)}
struct PsiMaps {
  int n = 0;
  ComplexMatrix forward;
  ComplexMatrix inverse;
};

PsiMaps build_psi(int n);

// The n x n matrix image of the basis element e_g.
ComplexMatrix psi_matrix(int n, const GroupElem& g);

// Checks that the change of basis is an algebra isomorphism: multiplicativity
// psi(e_g) psi(e_h) = sigma(g,h) psi(e_{g+h}) on all basis pairs, inverse
// composition on all basis vectors, and trace transport
// tr(psi(e_g))/n = [g == 0].  The cocycle argument exists for negative
// controls; the default is the standard cocycle the map diagonalizes.
report::CheckReport verify_psi_iso(int n, double tolerance);
report::CheckReport verify_psi_iso(int n, double tolerance, const Cocycle& cocycle);

// C_sigma[Z_n^2] with basis e_g and product e_g e_h = sigma(g,h) e_{g+h}.
class TwistedGroupAlgebra {
 public:
  explicit TwistedGroupAlgebra(Cocycle cocycle);

  int n() const { return cocycle_.modulus(); }
  int dim() const { return n() * n(); }
  const Cocycle& cocycle() const { return cocycle_; }

  // Matrix of left multiplication by the element sum_g coeffs[g] e_g on the
  // flattened basis.
  ComplexMatrix left_regular(const std::vector<Complex>& coeffs) const;

  // Normalized trace of the left regular representation; equals the
  // coefficient of e_{(0,0)}.
  Complex canonical_trace(const std::vector<Complex>& coeffs) const;

 private:
  Cocycle cocycle_;
};

// One degree-2 letter u_{ij} u_{kl} of a transport word; indices 1-based.
struct UWordLetter {
  int i = 0;
  int j = 0;
  int k = 0;
  int l = 0;
};

// Transport of a joint moment between the orthogonal and the quantum
// permutation side.  LHS integrates prod_t u_{i_t j_t} u_{k_t l_t} by the
// pairing Weingarten formula; RHS pushes the word through the generator
// change of basis, the cocycle phase rule, and the Fourier change of basis,
// then integrates the resulting p-monomials by the partition Weingarten
// formula at dimension n^2.  Guarded to n in {2, 3} and at most 2 letters.
report::TransportReport verify_haar_transport(int n, const std::vector<UWordLetter>& word,
                                              double tolerance);

}  // namespace fhl::twist
