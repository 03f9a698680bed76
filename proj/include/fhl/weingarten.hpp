#pragma once

#include "fhl/exact.hpp"
#include "fhl/partitions.hpp"
#include "fhl/report.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace fhl::weingarten {

// Gram matrix G_m(pi, sigma) = m^{|pi v sigma|} over the family's canonical
// order, with the join taken in the full partition lattice.
IntMatrix gram_matrix(const partitions::PartitionFamily& family, const Int& m);

// Exact inverse of the Gram matrix.  Results are memoized process-wide by
// (family kind, ground size, m); at most one computation per key is
// published, duplicate computations are discarded.  Families larger than the
// inversion guard (1430 members) raise SizeLimitError.
std::shared_ptr<const RatMatrix> weingarten_matrix(const std::shared_ptr<const partitions::PartitionFamily>& family,
                                                   const Int& m);

enum class Model { AO, AS };

// Haar moment of a word of generators: entries of the orthogonal generator
// matrix of AO(dim), or of the magic unitary of AS(dim).  Word letters are
// 1-based (row, column) index pairs.
struct MomentRequest {
  Model model = Model::AO;
  long long dim = 0;
  std::vector<std::pair<int, int>> word;
};

Rat joint_moment(const MomentRequest& req);
Rat joint_moment_ao(long long n, const std::vector<std::pair<int, int>>& word);
Rat joint_moment_as(long long N, const std::vector<std::pair<int, int>>& word);

// p-th moment of X(n, m, N) = sum of the first n*m magic-unitary entries of
// AS(N), via the factored double sum over noncrossing partitions.
Rat fhg_moment(long long n, long long m, long long N, int p);

// Moment of u_{ij}^{2k} over AO(n); independent of (i, j).
Rat hyperspherical_moment(long long n, int k);

// Checks W_{NC2(2k),n} = n^{|cpi|+|csigma|-k} W_{NC(k),n^2}(cpi, csigma) on
// every pair, with exact arithmetic on both sides.  The override variant
// inverts the supplied matrix in place of the NC2 Gram matrix (fault
// injection for the test suite).
report::CheckReport verify_cabling_weingarten(int k, long long n);
report::CheckReport verify_cabling_weingarten(int k, long long n, const IntMatrix& nc2_gram_override);

// Checks |pi v sigma| = k + 2|cpi v csigma| - |cpi| - |csigma| on NC2(2k)^2.
report::CheckReport verify_ks_join(int k);

// Checks that the joint law of squared AO(n) generators matches the joint
// law of the block sums X_ij = (1/n) sum_{a,b} p_{ia,jb} in AS(n^2), per
// index pattern, via two independent Weingarten computations.
report::CheckReport verify_equal_laws(long long n, const std::vector<std::pair<int, int>>& pattern);

}  // namespace fhl::weingarten
