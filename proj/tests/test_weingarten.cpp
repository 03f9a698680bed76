#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <future>
#include <utility>
#include <vector>

#include "fhl/errors.hpp"
#include "fhl/exact.hpp"
#include "fhl/partitions.hpp"
#include "fhl/report.hpp"
#include "fhl/weingarten.hpp"

using fhl::Int;
using fhl::Rat;
using namespace fhl::weingarten;
namespace parts = fhl::partitions;

namespace {

using Word = std::vector<std::pair<int, int>>;

Rat brute_force_sum_moment(long long n, long long m, long long N, int p) {
  // X^p expanded into (n*m)^p monomials, each integrated independently.
  std::vector<std::pair<int, int>> cells;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) cells.emplace_back(i, j);
  Rat total = 0;
  std::vector<size_t> pick(static_cast<size_t>(p), 0);
  while (true) {
    Word word;
    for (size_t t = 0; t < pick.size(); ++t) word.push_back(cells[pick[t]]);
    total += joint_moment_as(N, word);
    size_t pos = pick.size();
    while (pos > 0 && pick[pos - 1] + 1 == cells.size()) pick[--pos] = 0;
    if (pos == 0) break;
    ++pick[pos - 1];
  }
  return total;
}

}  // namespace

TEST_CASE("Gram and Weingarten matrices on the two-element family") {
  const auto nc2 = parts::enumerate(parts::FamilyKind::NC, 2);
  const auto g = gram_matrix(*nc2, 3);
  CHECK(fhl::report::matrix_csv(g) == "9,3\n3,3\n");
  const auto w = weingarten_matrix(nc2, 3);
  CHECK(fhl::report::matrix_csv(*w) == "1/6,-1/6\n-1/6,1/2\n");
}

TEST_CASE("Weingarten matrices invert their Gram matrices exactly") {
  for (const auto kind : {parts::FamilyKind::NC, parts::FamilyKind::NC2}) {
    const int ground = kind == parts::FamilyKind::NC2 ? 6 : 4;
    const auto fam = parts::enumerate(kind, ground);
    for (const Int m : {Int(4), Int(7)}) {
      const auto g = gram_matrix(*fam, m);
      const auto w = weingarten_matrix(fam, m);
      const int d = fam->size();
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          Rat dot = 0;
          for (int t = 0; t < d; ++t) dot += Rat(g(i, t)) * (*w)(t, j);
          CHECK(dot == (i == j ? 1 : 0));
        }
      }
    }
  }
}

TEST_CASE("memoized Weingarten matrices are published once") {
  const auto fam = parts::enumerate(parts::FamilyKind::NC, 5);
  std::vector<std::future<std::shared_ptr<const fhl::RatMatrix>>> futures;
  for (int t = 0; t < 8; ++t) {
    futures.push_back(std::async(std::launch::async, [&] { return weingarten_matrix(fam, 11); }));
  }
  const auto first = futures[0].get();
  for (size_t t = 1; t < futures.size(); ++t) CHECK(futures[t].get().get() == first.get());
}

TEST_CASE("inversion guard rejects oversized families") {
  CHECK_THROWS_AS(weingarten_matrix(parts::enumerate(parts::FamilyKind::NC, 9), 5),
                  fhl::SizeLimitError);
}

TEST_CASE("Gram matrices degenerate below the generic dimension") {
  // The Gram determinant vanishes exactly when the dimension parameter hits
  // 4cos^2(pi/s) for some s <= ground size + 1, which picks out the integers
  // 1 (size >= 2), 2 (size >= 3) and 3 (size >= 5).
  CHECK_THROWS_AS(weingarten_matrix(parts::enumerate(parts::FamilyKind::NC, 3), 2),
                  fhl::SingularGramError);
  CHECK_THROWS_AS(weingarten_matrix(parts::enumerate(parts::FamilyKind::NC, 5), 3),
                  fhl::SingularGramError);
  CHECK_THROWS_AS(weingarten_matrix(parts::enumerate(parts::FamilyKind::NC, 2), 1),
                  fhl::SingularGramError);
  CHECK_NOTHROW(weingarten_matrix(parts::enumerate(parts::FamilyKind::NC, 4), 3));
  CHECK_NOTHROW(weingarten_matrix(parts::enumerate(parts::FamilyKind::NC, 6), 4));
  // Degree-3 moments of a 2x2 magic unitary hit the degenerate case.
  CHECK_THROWS_AS(joint_moment_as(2, {{1, 1}, {1, 1}, {1, 1}}), fhl::SingularGramError);
}

TEST_CASE("orthogonal generator moments") {
  CHECK(joint_moment_ao(2, {{1, 1}}) == 0);
  CHECK(joint_moment_ao(2, {{1, 1}, {2, 2}, {1, 2}}) == 0);
  CHECK(joint_moment_ao(2, {{1, 1}, {1, 1}}) == Rat(1, 2));
  CHECK(joint_moment_ao(3, {{1, 2}, {1, 2}}) == Rat(1, 3));
  // The only pairing needs equal row and column labels on both points.
  CHECK(joint_moment_ao(2, {{1, 1}, {2, 2}}) == 0);
  CHECK(joint_moment_ao(2, {{1, 1}, {1, 2}}) == 0);

  for (long long n : {2, 3}) {
    for (int k = 1; k <= 3; ++k) {
      const Word word(static_cast<size_t>(2 * k), {1, 1});
      CHECK(hyperspherical_moment(n, k) == joint_moment_ao(n, word));
    }
  }
  CHECK(hyperspherical_moment(2, 0) == 1);
  CHECK(hyperspherical_moment(2, 1) == Rat(1, 2));
  CHECK(hyperspherical_moment(2, 2) == Rat(1, 3));

  // A 1x1 orthogonal generator is a symmetry: odd moments 0, even moments 1.
  CHECK(joint_moment_ao(1, {{1, 1}}) == 0);
  CHECK(joint_moment_ao(1, {{1, 1}, {1, 1}}) == 1);

  CHECK_THROWS_AS(joint_moment_ao(2, {{3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(joint_moment_ao(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(hyperspherical_moment(1, 1), std::invalid_argument);
}

TEST_CASE("magic unitary moments") {
  CHECK(joint_moment_as(2, {{1, 1}}) == Rat(1, 2));
  CHECK(joint_moment_as(5, {{2, 3}}) == Rat(1, 5));
  // Entries are projections.
  CHECK(joint_moment_as(3, {{1, 1}, {1, 1}}) == Rat(1, 3));
  // Distinct entries in one row are orthogonal.
  CHECK(joint_moment_as(3, {{1, 1}, {1, 2}}) == 0);
  CHECK(joint_moment_as(3, {{1, 1}, {2, 1}}) == 0);

  // Each row of the magic unitary sums to the identity, so appending one
  // letter and summing its column index reproduces the shorter moment.
  for (long long N : {2, 3, 4}) {
    std::vector<Word> prefixes = {{}};
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) prefixes.push_back({{i, j}});
    for (const auto& prefix : prefixes) {
      const Rat base = prefix.empty() ? Rat(1) : joint_moment_as(N, prefix);
      for (int i = 1; i <= N; ++i) {
        Rat total = 0;
        for (int j = 1; j <= N; ++j) {
          Word word = prefix;
          word.emplace_back(i, j);
          total += joint_moment_as(N, word);
        }
        CHECK(total == base);
      }
    }
  }

  CHECK_THROWS_AS(joint_moment_as(2, {{3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(joint_moment_as(0, {{1, 1}}), std::invalid_argument);

  CHECK(joint_moment({Model::AS, 3, {{1, 1}, {1, 1}}}) == Rat(1, 3));
  CHECK(joint_moment({Model::AO, 2, {{1, 1}, {1, 1}}}) == Rat(1, 2));
}

TEST_CASE("block-sum moments match term-by-term integration") {
  // Moment orders are capped at the generic-dimension threshold (degree 3 at
  // N = 2 would need the degenerate NC(3) Gram matrix at dimension 2).
  for (long long N : {2, 3, 4}) {
    const int p_cap = N == 2 ? 2 : 3;
    for (long long n = 1; n <= N; ++n) {
      for (long long m = 1; m <= N; ++m) {
        for (int p = 1; p <= p_cap; ++p) {
          CHECK(fhg_moment(n, m, N, p) == brute_force_sum_moment(n, m, N, p));
        }
      }
    }
  }
}

TEST_CASE("block-sum moment pins") {
  const Rat pinned_339[] = {Rat(1), Rat(3, 2), Rat(18, 7), Rat(729, 154)};
  for (int p = 1; p <= 4; ++p) CHECK(fhg_moment(3, 3, 9, p) == pinned_339[p - 1]);

  const Rat pinned_4416[] = {Rat(1), Rat(8, 5), Rat(104, 35)};
  for (int p = 1; p <= 3; ++p) CHECK(fhg_moment(4, 4, 16, p) == pinned_4416[p - 1]);

  // Full row or column range turns the sum into a count of identities.
  for (int p = 1; p <= 4; ++p) {
    CHECK(fhg_moment(4, 2, 4, p) == fhl::rat_pow(Rat(2), p));
    CHECK(fhg_moment(2, 4, 4, p) == fhl::rat_pow(Rat(2), p));
    CHECK(fhg_moment(1, 1, 1, p) == 1);
  }

  CHECK_THROWS_AS(fhg_moment(3, 1, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(fhg_moment(1, 3, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(fhg_moment(0, 1, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(fhg_moment(1, 1, 2, 0), std::invalid_argument);
}

TEST_CASE("inverse Gram entries decay with the predicted exponent, with known exceptions") {
  // Entry (pi, sigma) of the inverse scales like m^{|pi v sigma| - |pi| - |sigma|}
  // to leading order.  The exponent read off two decades apart matches the
  // prediction everywhere except the pairs whose leading coefficient
  // vanishes: none through p = 3, exactly four at p = 4.
  for (int p = 1; p <= 4; ++p) {
    const auto fam = parts::enumerate(parts::FamilyKind::NC, p);
    const auto w1 = weingarten_matrix(fam, 10000);
    const auto w2 = weingarten_matrix(fam, 100000);
    const int d = fam->size();
    std::vector<std::pair<int, int>> faster;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        REQUIRE((*w1)(i, j) != 0);
        REQUIRE((*w2)(i, j) != 0);
        const double e_obs = std::log10(std::abs(((*w2)(i, j) / (*w1)(i, j)).convert_to<double>()));
        const int predicted = parts::joined_block_count(fam->at(i), fam->at(j)) -
                              fam->at(i).block_count() - fam->at(j).block_count();
        CHECK(e_obs < predicted + 0.1);
        if (e_obs < predicted - 0.5) faster.emplace_back(i, j);
      }
    }
    CHECK(faster.size() == (p == 4 ? 4 : 0));
    for (const auto& [i, j] : faster) {
      // The exceptional set is symmetric and strictly off-diagonal.
      CHECK(i != j);
      CHECK(std::count(faster.begin(), faster.end(), std::make_pair(j, i)) == 1);
    }
  }
}

TEST_CASE("pair-to-partition Weingarten reduction") {
  for (long long n : {2, 3}) {
    for (int k = 1; k <= 4; ++k) {
      const auto rep = verify_cabling_weingarten(k, n);
      CHECK(rep.passed());
      const Int expected = fhl::catalan(k) * fhl::catalan(k);
      CHECK(Int(rep.pairs_checked) == expected);
    }
  }
}

TEST_CASE("fault-injected Gram matrix is caught") {
  const auto nc2 = parts::enumerate(parts::FamilyKind::NC2, 4);
  auto g = gram_matrix(*nc2, 2);
  g(0, 1) += 1;
  const auto rep = verify_cabling_weingarten(2, 2, g);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("join block counts collapse as predicted") {
  for (int k = 1; k <= 5; ++k) {
    const auto rep = verify_ks_join(k);
    CHECK(rep.passed());
  }
}

TEST_CASE("squared generators match block sums law for small patterns") {
  for (long long n : {2, 3}) {
    for (const Word& pattern :
         {Word{{1, 1}}, Word{{1, 2}}, Word{{1, 1}, {2, 2}}, Word{{1, 1}, {1, 1}}}) {
      const auto rep = verify_equal_laws(n, pattern);
      CHECK(rep.passed());
    }
  }
  CHECK_THROWS_AS(verify_equal_laws(1, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(verify_equal_laws(2, {{3, 1}}), std::invalid_argument);
}
