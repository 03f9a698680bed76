#include "fhl/weingarten.hpp"
#include "fhl/errors.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace fhl::weingarten {

namespace P = fhl::partitions;

namespace {

constexpr int kInversionGuard = 1430;  // Catalan(8)

std::string pair_word_string(const std::vector<std::pair<int, int>>& word) {
  std::string out;
  for (const auto& [a, b] : word) out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return out;
}

// Admissibility mask: member i is set iff family[i] refines ker.
std::vector<char> kernel_mask(const P::PartitionFamily& family, const P::SetPartition& ker) {
  std::vector<char> mask(static_cast<size_t>(family.size()));
  for (int i = 0; i < family.size(); ++i) mask[static_cast<size_t>(i)] = P::refines(family.at(i), ker) ? 1 : 0;
  return mask;
}

void check_word_indices(const std::vector<std::pair<int, int>>& word, long long dim, const char* who) {
  if (word.empty()) throw std::invalid_argument(std::string(who) + ": empty word");
  for (const auto& [i, j] : word) {
    if (i < 1 || j < 1 || i > dim || j > dim)
      throw std::invalid_argument(std::string(who) + ": generator index out of range");
  }
}

}  // namespace

IntMatrix gram_matrix(const P::PartitionFamily& family, const Int& m) {
  if (m < 1) throw std::invalid_argument("gram_matrix: dimension parameter must be positive");
  const int d = family.size();
  IntMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Int v = int_pow(m, static_cast<unsigned long long>(P::joined_block_count(family.at(i), family.at(j))));
      g(i, j) = v;
      g(j, i) = std::move(v);
    }
  }
  return g;
}

std::shared_ptr<const RatMatrix> weingarten_matrix(const std::shared_ptr<const P::PartitionFamily>& family,
                                                   const Int& m) {
  if (family->size() > kInversionGuard)
    throw SizeLimitError("weingarten_matrix: family of size " + std::to_string(family->size()) +
                         " exceeds inversion guard " + std::to_string(kInversionGuard));

  using Key = std::tuple<int, int, std::string>;
  static std::mutex cache_mutex;
  static std::map<Key, std::shared_ptr<const RatMatrix>> cache;
  const Key key{static_cast<int>(family->kind()), family->ground_size(), m.str()};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  const std::string context = "weingarten(" + P::family_kind_name(family->kind()) + "(" +
                              std::to_string(family->ground_size()) + "), m=" + m.str() + ")";
  auto computed = std::make_shared<const RatMatrix>(bareiss_inverse(gram_matrix(*family, m), context));

  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = cache.emplace(key, std::move(computed));
  return it->second;
}

Rat joint_moment_ao(long long n, const std::vector<std::pair<int, int>>& word) {
  check_word_indices(word, n, "joint_moment_ao");
  const int len = static_cast<int>(word.size());
  if (len % 2 != 0) return Rat(0);

  std::vector<int> rows, cols;
  rows.reserve(word.size());
  cols.reserve(word.size());
  for (const auto& [i, j] : word) {
    rows.push_back(i);
    cols.push_back(j);
  }
  auto family = P::enumerate(P::FamilyKind::NC2, len);
  const auto w = weingarten_matrix(family, Int(n));
  const std::vector<char> row_mask = kernel_mask(*family, P::kernel_partition(rows));
  const std::vector<char> col_mask = kernel_mask(*family, P::kernel_partition(cols));

  Rat total(0);
  for (int i = 0; i < family->size(); ++i) {
    if (!row_mask[static_cast<size_t>(i)]) continue;
    for (int j = 0; j < family->size(); ++j) {
      if (col_mask[static_cast<size_t>(j)]) total += (*w)(i, j);
    }
  }
  return total;
}

Rat joint_moment_as(long long dim, const std::vector<std::pair<int, int>>& word) {
  check_word_indices(word, dim, "joint_moment_as");
  const int len = static_cast<int>(word.size());

  std::vector<int> rows, cols;
  rows.reserve(word.size());
  cols.reserve(word.size());
  for (const auto& [i, j] : word) {
    rows.push_back(i);
    cols.push_back(j);
  }
  auto family = P::enumerate(P::FamilyKind::NC, len);
  const auto w = weingarten_matrix(family, Int(dim));
  const std::vector<char> row_mask = kernel_mask(*family, P::kernel_partition(rows));
  const std::vector<char> col_mask = kernel_mask(*family, P::kernel_partition(cols));

  Rat total(0);
  for (int i = 0; i < family->size(); ++i) {
    if (!row_mask[static_cast<size_t>(i)]) continue;
    for (int j = 0; j < family->size(); ++j) {
      if (col_mask[static_cast<size_t>(j)]) total += (*w)(i, j);
    }
  }
  return total;
}

Rat joint_moment(const MomentRequest& req) {
  return req.model == Model::AO ? joint_moment_ao(req.dim, req.word) : joint_moment_as(req.dim, req.word);
}

Rat fhg_moment(long long n, long long m, long long N, int p) {
  if (n < 1 || m < 1 || N < 1 || n > N || m > N)
    throw std::invalid_argument("fhg_moment: need 1 <= n <= N and 1 <= m <= N");
  if (p < 1) throw std::invalid_argument("fhg_moment: moment order must be positive");
  // Magic-unitary row sums are 1, so a full index range collapses the sum.
  if (n == N) return Rat(int_pow(Int(m), static_cast<unsigned long long>(p)));
  if (m == N) return Rat(int_pow(Int(n), static_cast<unsigned long long>(p)));

  auto family = P::enumerate(P::FamilyKind::NC, p);
  const auto w = weingarten_matrix(family, Int(N));
  std::vector<Int> npow(static_cast<size_t>(p) + 1), mpow(static_cast<size_t>(p) + 1);
  for (int b = 0; b <= p; ++b) {
    npow[static_cast<size_t>(b)] = int_pow(Int(n), static_cast<unsigned long long>(b));
    mpow[static_cast<size_t>(b)] = int_pow(Int(m), static_cast<unsigned long long>(b));
  }
  Rat total(0);
  for (int i = 0; i < family->size(); ++i) {
    const Int& ni = npow[static_cast<size_t>(family->at(i).block_count())];
    for (int j = 0; j < family->size(); ++j) {
      total += (*w)(i, j) * Rat(ni * mpow[static_cast<size_t>(family->at(j).block_count())]);
    }
  }
  return total;
}

Rat hyperspherical_moment(long long n, int k) {
  if (n < 2) throw std::invalid_argument("hyperspherical_moment: n must be at least 2");
  if (k < 0) throw std::invalid_argument("hyperspherical_moment: negative order");
  if (k == 0) return Rat(1);
  auto family = P::enumerate(P::FamilyKind::NC2, 2 * k);
  const auto w = weingarten_matrix(family, Int(n));
  Rat total(0);
  for (int i = 0; i < family->size(); ++i)
    for (int j = 0; j < family->size(); ++j) total += (*w)(i, j);
  return total;
}

namespace {

report::CheckReport cabling_check(int k, long long n, const IntMatrix* nc2_gram_override) {
  if (k < 1) throw std::invalid_argument("verify_cabling_weingarten: k must be positive");
  if (n < 2) throw std::invalid_argument("verify_cabling_weingarten: n must be at least 2");

  auto fam2 = P::enumerate(P::FamilyKind::NC2, 2 * k);
  auto famc = P::enumerate(P::FamilyKind::NC, k);
  std::shared_ptr<const RatMatrix> w2;
  if (nc2_gram_override) {
    if (nc2_gram_override->rows() != fam2->size() || nc2_gram_override->cols() != fam2->size())
      throw std::invalid_argument("verify_cabling_weingarten: override dimension mismatch");
    w2 = std::make_shared<const RatMatrix>(bareiss_inverse(*nc2_gram_override, "cabling override"));
  } else {
    w2 = weingarten_matrix(fam2, Int(n));
  }
  const auto wc = weingarten_matrix(famc, Int(n) * Int(n));

  std::vector<int> cabled_index(static_cast<size_t>(fam2->size()));
  std::vector<int> cabled_blocks(static_cast<size_t>(fam2->size()));
  for (int i = 0; i < fam2->size(); ++i) {
    const P::SetPartition c = P::cabling(fam2->at(i));
    cabled_index[static_cast<size_t>(i)] = famc->index_of(c);
    cabled_blocks[static_cast<size_t>(i)] = c.block_count();
  }

  report::CheckReport rep;
  rep.identity = "cabling-weingarten";
  rep.parameters = {{"k", std::to_string(k)}, {"n", std::to_string(n)}};
  for (int i = 0; i < fam2->size(); ++i) {
    for (int j = 0; j < fam2->size(); ++j) {
      ++rep.pairs_checked;
      const Rat lhs = (*w2)(i, j);
      const long long e = cabled_blocks[static_cast<size_t>(i)] + cabled_blocks[static_cast<size_t>(j)] - k;
      const Rat rhs = rat_pow(Rat(n), e) * (*wc)(cabled_index[static_cast<size_t>(i)], cabled_index[static_cast<size_t>(j)]);
      if (lhs != rhs) {
        rep.failures.push_back("(" + fam2->at(i).to_string() + ", " + fam2->at(j).to_string() +
                               "): lhs=" + rat_to_string(lhs) + " rhs=" + rat_to_string(rhs));
      }
    }
  }
  return rep;
}

}  // namespace

report::CheckReport verify_cabling_weingarten(int k, long long n) { return cabling_check(k, n, nullptr); }

report::CheckReport verify_cabling_weingarten(int k, long long n, const IntMatrix& nc2_gram_override) {
  return cabling_check(k, n, &nc2_gram_override);
}

report::CheckReport verify_ks_join(int k) {
  if (k < 1) throw std::invalid_argument("verify_ks_join: k must be positive");
  auto fam2 = P::enumerate(P::FamilyKind::NC2, 2 * k);

  std::vector<P::SetPartition> cabled;
  cabled.reserve(static_cast<size_t>(fam2->size()));
  for (int i = 0; i < fam2->size(); ++i) cabled.push_back(P::cabling(fam2->at(i)));

  report::CheckReport rep;
  rep.identity = "ks-join";
  rep.parameters = {{"k", std::to_string(k)}};
  for (int i = 0; i < fam2->size(); ++i) {
    for (int j = 0; j < fam2->size(); ++j) {
      ++rep.pairs_checked;
      const int lhs = P::joined_block_count(fam2->at(i), fam2->at(j));
      const int rhs = k + 2 * P::joined_block_count(cabled[static_cast<size_t>(i)], cabled[static_cast<size_t>(j)]) -
                      cabled[static_cast<size_t>(i)].block_count() - cabled[static_cast<size_t>(j)].block_count();
      if (lhs != rhs) {
        rep.failures.push_back("(" + fam2->at(i).to_string() + ", " + fam2->at(j).to_string() +
                               "): lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs));
      }
    }
  }
  return rep;
}

report::CheckReport verify_equal_laws(long long n, const std::vector<std::pair<int, int>>& pattern) {
  if (n < 2) throw std::invalid_argument("verify_equal_laws: n must be at least 2");
  check_word_indices(pattern, n, "verify_equal_laws");
  const int m = static_cast<int>(pattern.size());

  // Squared-generator side: the doubled word under the pairing Weingarten
  // formula for AO(n).
  std::vector<std::pair<int, int>> doubled;
  doubled.reserve(pattern.size() * 2);
  for (const auto& letter : pattern) {
    doubled.push_back(letter);
    doubled.push_back(letter);
  }
  const Rat lhs = joint_moment_ao(n, doubled);

  // Block-sum side: expanding prod_t X_{i_t j_t} with X_{ij} =
  // (1/n) sum_{a,b} p_{ia,jb} over AS(n^2) and summing the free indices
  // turns the kernel conditions into n^{|pi|} and n^{|sigma|} factors.
  std::vector<int> rows, cols;
  rows.reserve(pattern.size());
  cols.reserve(pattern.size());
  for (const auto& [i, j] : pattern) {
    rows.push_back(i);
    cols.push_back(j);
  }
  auto family = P::enumerate(P::FamilyKind::NC, m);
  const auto w = weingarten_matrix(family, Int(n) * Int(n));
  const std::vector<char> row_mask = kernel_mask(*family, P::kernel_partition(rows));
  const std::vector<char> col_mask = kernel_mask(*family, P::kernel_partition(cols));
  Rat rhs(0);
  for (int i = 0; i < family->size(); ++i) {
    if (!row_mask[static_cast<size_t>(i)]) continue;
    for (int j = 0; j < family->size(); ++j) {
      if (!col_mask[static_cast<size_t>(j)]) continue;
      const long long e = family->at(i).block_count() + family->at(j).block_count() - m;
      rhs += (*w)(i, j) * rat_pow(Rat(n), e);
    }
  }

  report::CheckReport rep;
  rep.identity = "equal-laws";
  rep.parameters = {{"n", std::to_string(n)}, {"pattern", pair_word_string(pattern)}};
  rep.pairs_checked = 1;
  rep.metrics = {{"squared_generators", rat_to_string(lhs)}, {"block_sums", rat_to_string(rhs)}};
  if (lhs != rhs) {
    rep.failures.push_back("pattern " + pair_word_string(pattern) + ": " + rat_to_string(lhs) +
                           " != " + rat_to_string(rhs));
  }
  return rep;
}

}  // namespace fhl::weingarten
