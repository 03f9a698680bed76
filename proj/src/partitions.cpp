#include "fhl/partitions.hpp"
#include "fhl/errors.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace fhl::partitions {

namespace {

constexpr int kEnumerateMax = 10;   // All / NC ground-set guard
constexpr int kEnumerateMaxNC2 = 16;

char rgs_char(int block_index) {
  if (block_index < 10) return static_cast<char>('0' + block_index);
  if (block_index < 36) return static_cast<char>('a' + block_index - 10);
  throw std::invalid_argument("rgs: block index out of encodable range");
}

}  // namespace

SetPartition::SetPartition(int k, std::vector<std::vector<int>> blocks) : k_(k), blocks_(std::move(blocks)) {
  if (k_ < 0) throw std::invalid_argument("SetPartition: negative ground-set size");
  block_of_.assign(static_cast<size_t>(k_), -1);
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("SetPartition: empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    for (int e : blocks_[bi]) {
      if (e < 1 || e > k_) throw std::invalid_argument("SetPartition: element out of range");
      if (block_of_[static_cast<size_t>(e - 1)] != -1) throw std::invalid_argument("SetPartition: blocks not disjoint");
      block_of_[static_cast<size_t>(e - 1)] = static_cast<int>(bi);
    }
  }
  for (int v : block_of_) {
    if (v == -1) throw std::invalid_argument("SetPartition: blocks do not cover the ground set");
  }
}

SetPartition SetPartition::singletons(int k) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(k));
  for (int e = 1; e <= k; ++e) blocks.push_back({e});
  return SetPartition(k, std::move(blocks));
}

SetPartition SetPartition::full(int k) {
  if (k == 0) return SetPartition(0, {});
  std::vector<int> all(static_cast<size_t>(k));
  std::iota(all.begin(), all.end(), 1);
  return SetPartition(k, {all});
}

std::string SetPartition::to_string() const {
  std::string out = "{";
  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    if (bi) out += ",";
    out += "{";
    for (size_t e = 0; e < blocks_[bi].size(); ++e) {
      if (e) out += ",";
      out += std::to_string(blocks_[bi][e]);
    }
    out += "}";
  }
  out += "}";
  return out;
}

std::string SetPartition::rgs() const {
  std::string out(static_cast<size_t>(k_), '0');
  for (int e = 1; e <= k_; ++e) out[static_cast<size_t>(e - 1)] = rgs_char(block_of(e));
  return out;
}

std::string family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::All: return "all";
    case FamilyKind::NC: return "nc";
    case FamilyKind::NC2: return "nc2";
  }
  return "?";
}

PartitionFamily::PartitionFamily(FamilyKind kind, int k, std::vector<SetPartition> members)
    : kind_(kind), k_(k), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end(),
            [](const SetPartition& a, const SetPartition& b) { return a.rgs() > b.rgs(); });
  index_.reserve(members_.size());
  for (size_t i = 0; i < members_.size(); ++i) {
    if (!index_.emplace(members_[i].rgs(), static_cast<int>(i)).second)
      throw std::invalid_argument("PartitionFamily: duplicate member");
  }
}

int PartitionFamily::index_of(const SetPartition& p) const {
  if (p.ground_size() != k_) throw std::invalid_argument("PartitionFamily::index_of: ground-set mismatch");
  auto it = index_.find(p.rgs());
  if (it == index_.end()) throw std::invalid_argument("PartitionFamily::index_of: not a member");
  return it->second;
}

bool is_noncrossing(const SetPartition& p) {
  const int k = p.ground_size();
  std::vector<int> remaining(static_cast<size_t>(p.block_count()));
  for (const auto& b : p.blocks()) remaining[static_cast<size_t>(p.block_of(b.front()))] = static_cast<int>(b.size());
  std::vector<int> stack;
  std::vector<char> seen(static_cast<size_t>(p.block_count()), 0);
  for (int e = 1; e <= k; ++e) {
    const int b = p.block_of(e);
    if (!seen[static_cast<size_t>(b)]) {
      seen[static_cast<size_t>(b)] = 1;
      stack.push_back(b);
    } else if (stack.empty() || stack.back() != b) {
      return false;
    }
    if (--remaining[static_cast<size_t>(b)] == 0) stack.pop_back();
  }
  return true;
}

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[parent[static_cast<size_t>(x)]];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
  std::vector<int> parent;
};

UnionFind joined_union(const SetPartition& p, const SetPartition& q) {
  if (p.ground_size() != q.ground_size()) throw std::invalid_argument("join: ground-set mismatch");
  UnionFind uf(p.ground_size());
  for (const SetPartition* part : {&p, &q}) {
    for (const auto& b : part->blocks()) {
      for (size_t e = 1; e < b.size(); ++e) uf.unite(b[0] - 1, b[e] - 1);
    }
  }
  return uf;
}

std::vector<std::vector<int>> blocks_from_union(UnionFind& uf, int k) {
  std::vector<std::vector<int>> by_root(static_cast<size_t>(k));
  for (int e = 0; e < k; ++e) by_root[static_cast<size_t>(uf.find(e))].push_back(e + 1);
  std::vector<std::vector<int>> blocks;
  for (auto& b : by_root) {
    if (!b.empty()) blocks.push_back(std::move(b));
  }
  return blocks;
}

// Two disjoint sorted blocks cross iff their merged label sequence alternates
// at least four times.
bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b) {
  size_t ia = 0, ib = 0;
  int runs = 0, last = 0;
  while (ia < a.size() || ib < b.size()) {
    int side;
    if (ib == b.size() || (ia < a.size() && a[ia] < b[ib])) {
      side = 1;
      ++ia;
    } else {
      side = 2;
      ++ib;
    }
    if (side != last) {
      ++runs;
      last = side;
    }
  }
  return runs >= 4;
}

}  // namespace

SetPartition join(const SetPartition& p, const SetPartition& q) {
  UnionFind uf = joined_union(p, q);
  return SetPartition(p.ground_size(), blocks_from_union(uf, p.ground_size()));
}

int joined_block_count(const SetPartition& p, const SetPartition& q) {
  UnionFind uf = joined_union(p, q);
  int count = 0;
  for (int e = 0; e < p.ground_size(); ++e) {
    if (uf.find(e) == e) ++count;
  }
  return count;
}

SetPartition nc_join(const SetPartition& p, const SetPartition& q) {
  UnionFind uf = joined_union(p, q);
  std::vector<std::vector<int>> blocks = blocks_from_union(uf, p.ground_size());
  for (bool merged = true; merged;) {
    merged = false;
    for (size_t i = 0; i < blocks.size() && !merged; ++i) {
      for (size_t j = i + 1; j < blocks.size() && !merged; ++j) {
        if (!blocks_cross(blocks[i], blocks[j])) continue;
        std::vector<int> joined;
        std::merge(blocks[i].begin(), blocks[i].end(), blocks[j].begin(), blocks[j].end(), std::back_inserter(joined));
        blocks[i] = std::move(joined);
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }
  return SetPartition(p.ground_size(), std::move(blocks));
}

bool refines(const SetPartition& p, const SetPartition& q) {
  if (p.ground_size() != q.ground_size()) throw std::invalid_argument("refines: ground-set mismatch");
  for (const auto& b : p.blocks()) {
    const int target = q.block_of(b.front());
    for (int e : b) {
      if (q.block_of(e) != target) return false;
    }
  }
  return true;
}

SetPartition interval_pairing(int ground) {
  if (ground < 0 || ground % 2 != 0) throw std::invalid_argument("interval_pairing: ground-set size must be even");
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(ground / 2));
  for (int i = 1; i <= ground / 2; ++i) blocks.push_back({2 * i - 1, 2 * i});
  return SetPartition(ground, std::move(blocks));
}

SetPartition cabling(const SetPartition& p) {
  const int ground = p.ground_size();
  if (ground % 2 != 0) throw std::invalid_argument("cabling: ground-set size must be even");
  const int k = ground / 2;
  UnionFind uf = joined_union(p, interval_pairing(ground));
  std::vector<std::vector<int>> by_root(static_cast<size_t>(ground));
  for (int i = 1; i <= k; ++i) by_root[static_cast<size_t>(uf.find(2 * i - 1 - 1))].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (auto& b : by_root) {
    if (!b.empty()) blocks.push_back(std::move(b));
  }
  return SetPartition(k, std::move(blocks));
}

namespace {

void gen_all_rec(int k, int e, std::vector<int>& rgs, int max_so_far, std::vector<SetPartition>& out) {
  if (e == k) {
    std::vector<std::vector<int>> blocks(static_cast<size_t>(max_so_far + 1));
    for (int t = 0; t < k; ++t) blocks[static_cast<size_t>(rgs[static_cast<size_t>(t)])].push_back(t + 1);
    out.emplace_back(k, std::move(blocks));
    return;
  }
  for (int b = 0; b <= max_so_far + 1; ++b) {
    rgs[static_cast<size_t>(e)] = b;
    gen_all_rec(k, e + 1, rgs, std::max(max_so_far, b), out);
  }
}

std::vector<SetPartition> gen_all(int k) {
  std::vector<SetPartition> out;
  if (k == 0) {
    out.emplace_back(0, std::vector<std::vector<int>>{});
    return out;
  }
  std::vector<int> rgs(static_cast<size_t>(k), 0);
  gen_all_rec(k, 1, rgs, 0, out);
  return out;
}

using Pairing = std::vector<std::pair<int, int>>;

// Noncrossing pairings of a point segment: match the first point, then
// combine the independent matchings of the enclosed and trailing segments.
std::vector<Pairing> nc2_of(const std::vector<int>& pts) {
  std::vector<Pairing> out;
  if (pts.empty()) {
    out.emplace_back();
    return out;
  }
  for (size_t pi = 1; pi < pts.size(); pi += 2) {
    const std::vector<int> inside(pts.begin() + 1, pts.begin() + static_cast<std::ptrdiff_t>(pi));
    const std::vector<int> rest(pts.begin() + static_cast<std::ptrdiff_t>(pi) + 1, pts.end());
    for (const Pairing& a : nc2_of(inside)) {
      for (const Pairing& b : nc2_of(rest)) {
        Pairing p;
        p.reserve(1 + a.size() + b.size());
        p.emplace_back(pts[0], pts[pi]);
        p.insert(p.end(), a.begin(), a.end());
        p.insert(p.end(), b.begin(), b.end());
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::vector<SetPartition> gen_nc2(int ground) {
  std::vector<int> points(static_cast<size_t>(ground));
  std::iota(points.begin(), points.end(), 1);
  std::vector<SetPartition> out;
  for (const Pairing& pairing : nc2_of(points)) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(pairing.size());
    for (const auto& [x, y] : pairing) blocks.push_back({x, y});
    out.emplace_back(ground, std::move(blocks));
  }
  return out;
}

}  // namespace

std::shared_ptr<const PartitionFamily> enumerate(FamilyKind kind, int k) {
  if (k < 0) throw std::invalid_argument("enumerate: negative ground-set size");
  if (kind == FamilyKind::NC2) {
    if (k % 2 != 0) throw std::invalid_argument("enumerate: NC2 requires an even ground-set size");
    if (k > kEnumerateMaxNC2)
      throw SizeLimitError("enumerate: NC2 ground-set size " + std::to_string(k) + " exceeds guard " +
                           std::to_string(kEnumerateMaxNC2));
  } else if (k > kEnumerateMax) {
    throw SizeLimitError("enumerate: ground-set size " + std::to_string(k) + " exceeds guard " +
                         std::to_string(kEnumerateMax));
  }

  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const PartitionFamily>> cache;
  const std::pair<int, int> key{static_cast<int>(kind), k};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  std::vector<SetPartition> members;
  switch (kind) {
    case FamilyKind::All:
      members = gen_all(k);
      break;
    case FamilyKind::NC: {
      for (auto& p : gen_all(k)) {
        if (is_noncrossing(p)) members.push_back(std::move(p));
      }
      break;
    }
    case FamilyKind::NC2:
      members = gen_nc2(k);
      break;
  }
  auto family = std::make_shared<const PartitionFamily>(kind, k, std::move(members));

  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = cache.emplace(key, family);
  return it->second;
}

MoebiusTable::MoebiusTable(std::shared_ptr<const PartitionFamily> family) : family_(std::move(family)) {
  if (family_->kind() != FamilyKind::NC)
    throw std::invalid_argument("MoebiusTable: requires a noncrossing family");
  const int c = family_->size();
  const size_t words = (static_cast<size_t>(c) + 63) / 64;
  leq_bits_.assign(static_cast<size_t>(c), std::vector<uint64_t>(words, 0));
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      if (refines(family_->at(i), family_->at(j)))
        leq_bits_[static_cast<size_t>(i)][static_cast<size_t>(j) / 64] |= (uint64_t{1} << (j % 64));
    }
  }
  // Canonical order is a linear extension of refinement (finer partitions
  // sort first), so a single ascending pass over j sees every tau < sigma_j
  // before sigma_j.
  for (int j = 0; j < c; ++j) {
    for (int i = 0; i <= j; ++i) {
      if (!leq(i, j)) continue;
      long long v;
      if (i == j) {
        v = 1;
      } else {
        long long sum = 0;
        for (int t = i; t < j; ++t) {
          if (leq(i, t) && leq(t, j)) sum += values_.at((static_cast<uint64_t>(i) << 32) | static_cast<uint64_t>(t));
        }
        v = -sum;
      }
      values_.emplace((static_cast<uint64_t>(i) << 32) | static_cast<uint64_t>(j), v);
    }
  }
}

bool MoebiusTable::leq(int i, int j) const {
  return (leq_bits_[static_cast<size_t>(i)][static_cast<size_t>(j) / 64] >> (j % 64)) & 1;
}

long long MoebiusTable::value(int i, int j) const {
  auto it = values_.find((static_cast<uint64_t>(i) << 32) | static_cast<uint64_t>(j));
  return it == values_.end() ? 0 : it->second;
}

std::vector<long long> MoebiusTable::column_to_one() const {
  const int c = family_->size();
  std::vector<long long> out(static_cast<size_t>(c));
  for (int i = 0; i < c; ++i) out[static_cast<size_t>(i)] = value(i, c - 1);
  return out;
}

}  // namespace fhl::partitions
