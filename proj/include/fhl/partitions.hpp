#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fhl::partitions {

// A set partition of {1..k} in canonical form: blocks sorted by their minima,
// elements sorted ascending inside each block.
class SetPartition {
 public:
  SetPartition(int k, std::vector<std::vector<int>> blocks);

  static SetPartition singletons(int k);  // 0_k
  static SetPartition full(int k);        // 1_k

  int ground_size() const { return k_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  // Zero-based index of the block containing element e (1-based).
  int block_of(int e) const { return block_of_[static_cast<size_t>(e - 1)]; }

  // Canonical text form, e.g. "{{1,2},{3,4}}".
  std::string to_string() const;

  // Restricted growth string: character t is the block index of element t+1,
  // encoded 0-9a-z.  Blocks are numbered by first appearance, so this is a
  // valid RGS for canonical partitions.
  std::string rgs() const;

  bool operator==(const SetPartition& o) const { return k_ == o.k_ && block_of_ == o.block_of_; }

 private:
  int k_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
};

enum class FamilyKind { All, NC, NC2 };

std::string family_kind_name(FamilyKind kind);

// All partitions of {1..k} of one kind, in canonical order: descending
// lexicographic on the restricted growth string, which puts the discrete
// partition 0_k first and 1_k last.
class PartitionFamily {
 public:
  PartitionFamily(FamilyKind kind, int k, std::vector<SetPartition> members);

  FamilyKind kind() const { return kind_; }
  int ground_size() const { return k_; }
  int size() const { return static_cast<int>(members_.size()); }
  const SetPartition& at(int i) const { return members_[static_cast<size_t>(i)]; }
  const std::vector<SetPartition>& members() const { return members_; }

  // Index in canonical order; throws std::invalid_argument if absent.
  int index_of(const SetPartition& p) const;

 private:
  FamilyKind kind_;
  int k_;
  std::vector<SetPartition> members_;
  std::unordered_map<std::string, int> index_;
};

// Materializes a family, with process-wide caching.  Guards: ground-set size
// at most 10 for All/NC and at most 16 for NC2 (SizeLimitError beyond);
// NC2 with odd ground size is invalid-argument.
std::shared_ptr<const PartitionFamily> enumerate(FamilyKind kind, int k);

bool is_noncrossing(const SetPartition& p);

// Join in the lattice of all partitions (transitive closure of the union of
// the two block relations).  This is the join used by the Gram matrices.
SetPartition join(const SetPartition& p, const SetPartition& q);

// Block count of join(p, q) without materializing the partition.
int joined_block_count(const SetPartition& p, const SetPartition& q);

// Join in the noncrossing lattice: the partition-lattice join with crossing
// blocks merged to a fixpoint.  Coincides with join(p, q) exactly when the
// partition-lattice join is itself noncrossing.
SetPartition nc_join(const SetPartition& p, const SetPartition& q);

bool refines(const SetPartition& p, const SetPartition& q);

// {{1,2},{3,4},...,{2k-1,2k}} on ground set {1..2k}.
SetPartition interval_pairing(int ground);

// Collapses neighbors: p on {1..2k} maps to the partition of {1..k} whose
// blocks are the classes of pairs {2i-1,2i} under join(p, interval_pairing).
SetPartition cabling(const SetPartition& p);

// Positions a, b share a block iff labels[a] == labels[b].
template <typename T>
SetPartition kernel_partition(const std::vector<T>& labels) {
  if (labels.empty()) throw std::invalid_argument("kernel_partition: empty label tuple");
  const int k = static_cast<int>(labels.size());
  std::map<T, std::vector<int>> groups;
  for (int e = 1; e <= k; ++e) groups[labels[static_cast<size_t>(e - 1)]].push_back(e);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(groups.size());
  for (auto& [label, block] : groups) blocks.push_back(std::move(block));
  return SetPartition(k, std::move(blocks));
}

// Moebius function of the noncrossing lattice, built eagerly from the
// defining recursion sum_{pi <= tau <= sigma} mu(pi, tau) = [pi == sigma].
// Immutable after construction; safe to share across threads.
class MoebiusTable {
 public:
  explicit MoebiusTable(std::shared_ptr<const PartitionFamily> family);

  const PartitionFamily& family() const { return *family_; }

  // mu(family[i], family[j]); zero when family[i] does not refine family[j].
  long long value(int i, int j) const;

  // Column mu(., 1_k) for every family member.
  std::vector<long long> column_to_one() const;

 private:
  bool leq(int i, int j) const;

  std::shared_ptr<const PartitionFamily> family_;
  std::vector<std::vector<uint64_t>> leq_bits_;
  std::unordered_map<uint64_t, long long> values_;
};

}  // namespace fhl::partitions
