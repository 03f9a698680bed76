#pragma once

// Brute-force combinatorial oracles, kept deliberately independent of the
// library's enumeration and crossing logic.

#include <algorithm>
#include <vector>

#include "fhl/partitions.hpp"

namespace oracles {

// Every canonical set partition of {1..k} as a restricted growth vector.
inline std::vector<std::vector<int>> all_rgs(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<size_t>(k), 0);
  const auto rec = [&](auto&& self, int pos, int mx) -> void {
    if (pos == k) {
      out.push_back(a);
      return;
    }
    for (int b = 0; b <= mx + 1; ++b) {
      a[static_cast<size_t>(pos)] = b;
      self(self, pos + 1, std::max(mx, b));
    }
  };
  rec(rec, 0, -1);
  return out;
}

// Every pairing of {1..ground}: match the smallest unmatched point with each
// later point, recursively ((ground-1)!! outputs as block-index vectors).
inline std::vector<std::vector<int>> all_pairings(int ground) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<size_t>(ground), -1);
  const auto rec = [&](auto&& self, int nblocks) -> void {
    int first = 0;
    while (first < ground && a[static_cast<size_t>(first)] != -1) ++first;
    if (first == ground) {
      out.push_back(a);
      return;
    }
    a[static_cast<size_t>(first)] = nblocks;
    for (int mate = first + 1; mate < ground; ++mate) {
      if (a[static_cast<size_t>(mate)] != -1) continue;
      a[static_cast<size_t>(mate)] = nblocks;
      self(self, nblocks + 1);
      a[static_cast<size_t>(mate)] = -1;
    }
    a[static_cast<size_t>(first)] = -1;
  };
  rec(rec, 0);
  return out;
}

// Quadruple-loop crossing test, deliberately naive.
inline bool naive_noncrossing(const std::vector<int>& a) {
  const int k = static_cast<int>(a.size());
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q)
      for (int r = q + 1; r < k; ++r)
        for (int s = r + 1; s < k; ++s)
          if (a[p] == a[r] && a[q] == a[s] && a[p] != a[q]) return false;
  return true;
}

inline fhl::partitions::SetPartition from_rgs(int k, const std::vector<int>& a) {
  const int nblocks = 1 + *std::max_element(a.begin(), a.end());
  std::vector<std::vector<int>> blocks(static_cast<size_t>(nblocks));
  for (int e = 1; e <= k; ++e)
    blocks[static_cast<size_t>(a[static_cast<size_t>(e - 1)])].push_back(e);
  return fhl::partitions::SetPartition(k, std::move(blocks));
}

}  // namespace oracles
