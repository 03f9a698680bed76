#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fhl/errors.hpp"
#include "fhl/exact.hpp"
#include "fhl/partitions.hpp"
#include "oracles.hpp"

using fhl::Int;
using fhl::catalan;
using namespace fhl::partitions;
using oracles::all_pairings;
using oracles::all_rgs;
using oracles::from_rgs;
using oracles::naive_noncrossing;

TEST_CASE("canonical partition form and text forms") {
  const SetPartition p(4, {{2, 4}, {1, 3}});
  CHECK(p.to_string() == "{{1,3},{2,4}}");
  CHECK(p.rgs() == "0101");
  CHECK(p.block_count() == 2);
  CHECK(p.block_of(1) == 0);
  CHECK(p.block_of(4) == 1);

  CHECK(SetPartition::singletons(3).rgs() == "012");
  CHECK(SetPartition::full(3).rgs() == "000");

  CHECK_THROWS_AS(SetPartition(3, {{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(SetPartition(3, {{1, 2}, {2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(SetPartition(3, {{1, 2, 3}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(SetPartition(2, {{1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("family counts match brute force and Catalan numbers") {
  const long long bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (int k = 1; k <= 6; ++k) {
    CHECK(enumerate(FamilyKind::All, k)->size() == bell[k]);
  }
  for (int k = 1; k <= 8; ++k) {
    const auto nc = enumerate(FamilyKind::NC, k);
    CHECK(Int(nc->size()) == catalan(k));

    std::set<std::string> expected;
    for (const auto& a : all_rgs(k)) {
      if (naive_noncrossing(a)) expected.insert(from_rgs(k, a).rgs());
    }
    CHECK(expected.size() == static_cast<size_t>(nc->size()));
    std::set<std::string> got;
    for (const auto& p : nc->members()) got.insert(p.rgs());
    CHECK(got == expected);
  }
  for (int k = 1; k <= 8; ++k) {
    const auto nc2 = enumerate(FamilyKind::NC2, 2 * k);
    CHECK(Int(nc2->size()) == catalan(k));
    std::set<std::string> expected;
    for (const auto& a : all_pairings(2 * k)) {
      if (naive_noncrossing(a)) expected.insert(from_rgs(2 * k, a).rgs());
    }
    std::set<std::string> got;
    for (const auto& p : nc2->members()) {
      for (const auto& b : p.blocks()) CHECK(b.size() == 2);
      got.insert(p.rgs());
    }
    CHECK(got == expected);
  }
}

TEST_CASE("canonical order is descending lexicographic on the growth string") {
  const auto nc3 = enumerate(FamilyKind::NC, 3);
  const std::vector<std::string> golden = {"012", "011", "010", "001", "000"};
  REQUIRE(nc3->size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(nc3->at(i).rgs() == golden[static_cast<size_t>(i)]);

  for (const auto kind : {FamilyKind::All, FamilyKind::NC}) {
    for (int k = 1; k <= 6; ++k) {
      const auto fam = enumerate(kind, k);
      CHECK(fam->at(0) == SetPartition::singletons(k));
      CHECK(fam->at(fam->size() - 1) == SetPartition::full(k));
      for (int i = 0; i + 1 < fam->size(); ++i) CHECK(fam->at(i).rgs() > fam->at(i + 1).rgs());
      for (int i = 0; i < fam->size(); ++i) CHECK(fam->index_of(fam->at(i)) == i);
    }
  }
}

TEST_CASE("enumeration guards") {
  CHECK_THROWS_AS(enumerate(FamilyKind::All, 11), fhl::SizeLimitError);
  CHECK_THROWS_AS(enumerate(FamilyKind::NC, 11), fhl::SizeLimitError);
  CHECK_THROWS_AS(enumerate(FamilyKind::NC2, 18), fhl::SizeLimitError);
  CHECK_THROWS_AS(enumerate(FamilyKind::NC2, 3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate(FamilyKind::NC, -1), std::invalid_argument);
}

TEST_CASE("join and refinement") {
  const SetPartition a(3, {{1, 2}, {3}});
  const SetPartition b(3, {{1}, {2, 3}});
  CHECK(join(a, b) == SetPartition::full(3));
  CHECK(joined_block_count(a, b) == 1);
  CHECK(join(a, a) == a);
  CHECK(refines(a, SetPartition::full(3)));
  CHECK(refines(SetPartition::singletons(3), a));
  CHECK_FALSE(refines(a, b));
  CHECK_THROWS_AS(join(a, SetPartition::full(4)), std::invalid_argument);

  for (int k = 1; k <= 5; ++k) {
    const auto nc = enumerate(FamilyKind::NC, k);
    for (const auto& p : nc->members()) {
      for (const auto& q : nc->members()) {
        const auto j = join(p, q);
        CHECK(joined_block_count(p, q) == j.block_count());
        CHECK(refines(p, j));
        CHECK(refines(q, j));
      }
    }
  }
}

TEST_CASE("partition join and noncrossing join differ exactly on crossing joins") {
  // The smallest separation: two noncrossing partitions whose partition join
  // crosses, so the noncrossing join must merge further.
  const SetPartition p(4, {{1, 3}, {2}, {4}});
  const SetPartition q(4, {{1}, {2, 4}, {3}});
  const auto pj = join(p, q);
  CHECK(pj == SetPartition(4, {{1, 3}, {2, 4}}));
  CHECK_FALSE(is_noncrossing(pj));
  CHECK(nc_join(p, q) == SetPartition::full(4));

  for (int k = 1; k <= 5; ++k) {
    const auto nc = enumerate(FamilyKind::NC, k);
    for (const auto& a2 : nc->members()) {
      for (const auto& b2 : nc->members()) {
        const auto pj2 = join(a2, b2);
        const auto nj = nc_join(a2, b2);
        CHECK(is_noncrossing(nj));
        CHECK(refines(pj2, nj));
        if (is_noncrossing(pj2)) {
          CHECK(nj == pj2);
        } else {
          CHECK_FALSE(nj == pj2);
        }
      }
    }
  }
}

TEST_CASE("interval pairing and neighbor collapse") {
  CHECK(interval_pairing(6) == SetPartition(6, {{1, 2}, {3, 4}, {5, 6}}));
  CHECK(interval_pairing(0) == SetPartition(0, {}));
  CHECK_THROWS_AS(interval_pairing(5), std::invalid_argument);

  CHECK(cabling(SetPartition(6, {{1, 2}, {3, 6}, {4, 5}})) == SetPartition(3, {{1}, {2, 3}}));
  CHECK(cabling(interval_pairing(8)) == SetPartition::singletons(4));
  CHECK(cabling(SetPartition::full(6)) == SetPartition::full(3));
  CHECK_THROWS_AS(cabling(SetPartition::full(5)), std::invalid_argument);

  // Collapse never splits: coarser input gives coarser output.
  const auto nc2 = enumerate(FamilyKind::NC2, 6);
  for (const auto& p : nc2->members()) {
    const auto c = cabling(p);
    CHECK(c.ground_size() == 3);
    for (const auto& q : nc2->members()) {
      if (refines(p, q)) CHECK(refines(cabling(p), cabling(q)));
    }
  }
}

TEST_CASE("kernel partition groups equal labels") {
  CHECK(kernel_partition(std::vector<int>{1, 2, 1}) == SetPartition(3, {{1, 3}, {2}}));
  CHECK(kernel_partition(std::vector<std::string>{"a", "b", "b", "a"}) ==
        SetPartition(4, {{1, 4}, {2, 3}}));
  CHECK(kernel_partition(std::vector<int>{7}) == SetPartition::full(1));
  CHECK_THROWS_AS(kernel_partition(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("Moebius values on the noncrossing lattice") {
  const MoebiusTable t3(enumerate(FamilyKind::NC, 3));
  const auto& fam = t3.family();
  const int bottom = 0;
  const int top = fam.size() - 1;
  CHECK(t3.value(bottom, top) == 2);
  CHECK(t3.value(top, top) == 1);
  CHECK(t3.value(top, bottom) == 0);

  // Defining recursion: the column above any fixed pi sums to zero unless the
  // interval is a point.
  for (int i = 0; i < fam.size(); ++i) {
    for (int j = 0; j < fam.size(); ++j) {
      if (!refines(fam.at(i), fam.at(j))) {
        CHECK(t3.value(i, j) == 0);
        continue;
      }
      long long total = 0;
      for (int t = 0; t < fam.size(); ++t) {
        if (refines(fam.at(i), fam.at(t)) && refines(fam.at(t), fam.at(j))) total += t3.value(i, t);
      }
      CHECK(total == (i == j ? 1 : 0));
    }
  }

  for (int p = 1; p <= 7; ++p) {
    const MoebiusTable t(enumerate(FamilyKind::NC, p));
    const auto col = t.column_to_one();
    const Int expected = ((p - 1) % 2 == 0 ? 1 : -1) * catalan(p - 1);
    CHECK(Int(col.front()) == expected);
    CHECK(col.back() == 1);
  }

  CHECK_THROWS_AS(MoebiusTable(enumerate(FamilyKind::All, 4)), std::invalid_argument);
}
