#include <doctest.h>

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuglede/certificates.hpp"
#include "fuglede/search.hpp"
#include "helpers.hpp"

using namespace fuglede;
using testutil::make_set;
using testutil::random_set;

TEST_CASE("brute spectrum search") {
  Group g(2, 2, 1);

  auto s = brute_spectrum(make_set(g, {{0, 0}, {2, 0}}));
  REQUIRE(s.has_value());
  CHECK(*s == make_set(g, {{0, 0}, {1, 0}}));  // smallest extension wins
  CHECK(is_spectral_pair(make_set(g, {{0, 0}, {2, 0}}), *s).holds);

  auto single = brute_spectrum(make_set(g, {{3, 1}}));
  REQUIRE(single.has_value());
  CHECK(*single == make_set(g, {{0, 0}}));

  CHECK_FALSE(brute_spectrum(make_set(g, {{0, 0}, {1, 0}, {2, 0}})));
  CHECK_FALSE(brute_spectrum(SubsetMask(g)));
}

TEST_CASE("brute complement search") {
  Group g(2, 2, 1);

  auto t = brute_complement(make_set(g, {{0, 0}, {1, 1}}));
  REQUIRE(t.has_value());
  CHECK(*t == make_set(g, {{0, 0}, {0, 1}, {2, 0}, {2, 1}}));
  CHECK(is_tiling_pair(make_set(g, {{0, 0}, {1, 1}}), *t).holds);

  auto u = brute_complement(make_set(g, {{0, 0}, {1, 0}}));
  REQUIRE(u.has_value());
  CHECK(*u == make_set(g, {{0, 0}, {0, 1}, {2, 0}, {2, 1}}));

  auto point = brute_complement(SubsetMask::full(g));
  REQUIRE(point.has_value());
  CHECK(*point == make_set(g, {{0, 0}}));

  CHECK_FALSE(brute_complement(make_set(g, {{0, 0}, {1, 0}, {2, 0}})));
  CHECK_FALSE(brute_complement(SubsetMask(g)));

  // Divisor cardinality without a tiling: the exact cover exhausts.
  CHECK_FALSE(
      brute_complement(make_set(g, {{0, 0}, {1, 0}, {2, 0}, {0, 1}})));
}

TEST_CASE("subset counting saturates instead of overflowing") {
  Group g(2, 2, 1);
  CHECK(subset_count(g, 0) == 1);
  CHECK(subset_count(g, 2) == 28);
  CHECK(subset_count(g, 4) == 70);
  CHECK(subset_count(g, 8) == 1);

  Group big(2, 10, 10);  // order 2^20
  CHECK(subset_count(big, 1) == 1ull << 20);
  CHECK(subset_count(big, 10) == 1ull << 62);
}

TEST_CASE("subset enumeration streams and canonicalizes") {
  Group g(2, 2, 1);

  std::vector<SubsetMask> all;
  enumerate_subsets(g, 2, false, 0, subset_count(g, 2),
                    [&](const SubsetMask& a) {
                      all.push_back(a);
                      return true;
                    });
  REQUIRE(all.size() == 28);
  for (std::size_t i = 1; i < all.size(); ++i)
    CHECK(all[i - 1].compare(all[i]) < 0);  // increasing bitmask order

  // Rank windows partition the stream.
  std::vector<SubsetMask> windowed;
  for (std::uint64_t lo : {0ull, 10ull, 20ull}) {
    enumerate_subsets(g, 2, false, lo, std::min<std::uint64_t>(lo + 10, 28),
                      [&](const SubsetMask& a) {
                        windowed.push_back(a);
                        return true;
                      });
  }
  REQUIRE(windowed.size() == 28);
  for (std::size_t i = 0; i < 28; ++i) CHECK(windowed[i] == all[i]);

  std::vector<SubsetMask> classes;
  enumerate_subsets(g, 2, true, 0, 28, [&](const SubsetMask& a) {
    classes.push_back(a);
    return true;
  });
  CHECK(classes.size() == 5);

  std::vector<SubsetMask> top;
  enumerate_subsets(g, 8, true, 0, 1, [&](const SubsetMask& a) {
    top.push_back(a);
    return true;
  });
  REQUIRE(top.size() == 1);
  CHECK(top[0] == SubsetMask::full(g));

  // Early stop.
  int seen = 0;
  enumerate_subsets(g, 2, false, 0, 28, [&](const SubsetMask&) {
    return ++seen < 3;
  });
  CHECK(seen == 3);
}

TEST_CASE("canonical classes cover the binomial counts") {
  for (Group g : {Group(2, 2, 1), Group(3, 2, 1)}) {
    for (std::uint64_t size : {1ull, 2ull, 3ull}) {
      std::uint64_t classes = 0;
      SearchBudget budget;
      Report r = verify_conjecture(g, {size}, true, budget);
      classes = r.per_size.at(0).examined;
      CHECK(classes > 0);
      CHECK(r.per_size.at(0).orbit_size_sum == subset_count(g, size));
    }
  }
}

TEST_CASE("full sweep at order eight") {
  Group g(2, 2, 1);
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t s = 0; s <= 8; ++s) sizes.push_back(s);
  SearchBudget budget;
  std::vector<std::string> csv;
  Report r = verify_conjecture(g, sizes, false, budget, &csv);

  CHECK(r.mode == "theorem");
  CHECK(r.complete);
  CHECK_FALSE(r.canonical);
  CHECK(r.subsets_examined == 256);
  CHECK(r.counterexamples.empty());
  CHECK(csv.size() == 256);

  // spectral == tile everywhere, with these verdict counts per size.
  const std::uint64_t expected_examined[] = {1, 8, 28, 56, 70, 56, 28, 8, 1};
  const std::uint64_t expected_positive[] = {0, 8, 28, 0, 38, 0, 0, 0, 1};
  REQUIRE(r.per_size.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(r.per_size[i].size == i);
    CHECK(r.per_size[i].examined == expected_examined[i]);
    CHECK(r.per_size[i].orbit_size_sum == expected_examined[i]);
    CHECK(r.per_size[i].spectral == expected_positive[i]);
    CHECK(r.per_size[i].tiles == expected_positive[i]);
  }

  // Construction dispatch is deterministic; this histogram pins it.
  const std::map<std::string, std::uint64_t> expected_prov{
      {"spectral:cardinality", 120}, {"spectral:empty-set", 1},
      {"spectral:exhausted", 32},    {"spectral:full-group", 1},
      {"spectral:graph-form", 28},   {"spectral:p-block", 8},
      {"spectral:scalar-line", 28},  {"spectral:singleton", 8},
      {"spectral:size-window", 28},  {"spectral:unit-block", 2},
      {"tile:cardinality", 148},     {"tile:diagonal-line", 2},
      {"tile:empty-set", 1},         {"tile:exhausted", 32},
      {"tile:full-group", 1},        {"tile:graph-section", 28},
      {"tile:p-line", 8},            {"tile:plane-lift", 4},
      {"tile:singleton", 8},         {"tile:skew-plane", 8},
      {"tile:x-axis", 16}};
  CHECK(r.provenance == expected_prov);
}

TEST_CASE("reports are independent of the worker count") {
  Group g(2, 2, 1);
  std::vector<std::uint64_t> sizes{2, 4, 6};
  SearchBudget one;
  one.worker_count = 1;
  SearchBudget three;
  three.worker_count = 3;
  SearchBudget eight;
  eight.worker_count = 8;

  std::vector<std::string> csv1, csv3, csv8;
  Report r1 = verify_conjecture(g, sizes, false, one, &csv1);
  Report r3 = verify_conjecture(g, sizes, false, three, &csv3);
  Report r8 = verify_conjecture(g, sizes, false, eight, &csv8);

  CHECK(report_hash(r1) == report_hash(r3));
  CHECK(report_hash(r1) == report_hash(r8));
  CHECK(csv1 == csv3);
  CHECK(csv1 == csv8);
}

TEST_CASE("the report hash ignores wall-clock time") {
  Group g(2, 2, 1);
  SearchBudget budget;
  Report r = verify_conjecture(g, {2}, true, budget);
  std::uint64_t h = report_hash(r);
  r.wall_ms = 123456.0;
  CHECK(report_hash(r) == h);
  r.subsets_examined += 1;
  CHECK(report_hash(r) != h);
}

TEST_CASE("budget caps yield partial flagged reports") {
  Group g(2, 2, 1);
  SearchBudget budget;
  budget.max_subsets = 10;
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t s = 0; s <= 8; ++s) sizes.push_back(s);
  Report r = verify_conjecture(g, sizes, false, budget);
  CHECK_FALSE(r.complete);
  CHECK(r.subsets_examined == 10);

  SearchBudget tiny;
  tiny.max_group_order = 4;
  CHECK_THROWS_AS(verify_conjecture(g, {2}, false, tiny),
                  std::invalid_argument);
}

TEST_CASE("exploration mode decides by brute force only") {
  Group g(2, 1, 1);  // not of the theorem shape
  SearchBudget budget;
  std::vector<std::string> csv;
  Report r = verify_conjecture(g, {0, 1, 2, 3, 4}, false, budget, &csv);
  CHECK(r.mode == "exploration");
  CHECK(r.subsets_examined == 16);
  CHECK(r.counterexamples.empty());
  for (const std::string& row : csv) {
    CHECK(row.find("scalar-line") == std::string::npos);
    CHECK(row.find("graph-form") == std::string::npos);
  }
}

TEST_CASE("tiles in the theorem group have prime-power sizes") {
  Group g(2, 2, 1);
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t s = 0; s <= 8; ++s) sizes.push_back(s);
  SearchBudget budget;
  Report r = verify_conjecture(g, sizes, false, budget);
  for (const SizeTally& tally : r.per_size) {
    if (tally.tiles == 0) continue;
    bool power = tally.size == 1 || tally.size == 2 || tally.size == 4 ||
                 tally.size == 8;
    CHECK(power);
  }
}

TEST_CASE("spot checks clear the large-size window") {
  Group g(2, 2, 1);

  SearchBudget exhaustive;
  exhaustive.sample_count = 0;
  Report full = spot_check_large_sets(g, exhaustive);
  CHECK(full.mode == "spot-check");
  CHECK(full.complete);
  // All sets with 4 < size < 8: C(8,5) + C(8,6) + C(8,7).
  CHECK(full.subsets_examined == 92);
  CHECK(full.counterexamples.empty());
  CHECK(full.coverage_violations == 0);
  for (const SizeTally& tally : full.per_size) CHECK(tally.spectral == 0);

  SearchBudget sampled;
  sampled.sample_count = 64;
  sampled.random_seed = 99;
  Report a = spot_check_large_sets(g, sampled);
  CHECK(a.subsets_examined == 64);
  CHECK(a.counterexamples.empty());
  sampled.worker_count = 4;
  Report b = spot_check_large_sets(g, sampled);
  CHECK(report_hash(a) == report_hash(b));  // seed fixes the outcome

  Group g3(3, 2, 1);
  SearchBudget quick;
  quick.sample_count = 500;
  quick.random_seed = 7;
  Report r3 = spot_check_large_sets(g3, quick);
  CHECK(r3.counterexamples.empty());
  CHECK(r3.coverage_violations == 0);
}

TEST_CASE("oracle agreement between decide and the brute searches") {
  std::mt19937_64 rng(73);
  Group g3(3, 2, 1);
  for (int i = 0; i < 400; ++i) {
    std::uint64_t size = 1 + rng() % 9;
    SubsetMask a = random_set(g3, size, rng);
    Decision d = decide(a);
    CHECK(d.is_spectral == brute_spectrum(a).has_value());
    CHECK(d.is_tile == brute_complement(a).has_value());
  }
}
