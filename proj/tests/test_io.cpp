#include <doctest.h>

#include <cctype>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

#include "fuglede/io.hpp"
#include "helpers.hpp"

using namespace fuglede;
using testutil::make_set;
using testutil::random_set;

TEST_CASE("group and element text") {
  Group g(3, 2, 1);
  CHECK(group_text(g) == "Z_9 x Z_3");
  CHECK(elem_text(g, g.element(4, 2)) == "(4,2)");

  // A swapped declaration reports elements in the caller's orientation.
  Group s(2, 1, 2);
  CHECK(group_text(s) == "Z_4 x Z_2");
  CHECK(elem_text(s, s.element(3, 1)) == "(1,3)");
  CHECK(parse_elem(s, "(1,3)") == s.element(3, 1));
}

TEST_CASE("subset text and hex forms") {
  Group g(2, 2, 1);
  CHECK(subset_text(SubsetMask(g)) == "{}");
  CHECK(subset_text(make_set(g, {{1, 2}, {0, 0}})) == "(0,0),(1,0)");
  CHECK(subset_hex(make_set(g, {{0, 0}})) == "0x1");
  CHECK(subset_hex(make_set(g, {{3, 1}})) == "0x80");
  CHECK(subset_hex(make_set(g, {{0, 0}, {1, 1}})) == "0x9");

  Group wide(3, 2, 2);  // order 81 spans two mask words
  SubsetMask far(wide);
  far.insert_index(80);
  CHECK(subset_hex(far) == "0x100000000000000000000");
  CHECK(parse_subset(wide, "0x100000000000000000000") == far);
}

TEST_CASE("element parsing") {
  Group g(3, 2, 1);
  CHECK(parse_elem(g, "(4,2)") == g.element(4, 2));
  CHECK(parse_elem(g, " ( 4 , 2 ) ") == g.element(4, 2));
  CHECK(parse_elem(g, "(13,5)") == g.element(4, 2));  // reduced mod (9,3)
  CHECK_THROWS_AS(parse_elem(g, "4,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_elem(g, "(4)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_elem(g, "(a,b)"), std::invalid_argument);
}

TEST_CASE("subset parsing") {
  Group g(2, 2, 1);
  CHECK(parse_subset(g, "").empty());
  CHECK(parse_subset(g, "{}").empty());
  CHECK(parse_subset(g, "(0,0),(1,0)") == make_set(g, {{0, 0}, {1, 0}}));
  CHECK(parse_subset(g, "(0,0);(1,0)") == make_set(g, {{0, 0}, {1, 0}}));
  CHECK(parse_subset(g, "(0,0) (1,0)") == make_set(g, {{0, 0}, {1, 0}}));
  CHECK(parse_subset(g, "0x9") == make_set(g, {{0, 0}, {1, 1}}));
  CHECK_THROWS_AS(parse_subset(g, "0x1FF"), std::invalid_argument);  // bit 8
  CHECK_THROWS_AS(parse_subset(g, "0x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_subset(g, "(0,0)x(1,0)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_subset(g, "(0,0),(1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_subset(g, "nonsense"), std::invalid_argument);

  std::mt19937_64 rng(79);
  for (Group grp : {Group(2, 2, 1), Group(3, 2, 2), Group(2, 1, 2)}) {
    for (int i = 0; i < 60; ++i) {
      SubsetMask a = random_set(grp, 1 + rng() % grp.order(), rng);
      CHECK(parse_subset(grp, subset_text(a)) == a);
      CHECK(parse_subset(grp, subset_hex(a)) == a);
    }
  }
}

TEST_CASE("zero set serialization") {
  Group g(2, 2, 1);
  ZeroSet z = zero_set(make_set(g, {{0, 0}, {1, 0}}));

  ordered_json plain = zero_set_json(z);
  CHECK(plain.dump() == "[\"(2,0)\",\"(2,1)\"]");

  ordered_json audited = zero_set_json(z, true);
  REQUIRE(audited.size() == 2);
  CHECK(audited[0]["d"] == "(2,0)");
  CHECK(audited[0]["abs"].get<double>() < 1e-6);
}

TEST_CASE("verdict serialization") {
  Group g(2, 2, 1);
  SubsetMask a = make_set(g, {{0, 0}, {2, 0}});

  ordered_json bad = verdict_json(g, is_spectral_pair(a, a));
  CHECK(bad["kind"] == "spectral");
  CHECK(bad["holds"] == false);
  CHECK(bad["witness"] == "(2,0)");

  ordered_json good =
      verdict_json(g, is_spectral_pair(a, make_set(g, {{0, 0}, {1, 0}})));
  CHECK(good["holds"] == true);
  CHECK(good["witness"].is_null());
}

TEST_CASE("decision serialization") {
  Group g(2, 2, 1);
  Decision d = decide(make_set(g, {{0, 0}, {1, 1}}));
  ordered_json j = decision_json(d);
  CHECK(j["group"] == "Z_4 x Z_2");
  CHECK(j["set"] == "(0,0),(1,1)");
  CHECK(j["mask"] == "0x9");
  CHECK(j["size"] == 2);
  CHECK(j["is_spectral"] == true);
  CHECK(j["spectrum"] == "(0,0),(0,1)");
  CHECK(j["is_tile"] == true);
  CHECK(j["complement"] == "(0,0),(1,0),(2,0),(3,0)");
  CHECK(j["provenance"]["spectral"] == "scalar-line");
  CHECK(j["provenance"]["tile"] == "x-axis");

  Decision blocked = decide(make_set(g, {{0, 0}, {1, 0}, {2, 0}}));
  ordered_json jb = decision_json(blocked);
  CHECK(jb["is_spectral"] == false);
  CHECK(jb["spectrum"].is_null());
  CHECK(jb["complement"].is_null());

  CHECK(csv_header() ==
        "mask,size,is_spectral,is_tile,spectral_provenance,tile_provenance");
  CHECK(decision_csv_row(d) == "0x9,2,1,1,scalar-line,x-axis");
  CHECK(decision_csv_row(blocked) == "0x15,3,0,0,cardinality,cardinality");
}

TEST_CASE("report serialization carries a content hash") {
  Group g(2, 2, 1);
  SearchBudget budget;
  Report r = verify_conjecture(g, {2}, true, budget);
  r.wall_ms = 42.0;

  ordered_json j = report_json(r);
  CHECK(j["group"] == "Z_4 x Z_2");
  CHECK(j["mode"] == "theorem");
  CHECK(j["canonical"] == true);
  CHECK(j["complete"] == true);
  CHECK_FALSE(j.contains("wall_ms"));

  std::string hash = j["content_hash"].get<std::string>();
  REQUIRE(hash.size() == 8 + 16);
  CHECK(hash.substr(0, 8) == "fnv1a64:");
  for (char ch : hash.substr(8)) CHECK(std::isxdigit(static_cast<unsigned char>(ch)));

  // The printed hash matches the programmatic one and ignores wall time.
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(report_hash(r)));
  CHECK(hash == buf);
  r.wall_ms = 0.125;
  CHECK(report_json(r)["content_hash"] == hash);
}
