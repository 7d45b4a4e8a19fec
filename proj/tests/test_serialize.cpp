#include <sstream>

#include "doctest.h"
#include "outerlp/serialize.hpp"
#include "test_util.hpp"

using namespace outerlp;
using nlohmann::json;

TEST_CASE("generator space round trip preserves measures and weights") {
  testutil::Rng rng(0x5e71u);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = testutil::random_generated_space(rng, 1 + rng.below(8), 1 + rng.below(5));
    auto doc = space_to_json(s);
    auto back = space_from_json(json::parse(doc.dump()));
    REQUIRE(back.size() == s.size());
    for (int x = 0; x < s.size(); ++x) CHECK(back.weight(x) == s.weight(x));
    for (Mask a = 0;; ++a) {
      CHECK(back.outer_measure(a) == s.outer_measure(a));
      if (a == s.all()) break;
    }
  }
}

TEST_CASE("table space round trip, including inf entries") {
  // one uncoverable point makes some table entries inf
  auto s = build_space({1.0, 1.0},
                       Generators{{Generator{0b01, 2.0}}});
  auto doc = space_to_json(s);
  CHECK(doc.contains("generators"));
  // re-emit as an explicit table document
  json table = json::array();
  for (Mask m = 0; m <= 3; ++m) {
    json ids = json::array();
    for (int x = 0; x < 2; ++x)
      if (m & (1u << x)) ids.push_back(x);
    table.push_back({{"set", ids}, {"mu", number_to_json(s.outer_measure(m).value())}});
  }
  json tdoc = {{"points", 2}, {"weights", {1.0, 1.0}}, {"table", table}};
  auto back = space_from_json(tdoc);
  for (Mask m = 0; m <= 3; ++m) CHECK(back.outer_measure(m) == s.outer_measure(m));
  CHECK(back.outer_measure(0b10).is_inf());
}

TEST_CASE("function round trip and length screening") {
  PointFunction f{{0.0, 1.5, 0.25}};
  auto back = function_from_json(function_to_json(f), 3);
  CHECK(back.values == f.values);
  CHECK_THROWS_AS(function_from_json(function_to_json(f), 4), ConfigParse);
  CHECK_THROWS_AS(function_from_json(json{{"values", {-1.0}}}, -1), ConfigParse);
}

TEST_CASE("decomposition round trip") {
  Decomposition dec;
  dec.levels[2] = 0b011;
  dec.levels[0] = 0b100;
  dec.k_max = 3;
  dec.k_min = 0;
  auto back = decomposition_from_json(decomposition_to_json(dec));
  CHECK(back.levels == dec.levels);
  CHECK(back.level_set(2) == 0b011u);
  CHECK(back.F(1) == 0b011u);
  CHECK(back.support() == 0b111u);
}

TEST_CASE("malformed documents are rejected with parse errors") {
  CHECK_THROWS_AS(space_from_json(json::object()), ConfigParse);
  CHECK_THROWS_AS(space_from_json(json{{"points", 2}, {"weights", {1.0, 1.0}}}), ConfigParse);
  CHECK_THROWS_AS(
      space_from_json(json{{"points", 1}, {"weights", {1.0}},
                           {"generators", {{{"set", {5}}, {"sigma", 1.0}}}}}),
      ConfigParse);
  CHECK_THROWS_AS(number_from_json(json("huge")), ConfigParse);
  CHECK(number_from_json(json("inf")) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(number_to_json(std::nan("")), ConfigParse);
}
