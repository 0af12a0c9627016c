#include <doctest.h>

#include <json.hpp>

#include "padicsr/analyzer.hpp"
#include "padicsr/io.hpp"
#include "padicsr/metacyclic.hpp"

using namespace psr;

TEST_CASE("graph JSON round trip is lossless") {
  for (auto [p, n, a, b] : std::vector<std::array<long, 4>>{{5, 3, 1, 5}, {3, 2, 1, 3}, {2, 3, 1, 2}, {7, 2, 2, 3}}) {
    auto g = build_stable_graph(branch_signature(p, n, a, b));
    auto doc = graph_to_json(g);
    auto back = graph_from_json(doc);
    CHECK(graph_to_json(back) == doc);
    CHECK(back.components.size() == g.components.size());
    for (const auto& c : g.components) {
      const auto* d = back.find(c.id);
      REQUIRE(d);
      CHECK(d->inertia == c.inertia);
      CHECK(d->radius_valuation == c.radius_valuation);
      if (c.center_value) CHECK(*d->center_value == *c.center_value);
    }
  }
}

TEST_CASE("tower JSON round trip") {
  auto t = Tower::adjoin(Tower::base(3), "s3", 2, Tower::base(3)->rational(-3));
  t = Tower::adjoin(t, "r", 3, t->rational(Rat(243 * 4)));
  auto doc = tower_to_json(*t);
  auto back = tower_from_json(doc);
  CHECK(back->degree() == 6);
  CHECK(tower_to_json(*back) == doc);
  CHECK(back->generator("r").pow(3) == back->rational(Rat(972)));
}

TEST_CASE("field tower JSON round trip keeps the conductor") {
  for (auto [p, n, a, b] : std::vector<std::array<long, 4>>{{5, 3, 1, 5}, {3, 3, 1, 3}, {2, 3, 1, 2}}) {
    auto t = stab_field_tower(branch_signature(p, n, a, b));
    auto back = field_tower_from_json(field_tower_to_json(t));
    CHECK(field_tower_to_json(back) == field_tower_to_json(t));
    CHECK(conductor_bound(back, n).conductor.value == conductor_bound(t, n).conductor.value);
  }
}

TEST_CASE("numbers are num/den strings") {
  auto rep = analyze(branch_signature(5, 2, 1, 5));
  auto j = nlohmann::json::parse(report_to_json(rep));
  CHECK(j["conductor"]["conductor"]["value"].is_string());
  CHECK(j["conductor"]["conductor"]["value"].get<std::string>().find('/') != std::string::npos);
  CHECK(j["checks"]["vanishing_cycles_residual"] == "0/1");
  auto s = nlohmann::json::parse(signature_to_json({3, 1, 2, {1, 1, 0}}, signature_solver({3, 1, 2, {1, 1, 0}})));
  CHECK(s.dump().find("1/2") != std::string::npos);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(graph_from_json("{"), Error);
  CHECK_THROWS_AS(graph_from_json("{\"prime\": 5}"), Error);
  CHECK_THROWS_AS(tower_from_json("{\"prime\": 4, \"steps\": []}"), Error);
  CHECK_THROWS_AS(field_tower_from_json("[]"), Error);
}
