#include <catch2/catch_amalgamated.hpp>

#include "fanifold/io.hpp"
#include "support/oracles.hpp"

using namespace fanifold;

static const char* kP2Doc =
    "# a comment\n"
    "name: p2\n"
    "rank: 2\n"
    "ray 0: 1 0\n"
    "ray 1: 0 1\n"
    "ray 2: -1 -1\n"
    "cone: 0 1\n"
    "cone: 1 2\n"
    "cone: 0 2\n";

TEST_CASE("fan documents parse with face closure") {
  FanDocument doc = parse_fan(kP2Doc);
  CHECK(doc.name == "p2");
  CHECK(doc.fan.cones.size() == 7);  // zero + 3 rays + 3 top cones
  CHECK(doc.fan == oracle::p2_fan());
  CHECK(validate_fan(doc.fan).pass());
}

TEST_CASE("trivial documents") {
  FanDocument doc = parse_fan("rank: 0\ncone:\n");
  CHECK(doc.fan.rank == 0);
  CHECK(doc.fan.cones == std::set<Cone>{{}});
  CHECK(validate_fan(doc.fan).pass());
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_fan("rank: 2\nray 0: 1 0\nray 1: 0 nope\n");
    FAIL("expected parse_failure");
  } catch (const parse_failure& e) {
    CHECK(e.error.line == 3);
  }
  CHECK_THROWS_AS(parse_fan("ray 0: 1 0\n"), parse_failure);          // ray before rank
  CHECK_THROWS_AS(parse_fan("rank: 2\nray 1: 1 0\n"), parse_failure); // wrong ray index
  CHECK_THROWS_AS(parse_fan("rank: 2\ncone: 0\n"), parse_failure);    // undefined ray
  CHECK_THROWS_AS(parse_fan("rank: 2\nwhatever\n"), parse_failure);
}

TEST_CASE("duplicate rays are a validation error, not a parse error") {
  FanDocument doc = parse_fan("rank: 2\nray 0: 1 0\nray 1: 1 0\ncone: 0\ncone: 1\n");
  Report rep = validate_fan(doc.fan);
  CHECK_FALSE(rep.pass());
  REQUIRE_FALSE(rep.find("rays")->witnesses.empty());
  CHECK(rep.find("rays")->witnesses[0].find("0,1") != std::string::npos);
}

TEST_CASE("fan emission round-trips") {
  for (const char* text : {kP2Doc, "rank: 0\ncone:\n", "rank: 1\nray 0: 1\nray 1: -1\ncone: 0\ncone: 1\n"}) {
    FanDocument doc = parse_fan(text);
    std::string out = emit_fan(doc);
    FanDocument again = parse_fan(out);
    CHECK(again == doc);
    CHECK(emit_fan(again) == out);  // canonical form is a fixed point
  }
}

TEST_CASE("fanifold documents round-trip through emission") {
  Fanifold ff = sphere_fanifold(oracle::p2_fan());
  std::string text = emit_fanifold(ff);
  FanifoldDocument doc = parse_fanifold(text);
  CHECK(doc.fanifold.dim == ff.dim);
  CHECK(doc.fanifold.closed == ff.closed);
  REQUIRE(doc.fanifold.strata.size() == ff.strata.size());
  for (std::size_t i = 0; i < ff.strata.size(); ++i) {
    CHECK(doc.fanifold.strata[i].id == ff.strata[i].id);
    CHECK(doc.fanifold.strata[i].normal_fan == ff.strata[i].normal_fan);
  }
  REQUIRE(doc.fanifold.arrows.size() == ff.arrows.size());
  for (std::size_t i = 0; i < ff.arrows.size(); ++i) {
    CHECK(doc.fanifold.arrows[i].cone == ff.arrows[i].cone);
    CHECK(doc.fanifold.arrows[i].lattice_map.projection == ff.arrows[i].lattice_map.projection);
  }
  CHECK(validate_fanifold(doc.fanifold).pass());
  CHECK(emit_fanifold(doc.fanifold) == text);
}

TEST_CASE("omitted projections are computed canonically") {
  const char* text =
      "dim: 0\n"
      "closed: true\n"
      "fan f:\n"
      "rank: 0\n"
      "cone:\n"
      "endfan\n"
      "fan g:\n"
      "rank: 1\n"
      "ray 0: 1\n"
      "ray 1: -1\n"
      "cone: 0\n"
      "cone: 1\n"
      "endfan\n"
      "stratum p: dim 0 fan f\n";
  FanifoldDocument doc = parse_fanifold(text);
  CHECK(doc.fanifold.strata.size() == 1);
  CHECK(doc.fan_blocks.size() == 2);

  // an arrow without an explicit projection gets the canonical quotient
  const char* with_arrow =
      "dim: 1\n"
      "closed: false\n"
      "fan fv:\nrank: 1\nray 0: 1\nray 1: -1\ncone: 0\ncone: 1\nendfan\n"
      "fan fe:\nrank: 0\ncone:\nendfan\n"
      "stratum v: dim 0 fan fv\n"
      "stratum e: dim 1 fan fe\n"
      "arrow v -> e: cone 0\n";
  FanifoldDocument d2 = parse_fanifold(with_arrow);
  REQUIRE(d2.fanifold.arrows.size() == 1);
  const QuotientMap& q = d2.fanifold.arrows[0].lattice_map;
  CHECK(q.source_rank == 1);
  CHECK(q.target_rank == 0);
  CHECK(q.kernel_basis == Mat::identity(1));
}

TEST_CASE("fanifold parse errors") {
  CHECK_THROWS_AS(parse_fanifold("closed: true\n"), parse_failure);  // missing dim
  CHECK_THROWS_AS(parse_fanifold("dim: 1\nstratum s: dim 0 fan nope\n"), parse_failure);
  CHECK_THROWS_AS(parse_fanifold("dim: 1\narrow a -> b: cone 0\n"), parse_failure);
  CHECK_THROWS_AS(parse_fanifold("dim: 1\nfan f:\nrank: 1\nray 0: 1\ncone: 0\n"),
                  parse_failure);  // missing endfan
}

TEST_CASE("dot export shapes") {
  auto [poset, cones] = face_poset(oracle::p2_fan());
  std::string dot = emit_dot(poset, "face_poset");
  CHECK(std::count(dot.begin(), dot.end(), ';') == 7 + 9);
  CHECK(dot == emit_dot(poset, "face_poset"));  // deterministic

  Poset single{{"only"}, {{true}}};
  std::string one = emit_dot(single, "p");
  CHECK(std::count(one.begin(), one.end(), ';') == 1);

  Fanifold ff = sphere_fanifold(oracle::p2_fan());
  Nerve nv = nerve(barycentric_cover(ff), ff);
  std::string ndot = emit_dot(nv);
  CHECK(std::count(ndot.begin(), ndot.end(), ';') == 3 + 3);

  std::string ddot = emit_dot(boundary_diagram(oracle::p2_fan()));
  CHECK(std::count(ddot.begin(), ddot.end(), ';') == 6 + 6);
}

TEST_CASE("json reports carry clause structure") {
  Report rep = validate_fan(oracle::p2_fan());
  json j = json_of(rep);
  CHECK(j["verdict"] == "pass");
  CHECK(j["clauses"].is_array());
  CHECK(j["clauses"].size() == rep.clauses.size());
}
