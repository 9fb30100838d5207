#include <catch2/catch_amalgamated.hpp>

#include "banach/rng.hpp"
#include "banach/validate.hpp"
#include "oracles.hpp"

using namespace banach;
using Catch::Matchers::WithinAbs;

namespace {

const std::vector<std::string> kCatalog = {"euclid:2", "lp:1:2",   "lp:2:2",
                                           "lp:4:2",   "lp:inf:2", "dayjames"};

NormedSpace cross_polytope_2d() {
  return NormedSpace::polyhedral("poly:cross", {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

NormedSpace hexagon() {
  // the unit ball of the mixed sup/taxicab norm
  return NormedSpace::polyhedral("poly:hex",
                                 {{0, 1}, {1, 0}, {0, -1}, {-1, 0}, {1, 1}, {-1, -1}});
}

}  // namespace

TEST_CASE("lp norms on simple vectors") {
  auto l1 = NormedSpace::lp(1, 2);
  CHECK(l1.norm(VecN{2, 3}) == 5.0);
  auto l4 = NormedSpace::lp(4, 2);
  CHECK_THAT(l4.norm(VecN{1, 1}), WithinAbs(std::pow(2.0, 0.25), 1e-15));
  auto linf = NormedSpace::lp(NormedSpace::inf, 2);
  CHECK(linf.norm(VecN{2, -1}) == 2.0);
  auto l25 = NormedSpace::lp(2.5, 3);
  CHECK_THAT(l25.norm(VecN{1, 1, 1}), WithinAbs(std::pow(3.0, 1 / 2.5), 1e-14));
}

TEST_CASE("day-james norm branches") {
  auto dj = NormedSpace::day_james();
  CHECK(dj.norm(VecN{1, 1}) == 1.0);
  CHECK(dj.norm(VecN{1, -1}) == 2.0);
  // branch rules match the pure norms on open quadrants
  auto l1 = NormedSpace::lp(1, 2);
  auto linf = NormedSpace::lp(NormedSpace::inf, 2);
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    double a = rng.uniform(0.01, 3.0), b = rng.uniform(0.01, 3.0);
    CHECK(dj.norm(VecN{a, -b}) == l1.norm(VecN{a, -b}));
    CHECK(dj.norm(VecN{-a, -b}) == linf.norm(VecN{-a, -b}));
  }
  // the two branch formulas agree on the axes
  for (double a : {0.5, 1.0, 2.5}) {
    CHECK(dj.norm(VecN{a, 0}) == a);
    CHECK(dj.norm(VecN{0, -a}) == a);
  }
}

TEST_CASE("polyhedral gauge equals known norms") {
  auto cross = cross_polytope_2d();
  CHECK_THAT(cross.norm(VecN{1, 1}), WithinAbs(2.0, 1e-12));

  auto l1 = NormedSpace::lp(1, 2);
  auto linf = NormedSpace::lp(NormedSpace::inf, 2);
  auto square = NormedSpace::polyhedral("poly:square", {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}});
  auto dj = NormedSpace::day_james();
  auto hex = hexagon();

  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    VecN v = rng.uniform_vec(2, -2.0, 2.0);
    CHECK_THAT(cross.norm(v), WithinAbs(l1.norm(v), 1e-12));
    CHECK_THAT(square.norm(v), WithinAbs(linf.norm(v), 1e-12));
    CHECK_THAT(hex.norm(v), WithinAbs(dj.norm(v), 1e-12));
  }
}

TEST_CASE("polyhedral gauge matches the bisection oracle") {
  std::vector<VecN> pts = {{1.2, 0.1}, {-1.2, -0.1}, {0.3, 0.9}, {-0.3, -0.9},
                           {-0.8, 0.7}, {0.8, -0.7}};
  auto space = NormedSpace::polyhedral("poly:irregular", pts);
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    VecN v = rng.uniform_vec(2, -3.0, 3.0);
    CHECK_THAT(space.norm(v), WithinAbs(oracles::gauge_bisection(pts, v), 1e-9));
  }
}

TEST_CASE("polyhedral gauge in dim 3 goes through the LP") {
  auto oct = NormedSpace::polyhedral(
      "poly:oct", {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  auto l1 = NormedSpace::lp(1, 3);
  auto cube = NormedSpace::polyhedral("poly:cube", {{1, 1, 1},
                                                    {1, 1, -1},
                                                    {1, -1, 1},
                                                    {1, -1, -1},
                                                    {-1, 1, 1},
                                                    {-1, 1, -1},
                                                    {-1, -1, 1},
                                                    {-1, -1, -1}});
  auto linf = NormedSpace::lp(NormedSpace::inf, 3);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    VecN v = rng.uniform_vec(3, -2.0, 2.0);
    CHECK_THAT(oct.norm(v), WithinAbs(l1.norm(v), 1e-9));
    CHECK_THAT(cube.norm(v), WithinAbs(linf.norm(v), 1e-9));
  }
}

TEST_CASE("polyhedral construction rejects bad extreme-point sets") {
  CHECK_THROWS_AS(NormedSpace::polyhedral("bad", {{1, 0}, {0, 1}, {0, -1}}), ParseError);
  CHECK_THROWS_AS(NormedSpace::polyhedral("bad", {{1, 0}, {-1, 0}}), ParseError);  // no span
  // (0.5, 0) is inside the hull of the others
  CHECK_THROWS_AS(
      NormedSpace::polyhedral("bad", {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0.5, 0}, {-0.5, 0}}),
      ParseError);
}

TEST_CASE("sphere_point_2d on the catalog") {
  auto euclid = NormedSpace::euclidean(2);
  auto p = euclid.sphere_point_2d(0.0);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);

  auto l1 = NormedSpace::lp(1, 2);
  auto q = l1.sphere_point_2d(std::numbers::pi / 4);
  CHECK_THAT(q[0], WithinAbs(0.5, 1e-15));
  CHECK_THAT(q[1], WithinAbs(0.5, 1e-15));

  auto dj = NormedSpace::day_james();
  auto r = dj.sphere_point_2d(3 * std::numbers::pi / 4);
  CHECK_THAT(r[0], WithinAbs(-0.5, 1e-15));
  CHECK_THAT(r[1], WithinAbs(0.5, 1e-15));

  for (const auto& id : kCatalog) {
    auto space = NormedSpace::from_id(id);
    for (int k = 0; k < 500; ++k) {
      auto v = space.sphere_point_2d(2.0 * std::numbers::pi * k / 500 + 0.0123);
      REQUIRE_THAT(space.norm(v), WithinAbs(1.0, 1e-12));
    }
  }

  CHECK_THROWS_AS(NormedSpace::euclidean(3).sphere_point_2d(0.1), UnsupportedSpaceError);
}

TEST_CASE("normalize") {
  auto euclid = NormedSpace::euclidean(2);
  auto v = euclid.normalize({3, 4});
  CHECK_THAT(v[0], WithinAbs(0.6, 1e-15));
  CHECK_THAT(v[1], WithinAbs(0.8, 1e-15));

  auto linf = NormedSpace::lp(NormedSpace::inf, 2);
  auto w = linf.normalize({2, -1});
  CHECK(w[0] == 1.0);
  CHECK(w[1] == -0.5);

  auto l4 = NormedSpace::lp(4, 2);
  auto u = l4.normalize({1, 1});
  CHECK_THAT(u[0], WithinAbs(std::pow(2.0, -0.25), 1e-15));

  CHECK_THROWS_AS(euclid.normalize({0, 0}), DegenerateInputError);
  CHECK_THROWS_AS(euclid.norm(VecN{1, 2, 3}), DimensionError);
}

TEST_CASE("norm axioms hold on the catalog (homogeneity, triangle, symmetry)") {
  Rng rng(99);
  for (const auto& id : kCatalog) {
    auto space = NormedSpace::from_id(id);
    for (int i = 0; i < 400; ++i) {
      VecN u = rng.uniform_vec(2, -1.0, 1.0), v = rng.uniform_vec(2, -1.0, 1.0);
      double alpha = rng.uniform(-10.0, 10.0);
      double nv = space.norm(v);
      CHECK(std::fabs(space.norm(scaled(v, alpha)) - std::fabs(alpha) * nv) <= 1e-9 * (1 + nv));
      VecN uv{u[0] + v[0], u[1] + v[1]};
      CHECK(space.norm(uv) <= space.norm(u) + nv + 1e-9);
      CHECK(space.norm(scaled(v, -1.0)) == nv);  // exact as computed
    }
  }
}

TEST_CASE("validate_norm_axioms") {
  auto rep = validate_norm_axioms(NormedSpace::lp(2, 2), 1000, 42);
  CHECK(rep.passed);
  CHECK(rep.worst_homogeneity <= 1e-12);

  auto square = NormedSpace::polyhedral("poly:square", {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}});
  CHECK(validate_norm_axioms(square, 1000, 42).passed);

  // a seminorm is caught by the basis probes
  auto broken = validate_norm_axioms([](const VecN& v) { return std::fabs(v[0]); }, 2, 1000, 42);
  CHECK_FALSE(broken.passed);
  CHECK(broken.note.find("positivity") != std::string::npos);
  CHECK(broken.note.find("0.000000,1.000000") != std::string::npos);

  CHECK_THROWS_AS(validate_norm_axioms(square, 0, 1), DomainError);
}

TEST_CASE("space ids parse and reject") {
  CHECK(NormedSpace::from_id("lp:1:2").p() == 1.0);
  CHECK(NormedSpace::from_id("lp:2.5:2").p() == 2.5);
  CHECK(NormedSpace::from_id("lp:inf:2").p() == NormedSpace::inf);
  CHECK(NormedSpace::from_id("euclid:4").dim() == 4);
  CHECK(NormedSpace::from_id("dayjames").family() == Family::day_james);

  auto path = oracles::write_temp_file("cross.txt", "1 0\n-1 0\n0 1\n0 -1\n");
  auto poly = NormedSpace::from_id("poly:" + path.string());
  CHECK(poly.dim() == 2);
  CHECK_THAT(poly.norm(VecN{1, 1}), WithinAbs(2.0, 1e-12));

  CHECK_THROWS_AS(NormedSpace::from_id("lp:0.5:2"), ParseError);
  CHECK_THROWS_AS(NormedSpace::from_id("lp:2"), ParseError);
  CHECK_THROWS_AS(NormedSpace::from_id("euclid:1"), ParseError);
  CHECK_THROWS_AS(NormedSpace::from_id("banana"), ParseError);
  CHECK_THROWS_AS(NormedSpace::from_id("poly:/nonexistent/file.txt"), ParseError);

  auto bad = oracles::write_temp_file("bad.txt", "1 0\n0 1\n");  // not symmetric
  CHECK_THROWS_AS(NormedSpace::from_id("poly:" + bad.string()), ParseError);
}
