#include <catch2/catch_amalgamated.hpp>

#include "fanifold/lattice.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace fanifold;

TEST_CASE("hermite normal form on canonical inputs") {
  Mat id = Mat::identity(2);
  auto r = hermite_normal_form(id);
  CHECK(r.hnf == id);
  CHECK(r.transform == id);
  CHECK(r.rank == 2);

  Mat diag = Mat::from_init({{2, 0}, {0, 2}});
  auto rd = hermite_normal_form(diag);
  CHECK(rd.hnf == diag);
}

TEST_CASE("hermite normal form reduces dependent rows") {
  Mat m = Mat::from_init({{1, 2}, {2, 4}});
  auto r = hermite_normal_form(m);
  CHECK(r.hnf == Mat::from_init({{1, 2}, {0, 0}}));
  CHECK(r.rank == 1);
  CHECK(is_unimodular(r.transform));
  CHECK(r.transform * m == r.hnf);
  CHECK(oracle::is_canonical_hnf(r.hnf));
}

TEST_CASE("hermite normal form properties on random matrices") {
  std::mt19937_64 rng(20230811);
  std::uniform_int_distribution<int> dim(1, 4), entry(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    int rows = dim(rng), cols = dim(rng);
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = entry(rng);
    auto r = hermite_normal_form(m);
    CHECK(is_unimodular(r.transform));
    CHECK(r.transform * m == r.hnf);
    CHECK(oracle::is_canonical_hnf(r.hnf));
  }
}

TEST_CASE("primitive vectors") {
  CHECK(primitive({Int(2), Int(4)}) == Vec{Int(1), Int(2)});
  CHECK(primitive({Int(1), Int(0)}) == Vec{Int(1), Int(0)});
  CHECK(primitive({Int(-3), Int(6), Int(-9)}) == Vec{Int(-1), Int(2), Int(-3)});
  CHECK_THROWS_AS(primitive({Int(0), Int(0)}), std::invalid_argument);
}

TEST_CASE("saturation of sublattices") {
  CHECK(saturate(Mat::from_init({{2, 0}}), 2) == Mat::from_init({{1, 0}}));
  CHECK(saturate(Mat(0, 2), 2).rows() == 0);
  CHECK(saturate(Mat::from_init({{1, 1}, {1, -1}}), 2) == Mat::identity(2));
}

TEST_CASE("quotient presentations match the worked examples") {
  QuotientMap zero = quotient_map(2, Mat(0, 2));
  CHECK(zero.target_rank == 2);
  CHECK(zero.projection == Mat::identity(2));
  CHECK(zero.kernel_basis.rows() == 0);

  QuotientMap axis = quotient_map(2, Mat::from_init({{1, 0}}));
  CHECK(axis.target_rank == 1);
  CHECK(axis.projection == Mat::from_init({{0, 1}}));  // (a,b) -> b

  QuotientMap full = quotient_map(2, Mat::identity(2));
  CHECK(full.target_rank == 0);
  CHECK(full.projection.rows() == 0);
}

TEST_CASE("perpendicular sublattices match the worked examples") {
  CHECK(perp_lattice(2, Mat(0, 2)).basis == Mat::identity(2));
  CHECK(perp_lattice(2, Mat::from_init({{1, 0}})).basis == Mat::from_init({{0, 1}}));
  CHECK(perp_lattice(2, Mat::identity(2)).basis.rows() == 0);
}

TEST_CASE("quotient and perp are canonical under regenerating the sublattice") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-5, 5), dims(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    int n = dims(rng);
    int k = std::uniform_int_distribution<int>(0, n)(rng);
    Mat gens(k, n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) gens.at(i, j) = entry(rng);
    Mat u = oracle::random_unimodular(k, rng);
    Mat regenerated = u * gens;
    CHECK(quotient_map(n, gens) == quotient_map(n, regenerated));
    CHECK(perp_lattice(n, gens) == perp_lattice(n, regenerated));
  }
}

TEST_CASE("projection annihilates the generators and ranks add up") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-5, 5), dims(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    int n = dims(rng);
    int k = std::uniform_int_distribution<int>(0, n + 1)(rng);
    Mat gens(k, n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) gens.at(i, j) = entry(rng);
    QuotientMap q = quotient_map(n, gens);
    for (int i = 0; i < k; ++i) {
      Vec image = q.projection.apply(gens.row(i));
      for (const Int& e : image) CHECK(e == 0);
    }
    CHECK(q.target_rank + q.kernel_basis.rows() == n);
    CHECK(q.target_rank + hermite_normal_form(gens).rank == n);
    // surjectivity with unit pivots
    if (q.target_rank > 0) {
      Mat r = solve_right_inverse(q.projection);
      CHECK(q.projection * r == Mat::identity(q.target_rank));
    }
  }
}

TEST_CASE("perp of perp recovers a saturated sublattice") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      int k = std::uniform_int_distribution<int>(0, n)(rng);
      Mat gens(k, n);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) gens.at(i, j) = entry(rng);
      Mat sat = saturate(gens, n);
      Mat perp = perp_lattice(n, sat).basis;
      Mat perp2 = perp_lattice(n, perp).basis;
      if (sat.rows() == 0) {
        CHECK(perp2.rows() == 0);
      } else {
        CHECK(perp2 == hermite_normal_form(sat).hnf);
      }
    }
  }
}

TEST_CASE("quotients factor along sublattice inclusions") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 80; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    int ka = std::uniform_int_distribution<int>(0, n)(rng);
    int extra = std::uniform_int_distribution<int>(0, n - ka)(rng);
    Mat a(ka, n), more(extra, n);
    for (int i = 0; i < ka; ++i)
      for (int j = 0; j < n; ++j) a.at(i, j) = entry(rng);
    for (int i = 0; i < extra; ++i)
      for (int j = 0; j < n; ++j) more.at(i, j) = entry(rng);
    Mat b = a.stacked(more);  // A ⊆ B by construction
    QuotientMap qa = quotient_map(n, a), qb = quotient_map(n, b);
    auto x = factor_through(qa.projection, qb.projection);
    REQUIRE(x.has_value());
    CHECK(*x * qa.projection == qb.projection);
    // the two-step presentation equals the direct one after canonicalization
    QuotientMap through;
    through.source_rank = qa.target_rank;
    through.projection = *x;
    through.kernel_basis = right_kernel(*x);
    through.target_rank = qb.target_rank;
    QuotientMap composed = compose(through, qa);
    CHECK(composed.kernel_basis == qb.kernel_basis);
    CHECK(canonicalized(composed) == canonicalized(qb));
  }
}

TEST_CASE("composition kernels are saturations of combined kernels") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    int k1 = std::uniform_int_distribution<int>(0, n)(rng);
    Mat g1(k1, n);
    for (int i = 0; i < k1; ++i)
      for (int j = 0; j < n; ++j) g1.at(i, j) = entry(rng);
    QuotientMap q1 = quotient_map(n, g1);
    int k2 = std::uniform_int_distribution<int>(0, q1.target_rank)(rng);
    Mat g2(k2, q1.target_rank);
    for (int i = 0; i < k2; ++i)
      for (int j = 0; j < q1.target_rank; ++j) g2.at(i, j) = entry(rng);
    QuotientMap q2 = quotient_map(q1.target_rank, g2);
    QuotientMap c = compose(q2, q1);
    CHECK(c.projection == q2.projection * q1.projection);
    // combined kernel: kernel of q1 together with integral lifts of q2's kernel
    Mat lifts(q2.kernel_basis.rows(), n);
    if (q2.kernel_basis.rows() > 0) {
      Mat r1 = solve_right_inverse(q1.projection);
      lifts = q2.kernel_basis * r1.transposed();
    }
    Mat combined = q1.kernel_basis.stacked(lifts);
    CHECK(c.kernel_basis == saturate(combined, n));
  }
}

TEST_CASE("complete_to_unimodular extends saturated bases") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    int k = std::uniform_int_distribution<int>(0, n)(rng);
    Mat gens(k, n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) gens.at(i, j) = entry(rng);
    Mat sat = saturate(gens, n);
    Mat full = complete_to_unimodular(sat);
    REQUIRE(full.rows() == n);
    CHECK(is_unimodular(full));
    for (int i = 0; i < sat.rows(); ++i) CHECK(full.row(i) == sat.row(i));
  }
}

TEST_CASE("rank-0 edge cases behave") {
  QuotientMap q = quotient_map(0, Mat(0, 0));
  CHECK(q.source_rank == 0);
  CHECK(q.target_rank == 0);
  CHECK(perp_lattice(0, Mat(0, 0)).basis.rows() == 0);
  auto h = hermite_normal_form(Mat(0, 0));
  CHECK(h.rank == 0);
}
