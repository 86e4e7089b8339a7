#include <doctest.h>

#include <random>

#include "linalg.hpp"

using namespace cdg;

namespace {

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, const Field& f) {
  std::uniform_int_distribution<int> v(-3, 3), z(0, 2);
  std::vector<std::vector<Scalar>> m(rows, std::vector<Scalar>(cols));
  for (auto& row : m)
    for (auto& x : row) x = z(rng) ? Scalar(0) : Scalar::from_int(v(rng), f);
  return SparseMatrix::from_dense(m).in(f);
}

}  // namespace

TEST_CASE("scalar arithmetic over Q and F_p") {
  Scalar a = Scalar::rational(3, 4), b = Scalar::rational(-5, 6);
  CHECK((a + b).str() == "-1/12");
  CHECK((a * b).str() == "-5/8");
  CHECK((a / b).str() == "-9/10");
  CHECK(Scalar::parse("6/8", Field::rationals()) == Scalar::rational(3, 4));

  Field f7 = Field::prime(7);
  Scalar three = Scalar::from_int(3, f7);
  CHECK((three * three.inverse()).is_one());
  CHECK(Scalar::from_int(-1, f7).str() == "6");
  CHECK(Scalar::parse("1/2", f7) == Scalar::from_int(4, f7));
}

TEST_CASE("rationals grow past 64 bits without losing exactness") {
  Scalar x = Scalar::rational(1, 3);
  Scalar p = 1;
  for (int i = 0; i < 60; ++i) p *= x;
  for (int i = 0; i < 60; ++i) p = p / x;
  CHECK(p.is_one());
  Scalar big = 1;
  for (int i = 0; i < 50; ++i) big *= Scalar(1000003);
  CHECK(((big + 1) - big).is_one());
}

TEST_CASE("field names parse in every accepted spelling") {
  CHECK(Field::parse("Q").is_rational());
  CHECK(Field::parse("Fp:5").characteristic() == 5);
  CHECK(Field::parse("F_5").characteristic() == 5);
  CHECK(Field::parse("F7").characteristic() == 7);
  CHECK_THROWS_AS(Field::parse("F_6"), FieldError);
  CHECK_THROWS_AS(Field::parse("R"), FieldError);
}

TEST_CASE("kernel, rank and solve agree on random matrices") {
  std::mt19937_64 rng(11);
  for (const Field& f : {Field::rationals(), Field::prime(5)}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      SparseMatrix m = random_matrix(rng, r, c, f);
      auto ker = kernel_basis(m);
      CHECK(ker.size() + rank(m) == c);
      for (const auto& v : ker) CHECK(m.apply(v).empty());
      CHECK(rank(m) == rank(m.transpose()));
      CHECK(independent_columns(m).size() == rank(m));

      // b in the image is always solvable, and the solution is correct
      Vec x0;
      for (Index j = 0; j < c; ++j)
        if (rng() % 2) x0.add_scaled(Vec::unit(j), Scalar::from_int(1 + static_cast<int>(rng() % 3), f));
      Vec b = m.apply(x0), x;
      REQUIRE(solve(m, b, x));
      CHECK(m.apply(x) == b);
    }
  }
}

TEST_CASE("matrix product matches a dense recomputation") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    SparseMatrix a = random_matrix(rng, 4, 5, Field::rationals()), b = random_matrix(rng, 5, 3, Field::rationals());
    SparseMatrix p = a * b;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        Scalar s = 0;
        for (std::size_t k = 0; k < 5; ++k) s += a.at(i, k) * b.at(k, j);
        CHECK(p.at(i, j) == s);
      }
  }
}

TEST_CASE("triplet text round-trips") {
  std::mt19937_64 rng(5);
  SparseMatrix m = random_matrix(rng, 5, 4, Field::rationals()).scaled(Scalar::rational(1, 3));
  CHECK(SparseMatrix::parse_triplets(m.triplets(), 5, 4, Field::rationals()) == m);
  Field f = Field::prime(7);
  SparseMatrix n = random_matrix(rng, 3, 3, f);
  CHECK(SparseMatrix::parse_triplets(n.triplets(), 3, 3, f) == n);
}

TEST_CASE("homology of small finite complexes") {
  // k --1--> k in degrees 0 -> 1 is acyclic
  FiniteComplex c{GradingGroup::integers(), {0, 1}, SparseMatrix::from_dense({{0, 0}, {1, 0}})};
  REQUIRE(c.square_zero());
  auto h = homology_dims(c);
  CHECK(h[0] == 0);
  CHECK(h[1] == 0);

  // over Z/2, a two-periodic complex k <-> k with d = [[0,1],[0,0]] has no homology left
  FiniteComplex z{GradingGroup::mod_two(), {0, 1}, SparseMatrix::from_dense({{0, 1}, {0, 0}})};
  auto hz = homology_dims(z);
  CHECK(hz[0] == 0);
  CHECK(hz[1] == 0);

  // zero differential keeps everything
  FiniteComplex zero{GradingGroup::integers(), {0, 0, 2}, SparseMatrix(3, 3)};
  auto h0 = homology_dims(zero);
  CHECK(h0[0] == 2);
  CHECK(h0[2] == 1);
}

TEST_CASE("echelon tracks combinations") {
  Echelon e(true);
  Vec a = Vec::unit(0) + Vec::unit(1), b = Vec::unit(1) + Vec::unit(2);
  CHECK(e.insert(a, 0));
  CHECK(e.insert(b, 1));
  CHECK_FALSE(e.insert(a - b, 2));
  CHECK(e.dependencies().size() == 1);
  Vec combo;
  Vec rest = e.reduce_full(Vec::unit(0) - Vec::unit(2), &combo);
  CHECK(rest.empty());
}
