#include <random>

#include "doctest.h"
#include "quadlag/exactlinalg.hpp"

using namespace quadlag;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

IntMatrix full_rank_square(std::mt19937& rng, std::size_t n) {
  for (;;) {
    auto m = random_matrix(rng, n, n, -4, 4);
    if (determinant(m) != 0) return m;
  }
}

// Enumerates every v in [-box, box]^cols and keeps those with m v = 0.
std::vector<IntVector> brute_force_kernel(const IntMatrix& m, int box) {
  std::vector<IntVector> out;
  const std::size_t n = m.cols();
  std::vector<int> v(n, -box);
  for (;;) {
    IntVector iv(v.begin(), v.end());
    bool zero = true;
    for (std::size_t r = 0; r < m.rows() && zero; ++r) zero = dot(m.row_span(r), iv) == 0;
    if (zero) out.push_back(iv);
    std::size_t i = 0;
    while (i < n && v[i] == box) v[i++] = -box;
    if (i == n) break;
    ++v[i];
  }
  return out;
}

}  // namespace

TEST_CASE("hnf of a 2x2 example") {
  const auto M = IntMatrix::from_rows({{2, 4}, {1, 1}});
  const auto r = hnf(M);
  CHECK(r.H == IntMatrix::from_rows({{1, 1}, {0, 2}}));
  CHECK(r.U * M == r.H);
  CHECK(abs(determinant(r.U)) == 1);
}

TEST_CASE("hnf fixed points") {
  const auto I = IntMatrix::identity(3);
  const auto r = hnf(I);
  CHECK(r.H == I);
  CHECK(r.U == I);
  const auto Z = IntMatrix::from_rows({{0, 0}});
  CHECK(hnf(Z).H == Z);
}

TEST_CASE("hnf properties on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    const auto M = random_matrix(rng, r, c, -6, 6);
    const auto res = hnf(M);
    CHECK(res.U * M == res.H);
    CHECK(abs(determinant(res.U)) == 1);
    CHECK(is_hnf(res.H));
    // idempotence
    CHECK(hnf(res.H).H == res.H);
  }
}

TEST_CASE("integer kernel examples") {
  CHECK(integer_kernel(IntMatrix::from_rows({{1, -1}})) == IntMatrix::from_rows({{1, 1}}));
  CHECK(integer_kernel(IntMatrix::identity(3)).rows() == 0);

  // normals of the product of a 3-simplex and a 5-simplex in R^8
  IntMatrix A(8, 10);
  for (int i = 0; i < 3; ++i) {
    A(i, i) = 1;
    A(i, 3) = -1;
  }
  for (int i = 0; i < 5; ++i) {
    A(3 + i, 4 + i) = 1;
    A(3 + i, 9) = -1;
  }
  const auto K = integer_kernel(A);
  const auto expected = LatticeBasis::span(
      IntMatrix::from_rows({{1, 1, 1, 1, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1, 1, 1, 1, 1}}));
  CHECK(LatticeBasis::span(K) == expected);
}

TEST_CASE("integer kernel is saturated (brute-force oracle)") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t c = 3 + rng() % 2;
    const std::size_t r = 1 + rng() % (c - 1);
    const auto M = random_matrix(rng, r, c, -3, 3);
    const auto K = integer_kernel(M);
    CHECK(is_hnf(K));
    for (std::size_t i = 0; i < K.rows(); ++i)
      for (std::size_t j = 0; j < M.rows(); ++j) CHECK(dot(M.row_span(j), K.row_span(i)) == 0);
    const auto lattice = LatticeBasis::from_hnf(K);
    for (const auto& v : brute_force_kernel(M, 3)) CHECK(lattice.contains(v));
  }
}

TEST_CASE("snf_index examples") {
  const auto Z2 = LatticeBasis::standard(2);
  CHECK(snf_index(LatticeBasis::span(IntMatrix::from_rows({{2, 0}, {0, 2}})), Z2) == 4);
  CHECK(snf_index(Z2, Z2) == 1);
  CHECK(snf_index(LatticeBasis::span(IntMatrix::from_rows({{1, 0}, {0, 2}})), Z2) == 2);
}

TEST_CASE("snf_index rejects bad input") {
  const auto Z2 = LatticeBasis::standard(2);
  const auto line = LatticeBasis::span(IntMatrix::from_rows({{1, 1}}));
  CHECK_THROWS_AS(snf_index(line, Z2), RankDeficient);
  const auto coarse = LatticeBasis::span(IntMatrix::from_rows({{2, 0}, {0, 2}}));
  CHECK_THROWS_AS(snf_index(Z2, coarse), NotContained);
}

TEST_CASE("snf_index is multiplicative and agrees with determinant ratios") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    const auto C = full_rank_square(rng, n);
    const auto B = full_rank_square(rng, n) * C;
    const auto A = full_rank_square(rng, n) * B;
    const auto LA = LatticeBasis::span(A), LB = LatticeBasis::span(B), LC = LatticeBasis::span(C);
    const auto ac = snf_index(LA, LC);
    CHECK(ac == snf_index(LA, LB) * snf_index(LB, LC));
    CHECK(ac == abs(determinant(A)) / abs(determinant(C)));
  }
}

TEST_CASE("dual lattice examples") {
  CHECK(dual_lattice(LatticeBasis::standard(3)).basis() == to_rational(IntMatrix::identity(3)));
  // lattice spanned by the columns (1,1), (1,0), (0,1)
  const auto lam = LatticeBasis::span(IntMatrix::from_rows({{1, 1}, {1, 0}, {0, 1}}));
  CHECK(lam == LatticeBasis::standard(2));
  CHECK(dual_lattice(lam).basis() == to_rational(IntMatrix::identity(2)));

  const auto D = dual_lattice(LatticeBasis::span(IntMatrix::from_rows({{2, 0}, {0, 1}})));
  RatMatrix expected(2, 2);
  expected(0, 0) = Rational(1, 2);
  expected(1, 1) = 1;
  CHECK(D.basis() == expected);
  CHECK_THROWS_AS(dual_lattice(LatticeBasis::span(IntMatrix::from_rows({{1, 1}}))), RankDeficient);
}

TEST_CASE("dual lattice pairs integrally and is an involution") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const auto L = LatticeBasis::span(full_rank_square(rng, n));
    const auto D = dual_lattice(L);
    const auto Db = D.basis();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Rational p = dot(Db.row_span(i), L.basis().row_span(j));
        CHECK(p.get_den() == 1);
      }
    // covolumes are reciprocal
    Integer dn = 1;
    for (std::size_t i = 0; i < n; ++i) dn *= D.denominator();
    CHECK(abs(determinant(D.scaled().basis())) * abs(determinant(L.basis())) == dn);
    // dual of the dual: scale to integers, dualize, compare
    const auto DD = dual_lattice(D.scaled());
    RatMatrix back = DD.basis();
    for (std::size_t i = 0; i < back.rows(); ++i)
      for (std::size_t j = 0; j < back.cols(); ++j) back(i, j) *= Rational(D.denominator());
    CHECK(RationalLattice::span(back).scaled() == L);
  }
}

TEST_CASE("gcd over basis") {
  CHECK(gcd_over_basis({4, 8}) == 4);
  CHECK(gcd_over_basis({12, 18}) == 6);
  CHECK(gcd_over_basis({}) == 0);
  CHECK(gcd_over_basis({0, 0}) == 0);
  CHECK(gcd_over_basis({-6, 4}) == 2);
}

TEST_CASE("smith diagonal divisibility chain") {
  const auto d = smith_diagonal(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 2);
  CHECK(d[1] == 6);
  CHECK(d[2] == 12);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational(" -4 ") == -4);
  CHECK(to_string(Rational(-3, 2)) == "-3/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}
