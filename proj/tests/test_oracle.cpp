#include <cmath>
#include <random>

#include "doctest.h"
#include "quadlag/oracle.hpp"

using namespace quadlag;

namespace {

constexpr double kPi = 3.14159265358979323846;

RatVector rats(std::initializer_list<long> v) { return RatVector(v.begin(), v.end()); }

FamilySpec product(int p, int n, int k) { return {FamilySpec::Kind::ProductSimplices, p, n, k}; }
FamilySpec redundant(int n, int k) { return {FamilySpec::Kind::RedundantSimplex, 0, n, k}; }

QuadricSystem circle() { return QuadricSystem::make(IntMatrix::from_rows({{1, 1}}), rats({2})); }

TorusLoop loop(std::initializer_list<long> v) { return TorusLoop{IntVector(v.begin(), v.end()), true, 0}; }

double exact_area(const DeckData& deck, const QuadricSystem& q, const IntVector& v) {
  const auto E = deck.LambdaStar.basis();
  Rational s = 0;
  for (std::size_t r = 0; r < E.rows(); ++r)
    for (std::size_t c = 0; c < E.cols(); ++c) s += Rational(v[r]) * E(r, c) * q.delta[c];
  return kPi * s.get_d();
}

long exact_maslov(const DeckData& deck, const QuadricSystem& q, const IntVector& v) {
  const auto E = deck.LambdaStar.basis();
  Rational s = 0;
  for (std::size_t r = 0; r < E.rows(); ++r)
    for (std::size_t c = 0; c < E.cols(); ++c)
      for (std::size_t j = 0; j < q.n(); ++j) s += Rational(v[r]) * E(r, c) * q.Gamma(c, j);
  return 2 * s.get_num().get_si();
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * (1 + std::abs(b)); }

}  // namespace

TEST_CASE("sample points") {
  const auto c = sample_point(circle(), std::nullopt, 0);
  CHECK(c.u(0) == 1.0);
  CHECK(c.u(1) == 1.0);

  const auto s5 = sample_point(displayed_quadrics(product(4, 10, 2)), std::nullopt, 0);
  CHECK(s5.u == Eigen::VectorXd::Ones(10));

  const auto s7 = sample_point(displayed_quadrics(redundant(5, 2)), redundant(5, 2), 0);
  CHECK(s7.u(4) == doctest::Approx(2.0));
  CHECK(s7.residuals.maxCoeff() <= 1e-12);

  // polished points satisfy the residual bound and are reproducible
  const auto q = polytope_to_quadrics(gen_redundant_simplex(9, 4).polytope);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = sample_point(q, std::nullopt, seed);
    const auto b = sample_point(q, std::nullopt, seed);
    CHECK(a.residuals.maxCoeff() <= 1e-10);
    CHECK(a.u == b.u);
  }
}

TEST_CASE("the exact identity sum u_j^2 gamma_j = delta holds at sampled points") {
  for (const auto& q : {displayed_quadrics(product(4, 10, 2)), displayed_quadrics(redundant(13, 8)),
                        polytope_to_quadrics(gen_product_simplices(6, 16, 4).polytope)})
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto pt = sample_point(q, std::nullopt, seed);
      for (std::size_t i = 0; i < q.m(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < q.n(); ++j) s += pt.u(j) * pt.u(j) * q.Gamma(i, j).get_d();
        CHECK(std::abs(s - q.delta[i].get_d()) <= 1e-9);
      }
    }
}

TEST_CASE("loop areas") {
  const auto q7 = displayed_quadrics(redundant(5, 2));
  const auto d7 = deck_data(q7);
  const auto p7 = sample_point(q7, redundant(5, 2), 0);
  CHECK(close(loop_area(q7, d7, loop({0, 1}), p7), 6 * kPi, 1e-8));

  const auto qc = circle();
  const auto dc = deck_data(qc);
  CHECK(close(loop_area(qc, dc, loop({1}), sample_point(qc, std::nullopt, 0)), 2 * kPi, 1e-8));

  const auto q5 = displayed_quadrics(product(4, 10, 2));
  const auto d5 = deck_data(q5);
  CHECK(close(loop_area(q5, d5, loop({1, 0}), sample_point(q5, std::nullopt, 0)), 4 * kPi, 1e-8));
}

TEST_CASE("Maslov windings") {
  const auto q7 = displayed_quadrics(redundant(5, 2));
  const auto d7 = deck_data(q7);
  CHECK(loop_maslov(q7, d7, loop({0, 1}), sample_point(q7, redundant(5, 2), 0)) == 6);

  const auto q5 = displayed_quadrics(product(4, 10, 2));
  const auto d5 = deck_data(q5);
  CHECK(loop_maslov(q5, d5, loop({1, 0}), sample_point(q5, std::nullopt, 0)) == 8);

  const auto qc = circle();
  CHECK(loop_maslov(qc, deck_data(qc), loop({1}), sample_point(qc, std::nullopt, 0)) == 4);
}

TEST_CASE("a loop that does not close is rejected") {
  const auto q7 = displayed_quadrics(redundant(5, 2));
  const auto d7 = deck_data(q7);
  const auto p7 = sample_point(q7, redundant(5, 2), 0);
  // v = (1, 0) undoubled turns u_1..u_4 by half a turn each
  CHECK_THROWS_AS(loop_area(q7, d7, TorusLoop{IntVector{1, 0}, false, 0}, p7), OutOfModel);
  // v = (0, 2) undoubled closes: every coordinate turns by an even number of half-turns
  CHECK(close(loop_area(q7, d7, TorusLoop{IntVector{0, 2}, false, 0}, p7), 6 * kPi, 1e-8));
}

TEST_CASE("doubled-loop area does not depend on the base point") {
  const auto q = polytope_to_quadrics(gen_redundant_simplex(7, 4).polytope);
  const auto d = deck_data(q);
  const auto v = loop({1, -1});
  const double ref = loop_area(q, d, v, sample_point(q, std::nullopt, 1));
  for (std::uint64_t seed = 2; seed <= 5; ++seed)
    CHECK(close(loop_area(q, d, v, sample_point(q, std::nullopt, seed)), ref, 1e-8));
  CHECK(close(ref, exact_area(d, q, v.coords), 1e-8));
}

TEST_CASE("random loop classes agree with the exact formulas") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-3, 3);
  for (const auto& q : {polytope_to_quadrics(gen_product_simplices(4, 10, 2).polytope),
                        displayed_quadrics(redundant(13, 8))}) {
    const auto d = deck_data(q);
    const auto pt = sample_point(q, std::nullopt, 3);
    for (int trial = 0; trial < 8; ++trial) {
      TorusLoop l{IntVector{c(rng), c(rng)}, true, 0};
      CHECK(close(loop_area(q, d, l, pt), exact_area(d, q, l.coords), 1e-8));
      CHECK(loop_maslov(q, d, l, pt) == exact_maslov(d, q, l.coords));
    }
  }
}

TEST_CASE("the zero loop") {
  const auto qc = circle();
  const auto dc = deck_data(qc);
  const auto pt = sample_point(qc, std::nullopt, 0);
  CHECK(loop_area(qc, dc, loop({0}), pt) == doctest::Approx(0.0));
  CHECK(loop_maslov(qc, dc, loop({0}), pt) == 0);
}
