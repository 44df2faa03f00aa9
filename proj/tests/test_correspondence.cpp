#include <random>

#include "doctest.h"
#include "quadlag/correspondence.hpp"
#include "quadlag/families.hpp"

using namespace quadlag;

namespace {

RatVector rats(std::initializer_list<long> v) { return RatVector(v.begin(), v.end()); }

HPolytope from_normals(std::initializer_list<std::initializer_list<long>> normals,
                       std::initializer_list<long> b) {
  return HPolytope::make(IntMatrix::from_rows(normals).transpose(), rats(b));
}

FamilySpec product(int p, int n, int k) { return {FamilySpec::Kind::ProductSimplices, p, n, k}; }
FamilySpec redundant(int n, int k) { return {FamilySpec::Kind::RedundantSimplex, 0, n, k}; }

IntMatrix random_unimodular(std::mt19937& rng, std::size_t m) {
  IntMatrix U = IntMatrix::identity(m);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(m) - 1), mult(-2, 2);
  for (int step = 0; step < 6; ++step) {
    const int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const int c = mult(rng);
    for (std::size_t j = 0; j < m; ++j) U(a, j) += c * U(b, j);
  }
  return U;
}

std::vector<HPolytope> catalog() {
  std::vector<HPolytope> out{from_normals({{1}, {-1}}, {1, 1}),
                             from_normals({{1, 0}, {0, 1}, {-1, -1}}, {0, 0, 3})};
  for (auto [p, n, k] : {std::tuple{4, 10, 2}, {4, 10, 0}, {6, 12, 4}, {4, 8, 2}})
    out.push_back(gen_product_simplices(p, n, k).polytope);
  for (auto [n, k] : {std::pair{5, 2}, {7, 4}, {9, 4}}) out.push_back(gen_redundant_simplex(n, k).polytope);
  return out;
}

}  // namespace

TEST_CASE("interval gives the circle") {
  const auto q = polytope_to_quadrics(from_normals({{1}, {-1}}, {1, 1}));
  CHECK(q.Gamma == IntMatrix::from_rows({{1, 1}}));
  CHECK(q.delta == rats({2}));
}

TEST_CASE("family quadrics agree with the displayed ones up to HNF") {
  for (const auto& s : {product(4, 10, 2), product(4, 10, 0), redundant(5, 2), redundant(13, 8)}) {
    const auto q = polytope_to_quadrics(generate(s).polytope);
    CHECK(q.canonical() == displayed_quadrics(s).canonical());
    CHECK(q.Gamma * generate(s).polytope.A.transpose() == IntMatrix(q.m(), generate(s).polytope.dim()));
  }
  // the displayed system for (5, 2)
  const auto d = displayed_quadrics(redundant(5, 2));
  CHECK(d.Gamma == IntMatrix::from_rows({{1, 1, 1, 1, 0}, {1, 1, 0, 0, 1}}));
  CHECK(d.delta == rats({4, 6}));
}

TEST_CASE("quadrics_to_polytope examples") {
  const auto circle = QuadricSystem::make(IntMatrix::from_rows({{1, 1}}), rats({2}));
  const auto P = quadrics_to_polytope(circle);
  CHECK(P.dim() == 1);
  CHECK(vertex_slacks(P) == vertex_slacks(from_normals({{1}, {-1}}, {1, 1})));

  const auto s7 = quadrics_to_polytope(displayed_quadrics(redundant(5, 2)));
  CHECK(s7.dim() == 3);
  CHECK(s7.count() == 5);
  const auto r = redundancy(s7);
  CHECK(r.strict == std::vector<std::size_t>{4});
  CHECK(enumerate_vertices(s7).vertices.size() == 4);

  const auto point = quadrics_to_polytope(QuadricSystem::make(IntMatrix::from_rows({{1}}), rats({1})));
  CHECK(point.dim() == 0);
  CHECK(point.count() == 1);
  CHECK(point.b == rats({1}));
}

TEST_CASE("errors") {
  const auto G = IntMatrix::from_rows({{1, 1}, {2, 2}});
  CHECK_THROWS_AS(quadrics_to_polytope(QuadricSystem::make(G, rats({1, 2}))), RankDeficient);
  CHECK_THROWS_AS(quadrics_to_polytope(QuadricSystem::make(G, rats({1, 3}))), InconsistentSystem);
  CHECK_THROWS_AS(polytope_to_quadrics(from_normals({{1, 1}, {-1, -1}}, {0, 1})), RankDeficient);
  CHECK_THROWS_AS(QuadricSystem::make(G, rats({1})), DimensionMismatch);
}

TEST_CASE("zero columns are flagged") {
  const auto q = QuadricSystem::make(IntMatrix::from_rows({{1, 0, 1}}), rats({1}));
  CHECK(q.zero_columns() == std::vector<std::size_t>{1});
}

TEST_CASE("nondegeneracy") {
  const auto p5 = gen_product_simplices(4, 10, 2).polytope;
  CHECK(nondegeneracy(polytope_to_quadrics(p5), p5).nondegenerate());
  const auto dup = from_normals({{1, 0}, {0, 1}, {-1, -1}, {-1, -1}}, {0, 0, 1, 1});
  const auto nd = nondegeneracy(polytope_to_quadrics(dup), dup);
  CHECK(nd.nonempty);
  CHECK_FALSE(nd.generic);
  const auto empty = from_normals({{1}, {-1}}, {-1, -1});
  const auto ne = nondegeneracy(polytope_to_quadrics(empty), empty);
  CHECK_FALSE(ne.nonempty);
  CHECK_FALSE(ne.nondegenerate());
}

TEST_CASE("round trip polytope -> quadrics -> polytope") {
  for (const auto& P : catalog()) {
    const auto Q = polytope_to_quadrics(P);
    const auto P2 = quadrics_to_polytope(Q);
    CHECK(P2.dim() == P.dim());
    CHECK(vertex_slacks(P2) == vertex_slacks(P));
    // the two normal configurations differ by a unimodular change of coordinates
    CHECK(LatticeBasis::span(P2.A) == LatticeBasis::span(P.A));
  }
}

TEST_CASE("round trip quadrics -> polytope -> quadrics") {
  for (const auto& P : catalog()) {
    const auto Q = polytope_to_quadrics(P);
    const auto Q2 = polytope_to_quadrics(quadrics_to_polytope(Q));
    CHECK(Q2.canonical() == Q.canonical());
    CHECK(Q2 == Q);
  }
}

TEST_CASE("any kernel basis gives the same canonical system") {
  std::mt19937 rng(17);
  for (const auto& P : catalog()) {
    const auto Q = polytope_to_quadrics(P);
    for (int trial = 0; trial < 5; ++trial) {
      const auto U = random_unimodular(rng, Q.m());
      const auto other = QuadricSystem::make(U * Q.Gamma, multiply(to_rational(U), Q.delta));
      CHECK(other.canonical() == Q.canonical());
    }
  }
}

TEST_CASE("translation leaves the quadrics unchanged") {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> d(-3, 3);
  for (const auto& P : catalog()) {
    RatVector y(P.dim());
    for (auto& c : y) c = Rational(d(rng)) / 2;
    RatVector b = P.b;
    const auto shift = multiply(to_rational(P.A.transpose()), y);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += shift[i];
    CHECK(polytope_to_quadrics(HPolytope::make(P.A, b)) == polytope_to_quadrics(P));
  }
}
