#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "quadlag/polytope.hpp"

using namespace quadlag;

namespace {

RatVector rats(std::initializer_list<long> v) { return RatVector(v.begin(), v.end()); }

// A given as a list of normals (one per inequality), which is how polytopes
// are usually written down.
HPolytope from_normals(std::initializer_list<std::initializer_list<long>> normals,
                       std::initializer_list<long> b) {
  return HPolytope::make(IntMatrix::from_rows(normals).transpose(), rats(b));
}

// Product of simplices Delta^{p-1} x Delta^{q-1} with the standard normals,
// scaled by p and q (the monotone sizes) times `size`.
HPolytope simplex_product(std::size_t p, std::size_t q, long size) {
  const std::size_t k = p + q - 2;
  IntMatrix A(k, p + q);
  RatVector b(p + q, Rational(0));
  for (std::size_t i = 0; i + 1 < p; ++i) {
    A(i, i) = 1;
    A(i, p - 1) = -1;
  }
  for (std::size_t i = 0; i + 1 < q; ++i) {
    A(p - 1 + i, p + i) = 1;
    A(p - 1 + i, p + q - 1) = -1;
  }
  b[p - 1] = size * long(p);
  b[p + q - 1] = size * long(q);
  return HPolytope::make(A, b);
}

HPolytope square() { return from_normals({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1}); }

}  // namespace

TEST_CASE("make validates shapes") {
  CHECK_THROWS_AS(HPolytope::make(IntMatrix::from_rows({{1, 0}}), rats({0})), DimensionMismatch);
  CHECK_THROWS_AS(HPolytope::make(IntMatrix::from_rows({{1, 0}}), rats({0, 1})), DimensionMismatch);
  CHECK_NOTHROW(HPolytope::make(IntMatrix::from_rows({{1}, {0}}), rats({0})));
}

TEST_CASE("square") {
  const auto vs = enumerate_vertices(square());
  CHECK(vs.vertices.size() == 4);
  CHECK(vs.bounded);
  CHECK(vs.full_dimensional);
  CHECK(is_simple(vs, 2));
  CHECK(is_delzant(square(), vs));
  CHECK(vs.vertices.front().point == rats({-1, -1}));
}

TEST_CASE("product of a 3-simplex and a 5-simplex has 24 vertices") {
  const auto p = simplex_product(4, 6, 1);
  const auto s = analyze_structure(p);
  CHECK(s.vertex_count == 24);
  CHECK(s.bounded);
  CHECK(s.simple);
  CHECK(s.generic);
  CHECK(s.delzant);
  CHECK(s.fano);
  CHECK(s.redundant.empty());
  CHECK(s.monotone_ready);
  CHECK(*s.fano_constant == 1);
  CHECK(*is_fano(simplex_product(4, 6, 2)).constant == 2);
  CHECK(is_fano(simplex_product(4, 4, 1)).fano);
}

TEST_CASE("half-line: one vertex and unbounded") {
  const auto p = HPolytope::make(IntMatrix::from_rows({{1}}), rats({0}));
  const auto vs = enumerate_vertices(p);
  REQUIRE(vs.vertices.size() == 1);
  CHECK(vs.vertices[0].point == rats({0}));
  CHECK_FALSE(vs.bounded);
  REQUIRE(vs.rays.size() == 1);
  CHECK(vs.rays[0] == rats({1}));
}

TEST_CASE("empty and non-pointed polyhedra") {
  const auto empty = from_normals({{1}, {-1}}, {-1, -1});
  CHECK(enumerate_vertices(empty).empty);
  // a slab in the plane contains lines
  const auto slab = from_normals({{1, 0}, {-1, 0}}, {1, 1});
  const auto vs = enumerate_vertices(slab);
  CHECK_FALSE(vs.pointed);
  CHECK_FALSE(vs.bounded);
  CHECK_FALSE(vs.empty);
  CHECK(vs.full_dimensional);
}

TEST_CASE("lower-dimensional polytope") {
  // x >= 0, -x >= 0, y in [0, 1]
  const auto seg = from_normals({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {0, 0, 0, 1});
  const auto vs = enumerate_vertices(seg);
  CHECK(vs.vertices.size() == 2);
  CHECK_FALSE(vs.full_dimensional);
}

TEST_CASE("square pyramid is not simple") {
  // base [-1,1]^2 at z = 0, apex (0,0,1)
  const auto pyr = from_normals({{0, 0, 1}, {-1, 0, -1}, {1, 0, -1}, {0, -1, -1}, {0, 1, -1}},
                                {0, 1, 1, 1, 1});
  const auto vs = enumerate_vertices(pyr);
  CHECK(vs.vertices.size() == 5);
  CHECK_FALSE(is_simple(vs, 3));
}

TEST_CASE("duplicated facet is not generic") {
  const auto tri = from_normals({{1, 0}, {0, 1}, {-1, -1}, {-1, -1}}, {0, 0, 1, 1});
  const auto vs = enumerate_vertices(tri);
  CHECK(vs.vertices.size() == 3);
  CHECK_FALSE(is_generic(tri, vs));
  const auto clean = from_normals({{1, 0}, {0, 1}, {-1, -1}}, {0, 0, 1});
  CHECK(is_generic(clean, enumerate_vertices(clean)));
}

TEST_CASE("non-unimodular vertex cone is not Delzant") {
  const auto tri = from_normals({{1, 0}, {0, 1}, {-1, -2}}, {0, 0, 2});
  const auto vs = enumerate_vertices(tri);
  CHECK(vs.vertices.size() == 3);
  CHECK(is_simple(vs, 2));
  CHECK_FALSE(is_delzant(tri, vs));
  CHECK_THROWS_AS(is_delzant(from_normals({{1, 1}, {-1, -1}}, {0, 1}), vs), RankDeficient);
}

TEST_CASE("Fano check") {
  const auto interval = from_normals({{1}, {-1}}, {1, 1});
  const auto f = is_fano(interval);
  CHECK(f.fano);
  REQUIRE(f.constant);
  CHECK(*f.constant == 1);

  // shifted interval: b = (0, 2) is still Fano after translation by 1
  const auto shifted = is_fano(from_normals({{1}, {-1}}, {0, 2}));
  CHECK(shifted.fano);
  CHECK(*shifted.constant == 1);
  CHECK(*shifted.translation == rats({-1}));

  // x, y >= 0, x + y <= 3
  CHECK(is_fano(from_normals({{1, 0}, {0, 1}, {-1, -1}}, {0, 0, 3})).fano);
  // [0,1] x [0,2]: would need 2C = 1 and 2C = 2
  const auto rect = from_normals({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {0, 1, 0, 2});
  CHECK_FALSE(is_fano(rect).fano);
  // non-primitive normal
  CHECK_FALSE(is_fano(from_normals({{2}, {-1}}, {1, 1})).fano);
}

TEST_CASE("redundancy") {
  const auto p = from_normals({{1}, {-1}, {1}}, {0, 1, 5});
  const auto r = redundancy(p);
  CHECK(r.redundant == std::vector<std::size_t>{2});
  CHECK(r.strict == std::vector<std::size_t>{2});

  // weakly redundant: x <= 1 written twice
  const auto w = redundancy(from_normals({{1}, {-1}, {-1}}, {0, 1, 1}));
  CHECK(w.redundant == std::vector<std::size_t>{1, 2});
  CHECK(w.strict.empty());

  CHECK_THROWS_AS(redundancy(HPolytope::make(IntMatrix::from_rows({{1}}), rats({0}))), OutOfModel);
}

TEST_CASE("minimize") {
  const RatMatrix A = to_rational(square().A);
  const auto m = minimize(A, square().b, rats({1, 2}), Rational(3));
  CHECK(m.kind == MinimumKind::Finite);
  CHECK(m.value == 0);
  const auto half = to_rational(IntMatrix::from_rows({{1}}));
  CHECK(minimize(half, rats({0}), rats({-1}), 0).kind == MinimumKind::Unbounded);
  CHECK(minimize(half, rats({0}), rats({1}), 0).value == 0);
}

TEST_CASE("budget is enforced") {
  EnumerationOptions tiny;
  tiny.subset_budget = 10;
  CHECK_THROWS_AS(enumerate_vertices(simplex_product(4, 6, 1), tiny), BudgetExceeded);
}

TEST_CASE("vertex set is invariant under permuting inequalities") {
  std::mt19937 rng(1);
  const auto p = simplex_product(3, 4, 2);
  const auto base = enumerate_vertices(p);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> perm(p.count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    RatVector b(p.count());
    for (std::size_t i = 0; i < p.count(); ++i) b[i] = p.b[perm[i]];
    const auto q = HPolytope::make(p.A.select_columns(perm), b);
    const auto vs = enumerate_vertices(q);
    REQUIRE(vs.vertices.size() == base.vertices.size());
    for (std::size_t i = 0; i < vs.vertices.size(); ++i) {
      CHECK(vs.vertices[i].point == base.vertices[i].point);
      std::vector<std::size_t> mapped;
      for (auto a : vs.vertices[i].active) mapped.push_back(perm[a]);
      std::sort(mapped.begin(), mapped.end());
      CHECK(mapped == base.vertices[i].active);
    }
  }
}

TEST_CASE("adding a strictly redundant inequality changes nothing but the redundancy set") {
  const auto p = simplex_product(3, 3, 1);
  const auto base = enumerate_vertices(p);
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    IntVector a(p.dim());
    do {
      for (auto& x : a) x = d(rng);
    } while (std::all_of(a.begin(), a.end(), [](const Integer& x) { return x == 0; }));
    // offset exceeding the max of -<a,v> over the vertices
    Rational worst = 0;
    for (const auto& v : base.vertices)
      worst = std::max(worst, Rational(-dot(std::span<const Rational>(v.point), std::span<const Integer>(a))));
    IntMatrix A(p.dim(), p.count() + 1);
    for (std::size_t r = 0; r < p.dim(); ++r) {
      for (std::size_t c = 0; c < p.count(); ++c) A(r, c) = p.A(r, c);
      A(r, p.count()) = a[r];
    }
    RatVector b = p.b;
    b.push_back(worst + 1);
    const auto q = HPolytope::make(A, b);
    const auto vs = enumerate_vertices(q);
    REQUIRE(vs.vertices.size() == base.vertices.size());
    for (std::size_t i = 0; i < vs.vertices.size(); ++i)
      CHECK(vs.vertices[i].point == base.vertices[i].point);
    const auto r = redundancy(q);
    CHECK(r.strict == std::vector<std::size_t>{p.count()});
  }
}

TEST_CASE("face-based redundancy agrees with the relaxation LP") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> d(-2, 2), off(0, 4);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    // a box plus random cuts, some through vertices and some duplicated
    const std::size_t k = 2 + trial % 2;
    std::vector<IntVector> normals;
    RatVector b;
    for (std::size_t c = 0; c < k; ++c) {
      IntVector e(k, Integer(0));
      e[c] = 1;
      normals.push_back(e);
      b.push_back(2);
      e[c] = -1;
      normals.push_back(e);
      b.push_back(2);
    }
    for (int extra = 0; extra < 4; ++extra) {
      IntVector a(k);
      do {
        for (auto& x : a) x = d(rng);
      } while (std::all_of(a.begin(), a.end(), [](const Integer& x) { return x == 0; }));
      normals.push_back(a);
      b.push_back(off(rng));
      if (extra == 3 && trial % 3 == 0) {
        normals.push_back(normals.back());
        b.push_back(b.back());
      }
    }
    IntMatrix A(k, normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i)
      for (std::size_t r = 0; r < k; ++r) A(r, i) = normals[i][r];
    const auto P = HPolytope::make(A, b);
    const auto vs = enumerate_vertices(P);
    if (vs.empty || !vs.full_dimensional) continue;
    std::vector<std::size_t> red, strict;
    for (std::size_t i = 0; i < P.count(); ++i) {
      const auto R = P.without(i);
      const auto m = minimize(to_rational(R.A), R.b, to_rational(P.normal(i)), P.b[i]);
      // an unbounded relaxation means inequality i is needed
      REQUIRE(m.kind != MinimumKind::Empty);
      if (m.kind == MinimumKind::Unbounded) continue;
      if (m.value >= 0) red.push_back(i);
      if (m.value > 0) strict.push_back(i);
    }
    const auto r = redundancy(P);
    CHECK(r.redundant == red);
    CHECK(r.strict == strict);
    ++checked;
  }
  CHECK(checked > 30);
}
