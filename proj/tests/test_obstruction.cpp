#include <random>
#include <set>

#include "doctest.h"
#include "quadlag/families.hpp"
#include "quadlag/obstruction.hpp"
#include "quadlag/brute_force.hpp"

using namespace quadlag;

namespace {

std::vector<int> ints(std::initializer_list<int> v) { return v; }

HomologyProfile s3s5() { return HomologyProfile::make({{0, 1}, {3, 1}, {5, 1}, {8, 1}}, 10, true); }

std::vector<int> evens(const std::vector<int>& v) {
  std::vector<int> out;
  for (int x : v)
    if (x % 2 == 0) out.push_back(x);
  return out;
}

std::set<int> divisors(int x) {
  std::set<int> out;
  for (int d = 1; d <= x; ++d)
    if (x % d == 0) out.insert(d);
  return out;
}

}  // namespace

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(HomologyProfile::make({{3, 1}}, 5, true), InvalidParameter);
  CHECK_THROWS_AS(HomologyProfile::make({{0, 1}, {9, 1}}, 5, true), InvalidParameter);
  CHECK_THROWS_AS(HomologyProfile::make({{0, -1}}, 5, true), InvalidParameter);
  const auto p = HomologyProfile::make({{0, 1}, {2, 0}, {4, 3}}, 6, false);
  CHECK(p.cover_dim == 4);
  CHECK(p.dims.size() == 2);
  CHECK(p.total() == 4);
}

TEST_CASE("S^3 x S^5") {
  CHECK(admissible_maslov(s3s5(), 10).admissible == ints({2, 4, 6}));
  const auto r8 = run_engine(s3s5(), 8);
  CHECK(r8.excluded);
  CHECK(*r8.witness_degree == 0);
  CHECK_FALSE(run_engine(s3s5(), 4).excluded);
  CHECK(admissible_maslov(s3s5(), 10).excluded.at(3).reason == "parity");
}

TEST_CASE("(S^3)^2") {
  const auto p = HomologyProfile::make({{0, 1}, {3, 2}, {6, 1}}, 8, true);
  CHECK(evens(admissible_maslov(p, 8).admissible) == ints({2, 4}));
}

TEST_CASE("cover with homology in degree 0 only is out of model") {
  CHECK_THROWS_AS(run_engine(HomologyProfile::make({{0, 1}}, 2, true), 2), OutOfModel);
  CHECK_THROWS_AS(admissible_maslov(s3s5(), 1), InvalidParameter);
}

TEST_CASE("connected sum profile at p = 4") {
  const auto p = connected_sum5_profile(4);
  CHECK(p.dims == std::map<int, long>{{0, 1}, {7, 5}, {10, 5}, {17, 1}});
  CHECK(p.L_dim == 20);
  const auto r = run_engine(p, 8);
  CHECK(r.excluded);
  // least surviving degree is 7 (5 - 1 classes left); degree 10 survives too
  CHECK(*r.witness_degree == 7);
  CHECK(r.surviving == ints({7, 10}));
  for (int N : admissible_maslov(p, 20).admissible) CHECK(4 % N == 0);
}

TEST_CASE("page tables") {
  const auto r = run_engine(s3s5(), 4);
  CHECK(r.collapse_page == 3);
  REQUIRE(r.pages.size() == 3);
  for (const auto& pg : r.pages)
    for (std::size_t d = 0; d < pg.lower.size(); ++d) CHECK(pg.lower[d] <= pg.upper[d]);
}

TEST_CASE("binomial lemma") {
  const auto b4 = binomial_lemma(4);
  CHECK(b4.central == 6);
  CHECK(b4.tail_sum == 0);
  CHECK(b4.holds);
  CHECK(*b4.stronger_holds);

  const auto b10 = binomial_lemma(10);
  CHECK(b10.central == 252);
  CHECK(b10.tail_sum == 112);
  CHECK(b10.holds);
  CHECK_FALSE(*b10.stronger_holds);  // 512 vs 462

  const auto b14 = binomial_lemma(14);
  CHECK(b14.central == 3432);
  CHECK(b14.tail_sum == 2942);
  CHECK(b14.holds);

  const auto b15 = binomial_lemma(15);
  CHECK(b15.central == 6435);
  CHECK(b15.tail_sum == 6885);
  CHECK_FALSE(b15.holds);

  const auto b60 = binomial_lemma(60);
  CHECK(b60.central == Integer("118264581564861424"));
  CHECK(b60.tail_sum == Integer("598317841865178282"));
  CHECK_FALSE(b60.holds);

  CHECK_FALSE(binomial_lemma(5).stronger_holds.has_value());
  CHECK_THROWS_AS(binomial_lemma(3), InvalidParameter);
}

TEST_CASE("orientable profiles never admit odd N") {
  for (int p = 2; p <= 8; ++p)
    for (int q = 2; q <= 8; ++q)
      for (int N : admissible_maslov(sphere_product_profile(p, q), 20).admissible) CHECK(N % 2 == 0);
}

TEST_CASE("sphere products: admissible evens divide p or n-p") {
  for (int p = 4; p <= 16; p += 2)
    for (int n = p + 4; n <= 20; n += 2) {
      const auto allowed_p = divisors(p), allowed_q = divisors(n - p);
      for (int N : admissible_maslov(sphere_product_profile(p, n - p), n).admissible)
        CHECK((allowed_p.count(N) || allowed_q.count(N)));
    }
}

TEST_CASE("sphere powers: admissible evens divide p") {
  for (int p : {2, 4, 6, 8, 10, 12})
    for (int m = 1; m <= 6; ++m)
      for (int N : admissible_maslov(sphere_power_profile(p, m), m * p).admissible) CHECK(p % N == 0);
}

TEST_CASE("engine is sound against the brute-force search") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> Ld(2, 12);
    const int L = Ld(rng);
    std::uniform_int_distribution<int> degd(1, L), dimd(1, 3);
    std::map<int, long> dims{{0, 1}};
    long total = 1;
    const int parts = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < parts && total < 10; ++i) {
      const long v = std::min<long>(dimd(rng), 10 - total);
      dims[degd(rng)] += v;
      total += v;
    }
    const auto prof = HomologyProfile::make(dims, L, false);
    for (int N = 2; N <= L + 2; ++N) {
      const auto r = run_engine(prof, N);
      if (oracles::can_vanish(prof.table(), L, N)) CHECK_FALSE(r.excluded);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("enlarging upper bounds only can shrink the excluded set") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int L = 4 + static_cast<int>(rng() % 12);
    std::vector<long> t(L + 1, 0);
    t[0] = 1;
    for (int i = 0; i < 3; ++i) t[rng() % (L + 1)] += rng() % 3;
    auto bigger = t;
    bigger[rng() % (L + 1)] += 1 + rng() % 2;
    for (int N = 2; N <= L + 1; ++N) {
      const bool before = run_engine_bounds(t, t, L, N).excluded;
      const bool after = run_engine_bounds(t, bigger, L, N).excluded;
      if (!before) CHECK_FALSE(after);
    }
  }
}

TEST_CASE("raising a lower bound can create an exclusion") {
  // S^3 x S^5 at N = 4 is admissible; a second class in degree 0 breaks it
  const auto base = s3s5().table();
  auto raised = base;
  raised[0] = 2;
  CHECK_FALSE(run_engine_bounds(base, base, 10, 4).excluded);
  CHECK(run_engine_bounds(raised, raised, 10, 4).excluded);
}
