#pragma once

// Two parametric polytope families, the realization enumerators built on
// their closed-form minimal Maslov numbers, canned homology profiles, and a
// small catalog for recognizing the diffeomorphism type of R.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadlag/correspondence.hpp"
#include "quadlag/obstruction.hpp"
#include "quadlag/polytope.hpp"

namespace quadlag {

struct FamilySpec {
  enum class Kind { ProductSimplices, RedundantSimplex };
  Kind kind = Kind::ProductSimplices;
  int p = 0, n = 0, k = 0;  // p unused for RedundantSimplex

  std::string to_string() const;  // same syntax parse_family_spec accepts
};

// "product-simplices:p=4,n=10,k=2" or "redundant-simplex:n=13,k=8".
FamilySpec parse_family_spec(const std::string& text);

struct Generated {
  HPolytope polytope;
  std::vector<std::string> warnings;  // hypotheses of the realization theorem not met
};

// In R^{n-2}:
//   x_i + 1 >= 0                         i = 1..p-1
//   -x_1 - ... - x_{p-1} + 1 >= 0
//   x_i + 1 >= 0                         i = p..n-2
//   -x_1 - ... - x_k - x_p - ... - x_{n-2} + 1 >= 0
// Requires 0 <= k <= p-2, k even, p >= 2, n-p >= 2. Warns when p, n are odd,
// n-p+k <= p, p <= 2 or n-p <= 2.
Generated gen_product_simplices(int p, int n, int k);

// In R^{n-2}:
//   x_i + 1 >= 0                         i = 1..n-2
//   -x_1 - ... - x_{n-2} + 1 >= 0
//   -x_1 - ... - x_k + k + 2 >= 0
// Requires n odd, n > 3, k even, (n-3)/2 < k <= n-2.
Generated gen_redundant_simplex(int n, int k);

Generated generate(const FamilySpec& spec);

// The quadrics in the basis in which the families are usually written:
//   u_1^2 + ... + u_p^2 = p,  u_1^2 + ... + u_k^2 + u_{p+1}^2 + ... + u_n^2 = n-p+k
//   u_1^2 + ... + u_{n-1}^2 = n-1,  u_1^2 + ... + u_k^2 + u_n^2 = 2k+2
QuadricSystem displayed_quadrics(const FamilySpec& spec);

// gcd(p, n-p+k) or gcd(n-1, 2k+2).
Integer closed_form_minimal_maslov(const FamilySpec& spec);

std::vector<int> even_divisors(int x);

struct RealizationSet1 {
  int p = 0, n = 0;
  std::vector<int> values;                 // {gcd(p, n-p+k) : k even, 0 <= k <= p-2}
  std::map<int, int> witness_k;            // least k per value
  std::map<int, int> constructive_k;       // k = d(ml+1) - (n-p) with p = dl, m minimal
  std::vector<int> expected;               // even divisors of p
  bool equal = false;
};

// Requires p, n even, p >= 2, n >= 2p.
RealizationSet1 realizable_exist1(int p, int n);

struct RealizationSet2 {
  int n = 0;
  std::vector<int> values;                 // {gcd(n-1, 2k+2) : k even, (n-3)/2 < k <= n-2}
  std::map<int, std::vector<int>> ks;      // all k per value
  std::vector<int> predicted;              // mod-4 case analysis
  bool equal = false;
  std::map<int, int> out_of_range;         // even k <= (n-3)/2 -> gcd(n-1, 2k+2), informational
};

// Requires n odd, n > 3.
RealizationSet2 realizable_exist2(int n);

// Universal-cover profiles.
// S^{p-1} x S^{q-1}; dim L defaults to p + q.
HomologyProfile sphere_product_profile(int p, int q, std::optional<int> L_dim = std::nullopt);
// (S^{p-1})^m; dim L defaults to m(p-1) + m.
HomologyProfile sphere_power_profile(int p, int m, std::optional<int> L_dim = std::nullopt);
// #_5 (S^{2p-1} x S^{3p-2}); dim L defaults to 5p.
HomologyProfile connected_sum5_profile(int p, std::optional<int> L_dim = std::nullopt);
// "sphere-product:p=4,q=6", "sphere-power:p=4,m=2", "connected-sum-5:p=4".
HomologyProfile parse_profile_spec(const std::string& text, std::optional<int> L_dim = std::nullopt);

struct TopologyTag {
  std::string description;         // e.g. "S^3 x S^5" or "S^3 x Z_2"
  std::vector<int> sphere_dims;    // of R's core, ascending
  int torus_rank = 0;
  bool orientable = false;         // of L
  Integer component_count;         // of R
  std::optional<std::string> total_space;  // L, when the gluing is recognized as trivial
};

// Catalog: after removing strictly redundant variables, either one quadric
// with coefficients of one sign (a sphere) or two quadrics that a change of
// basis brings to
//   sum_A u^2 + sum_B u^2 = d1,  sum_A u^2 + sum_C u^2 = d2,  d1 != d2,
// which is a product of two spheres. Anything else is unrecognized.
std::optional<TopologyTag> recognize_topology(const QuadricSystem& q,
                                              const std::vector<std::size_t>& strict_redundant);

// The core system: relations among the variables outside `removed`.
QuadricSystem remove_variables(const QuadricSystem& q, const std::vector<std::size_t>& removed);

// Profile of the universal cover of L for a recognized tag (product of the
// sphere factors of R; for a disconnected R the cover of one component).
std::optional<HomologyProfile> cover_profile(const TopologyTag& tag, int L_dim);

}  // namespace quadlag
