#pragma once

// Polytope presentations <-> systems of real quadrics Gamma * (u_1^2..u_n^2) = delta.

#include <vector>

#include "quadlag/exactlinalg.hpp"
#include "quadlag/polytope.hpp"

namespace quadlag {

struct QuadricSystem {
  IntMatrix Gamma;  // m x n, column j is gamma_j
  RatVector delta;  // m entries

  static QuadricSystem make(IntMatrix Gamma, RatVector delta);

  std::size_t n() const { return Gamma.cols(); }
  std::size_t m() const { return Gamma.rows(); }
  IntVector gamma(std::size_t j) const { return Gamma.col(j); }
  // Variables that appear in no quadric. Allowed, but reported.
  std::vector<std::size_t> zero_columns() const;

  // Row HNF of Gamma with delta carried along by the same unimodular matrix.
  // Two systems describe the same relations iff their canonical forms match.
  QuadricSystem canonical() const;

  friend bool operator==(const QuadricSystem&, const QuadricSystem&) = default;
};

// Gamma = saturated integer kernel of A in HNF, delta = Gamma b.
// Throws RankDeficient when rank A < k.
QuadricSystem polytope_to_quadrics(const HPolytope& p);

// A = saturated integer kernel of Gamma; b is the solution of Gamma b = delta
// supported on the pivot columns of the HNF of Gamma.
HPolytope quadrics_to_polytope(const QuadricSystem& q);

struct Nondegeneracy {
  bool nonempty = false;
  bool generic = false;
  bool nondegenerate() const { return nonempty && generic; }
};

// R is nonempty and nondegenerate iff P is nonempty and its presentation generic.
Nondegeneracy nondegeneracy(const QuadricSystem& q, const HPolytope& p,
                            const EnumerationOptions& opts = {});

// Slack vectors b + A^T x over the vertices, sorted. They depend only on the
// quadric system, so two presentations related by a change of coordinates
// and a translation produce the same list.
std::vector<RatVector> vertex_slacks(const HPolytope& p, const EnumerationOptions& opts = {});

}  // namespace quadlag
