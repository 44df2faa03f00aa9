#pragma once

// H-representation polyhedra {x in Q^k : <a_i, x> + b_i >= 0, i = 1..n}
// with exact vertex enumeration and the structural predicates used to decide
// whether a presentation yields an embedded, monotone Lagrangian.

#include <cstdint>
#include <optional>
#include <vector>

#include "quadlag/exactlinalg.hpp"

namespace quadlag {

struct HPolytope {
  IntMatrix A;  // k x n, column i is the normal a_i
  RatVector b;  // n offsets

  // Validates shapes and rejects zero normals (when k > 0).
  static HPolytope make(IntMatrix A, RatVector b);

  std::size_t dim() const { return A.rows(); }
  std::size_t count() const { return b.size(); }
  IntVector normal(std::size_t i) const { return A.col(i); }
  // <a_i, x> + b_i
  Rational slack(std::size_t i, std::span<const Rational> x) const;
  RatVector slacks(std::span<const Rational> x) const;

  // Presentation with inequality i removed.
  HPolytope without(std::size_t i) const;
};

struct Vertex {
  RatVector point;
  std::vector<std::size_t> active;  // sorted indices of inequalities tight here

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct VertexSet {
  std::vector<Vertex> vertices;  // sorted lexicographically by point
  std::vector<RatVector> rays;   // extreme rays of the recession cone, primitive, sorted
  bool empty = false;
  bool pointed = true;  // false when the polyhedron contains a line
  bool bounded = true;
  bool full_dimensional = false;
};

struct EnumerationOptions {
  std::uint64_t subset_budget = 2'000'000;
};

// Exhaustive k-subset enumeration with exact rational solves.
VertexSet enumerate_vertices(const HPolytope& p, const EnumerationOptions& opts = {});
VertexSet enumerate_polyhedron(const RatMatrix& A, const RatVector& b,
                               const EnumerationOptions& opts = {});

enum class MinimumKind { Empty, Unbounded, Finite };

struct LinearMinimum {
  MinimumKind kind = MinimumKind::Empty;
  Rational value;
};

// min over the polyhedron of <c, x> + c0.
LinearMinimum minimize(const RatMatrix& A, const RatVector& b, std::span<const Rational> c,
                       const Rational& c0, const EnumerationOptions& opts = {});

bool is_simple(const VertexSet& v, std::size_t k);
bool is_generic(const HPolytope& p, const VertexSet& v);
// Throws RankDeficient when the normals do not span a rank-k lattice.
bool is_delzant(const HPolytope& p, const VertexSet& v);

struct FanoResult {
  bool fano = false;
  bool primitive = false;
  std::optional<Rational> constant;      // C with b - C*1 = A^T y
  std::optional<RatVector> translation;  // y
};

FanoResult is_fano(const HPolytope& p);

struct Redundancy {
  std::vector<std::size_t> redundant;  // all redundant indices
  std::vector<std::size_t> strict;     // never tight on the others' intersection
  bool used_ray_fallback = false;      // some relaxation was unbounded
};

// Requires a bounded, nonempty polyhedron.
Redundancy redundancy(const HPolytope& p, const EnumerationOptions& opts = {});
// Same, reusing a vertex set already computed for p.
Redundancy redundancy(const HPolytope& p, const VertexSet& vs, const EnumerationOptions& opts = {});

struct StructureReport {
  bool bounded = false;
  bool empty = false;
  bool full_dimensional = false;
  bool normal_lattice_full_rank = false;
  bool simple = false;
  bool generic = false;
  bool delzant = false;
  bool fano = false;
  bool monotone_ready = false;  // bounded, Delzant and irredundant
  std::vector<std::size_t> redundant;
  std::vector<std::size_t> strictly_redundant;
  std::optional<Rational> fano_constant;
  std::optional<RatVector> fano_translation;
  std::size_t vertex_count = 0;
};

StructureReport analyze_structure(const HPolytope& p, const EnumerationOptions& opts = {});

}  // namespace quadlag
