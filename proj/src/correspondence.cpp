#include "quadlag/correspondence.hpp"

#include <algorithm>

namespace quadlag {

QuadricSystem QuadricSystem::make(IntMatrix Gamma, RatVector delta) {
  if (Gamma.rows() != delta.size())
    throw DimensionMismatch("quadric system: Gamma has " + std::to_string(Gamma.rows()) +
                            " rows but delta has " + std::to_string(delta.size()) + " entries");
  return QuadricSystem{std::move(Gamma), std::move(delta)};
}

std::vector<std::size_t> QuadricSystem::zero_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < m() && zero; ++i) zero = Gamma(i, j) == 0;
    if (zero) out.push_back(j);
  }
  return out;
}

QuadricSystem QuadricSystem::canonical() const {
  const auto h = hnf(Gamma);
  const RatVector d = multiply(to_rational(h.U), delta);
  // zero rows of H carry the consistency conditions; keep them so that
  // inconsistent systems stay distinguishable
  return QuadricSystem{h.H, d};
}

QuadricSystem polytope_to_quadrics(const HPolytope& p) {
  const auto r = rank(p.A);
  if (r < p.dim())
    throw RankDeficient("normals have rank " + std::to_string(r) + " < " + std::to_string(p.dim()));
  IntMatrix G = integer_kernel(p.A);
  RatVector d(G.rows());
  for (std::size_t i = 0; i < G.rows(); ++i) d[i] = dot(std::span<const Rational>(p.b), G.row_span(i));
  return QuadricSystem{std::move(G), std::move(d)};
}

HPolytope quadrics_to_polytope(const QuadricSystem& q) {
  const auto c = q.canonical();
  const std::size_t r = rank(q.Gamma);
  if (r < q.m()) {
    for (std::size_t i = r; i < q.m(); ++i)
      if (c.delta[i] != 0) throw InconsistentSystem("Gamma u = delta has no solution");
    throw RankDeficient("Gamma has rank " + std::to_string(r) + " < " + std::to_string(q.m()));
  }
  // back substitution on the pivot columns of the HNF
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t j = 0;
    while (c.Gamma(i, j) == 0) ++j;
    pivots.push_back(j);
  }
  RatVector b(q.n());
  for (std::size_t ii = r; ii-- > 0;) {
    Rational acc = c.delta[ii];
    for (std::size_t jj = ii + 1; jj < r; ++jj) acc -= Rational(c.Gamma(ii, pivots[jj])) * b[pivots[jj]];
    b[pivots[ii]] = acc / Rational(c.Gamma(ii, pivots[ii]));
  }
  return HPolytope::make(integer_kernel(q.Gamma), std::move(b));
}

Nondegeneracy nondegeneracy(const QuadricSystem& q, const HPolytope& p, const EnumerationOptions& opts) {
  if (q.n() != p.count())
    throw DimensionMismatch("nondegeneracy: quadric system and polytope disagree on n");
  const auto vs = enumerate_vertices(p, opts);
  Nondegeneracy out;
  out.nonempty = !vs.empty;
  out.generic = out.nonempty && is_generic(p, vs);
  return out;
}

std::vector<RatVector> vertex_slacks(const HPolytope& p, const EnumerationOptions& opts) {
  std::vector<RatVector> out;
  for (const auto& v : enumerate_vertices(p, opts).vertices) out.push_back(p.slacks(v.point));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace quadlag
