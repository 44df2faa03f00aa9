#include "quadlag/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

namespace quadlag {

HPolytope HPolytope::make(IntMatrix A, RatVector b) {
  if (A.cols() != b.size() && !(A.rows() == 0 && A.cols() == 0))
    throw DimensionMismatch("normal matrix has " + std::to_string(A.cols()) + " columns but " +
                            std::to_string(b.size()) + " offsets were given");
  if (A.rows() == 0) A = IntMatrix(0, b.size());
  for (std::size_t i = 0; i < A.cols() && A.rows() > 0; ++i) {
    bool zero = true;
    for (std::size_t r = 0; r < A.rows(); ++r) zero = zero && A(r, i) == 0;
    if (zero) throw DimensionMismatch("inequality " + std::to_string(i + 1) + " has a zero normal");
  }
  return HPolytope{std::move(A), std::move(b)};
}

Rational HPolytope::slack(std::size_t i, std::span<const Rational> x) const {
  Rational s = b[i];
  for (std::size_t r = 0; r < dim(); ++r)
    if (A(r, i) != 0) s += x[r] * A(r, i);
  return s;
}

RatVector HPolytope::slacks(std::span<const Rational> x) const {
  RatVector out(count());
  for (std::size_t i = 0; i < count(); ++i) out[i] = slack(i, x);
  return out;
}

HPolytope HPolytope::without(std::size_t i) const {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < count(); ++j)
    if (j != i) keep.push_back(j);
  RatVector nb;
  for (auto j : keep) nb.push_back(b[j]);
  return HPolytope{A.select_columns(keep), nb};
}

// ---------------------------------------------------------------------------

namespace {

// Advance a sorted k-combination of {0..n-1}; false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

RatVector primitive_direction(RatVector d) {
  Integer den = 1;
  for (const auto& x : d) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntVector ints;
  for (const auto& x : d) ints.push_back(Rational(x * den).get_num());
  Integer g = gcd_over_basis(std::span<const Integer>(ints));
  if (g == 0) return d;
  RatVector out;
  for (const auto& v : ints) out.emplace_back(v / g);
  return out;
}

// Normals as rows, for cache-friendly slack evaluation.
struct Normals {
  RatMatrix rows;  // n x k
  explicit Normals(const RatMatrix& A) : rows(A.transpose()) {}
  Rational apply(std::size_t i, std::span<const Rational> x) const {
    return dot(rows.row_span(i), x);
  }
};

// Machine-word copy of integer data: normals as rows and L*b for the
// common denominator L of b. Absent when anything is fractional or large.
struct SmallData {
  std::size_t n = 0, k = 0;
  std::vector<long> a;  // n x k
  std::vector<long> B;
  Integer L;
};

std::optional<SmallData> small_data(const Normals& normals, const RatVector& b) {
  SmallData d{normals.rows.rows(), normals.rows.cols(), {}, {}, Integer(1)};
  for (const auto& x : b) mpz_lcm(d.L.get_mpz_t(), d.L.get_mpz_t(), x.get_den_mpz_t());
  for (std::size_t i = 0; i < d.n; ++i)
    for (const auto& x : normals.rows.row_span(i)) {
      if (x.get_den() != 1 || !x.get_num().fits_slong_p()) return std::nullopt;
      d.a.push_back(x.get_num().get_si());
    }
  for (const auto& x : b) {
    const Integer v = Rational(x * d.L).get_num();
    if (!v.fits_slong_p()) return std::nullopt;
    d.B.push_back(v.get_si());
  }
  return d;
}

enum class SubsetResult { Singular, Infeasible, Vertex, Overflow };

bool mul(long x, long y, long& out) { return !__builtin_mul_overflow(x, y, &out); }
bool add(long x, long y, long& out) { return !__builtin_add_overflow(x, y, &out); }

// Solves the active system for one subset by Bareiss elimination in machine
// integers. On success y / (D L) is the vertex and `active` its tight set.
SubsetResult solve_small(const SmallData& d, const std::vector<std::size_t>& subset, std::vector<long>& m,
                         std::vector<long>& y, long& D, std::vector<std::size_t>& active) {
  const std::size_t k = d.k, W = k + 1;
  m.assign(k * W, 0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r * W + c] = d.a[subset[r] * k + c];
    m[r * W + k] = -d.B[subset[r]];
  }
  long prev = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && m[p * W + c] == 0) ++p;
    if (p == k) return SubsetResult::Singular;
    if (p != c)
      for (std::size_t j = 0; j < W; ++j) std::swap(m[c * W + j], m[p * W + j]);
    for (std::size_t i = c + 1; i < k; ++i) {
      for (std::size_t j = c + 1; j < W; ++j) {
        long u, v;
        if (!mul(m[c * W + c], m[i * W + j], u) || !mul(m[i * W + c], m[c * W + j], v) ||
            __builtin_sub_overflow(u, v, &u))
          return SubsetResult::Overflow;
        m[i * W + j] = u / prev;
      }
      m[i * W + c] = 0;
    }
    prev = m[c * W + c];
  }
  // the last pivot is the determinant up to the sign of the row swaps;
  // y = D x is integral by Cramer's rule
  D = k > 0 ? m[(k - 1) * W + (k - 1)] : 1;
  y.assign(k, 0);
  for (std::size_t i = k; i-- > 0;) {
    long s;
    if (!mul(D, m[i * W + k], s)) return SubsetResult::Overflow;
    for (std::size_t j = i + 1; j < k; ++j) {
      long t;
      if (!mul(m[i * W + j], y[j], t) || __builtin_sub_overflow(s, t, &s)) return SubsetResult::Overflow;
    }
    y[i] = s / m[i * W + i];
  }
  // L D slack_i = <a_i, y> + B_i D
  active.clear();
  for (std::size_t i = 0; i < d.n; ++i) {
    long s;
    if (!mul(d.B[i], D, s)) return SubsetResult::Overflow;
    for (std::size_t c = 0; c < k; ++c) {
      long t;
      if (!mul(d.a[i * k + c], y[c], t) || !add(s, t, s)) return SubsetResult::Overflow;
    }
    if (s == 0) active.push_back(i);
    else if ((s < 0) != (D < 0)) return SubsetResult::Infeasible;
  }
  return SubsetResult::Vertex;
}

VertexSet enumerate_pointed(const RatMatrix& A, const RatVector& b, const EnumerationOptions& opts) {
  const std::size_t k = A.rows(), n = A.cols();
  VertexSet out;
  if (n < k) {
    out.empty = true;  // unreachable for rank-k data, kept for safety of callers
    return out;
  }
  if (binomial(n, k) > Integer(std::to_string(opts.subset_budget)))
    throw BudgetExceeded("vertex enumeration needs C(" + std::to_string(n) + "," +
                         std::to_string(k) + ") subsets, above the budget of " +
                         std::to_string(opts.subset_budget));
  const Normals normals(A);
  std::map<RatVector, std::vector<std::size_t>> found;
  std::vector<std::size_t> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  const auto small = small_data(normals, b);
  std::vector<long> work, y;
  std::vector<std::size_t> act;
  do {
    if (small) {
      long D = 1;
      const auto r = solve_small(*small, subset, work, y, D, act);
      if (r == SubsetResult::Singular || r == SubsetResult::Infeasible) continue;
      if (r == SubsetResult::Vertex) {
        RatVector x(k);
        for (std::size_t c = 0; c < k; ++c) x[c] = Rational(Integer(y[c]), Integer(D) * small->L);
        for (auto& c : x) c.canonicalize();
        found.emplace(std::move(x), act);
        continue;
      }
    }
    RatMatrix m(k, k);
    RatVector rhs(k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) m(r, c) = normals.rows(subset[r], c);
      rhs[r] = -b[subset[r]];
    }
    auto x = solve_square(std::move(m), std::move(rhs));
    if (!x || found.count(*x)) continue;
    std::vector<std::size_t> active;
    bool feasible = true;
    for (std::size_t i = 0; i < n && feasible; ++i) {
      const Rational s = normals.apply(i, *x) + b[i];
      if (s < 0) feasible = false;
      if (s == 0) active.push_back(i);
    }
    if (feasible) found.emplace(std::move(*x), std::move(active));
  } while (k > 0 && next_combination(subset, n));

  for (auto& [pt, act] : found) out.vertices.push_back(Vertex{pt, act});
  out.empty = out.vertices.empty();

  // Unbounded edges leave some vertex along a direction cut out by k-1 of its
  // active normals.
  std::set<RatVector> rays;
  for (const auto& v : out.vertices) {
    const auto& S = v.active;
    if (k == 0 || S.size() < k - 1) continue;
    if (S.size() == k) {
      // simple vertex: the edges are the columns of the inverse of the active normals
      RatMatrix m(0, k);
      for (auto i : S) m.append_row(normals.rows.row(i));
      if (const auto inv = inverse(m)) {
        for (std::size_t c = 0; c < k; ++c) {
          const RatVector d = inv->col(c);
          bool recession = true;
          for (std::size_t i = 0; i < n && recession; ++i) recession = normals.apply(i, d) >= 0;
          if (recession) rays.insert(primitive_direction(d));
        }
        continue;
      }
    }
    std::vector<std::size_t> pick(k - 1);
    std::iota(pick.begin(), pick.end(), 0);
    do {
      RatMatrix m(0, k);
      for (auto p : pick) m.append_row(normals.rows.row(S[p]));
      const auto ns = nullspace(m);
      if (ns.rows() != 1) continue;
      RatVector d = ns.row(0);
      bool nonneg = true, nonpos = true;
      for (auto i : S) {
        const Rational s = normals.apply(i, d);
        nonneg = nonneg && s >= 0;
        nonpos = nonpos && s <= 0;
      }
      if (!nonneg && !nonpos) continue;
      if (!nonneg)
        for (auto& x : d) x = -x;
      bool recession = true;
      for (std::size_t i = 0; i < n && recession; ++i) recession = normals.apply(i, d) >= 0;
      if (recession) rays.insert(primitive_direction(d));
    } while (k > 1 && next_combination(pick, S.size()));
  }
  out.rays.assign(rays.begin(), rays.end());
  out.bounded = out.rays.empty();

  if (!out.empty) {
    RatMatrix spread(0, k);
    for (std::size_t i = 1; i < out.vertices.size(); ++i) {
      RatVector d(k);
      for (std::size_t c = 0; c < k; ++c) d[c] = out.vertices[i].point[c] - out.vertices[0].point[c];
      spread.append_row(d);
    }
    for (const auto& r : out.rays) spread.append_row(r);
    out.full_dimensional = rank(spread) == k;
  }
  return out;
}

// Rewrites A^T x as A'^T y with A' of full row rank, y = C^T x.
struct Reduced {
  RatMatrix A_red;  // r x n
  RatMatrix C;      // k x r
};

Reduced reduce_rows(const RatMatrix& A) {
  const auto e = rref(A);
  Reduced out{RatMatrix(0, A.cols()), A.select_columns(e.pivots)};
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out.A_red.append_row(e.reduced.row(r));
  return out;
}

}  // namespace

VertexSet enumerate_polyhedron(const RatMatrix& A, const RatVector& b, const EnumerationOptions& opts) {
  if (A.cols() != b.size()) throw DimensionMismatch("enumerate: A and b disagree on n");
  if (rank(A) == A.rows()) return enumerate_pointed(A, b, opts);
  // The polyhedron contains a line; only emptiness and dimension are decided.
  const auto red = reduce_rows(A);
  const auto inner = enumerate_pointed(red.A_red, b, opts);
  VertexSet out;
  out.empty = inner.empty;
  out.pointed = false;
  out.bounded = inner.empty;
  out.full_dimensional = !inner.empty && inner.full_dimensional;
  return out;
}

VertexSet enumerate_vertices(const HPolytope& p, const EnumerationOptions& opts) {
  return enumerate_polyhedron(to_rational(p.A), p.b, opts);
}

LinearMinimum minimize(const RatMatrix& A, const RatVector& b, std::span<const Rational> c,
                       const Rational& c0, const EnumerationOptions& opts) {
  if (c.size() != A.rows()) throw DimensionMismatch("minimize: objective length mismatch");
  const RatMatrix* mat = &A;
  RatVector obj(c.begin(), c.end());
  Reduced red;
  if (rank(A) < A.rows()) {
    red = reduce_rows(A);
    const auto gamma = solve(red.C, obj);
    const auto feas = enumerate_pointed(red.A_red, b, opts);
    if (feas.empty) return {MinimumKind::Empty, 0};
    if (!gamma) return {MinimumKind::Unbounded, 0};
    obj = *gamma;
    mat = &red.A_red;
  }
  const auto vs = enumerate_pointed(*mat, b, opts);
  if (vs.empty) return {MinimumKind::Empty, 0};
  for (const auto& r : vs.rays)
    if (dot(std::span<const Rational>(obj), std::span<const Rational>(r)) < 0)
      return {MinimumKind::Unbounded, 0};
  LinearMinimum out{MinimumKind::Finite, 0};
  bool first = true;
  for (const auto& v : vs.vertices) {
    Rational val = dot(std::span<const Rational>(obj), std::span<const Rational>(v.point)) + c0;
    if (first || val < out.value) out.value = val;
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

bool is_simple(const VertexSet& v, std::size_t k) {
  return std::all_of(v.vertices.begin(), v.vertices.end(),
                     [k](const Vertex& x) { return x.active.size() == k; });
}

bool is_generic(const HPolytope& p, const VertexSet& v) {
  for (const auto& x : v.vertices) {
    if (x.active.size() > p.dim()) return false;
    if (rank(p.A.select_columns(x.active)) != x.active.size()) return false;
  }
  return true;
}

bool is_delzant(const HPolytope& p, const VertexSet& v) {
  const auto lattice = LatticeBasis::span(p.A.transpose());
  if (lattice.rank() != p.dim())
    throw RankDeficient("normals span a lattice of rank " + std::to_string(lattice.rank()) +
                        " < " + std::to_string(p.dim()));
  if (!is_simple(v, p.dim())) return false;
  for (const auto& x : v.vertices) {
    const auto local = LatticeBasis::span(p.A.select_columns(x.active).transpose());
    if (local.rank() != p.dim()) return false;
    if (snf_index(local, lattice) != 1) return false;
  }
  return true;
}

FanoResult is_fano(const HPolytope& p) {
  FanoResult out;
  out.primitive = true;
  for (std::size_t i = 0; i < p.count(); ++i) {
    const auto a = p.normal(i);
    if (gcd_over_basis(std::span<const Integer>(a)) != 1) out.primitive = false;
  }
  const RatMatrix At = to_rational(p.A.transpose());  // n x k
  const RatVector ones(p.count(), Rational(1));
  Rational C;
  std::optional<RatVector> y;
  if (solve(At, ones)) {
    // all-ones direction is a recession direction; any C is admissible
    C = 1;
    RatVector rhs = p.b;
    for (auto& x : rhs) x -= C;
    y = solve(At, rhs);
  } else {
    RatMatrix aug(p.count(), p.dim() + 1);
    for (std::size_t i = 0; i < p.count(); ++i) {
      for (std::size_t j = 0; j < p.dim(); ++j) aug(i, j) = At(i, j);
      aug(i, p.dim()) = 1;
    }
    const auto sol = solve(aug, p.b);
    if (sol) {
      C = sol->back();
      y = RatVector(sol->begin(), sol->end() - 1);
    }
  }
  if (y && C > 0 && out.primitive) {
    out.fano = true;
    out.constant = C;
    out.translation = *y;
  }
  return out;
}

namespace {

bool positive_multiple(const HPolytope& p, std::size_t i, std::size_t j) {
  // (a_j, b_j) = lambda (a_i, b_i) with lambda > 0
  std::optional<Rational> lambda;
  for (std::size_t r = 0; r <= p.dim(); ++r) {
    const Rational x = r < p.dim() ? Rational(p.A(r, i)) : p.b[i];
    const Rational y = r < p.dim() ? Rational(p.A(r, j)) : p.b[j];
    if (x == 0 || y == 0) {
      if (x != y) return false;
      continue;
    }
    const Rational q = y / x;
    if (q <= 0 || (lambda && *lambda != q)) return false;
    lambda = q;
  }
  return true;
}

// For a full-dimensional polytope every facet needs its own inequality, so
// inequality i is irredundant iff it is tight on a (k-1)-dimensional face
// and no other inequality is a positive multiple of it.
Redundancy redundancy_by_faces(const HPolytope& p, const VertexSet& vs) {
  const std::size_t k = p.dim();
  std::vector<std::vector<std::size_t>> tight(p.count());
  for (std::size_t v = 0; v < vs.vertices.size(); ++v)
    for (auto i : vs.vertices[v].active) tight[i].push_back(v);
  Redundancy out;
  for (std::size_t i = 0; i < p.count(); ++i) {
    if (tight[i].empty()) {
      out.redundant.push_back(i);
      out.strict.push_back(i);
      continue;
    }
    bool facet = false;
    if (tight[i].size() >= k) {
      const auto& base = vs.vertices[tight[i][0]].point;
      RatMatrix diffs(0, k);
      for (std::size_t t = 1; t < tight[i].size(); ++t) {
        RatVector d(k);
        const auto& pt = vs.vertices[tight[i][t]].point;
        for (std::size_t c = 0; c < k; ++c) d[c] = pt[c] - base[c];
        diffs.append_row(d);
      }
      facet = k == 0 || (diffs.rows() > 0 && rank(diffs) == k - 1) || (k == 1);
    }
    bool duplicated = false;
    for (std::size_t j = 0; j < p.count() && facet && !duplicated; ++j)
      duplicated = j != i && positive_multiple(p, i, j);
    if (!facet || duplicated) out.redundant.push_back(i);
  }
  return out;
}

}  // namespace

Redundancy redundancy(const HPolytope& p, const EnumerationOptions& opts) {
  return redundancy(p, enumerate_vertices(p, opts), opts);
}

Redundancy redundancy(const HPolytope& p, const VertexSet& vs, const EnumerationOptions& opts) {
  if (vs.empty) throw OutOfModel("redundancy: the polyhedron is empty");
  if (!vs.bounded) throw OutOfModel("redundancy: the polyhedron is unbounded");
  if (vs.full_dimensional) return redundancy_by_faces(p, vs);
  Redundancy out;
  for (std::size_t i = 0; i < p.count(); ++i) {
    const auto relaxed = p.without(i);
    const RatVector c = to_rational(p.normal(i));
    const auto m = minimize(to_rational(relaxed.A), relaxed.b, c, p.b[i], opts);
    if (m.kind == MinimumKind::Unbounded) {
      out.used_ray_fallback = true;
      continue;
    }
    if (m.kind != MinimumKind::Finite) continue;
    if (m.value >= 0) out.redundant.push_back(i);
    if (m.value > 0) out.strict.push_back(i);
  }
  return out;
}

StructureReport analyze_structure(const HPolytope& p, const EnumerationOptions& opts) {
  StructureReport s;
  const auto vs = enumerate_vertices(p, opts);
  s.bounded = vs.bounded;
  s.empty = vs.empty;
  s.full_dimensional = vs.full_dimensional;
  s.vertex_count = vs.vertices.size();
  s.simple = !vs.empty && is_simple(vs, p.dim());
  s.generic = !vs.empty && is_generic(p, vs);
  s.normal_lattice_full_rank = LatticeBasis::span(p.A.transpose()).rank() == p.dim();
  if (s.normal_lattice_full_rank && !vs.empty) s.delzant = is_delzant(p, vs);
  const auto f = is_fano(p);
  s.fano = f.fano;
  s.fano_constant = f.constant;
  s.fano_translation = f.translation;
  if (s.bounded && !s.empty) {
    const auto r = redundancy(p, vs, opts);
    s.redundant = r.redundant;
    s.strictly_redundant = r.strict;
  }
  s.monotone_ready = s.bounded && !s.empty && s.delzant && s.redundant.empty();
  return s;
}

}  // namespace quadlag
