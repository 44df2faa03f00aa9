#include "quadlag/exactlinalg.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace quadlag {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

IntVector multiply(const IntMatrix& m, std::span<const Integer> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  IntVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row_span(i), v);
  return out;
}

RatVector multiply(const RatMatrix& m, std::span<const Rational> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  RatVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row_span(i), v);
  return out;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Integer> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------------

Echelon rref(RatMatrix m) {
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

std::size_t rank(const IntMatrix& m) {
  const auto h = hnf(m).H;
  std::size_t r = 0;
  while (r < h.rows() && std::any_of(h.row_span(r).begin(), h.row_span(r).end(),
                                     [](const Integer& x) { return x != 0; }))
    ++r;
  return r;
}

std::optional<RatVector> solve(const RatMatrix& m, std::span<const Rational> rhs) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("solve: rhs length mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  const auto e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  RatVector x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

namespace {

bool integral(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& x : m.row_span(i))
      if (x.get_den() != 1) return false;
  return true;
}

enum class Elimination { Done, Singular, Overflow };

// Bareiss on machine integers; gives up as soon as a product overflows.
Elimination bareiss_small(std::vector<long>& a, std::size_t n, std::size_t W) {
  auto at = [&](std::size_t i, std::size_t j) -> long& { return a[i * W + j]; };
  long prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && at(p, k) == 0) ++p;
    if (p == n) return Elimination::Singular;
    if (p != k)
      for (std::size_t j = 0; j < W; ++j) std::swap(at(k, j), at(p, j));
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < W; ++j) {
        long x, y, d;
        if (__builtin_mul_overflow(at(k, k), at(i, j), &x) || __builtin_mul_overflow(at(i, k), at(k, j), &y) ||
            __builtin_sub_overflow(x, y, &d))
          return Elimination::Overflow;
        at(i, j) = d / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return Elimination::Done;
}

// Fraction-free (Bareiss) elimination of an integer square system with
// several right-hand sides, given as the columns of rhs.
std::optional<RatMatrix> bareiss_solve(const RatMatrix& m, const RatMatrix& rhs) {
  const std::size_t n = m.rows(), w = rhs.cols();
  std::vector<Integer> scale(w, Integer(1));
  for (std::size_t c = 0; c < w; ++c)
    for (std::size_t i = 0; i < n; ++i) mpz_lcm(scale[c].get_mpz_t(), scale[c].get_mpz_t(), rhs(i, c).get_den_mpz_t());
  const std::size_t W = n + w;
  std::vector<Integer> a(n * W);
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * W + j]; };
  bool fits = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = m(i, j).get_num();
    for (std::size_t c = 0; c < w; ++c) at(i, n + c) = Rational(rhs(i, c) * scale[c]).get_num();
  }
  for (const auto& x : a) fits = fits && x.fits_slong_p();
  if (fits) {
    std::vector<long> small(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) small[i] = a[i].get_si();
    const auto r = bareiss_small(small, n, W);
    if (r == Elimination::Singular) return std::nullopt;
    if (r == Elimination::Done) {
      RatMatrix x(n, w);
      for (std::size_t c = 0; c < w; ++c)
        for (std::size_t i = n; i-- > 0;) {
          Rational s = small[i * W + n + c];
          for (std::size_t j = i + 1; j < n; ++j)
            if (small[i * W + j] != 0) s -= Rational(small[i * W + j]) * x(j, c);
          x(i, c) = s / small[i * W + i];
        }
      for (std::size_t c = 0; c < w; ++c)
        for (std::size_t i = 0; i < n; ++i) x(i, c) /= scale[c];
      return x;
    }
  }
  Integer prev = 1, t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && at(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k)
      for (std::size_t j = 0; j < W; ++j) std::swap(at(k, j), at(p, j));
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < W; ++j) {
        t = at(k, k) * at(i, j) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  RatMatrix x(n, w);
  for (std::size_t c = 0; c < w; ++c)
    for (std::size_t i = n; i-- > 0;) {
      Rational s = at(i, n + c);
      for (std::size_t j = i + 1; j < n; ++j)
        if (at(i, j) != 0) s -= at(i, j) * x(j, c);
      x(i, c) = s / at(i, i);
    }
  for (std::size_t c = 0; c < w; ++c)
    for (std::size_t i = 0; i < n; ++i) x(i, c) /= scale[c];
  return x;
}

}  // namespace

std::optional<RatVector> solve_square(RatMatrix m, RatVector rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n || rhs.size() != n) throw DimensionMismatch("solve_square: not square");
  if (integral(m)) {
    RatMatrix r(n, 1);
    for (std::size_t i = 0; i < n; ++i) r(i, 0) = rhs[i];
    const auto x = bareiss_solve(m, r);
    if (!x) return std::nullopt;
    return x->col(0);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      m.swap_rows(c, p);
      std::swap(rhs[c], rhs[p]);
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j)
        if (m(c, j) != 0) m(i, j) -= f * m(c, j);
      rhs[i] -= f * rhs[c];
    }
  }
  RatVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) != 0) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

RatMatrix nullspace(const RatMatrix& m) {
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RatMatrix out(0, m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    out.append_row(v);
  }
  return out;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("inverse: not square");
  if (integral(m)) return bareiss_solve(m, RatMatrix::identity(n));
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

// Bareiss fraction-free elimination.
Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("determinant: not square");
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------

namespace {

// row_a <- s*row_a + t*row_b ; row_b <- u*row_a + v*row_b (simultaneously)
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                  const Integer& u, const Integer& v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer x = m(a, j), y = m(b, j);
    if (x == 0 && y == 0) continue;
    m(a, j) = s * x + t * y;
    m(b, j) = u * x + v * y;
  }
}

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) += q * m(src, j);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool row_is_zero(const IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(r, j) != 0) return false;
  return true;
}

}  // namespace

HermiteResult hnf(const IntMatrix& m) {
  HermiteResult res{m, IntMatrix::identity(m.rows())};
  IntMatrix& H = res.H;
  IntMatrix& U = res.U;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < H.cols() && pr < H.rows(); ++c) {
    for (std::size_t i = pr + 1; i < H.rows(); ++i) {
      if (H(i, c) == 0) continue;
      const Integer a = H(pr, c), b = H(i, c);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const Integer u = -b / g, v = a / g;
      combine_rows(H, pr, i, s, t, u, v);
      combine_rows(U, pr, i, s, t, u, v);
    }
    if (H(pr, c) == 0) continue;
    if (H(pr, c) < 0) {
      negate_row(H, pr);
      negate_row(U, pr);
    }
    for (std::size_t i = 0; i < pr; ++i) {
      const Integer q = floor_div(H(i, c), H(pr, c));
      add_row_multiple(H, i, pr, -q);
      add_row_multiple(U, i, pr, -q);
    }
    ++pr;
  }
  return res;
}

bool is_hnf(const IntMatrix& m) {
  std::size_t last_pivot = 0;
  bool seen_zero = false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (row_is_zero(m, r)) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;
    std::size_t p = 0;
    while (m(r, p) == 0) ++p;
    if (r > 0 && p <= last_pivot) return false;
    if (m(r, p) <= 0) return false;
    for (std::size_t i = 0; i < r; ++i)
      if (m(i, p) < 0 || m(i, p) >= m(r, p)) return false;
    last_pivot = p;
  }
  return true;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const auto res = hnf(m.transpose());
  std::size_t r = 0;
  while (r < res.H.rows() && !row_is_zero(res.H, r)) ++r;
  IntMatrix gens(0, m.cols());
  for (std::size_t i = r; i < res.U.rows(); ++i) gens.append_row(res.U.row(i));
  return LatticeBasis::span(gens).basis();
}

IntVector smith_diagonal(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  IntVector diag;
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, x), a(i, y));
  };
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block goes to (t, t)
    auto move_min_to_pivot = [&]() -> bool {
      bool found = false;
      std::size_t bi = t, bj = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Integer v = abs(a(i, j));
          if (!found || v < best) {
            best = v;
            bi = i;
            bj = j;
            found = true;
          }
        }
      if (!found) return false;
      a.swap_rows(t, bi);
      swap_cols(t, bj);
      return true;
    };
    if (!move_min_to_pivot()) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        add_row_multiple(a, i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        for (std::size_t i = 0; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_min_to_pivot();
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row_multiple(a, t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    diag.push_back(abs(a(t, t)));
  }
  return diag;
}

Integer gcd_over_basis(std::span<const Integer> values) {
  Integer g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

Integer gcd_over_basis(std::initializer_list<long> values) {
  IntVector v(values.begin(), values.end());
  return gcd_over_basis(std::span<const Integer>(v));
}

// ---------------------------------------------------------------------------

LatticeBasis LatticeBasis::span(const IntMatrix& generators) {
  const auto h = hnf(generators).H;
  IntMatrix basis(0, generators.cols());
  for (std::size_t r = 0; r < h.rows() && !row_is_zero(h, r); ++r) basis.append_row(h.row(r));
  LatticeBasis out;
  out.basis_ = std::move(basis);
  return out;
}

LatticeBasis LatticeBasis::from_hnf(IntMatrix basis) {
  LatticeBasis out;
  out.basis_ = std::move(basis);
  return out;
}

LatticeBasis LatticeBasis::standard(std::size_t d) { return from_hnf(IntMatrix::identity(d)); }

std::optional<RatVector> LatticeBasis::coordinates(std::span<const Rational> v) const {
  if (v.size() != ambient_dim()) throw DimensionMismatch("coordinates: ambient mismatch");
  RatVector c(rank());
  RatVector residual(v.begin(), v.end());
  for (std::size_t i = 0; i < rank(); ++i) {
    std::size_t p = 0;
    while (basis_(i, p) == 0) ++p;
    c[i] = residual[p] / Rational(basis_(i, p));
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < ambient_dim(); ++j)
      if (basis_(i, j) != 0) residual[j] -= c[i] * basis_(i, j);
  }
  for (const auto& x : residual)
    if (x != 0) return std::nullopt;
  return c;
}

std::optional<RatVector> LatticeBasis::coordinates(std::span<const Integer> v) const {
  const auto q = to_rational(IntVector(v.begin(), v.end()));
  return coordinates(std::span<const Rational>(q));
}

bool LatticeBasis::contains(std::span<const Integer> v) const {
  const auto c = coordinates(v);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rational& x) { return x.get_den() == 1; });
}

RationalLattice RationalLattice::span(const RatMatrix& generators) {
  Integer den = 1;
  for (const auto& x : generators.data()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntMatrix scaled(generators.rows(), generators.cols());
  for (std::size_t i = 0; i < generators.rows(); ++i)
    for (std::size_t j = 0; j < generators.cols(); ++j) {
      Rational s = generators(i, j) * den;
      scaled(i, j) = s.get_num();
    }
  RationalLattice out;
  out.scaled_ = LatticeBasis::span(scaled);
  // shrink the denominator when the scaled lattice has a common factor
  Integer g = gcd_over_basis(std::span<const Integer>(out.scaled_.basis().data()));
  if (g == 0) g = 1;
  Integer common;
  mpz_gcd(common.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
  if (common > 1) {
    IntMatrix reduced = out.scaled_.basis();
    for (std::size_t i = 0; i < reduced.rows(); ++i)
      for (std::size_t j = 0; j < reduced.cols(); ++j) reduced(i, j) /= common;
    out.scaled_ = LatticeBasis::span(reduced);
    den /= common;
  }
  out.denominator_ = den;
  return out;
}

RatMatrix RationalLattice::basis() const {
  RatMatrix b = to_rational(scaled_.basis());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) /= Rational(denominator_);
  return b;
}

std::optional<RatVector> RationalLattice::coordinates(std::span<const Rational> v) const {
  RatVector scaled(v.begin(), v.end());
  for (auto& x : scaled) x *= Rational(denominator_);
  return scaled_.coordinates(std::span<const Rational>(scaled));
}

Integer snf_index(const LatticeBasis& sub, const LatticeBasis& sup) {
  if (sub.ambient_dim() != sup.ambient_dim())
    throw DimensionMismatch("snf_index: ambient dimensions differ");
  if (sub.rank() != sup.rank()) throw RankDeficient("snf_index: ranks differ");
  IntMatrix coords(0, sup.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    const auto c = sup.coordinates(sub.basis().row_span(i));
    if (!c) throw NotContained("snf_index: sublattice leaves the span of the superlattice");
    IntVector row;
    for (const auto& x : *c) {
      if (x.get_den() != 1) throw NotContained("snf_index: sublattice is not contained");
      row.push_back(x.get_num());
    }
    coords.append_row(row);
  }
  Integer index = 1;
  const auto d = smith_diagonal(coords);
  if (d.size() < sub.rank()) throw RankDeficient("snf_index: degenerate coordinate matrix");
  for (const auto& x : d) index *= x;
  return index;
}

RationalLattice dual_lattice(const LatticeBasis& lattice) {
  if (lattice.rank() != lattice.ambient_dim())
    throw RankDeficient("dual_lattice: lattice is not of full rank");
  const auto inv = inverse(to_rational(lattice.basis()));
  if (!inv) throw RankDeficient("dual_lattice: singular basis");
  return RationalLattice::span(inv->transpose());
}

// ---------------------------------------------------------------------------

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw ParseError("not a rational number: '" + text + "'");
  Integer num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
  Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace quadlag
