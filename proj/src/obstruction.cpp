#include "quadlag/obstruction.hpp"

#include <algorithm>

namespace quadlag {

HomologyProfile HomologyProfile::make(std::map<int, long> dims, int L_dim, bool orientable) {
  HomologyProfile p;
  for (auto it = dims.begin(); it != dims.end();) {
    if (it->first < 0) throw InvalidParameter("profile: negative degree " + std::to_string(it->first));
    if (it->second < 0) throw InvalidParameter("profile: negative dimension in degree " + std::to_string(it->first));
    if (it->second == 0) it = dims.erase(it);
    else ++it;
  }
  if (!dims.count(0)) throw InvalidParameter("profile: H_0 must be nonzero");
  p.cover_dim = dims.rbegin()->first;
  if (p.cover_dim > L_dim)
    throw InvalidParameter("profile: cover dimension " + std::to_string(p.cover_dim) +
                           " exceeds dim L = " + std::to_string(L_dim));
  p.dims = std::move(dims);
  p.L_dim = L_dim;
  p.orientable = orientable;
  return p;
}

std::vector<long> HomologyProfile::table() const {
  std::vector<long> t(cover_dim + 1, 0);
  for (const auto& [d, v] : dims) t[d] = v;
  return t;
}

long HomologyProfile::total() const {
  long s = 0;
  for (const auto& [d, v] : dims) s += v;
  return s;
}

EngineResult run_engine_bounds(std::vector<long> lower, const std::vector<long>& upper, int L_dim,
                               int N) {
  if (N < 2) throw InvalidParameter("run_engine: N must be at least 2");
  if (lower.size() != upper.size()) throw DimensionMismatch("run_engine: table sizes differ");
  const int top = static_cast<int>(upper.size()) - 1;
  const auto up = [&](int d) { return d < 0 || d > top ? 0L : upper[d]; };

  EngineResult out;
  out.collapse_page = (L_dim + 1) / N + 1;
  out.pages.push_back(PageTable{1, lower, upper});
  for (int r = 1; r < out.collapse_page; ++r) {
    std::vector<long> next(lower.size());
    for (int d = 0; d <= top; ++d)
      next[d] = std::max(0L, lower[d] - up(d - 1 + r * N) - up(d + 1 - r * N));
    lower = std::move(next);
    out.pages.push_back(PageTable{r + 1, lower, upper});
  }
  for (int d = 0; d <= top; ++d)
    if (lower[d] > 0) out.surviving.push_back(d);
  out.excluded = !out.surviving.empty();
  if (out.excluded) out.witness_degree = out.surviving.front();
  return out;
}

EngineResult run_engine(const HomologyProfile& profile, int N) {
  if (profile.cover_dim == 0)
    throw OutOfModel("run_engine: the universal cover has homology only in degree 0 "
                     "(non-compact cover), outside the engine's model");
  const auto t = profile.table();
  return run_engine_bounds(t, t, profile.L_dim, N);
}

AdmissibleSet admissible_maslov(const HomologyProfile& profile, int N_max) {
  if (N_max < 2) throw InvalidParameter("admissible_maslov: N_max must be at least 2");
  AdmissibleSet out;
  for (int N = 2; N <= N_max; ++N) {
    if (profile.orientable && N % 2 == 1) {
      out.excluded[N] = Exclusion{"parity", std::nullopt, {}};
      continue;
    }
    const auto r = run_engine(profile, N);
    if (r.excluded) out.excluded[N] = Exclusion{"engine", r.witness_degree, r.surviving};
    else out.admissible.push_back(N);
  }
  return out;
}

namespace {

Integer choose(int n, int k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace

BinomialLemma binomial_lemma(int m) {
  if (m < 4) throw InvalidParameter("binomial_lemma: m must be at least 4");
  BinomialLemma b;
  b.m = m;
  const int h = m / 2;
  b.central = choose(m, h);
  b.tail_sum = 0;
  for (int i = 0; i <= h - 3; ++i) b.tail_sum += choose(m, i);
  for (int i = h + 3; i <= m; ++i) b.tail_sum += choose(m, i);
  b.holds = b.central > b.tail_sum;
  if (m % 2 == 0) {
    mpz_ui_pow_ui(b.stronger_lhs.get_mpz_t(), 2, m - 1);
    b.stronger_rhs = choose(m, h) + choose(m, h + 1);
    b.stronger_holds = b.stronger_lhs < b.stronger_rhs;
  }
  return b;
}

}  // namespace quadlag
