#include "quadlag/families.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "quadlag/invariants.hpp"

namespace quadlag {

namespace {

std::string str(int x) { return std::to_string(x); }

// "name:key=value,key=value" -> name, {key: value}
std::pair<std::string, std::map<std::string, int>> split_spec(const std::string& text) {
  static const std::regex head(R"(^\s*([a-z0-9-]+)\s*:\s*(.*?)\s*$)");
  static const std::regex kv(R"(^\s*([A-Za-z_]+)\s*=\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, head)) throw ParseError("bad spec '" + text + "'");
  std::pair<std::string, std::map<std::string, int>> out{m[1], {}};
  std::stringstream rest(m[2].str());
  std::string item;
  while (std::getline(rest, item, ',')) {
    std::smatch km;
    if (!std::regex_match(item, km, kv)) throw ParseError("bad parameter '" + item + "' in '" + text + "'");
    if (!out.second.emplace(km[1], std::stoi(km[2])).second)
      throw ParseError("repeated parameter '" + km[1].str() + "'");
  }
  return out;
}

int take(std::map<std::string, int>& params, const std::string& key, const std::string& text) {
  const auto it = params.find(key);
  if (it == params.end()) throw ParseError("missing parameter '" + key + "' in '" + text + "'");
  const int v = it->second;
  params.erase(it);
  return v;
}

void no_leftovers(const std::map<std::string, int>& params, const std::string& text) {
  if (!params.empty())
    throw ParseError("unknown parameter '" + params.begin()->first + "' in '" + text + "'");
}

bool even(int x) { return x % 2 == 0; }

}  // namespace

std::string FamilySpec::to_string() const {
  if (kind == Kind::ProductSimplices)
    return "product-simplices:p=" + str(p) + ",n=" + str(n) + ",k=" + str(k);
  return "redundant-simplex:n=" + str(n) + ",k=" + str(k);
}

FamilySpec parse_family_spec(const std::string& text) {
  auto [name, params] = split_spec(text);
  FamilySpec s;
  if (name == "product-simplices") {
    s.kind = FamilySpec::Kind::ProductSimplices;
    s.p = take(params, "p", text);
  } else if (name == "redundant-simplex") {
    s.kind = FamilySpec::Kind::RedundantSimplex;
  } else {
    throw ParseError("unknown family '" + name + "'");
  }
  s.n = take(params, "n", text);
  s.k = take(params, "k", text);
  no_leftovers(params, text);
  return s;
}

Generated gen_product_simplices(int p, int n, int k) {
  if (p < 2) throw InvalidParameter("product-simplices: need p >= 2");
  if (n - p < 2) throw InvalidParameter("product-simplices: need n - p >= 2");
  if (k < 0 || k > p - 2) throw InvalidParameter("product-simplices: need 0 <= k <= p - 2");
  if (!even(k)) throw InvalidParameter("product-simplices: k must be even");
  Generated g;
  if (!even(p) || !even(n)) g.warnings.push_back("p and n are not both even");
  if (n - p + k <= p) g.warnings.push_back("n - p + k <= p");
  if (p <= 2) g.warnings.push_back("p <= 2");
  if (n - p <= 2) g.warnings.push_back("n - p <= 2");

  const int dim = n - 2;
  IntMatrix A(dim, n);
  RatVector b(n, Rational(1));
  // columns 0..p-2: x_i, column p-1: -(x_1..x_{p-1})
  for (int i = 0; i < p - 1; ++i) {
    A(i, i) = 1;
    A(i, p - 1) = -1;
  }
  // columns p..n-2: x_i for i = p..n-2 (rows p-1..n-3)
  for (int i = p - 1; i < dim; ++i) A(i, i + 1) = 1;
  // last column: -(x_1..x_k) - (x_p..x_{n-2})
  for (int i = 0; i < k; ++i) A(i, n - 1) = -1;
  for (int i = p - 1; i < dim; ++i) A(i, n - 1) = -1;
  g.polytope = HPolytope::make(std::move(A), std::move(b));
  return g;
}

Generated gen_redundant_simplex(int n, int k) {
  if (n <= 3 || even(n)) throw InvalidParameter("redundant-simplex: need n odd and n > 3");
  if (!even(k)) throw InvalidParameter("redundant-simplex: k must be even");
  if (!(2 * k > n - 3 && k <= n - 2))
    throw InvalidParameter("redundant-simplex: need (n - 3)/2 < k <= n - 2");
  const int dim = n - 2;
  IntMatrix A(dim, n);
  RatVector b(n, Rational(1));
  for (int i = 0; i < dim; ++i) {
    A(i, i) = 1;
    A(i, n - 2) = -1;
  }
  for (int i = 0; i < k; ++i) A(i, n - 1) = -1;
  b[n - 1] = k + 2;
  return Generated{HPolytope::make(std::move(A), std::move(b)), {}};
}

Generated generate(const FamilySpec& spec) {
  if (spec.kind == FamilySpec::Kind::ProductSimplices)
    return gen_product_simplices(spec.p, spec.n, spec.k);
  return gen_redundant_simplex(spec.n, spec.k);
}

QuadricSystem displayed_quadrics(const FamilySpec& s) {
  IntMatrix G(2, s.n);
  RatVector d(2);
  if (s.kind == FamilySpec::Kind::ProductSimplices) {
    for (int j = 0; j < s.p; ++j) G(0, j) = 1;
    for (int j = 0; j < s.k; ++j) G(1, j) = 1;
    for (int j = s.p; j < s.n; ++j) G(1, j) = 1;
    d = {Rational(s.p), Rational(s.n - s.p + s.k)};
  } else {
    for (int j = 0; j < s.n - 1; ++j) G(0, j) = 1;
    for (int j = 0; j < s.k; ++j) G(1, j) = 1;
    G(1, s.n - 1) = 1;
    d = {Rational(s.n - 1), Rational(2 * s.k + 2)};
  }
  return QuadricSystem::make(std::move(G), std::move(d));
}

Integer closed_form_minimal_maslov(const FamilySpec& s) {
  if (s.kind == FamilySpec::Kind::ProductSimplices) return std::gcd(s.p, s.n - s.p + s.k);
  return std::gcd(s.n - 1, 2 * s.k + 2);
}

std::vector<int> even_divisors(int x) {
  std::vector<int> out;
  for (int d = 2; d <= x; d += 2)
    if (x % d == 0) out.push_back(d);
  return out;
}

RealizationSet1 realizable_exist1(int p, int n) {
  if (p < 2 || !even(p) || !even(n)) throw InvalidParameter("exist1: need p, n even and p >= 2");
  if (n < 2 * p) throw InvalidParameter("exist1: need n >= 2p");
  RealizationSet1 r;
  r.p = p;
  r.n = n;
  std::set<int> vals;
  for (int k = 0; k <= p - 2; k += 2) {
    const int g = std::gcd(p, n - p + k);
    vals.insert(g);
    r.witness_k.emplace(g, k);
  }
  r.values.assign(vals.begin(), vals.end());
  r.expected = even_divisors(p);
  r.equal = r.values == r.expected;
  for (int d : r.expected) {
    const int l = p / d;
    // least m with d(ml+1) >= n-p
    int m = 0;
    while (d * (m * l + 1) < n - p) ++m;
    r.constructive_k[d] = d * (m * l + 1) - (n - p);
  }
  return r;
}

RealizationSet2 realizable_exist2(int n) {
  if (n <= 3 || even(n)) throw InvalidParameter("exist2: need n odd and n > 3");
  RealizationSet2 r;
  r.n = n;
  std::set<int> vals;
  for (int k = 0; k <= n - 2; k += 2) {
    const int g = std::gcd(n - 1, 2 * k + 2);
    if (2 * k > n - 3) {
      vals.insert(g);
      r.ks[g].push_back(k);
    } else {
      r.out_of_range[k] = g;
    }
  }
  r.values.assign(vals.begin(), vals.end());
  for (int d : even_divisors(n - 1)) {
    if ((n - 1) % 4 == 0 && d % 4 == 2) r.predicted.push_back(d);
    if ((n - 1) % 4 == 2 && d < n - 1) r.predicted.push_back(d);
  }
  r.equal = r.values == r.predicted;
  return r;
}

// ---------------------------------------------------------------------------
// Profiles

namespace {

HomologyProfile from_degrees(const std::vector<std::pair<int, long>>& entries, int L_dim) {
  std::map<int, long> dims;
  for (const auto& [d, v] : entries) dims[d] += v;
  return HomologyProfile::make(std::move(dims), L_dim, true);
}

}  // namespace

HomologyProfile sphere_product_profile(int p, int q, std::optional<int> L_dim) {
  if (p < 2 || q < 2) throw InvalidParameter("sphere-product: need p, q >= 2");
  const int a = p - 1, b = q - 1;
  return from_degrees({{0, 1}, {a, 1}, {b, 1}, {a + b, 1}}, L_dim.value_or(p + q));
}

HomologyProfile sphere_power_profile(int p, int m, std::optional<int> L_dim) {
  if (p < 2 || m < 1) throw InvalidParameter("sphere-power: need p >= 2 and m >= 1");
  std::vector<std::pair<int, long>> e;
  for (int j = 0; j <= m; ++j) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), m, j);
    e.emplace_back(j * (p - 1), c.get_si());
  }
  return from_degrees(e, L_dim.value_or(m * (p - 1) + m));
}

HomologyProfile connected_sum5_profile(int p, std::optional<int> L_dim) {
  if (p < 1) throw InvalidParameter("connected-sum-5: need p >= 1");
  return from_degrees({{0, 1}, {2 * p - 1, 5}, {3 * p - 2, 5}, {5 * p - 3, 1}}, L_dim.value_or(5 * p));
}

HomologyProfile parse_profile_spec(const std::string& text, std::optional<int> L_dim) {
  auto [name, params] = split_spec(text);
  HomologyProfile out;
  if (name == "sphere-product") {
    const int p = take(params, "p", text), q = take(params, "q", text);
    out = sphere_product_profile(p, q, L_dim);
  } else if (name == "sphere-power") {
    const int p = take(params, "p", text), m = take(params, "m", text);
    out = sphere_power_profile(p, m, L_dim);
  } else if (name == "connected-sum-5") {
    out = connected_sum5_profile(take(params, "p", text), L_dim);
  } else {
    throw ParseError("unknown profile family '" + name + "'");
  }
  no_leftovers(params, text);
  return out;
}

// ---------------------------------------------------------------------------
// Topology catalog

QuadricSystem remove_variables(const QuadricSystem& q, const std::vector<std::size_t>& removed) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < q.n(); ++j)
    if (!std::binary_search(removed.begin(), removed.end(), j)) keep.push_back(j);
  // combinations y of the rows that vanish on the removed columns
  const IntMatrix Y = removed.empty() ? IntMatrix::identity(q.m())
                                      : integer_kernel(q.Gamma.select_columns(removed).transpose());
  const IntMatrix G = (Y * q.Gamma).select_columns(keep);
  const RatVector d = multiply(to_rational(Y), q.delta);
  return QuadricSystem::make(G, d);
}

namespace {

std::string sphere(int d) { return "S^" + str(d); }

struct Core {
  std::vector<int> spheres;                           // all factors, including S^0
  std::vector<std::vector<std::size_t>> factor_vars;  // core variable indices per factor
};

std::optional<Core> classify_core(const QuadricSystem& c) {
  if (!c.zero_columns().empty()) return std::nullopt;  // free variable: R not compact
  const std::size_t n = c.n();
  if (c.m() == 1) {
    int sign = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const int s = sgn(c.Gamma(0, j));
      if (sign != 0 && s != sign) return std::nullopt;
      sign = s;
    }
    if (sgn(c.delta[0]) != sign) return std::nullopt;
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return Core{{static_cast<int>(n) - 1}, {all}};
  }
  if (c.m() != 2) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Integer det = c.Gamma(0, i) * c.Gamma(1, j) - c.Gamma(0, j) * c.Gamma(1, i);
      if (abs(det) != 1) continue;
      // T = [g_i g_j]^{-1}
      IntMatrix T(2, 2);
      T(0, 0) = c.Gamma(1, j) * det;
      T(0, 1) = -c.Gamma(0, j) * det;
      T(1, 0) = -c.Gamma(1, i) * det;
      T(1, 1) = c.Gamma(0, i) * det;
      const IntMatrix G = T * c.Gamma;
      const RatVector d = multiply(to_rational(T), c.delta);
      std::vector<std::size_t> A, B, C;
      bool ok = true;
      for (std::size_t col = 0; col < n && ok; ++col) {
        const Integer &x = G(0, col), &y = G(1, col);
        if (x == 1 && y == 1) A.push_back(col);
        else if (x == 1 && y == 0) B.push_back(col);
        else if (x == 0 && y == 1) C.push_back(col);
        else ok = false;
      }
      if (!ok) continue;
      // sum_A + sum_B = d1, sum_A + sum_C = d2
      const Rational &d1 = d[0], &d2 = d[1];
      if (d1 <= 0 || d2 <= 0 || d1 == d2) {
        if (A.empty() && d1 > 0 && d2 > 0) {
          // two independent spheres
        } else {
          return std::nullopt;
        }
      }
      std::vector<std::size_t> f1, f2;
      if (A.empty()) {
        f1 = B;
        f2 = C;
      } else if (d2 > d1) {
        if (C.empty()) return std::nullopt;
        f1 = A;
        f1.insert(f1.end(), B.begin(), B.end());
        f2 = C;
      } else {
        if (B.empty()) return std::nullopt;
        f1 = A;
        f1.insert(f1.end(), C.begin(), C.end());
        f2 = B;
      }
      if (f1.empty() || f2.empty()) return std::nullopt;
      std::sort(f1.begin(), f1.end());
      std::sort(f2.begin(), f2.end());
      Core out;
      out.spheres = {static_cast<int>(f1.size()) - 1, static_cast<int>(f2.size()) - 1};
      out.factor_vars = {f1, f2};
      if (out.spheres[0] > out.spheres[1]) {
        std::swap(out.spheres[0], out.spheres[1]);
        std::swap(out.factor_vars[0], out.factor_vars[1]);
      }
      return out;
    }
  return std::nullopt;
}

}  // namespace

std::optional<TopologyTag> recognize_topology(const QuadricSystem& q,
                                              const std::vector<std::size_t>& strict_redundant) {
  std::vector<std::size_t> strict = strict_redundant;
  std::sort(strict.begin(), strict.end());
  const auto core_q = remove_variables(q, strict);
  const auto core = classify_core(core_q);
  if (!core) return std::nullopt;

  TopologyTag tag;
  tag.torus_rank = static_cast<int>(q.m());
  tag.component_count = 1;
  std::vector<std::string> parts;
  int zero_spheres = static_cast<int>(strict.size());
  for (int d : core->spheres) {
    if (d == 0) ++zero_spheres;
    else {
      tag.sphere_dims.push_back(d);
      parts.push_back(sphere(d));
    }
  }
  mpz_ui_pow_ui(tag.component_count.get_mpz_t(), 2, zero_spheres);
  if (zero_spheres == 1) parts.push_back("Z_2");
  if (zero_spheres > 1) parts.push_back("Z_2^" + str(zero_spheres));
  if (parts.empty()) parts.push_back("point");
  for (std::size_t i = 0; i < parts.size(); ++i) tag.description += (i ? " x " : "") + parts[i];

  // The loop classes decide orientability and whether the gluing is trivial.
  const auto deck = deck_data(q);
  const auto loops = loop_lattice(deck, q, strict, {}, true);
  const auto inv = maslov_area_report(deck, q, loops);
  tag.orientable = std::all_of(inv.maslov.begin(), inv.maslov.end(),
                               [](const Integer& x) { return mpz_even_p(x.get_mpz_t()); });

  // core variable index -> original index
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < q.n(); ++j)
    if (!std::binary_search(strict.begin(), strict.end(), j)) keep.push_back(j);
  bool trivial = loops.index_in_dual == tag.component_count;
  for (std::size_t r = 0; r < inv.loop_vectors.rows() && trivial; ++r) {
    const auto v = inv.loop_vectors.row_span(r);
    const auto flips = [&](std::size_t j) {
      const Rational x = dot(v, std::span<const Rational>(to_rational(q.gamma(j))));
      return mpz_odd_p(x.get_num_mpz_t()) != 0;
    };
    for (auto s : strict) trivial = trivial && !flips(s);
    for (std::size_t f = 0; f < core->factor_vars.size() && trivial; ++f) {
      std::size_t count = 0;
      for (auto cj : core->factor_vars[f]) count += flips(keep[cj]);
      // S^0 factors carry components; there a flip is a component swap
      if (core->spheres[f] == 0) trivial = count == 0;
      else trivial = count % 2 == 0;
    }
  }
  if (trivial) {
    std::string total;
    for (int d : tag.sphere_dims) total += sphere(d) + " x ";
    total += tag.torus_rank == 1 ? "S^1" : "T^" + str(tag.torus_rank);
    tag.total_space = total;
  }
  return tag;
}

std::optional<HomologyProfile> cover_profile(const TopologyTag& tag, int L_dim) {
  if (tag.sphere_dims.empty()) return std::nullopt;
  std::map<int, long> dims{{0, 1}};
  for (int d : tag.sphere_dims) {
    if (d < 2) return std::nullopt;  // S^1 factor: the cover is not compact
    std::map<int, long> next;
    for (const auto& [deg, v] : dims) {
      next[deg] += v;
      next[deg + d] += v;
    }
    dims = std::move(next);
  }
  return HomologyProfile::make(std::move(dims), L_dim, tag.orientable);
}

}  // namespace quadlag
