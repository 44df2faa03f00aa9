#include "quadlag/invariants.hpp"

namespace quadlag {

namespace {

Integer as_integer(const Rational& q, const char* what) {
  if (q.get_den() != 1) throw std::logic_error(std::string(what) + " is not an integer");
  return q.get_num();
}

}  // namespace

DeckData deck_data(const QuadricSystem& q) {
  DeckData d;
  d.Lambda = LatticeBasis::span(q.Gamma.transpose());
  if (d.Lambda.rank() != q.m())
    throw RankDeficient("the gamma_j span a lattice of rank " + std::to_string(d.Lambda.rank()) +
                        " < " + std::to_string(q.m()) + "; the torus construction is undefined");
  d.LambdaStar = dual_lattice(d.Lambda);
  d.torus_rank = q.m();
  mpz_ui_pow_ui(d.deck_order.get_mpz_t(), 2, q.m());
  return d;
}

LoopLattice loop_lattice(const DeckData& deck, const QuadricSystem& q,
                         const std::vector<std::size_t>& strict_redundant,
                         const std::vector<std::size_t>& weak_redundant, bool core_connected) {
  const std::size_t m = deck.torus_rank;
  LoopLattice out;
  if (!weak_redundant.empty()) {
    IntMatrix twice(m, m);
    for (std::size_t i = 0; i < m; ++i) twice(i, i) = 2;
    out.basis = twice;
    out.index_in_dual = deck.deck_order;
    out.known = false;
    out.assumptions.push_back(
        "loop lattice unknown: weakly redundant inequalities present; invariants use doubled loops "
        "2 Lambda*");
    return out;
  }
  if (!core_connected) out.assumptions.push_back("R of the irredundant core assumed connected");
  if (strict_redundant.empty()) {
    out.basis = IntMatrix::identity(m);
    out.index_in_dual = 1;
    return out;
  }
  // c in Z^m with W c = 0 mod 2, W's rows being gamma_s in Lambda*-dual coordinates
  const RatMatrix E = deck.LambdaStar.basis();
  const std::size_t s = strict_redundant.size();
  IntMatrix M(s, m + s);
  for (std::size_t r = 0; r < s; ++r) {
    const auto g = to_rational(q.gamma(strict_redundant[r]));
    for (std::size_t c = 0; c < m; ++c)
      M(r, c) = as_integer(dot(E.row_span(c), std::span<const Rational>(g)), "pairing with Lambda*");
    M(r, m + r) = 2;
  }
  const auto K = integer_kernel(M);
  IntMatrix proj(K.rows(), m);
  for (std::size_t r = 0; r < K.rows(); ++r)
    for (std::size_t c = 0; c < m; ++c) proj(r, c) = K(r, c);
  const auto L = LatticeBasis::span(proj);
  out.basis = L.basis();
  out.index_in_dual = snf_index(L, LatticeBasis::standard(m));
  return out;
}

InvariantReport maslov_area_report(const DeckData& deck, const QuadricSystem& q,
                                   const LoopLattice& loops) {
  const std::size_t m = deck.torus_rank;
  InvariantReport r;
  r.t.assign(m, Integer(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < q.n(); ++j) r.t[i] += q.Gamma(i, j);
  r.loop_coords = loops.basis;
  r.loop_vectors = to_rational(loops.basis) * deck.LambdaStar.basis();
  r.assumptions = loops.assumptions;

  bool odd_class = false;
  for (const auto& x : loops.basis.data()) odd_class = odd_class || mpz_odd_p(x.get_mpz_t());
  if (odd_class)
    r.assumptions.push_back(
        "area extended linearly from doubled loops: I_omega(v) = (pi/2) <v, delta> on odd classes");

  const RatVector t = to_rational(r.t);
  for (std::size_t i = 0; i < r.loop_vectors.rows(); ++i) {
    const auto v = r.loop_vectors.row_span(i);
    r.maslov.push_back(as_integer(dot(v, std::span<const Rational>(t)), "Maslov value"));
    r.area_over_pi.push_back(dot(v, std::span<const Rational>(q.delta)) / 2);
  }
  r.minimal_maslov = gcd_over_basis(std::span<const Integer>(r.maslov));

  // monotone iff area = c' * maslov with one c' > 0
  std::optional<Rational> ratio;
  std::optional<std::size_t> bad;
  for (std::size_t i = 0; i < r.maslov.size() && !bad; ++i) {
    if (r.maslov[i] == 0) {
      if (r.area_over_pi[i] != 0) bad = i;
      continue;
    }
    const Rational c = r.area_over_pi[i] / Rational(r.maslov[i]);
    if (c <= 0 || (ratio && c != *ratio)) bad = i;
    else ratio = c;
  }
  r.monotone = !bad.has_value();
  if (r.monotone) r.c_over_pi = ratio;
  else r.counterexample = r.loop_coords.row(*bad);
  return r;
}

const char* to_string(Agreement a) {
  switch (a) {
    case Agreement::Agree: return "agree";
    case Agreement::Disagree: return "disagree";
    case Agreement::NotApplicable: return "not applicable";
  }
  return "?";
}

Agreement fano_monotone_crosscheck(const HPolytope& p, const InvariantReport& r,
                                   const EnumerationOptions& opts) {
  const auto s = analyze_structure(p, opts);
  if (!s.delzant || !s.bounded || !s.redundant.empty()) return Agreement::NotApplicable;
  return s.fano == r.monotone ? Agreement::Agree : Agreement::Disagree;
}

}  // namespace quadlag
