#include "quadlag/oracle.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace quadlag {

namespace {

using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXd to_double(const IntMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

Eigen::VectorXd to_double(const RatVector& v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].get_d();
  return out;
}

Eigen::VectorXd residuals(const Eigen::MatrixXd& G, const Eigen::VectorXd& d, const Eigen::VectorXd& u) {
  return (G * u.cwiseProduct(u) - d).cwiseAbs();
}

RPoint finish(const QuadricSystem& q, Eigen::VectorXd u) {
  const auto G = to_double(q.Gamma);
  const auto d = to_double(q.delta);
  return RPoint{u, residuals(G, d, u)};
}

// Gauss-Newton with minimum-norm steps on F(u) = Gamma u^2 - delta.
bool polish(const Eigen::MatrixXd& G, const Eigen::VectorXd& d, Eigen::VectorXd& u,
            const OracleConfig& cfg) {
  for (int it = 0; it < cfg.newton_iterations; ++it) {
    const Eigen::VectorXd F = G * u.cwiseProduct(u) - d;
    if (F.cwiseAbs().maxCoeff() <= cfg.residual_tol * 1e-2) return true;
    const Eigen::MatrixXd J = 2.0 * G * u.asDiagonal();
    const Eigen::MatrixXd JJt = J * J.transpose();
    const Eigen::VectorXd y = JJt.ldlt().solve(F);
    if (!y.allFinite()) return false;
    u -= J.transpose() * y;
  }
  return (G * u.cwiseProduct(u) - d).cwiseAbs().maxCoeff() <= cfg.residual_tol;
}

bool on_R_exactly(const QuadricSystem& q, const RatVector& squares) {
  for (std::size_t i = 0; i < q.m(); ++i)
    if (dot(std::span<const Rational>(squares), q.Gamma.row_span(i)) != q.delta[i]) return false;
  return true;
}

std::optional<Eigen::VectorXd> hinted_point(const QuadricSystem& q, const FamilySpec& hint) {
  if (static_cast<int>(q.n()) != hint.n) return std::nullopt;
  RatVector sq(q.n(), Rational(1));
  if (hint.kind == FamilySpec::Kind::RedundantSimplex) sq.back() = hint.k + 2;
  if (!on_R_exactly(q, sq)) return std::nullopt;
  Eigen::VectorXd u(q.n());
  for (std::size_t j = 0; j < q.n(); ++j) u(j) = std::sqrt(sq[j].get_d());
  return u;
}

}  // namespace

RPoint sample_point(const QuadricSystem& q, const std::optional<FamilySpec>& hint, std::uint64_t seed,
                    const OracleConfig& cfg) {
  if (hint)
    if (auto u = hinted_point(q, *hint)) return finish(q, *u);
  if (seed == 0 && on_R_exactly(q, RatVector(q.n(), Rational(1))))
    return finish(q, Eigen::VectorXd::Ones(q.n()));

  const auto P = quadrics_to_polytope(q);
  const auto vs = enumerate_vertices(P);
  if (vs.empty) throw OutOfModel("sample_point: R is empty");
  if (!vs.bounded || !vs.full_dimensional)
    throw OutOfModel("sample_point: needs a bounded full-dimensional polytope");

  const auto G = to_double(q.Gamma);
  const auto d = to_double(q.delta);
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution coin(0.5);
  for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
    // positive weights on every vertex give an interior point
    RatVector x(P.dim(), Rational(0));
    Rational total = 0;
    for (const auto& v : vs.vertices) {
      const Rational w = seed == 0 && attempt == 0 ? Rational(1) : Rational(1 + expo(rng));
      total += w;
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += w * v.point[c];
    }
    for (auto& c : x) c /= total;
    const auto slack = P.slacks(x);
    Eigen::VectorXd u(q.n());
    for (std::size_t j = 0; j < q.n(); ++j) {
      const double r = std::sqrt(slack[j].get_d());
      u(j) = (seed != 0 && coin(rng)) ? -r : r;
    }
    if (polish(G, d, u, cfg)) {
      auto pt = RPoint{u, residuals(G, d, u)};
      if (pt.residuals.maxCoeff() <= cfg.residual_tol) return pt;
    }
  }
  throw ConvergenceError("sample_point: refinement did not converge");
}

Eigen::VectorXd loop_direction(const DeckData& deck, const TorusLoop& loop) {
  const RatMatrix E = deck.LambdaStar.basis();
  if (loop.coords.size() != E.rows()) throw DimensionMismatch("loop class has the wrong length");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(E.cols());
  for (std::size_t r = 0; r < E.rows(); ++r)
    for (std::size_t c = 0; c < E.cols(); ++c) w(c) += Rational(Rational(loop.coords[r]) * E(r, c)).get_d();
  return loop.doubled ? Eigen::VectorXd(2.0 * w) : w;
}

namespace {

// Exact phase speeds <gamma_j, w>; checks closure at u.
std::vector<Rational> speeds(const QuadricSystem& q, const DeckData& deck, const TorusLoop& loop,
                             const RPoint& point) {
  const RatMatrix E = deck.LambdaStar.basis();
  RatVector w(E.cols(), Rational(0));
  for (std::size_t r = 0; r < E.rows(); ++r)
    for (std::size_t c = 0; c < E.cols(); ++c) w[c] += Rational(loop.coords[r]) * E(r, c);
  if (loop.doubled)
    for (auto& x : w) x *= 2;
  std::vector<Rational> out;
  for (std::size_t j = 0; j < q.n(); ++j) {
    const Rational s = dot(std::span<const Rational>(w), q.Gamma.col(j));
    const bool even_integer = s.get_den() == 1 && mpz_even_p(s.get_num_mpz_t());
    if (!even_integer && std::abs(point.u(j)) > 1e-12)
      throw OutOfModel("loop does not close at this point: coordinate " + std::to_string(j + 1) +
                       " turns by " + to_string(s) + " half-turns");
    out.push_back(s);
  }
  return out;
}

int panel_count(const std::vector<Rational>& sp, int requested, const OracleConfig& cfg) {
  double fastest = 0;
  for (const auto& s : sp) fastest += std::abs(s.get_d());
  const int base = requested > 0 ? requested : cfg.default_samples;
  return std::max(base, static_cast<int>(8 * fastest) + 16);
}

}  // namespace

double loop_area(const QuadricSystem& q, const DeckData& deck, const TorusLoop& loop,
                 const RPoint& point, const OracleConfig& cfg) {
  const auto sp = speeds(q, deck, loop, point);
  const int N = panel_count(sp, loop.samples, cfg);
  // periodic integrand: the trapezoid rule is the natural quadrature
  double sum = 0;
  for (int i = 0; i < N; ++i) {
    const double s = static_cast<double>(i) / N;
    for (std::size_t j = 0; j < q.n(); ++j) {
      const double speed = kPi * sp[j].get_d();
      const double theta = speed * s;
      const double x = point.u(j) * std::cos(theta);
      const double dy = point.u(j) * std::cos(theta) * speed;
      sum += x * dy;
    }
  }
  return sum / N;
}

long loop_maslov(const QuadricSystem& q, const DeckData& deck, const TorusLoop& loop,
                 const RPoint& point, const OracleConfig& cfg) {
  const auto sp = speeds(q, deck, loop, point);
  const std::size_t n = q.n(), m = q.m();
  const Eigen::MatrixXd G = to_double(q.Gamma);
  const Eigen::VectorXd& u = point.u;

  // tangent frame at s = 0: fiber directions ker(2 Gamma diag u), then the
  // torus directions i pi gamma_{j,p} u_j
  const Eigen::MatrixXd J = 2.0 * G * u.asDiagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
  if (static_cast<std::size_t>(lu.rank()) != m)
    throw ConvergenceError("loop_maslov: Jacobian of the quadrics is rank deficient at u");
  // Eigen returns a zero column for a trivial kernel
  Eigen::MatrixXd fiber = n > m ? Eigen::MatrixXd(lu.kernel()) : Eigen::MatrixXd(n, 0);
  if (fiber.cols() > 0) fiber = Eigen::HouseholderQR<Eigen::MatrixXd>(fiber).householderQ() *
                                Eigen::MatrixXd::Identity(n, fiber.cols());
  Eigen::MatrixXcd W0(n, n);
  for (Eigen::Index c = 0; c < fiber.cols(); ++c)
    for (std::size_t j = 0; j < n; ++j) W0(j, c) = fiber(j, c);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t j = 0; j < n; ++j) W0(j, fiber.cols() + p) = cd(0, kPi * G(p, j) * u(j));
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(W0).singularValues();
  if (sv(sv.size() - 1) < 1e-9 * std::max(1.0, sv(0)))
    throw ConvergenceError("loop_maslov: the Lagrangian frame is degenerate at u");

  const auto phase = [&](double s) {
    Eigen::MatrixXcd W = W0;
    for (std::size_t j = 0; j < n; ++j) W.row(j) *= std::polar(1.0, kPi * sp[j].get_d() * s);
    const cd det = W.partialPivLu().determinant();
    return std::arg(det * det);
  };
  const auto wrap = [](double a) {
    while (a > kPi) a -= 2 * kPi;
    while (a <= -kPi) a += 2 * kPi;
    return a;
  };
  // accumulate phase increments, bisecting any step that is too large
  std::function<double(double, double, double, double, int)> step =
      [&](double s0, double p0, double s1, double p1, int depth) -> double {
    const double inc = wrap(p1 - p0);
    if (std::abs(inc) < cfg.max_phase_step) return inc;
    if (depth >= cfg.max_refinement_depth)
      throw ConvergenceError("loop_maslov: phase refinement limit reached");
    const double sm = 0.5 * (s0 + s1);
    const double pm = phase(sm);
    return step(s0, p0, sm, pm, depth + 1) + step(sm, pm, s1, p1, depth + 1);
  };
  const int N = panel_count(sp, loop.samples, cfg);
  double total = 0;
  double prev = phase(0.0);
  for (int i = 1; i <= N; ++i) {
    const double s = static_cast<double>(i) / N;
    const double cur = phase(s);
    total += step(static_cast<double>(i - 1) / N, prev, s, cur, 0);
    prev = cur;
  }
  const double turns = total / (2 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > cfg.winding_tol)
    throw ConvergenceError("loop_maslov: winding " + std::to_string(turns) + " is not an integer");
  return static_cast<long>(rounded);
}

}  // namespace quadlag
