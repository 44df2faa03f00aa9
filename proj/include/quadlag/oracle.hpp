#pragma once

// Floating-point cross-checks of the exact invariants: points of R, the
// Liouville form integrated along torus-orbit loops, and Maslov indices
// from the winding of det^2 of a Lagrangian frame.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadlag/correspondence.hpp"
#include "quadlag/families.hpp"
#include "quadlag/invariants.hpp"

namespace quadlag {

struct OracleConfig {
  double residual_tol = 1e-10;      // |Gamma u^2 - delta| after refinement
  double identity_tol = 1e-9;       // sum_j u_j^2 gamma_j vs delta
  double area_rel_tol = 1e-8;       // |A - A0| / (1 + |A0|)
  double winding_tol = 0.01;        // distance of the winding from an integer, in turns
  double max_phase_step = 1.5707963267948966;  // pi/2
  int default_samples = 512;
  int max_refinement_depth = 30;
  int newton_iterations = 60;
  int restarts = 8;
};

struct RPoint {
  Eigen::VectorXd u;
  Eigen::VectorXd residuals;  // |Gamma u^2 - delta| per quadric
};

// A point of R. With a family hint the known closed-form point is used.
// Otherwise the all-ones point when it lies on R and the seed is 0, and
// else the square roots of the slacks at a seeded interior point of the
// polytope, with seeded signs, polished by Gauss-Newton.
RPoint sample_point(const QuadricSystem& q, const std::optional<FamilySpec>& hint, std::uint64_t seed,
                    const OracleConfig& cfg = {});

struct TorusLoop {
  IntVector coords;      // class v in Lambda* coordinates
  bool doubled = true;   // realize 2v rather than v
  int samples = 0;       // 0: use the configured default
};

// The angle vector w of the realized path phi(s) = s w, s in [0, 1].
Eigen::VectorXd loop_direction(const DeckData& deck, const TorusLoop& loop);

// Integral of sum_j x_j dy_j along s -> psi(u, s w). Throws OutOfModel if the
// path does not close at u.
double loop_area(const QuadricSystem& q, const DeckData& deck, const TorusLoop& loop,
                 const RPoint& point, const OracleConfig& cfg = {});

// Winding number of det(W)^2 / |det W|^2 for the Lagrangian frame W(s) of
// L along the loop. Throws ConvergenceError on frame degeneracy or when the
// winding is not within tolerance of an integer.
long loop_maslov(const QuadricSystem& q, const DeckData& deck, const TorusLoop& loop,
                 const RPoint& point, const OracleConfig& cfg = {});

struct CheckRecord {
  std::string check;
  double expected = 0;
  double actual = 0;
  double tolerance = 0;
  bool pass = false;
};

}  // namespace quadlag
