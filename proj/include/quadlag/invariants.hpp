#pragma once

// Lattice and deck data of a quadric system, the loop lattice of the
// associated Lagrangian, its Maslov and area homomorphisms and the
// monotonicity verdict.

#include <optional>
#include <string>
#include <vector>

#include "quadlag/correspondence.hpp"
#include "quadlag/exactlinalg.hpp"
#include "quadlag/polytope.hpp"

namespace quadlag {

struct DeckData {
  LatticeBasis Lambda;          // Z<gamma_1, ..., gamma_n> in Z^m, HNF
  RationalLattice LambdaStar;   // dual of Lambda
  std::size_t torus_rank = 0;   // m
  Integer deck_order;           // |Lambda* / 2 Lambda*| = 2^m
};

// Throws RankDeficient when the gamma_j do not span a rank-m lattice; the
// torus construction is undefined then.
DeckData deck_data(const QuadricSystem& q);

struct LoopLattice {
  IntMatrix basis;        // rows are coordinates against LambdaStar.basis(), HNF
  Integer index_in_dual;  // [Lambda* : loops]
  bool known = true;      // false: fell back to 2 Lambda*
  std::vector<std::string> assumptions;
};

// {v in Lambda* : <v, gamma_s> even for every strictly redundant s}.
// With weakly redundant indices present the rule does not apply and the
// sublattice 2 Lambda* (doubled loops) is returned instead, marked unknown.
// `core_connected` says whether R of the irredundant core is known to be
// connected; otherwise that is recorded as an assumption.
LoopLattice loop_lattice(const DeckData& deck, const QuadricSystem& q,
                         const std::vector<std::size_t>& strict_redundant,
                         const std::vector<std::size_t>& weak_redundant = {},
                         bool core_connected = false);

struct InvariantReport {
  IntVector t;                     // sum of the gamma_j
  IntMatrix loop_coords;           // loop basis in Lambda* coordinates
  RatMatrix loop_vectors;          // the same basis as vectors in Q^m
  IntVector maslov;                // <v, t>
  RatVector area_over_pi;          // <v, delta> / 2
  Integer minimal_maslov;          // gcd of maslov
  bool monotone = false;
  std::optional<Rational> c_over_pi;
  std::optional<IntVector> counterexample;  // Lambda* coordinates
  std::vector<std::string> assumptions;
};

InvariantReport maslov_area_report(const DeckData& deck, const QuadricSystem& q,
                                   const LoopLattice& loops);

enum class Agreement { Agree, Disagree, NotApplicable };
const char* to_string(Agreement a);

// Compares Fano-up-to-translation with the monotonicity verdict. The
// equivalence is only claimed for irredundant Delzant presentations;
// anything else is NotApplicable.
Agreement fano_monotone_crosscheck(const HPolytope& p, const InvariantReport& r,
                                   const EnumerationOptions& opts = {});

}  // namespace quadlag
