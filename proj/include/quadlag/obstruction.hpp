#pragma once

// Dimension counting in the lifted Floer spectral sequence. Page r carries
// differentials of degree -1 + rN on the Z/2 homology of the universal cover;
// the sequence must die by page floor((dim L + 1)/N) + 1. Lower bounds that
// stay positive there exclude N as a minimal Maslov number.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadlag/exactlinalg.hpp"

namespace quadlag {

struct HomologyProfile {
  std::map<int, long> dims;  // degree -> dim over Z/2, zero entries omitted
  int cover_dim = 0;         // top degree with nonzero homology
  int L_dim = 0;
  bool orientable = true;

  // Validates: dims[0] >= 1, nonnegative entries, cover_dim <= L_dim.
  static HomologyProfile make(std::map<int, long> dims, int L_dim, bool orientable);

  std::vector<long> table() const;  // indexed by degree 0..cover_dim
  long total() const;
};

struct PageTable {
  int page = 1;
  std::vector<long> lower;
  std::vector<long> upper;
};

struct EngineResult {
  bool excluded = false;
  std::optional<int> witness_degree;  // least degree whose lower bound survives
  std::vector<int> surviving;         // every such degree
  int collapse_page = 0;              // g
  std::vector<PageTable> pages;       // pages 1..g
};

// Rejects profiles with cover_dim 0 (non-compact covers are outside the
// model) and N < 2.
EngineResult run_engine(const HomologyProfile& profile, int N);

// The same recurrence started from separate lower and upper tables.
EngineResult run_engine_bounds(std::vector<long> lower, const std::vector<long>& upper, int L_dim,
                               int N);

struct Exclusion {
  std::string reason;  // "parity" or "engine"
  std::optional<int> witness_degree;
  std::vector<int> surviving;
};

struct AdmissibleSet {
  std::vector<int> admissible;           // ascending
  std::map<int, Exclusion> excluded;     // every other N in [2, N_max]
};

AdmissibleSet admissible_maslov(const HomologyProfile& profile, int N_max);

struct BinomialLemma {
  int m = 0;
  Integer central;   // C(m, floor(m/2))
  Integer tail_sum;  // sum over i <= floor(m/2)-3 and i >= floor(m/2)+3
  bool holds = false;
  // even m only: 2^(m-1) < C(m, m/2) + C(m, m/2 + 1)
  std::optional<bool> stronger_holds;
  Integer stronger_lhs, stronger_rhs;
};

BinomialLemma binomial_lemma(int m);

}  // namespace quadlag
