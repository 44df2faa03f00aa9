#pragma once

// Exhaustive search over differential ranks in the degree-table model of
// the spectral sequence. Independent of the engine's recurrence; used to
// check that the engine never excludes something realizable.

#include <vector>

namespace quadlag::oracles {

// True when some choice of ranks for the page-r differentials (degree
// -1 + rN, r = 1..g-1, g = floor((L_dim+1)/N) + 1) leaves every degree with
// dimension zero. Constraints: each rank is at most the dimension at both
// ends, and incoming plus outgoing rank at a degree is at most its dimension.
bool can_vanish(const std::vector<long>& dims, int L_dim, int N);

}  // namespace quadlag::oracles
