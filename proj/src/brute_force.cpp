#include "quadlag/brute_force.hpp"

#include <map>
#include <utility>

namespace quadlag::oracles {

namespace {

struct Search {
  int L_dim, N, g;
  std::map<std::pair<int, std::vector<long>>, bool> memo;

  bool page(int r, const std::vector<long>& dims) {
    if (r >= g) {
      for (long d : dims)
        if (d != 0) return false;
      return true;
    }
    const auto key = std::make_pair(r, dims);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int shift = r * N - 1;
    std::vector<std::pair<int, int>> edges;
    for (int d = 0; d + shift < static_cast<int>(dims.size()); ++d)
      if (dims[d] > 0 && dims[d + shift] > 0) edges.emplace_back(d, d + shift);
    std::vector<long> used(dims.size(), 0);
    const bool ok = assign(r, dims, edges, 0, used);
    memo[key] = ok;
    return ok;
  }

  bool assign(int r, const std::vector<long>& dims, const std::vector<std::pair<int, int>>& edges,
              std::size_t e, std::vector<long>& used) {
    if (e == edges.size()) {
      std::vector<long> next(dims.size());
      for (std::size_t d = 0; d < dims.size(); ++d) next[d] = dims[d] - used[d];
      return page(r + 1, next);
    }
    const auto [s, t] = edges[e];
    const long cap = std::min(dims[s] - used[s], dims[t] - used[t]);
    for (long rank = cap; rank >= 0; --rank) {
      used[s] += rank;
      used[t] += rank;
      const bool ok = assign(r, dims, edges, e + 1, used);
      used[s] -= rank;
      used[t] -= rank;
      if (ok) return true;
    }
    return false;
  }
};

}  // namespace

bool can_vanish(const std::vector<long>& dims, int L_dim, int N) {
  Search s{L_dim, N, (L_dim + 1) / N + 1, {}};
  return s.page(1, dims);
}

}  // namespace quadlag::oracles
