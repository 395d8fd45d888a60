#pragma once

// Exhaustive (n-1)!! minimum perfect matching for cross-checking the
// blossom solver on small instances.

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace phtqc::testing {

inline void brute_recurse(const std::vector<std::int64_t>& w, int n,
                          std::uint32_t used, std::int64_t acc,
                          std::vector<std::pair<int, int>>& cur,
                          std::int64_t& best,
                          std::vector<std::pair<int, int>>& best_pairs) {
    int u = -1;
    for (int i = 0; i < n; ++i)
        if (!(used >> i & 1)) {
            u = i;
            break;
        }
    if (u < 0) {
        if (acc < best) {
            best = acc;
            best_pairs = cur;
        }
        return;
    }
    for (int v = u + 1; v < n; ++v) {
        if (used >> v & 1) continue;
        cur.emplace_back(u, v);
        brute_recurse(w, n, used | (1u << u) | (1u << v),
                      acc + w[static_cast<std::size_t>(u) * n + v], cur, best,
                      best_pairs);
        cur.pop_back();
    }
}

inline std::int64_t brute_force_mwpm_weight(int n, const std::vector<std::int64_t>& w) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::pair<int, int>> cur, best_pairs;
    brute_recurse(w, n, 0, 0, cur, best, best_pairs);
    return best;
}

}  // namespace phtqc::testing
