#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace phtqc {

// Exact minimum-weight perfect matching on a complete graph with integer
// weights, via the primal-dual blossom algorithm (odd-set contraction),
// O(n^3). Internally runs as maximum-weight matching on transformed weights
// w' = (w_max - w + 1) + BIG, where BIG makes every perfect matching beat
// any smaller one, so the maximum-weight solution is the minimum-cost
// perfect matching. Integer duals are kept exact by the usual factor-2
// scaling of edge weights.
class MwpmSolver {
public:
    // weights: row-major n*n symmetric matrix; diagonal ignored.
    // Returns pairs (i, j) with i < j, sorted by i.
    std::vector<std::pair<int, int>> solve(int n_nodes,
                                           const std::vector<std::int64_t>& weights) {
        if (n_nodes < 0 || n_nodes % 2 != 0)
            throw std::invalid_argument("perfect matching needs an even node count");
        if (n_nodes == 0) return {};
        if (static_cast<std::size_t>(n_nodes) * n_nodes != weights.size())
            throw std::invalid_argument("weight matrix size mismatch");

        n = n_nodes;
        init_tables(weights);
        while (run_phase()) {
        }

        std::vector<std::pair<int, int>> result;
        for (int u = 1; u <= n; ++u)
            if (match[u] > u) result.emplace_back(u - 1, match[u] - 1);
        if (static_cast<int>(result.size()) * 2 != n)
            throw std::runtime_error("matching is not perfect");  // unreachable on complete graphs
        return result;
    }

    static std::int64_t total_weight(const std::vector<std::pair<int, int>>& m,
                                     const std::vector<std::int64_t>& weights,
                                     int n_nodes) {
        std::int64_t tot = 0;
        for (auto [i, j] : m) tot += weights[static_cast<std::size_t>(i) * n_nodes + j];
        return tot;
    }

private:
    struct Edge {
        int u = 0, v = 0;
        std::int64_t w = 0;
    };

    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    int n = 0;    // original vertices, ids 1..n
    int n_x = 0;  // highest id in use (vertices + blossoms)
    int cap = 0;  // table capacity (2n + 1)
    std::vector<Edge> g;                // cap*cap adjacency, g[u*cap+v]
    std::vector<std::int64_t> lab;      // dual variables
    std::vector<int> match, slack_src, st, pa, S, vis;
    std::vector<std::vector<int>> flower;
    std::vector<std::vector<int>> flower_from;  // flower_from[b][x] for x in 1..n
    std::deque<int> q;
    int vis_stamp = 0;

    Edge& edge(int u, int v) { return g[static_cast<std::size_t>(u) * cap + v]; }

    std::int64_t e_delta(const Edge& e) {
        return lab[e.u] + lab[e.v] - edge(e.u, e.v).w * 2;
    }

    void init_tables(const std::vector<std::int64_t>& weights) {
        cap = 2 * n + 1;
        g.assign(static_cast<std::size_t>(cap) * cap, Edge{});
        lab.assign(cap, 0);
        match.assign(cap, 0);
        slack_src.assign(cap, 0);
        st.assign(cap, 0);
        pa.assign(cap, 0);
        S.assign(cap, -1);
        vis.assign(cap, 0);
        flower.assign(cap, {});
        flower_from.assign(cap, std::vector<int>(n + 1, 0));
        vis_stamp = 0;

        std::int64_t w_min = kInf, w_max_orig = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) {
                    const std::int64_t w = weights[static_cast<std::size_t>(i) * n + j];
                    w_min = std::min(w_min, w);
                    w_max_orig = std::max(w_max_orig, w);
                }
        // shift into positives and add the perfection bonus
        const std::int64_t big = (w_max_orig - w_min + 2) * (n + 2);
        std::int64_t w_max = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) {
                    const std::int64_t w =
                        (w_max_orig - weights[static_cast<std::size_t>(i) * n + j] + 1) + big;
                    edge(i + 1, j + 1) = Edge{i + 1, j + 1, w};
                    w_max = std::max(w_max, w);
                }
        n_x = n;
        for (int u = 0; u <= n; ++u) st[u] = u;
        for (int u = 1; u <= n; ++u) {
            lab[u] = w_max;
            flower_from[u][u] = u;
        }
    }

    void update_slack(int u, int x) {
        if (!slack_src[x] || e_delta(edge(u, x)) < e_delta(edge(slack_src[x], x)))
            slack_src[x] = u;
    }

    void set_slack(int x) {
        slack_src[x] = 0;
        for (int u = 1; u <= n; ++u)
            if (edge(u, x).w > 0 && st[u] != x && S[st[u]] == 0) update_slack(u, x);
    }

    void q_push(int x) {
        if (x <= n)
            q.push_back(x);
        else
            for (int sub : flower[x]) q_push(sub);
    }

    void set_st(int x, int b) {
        st[x] = b;
        if (x > n)
            for (int sub : flower[x]) set_st(sub, b);
    }

    // Position of sub-blossom xr in flower[b], reversing the cycle if needed
    // so the alternating path from the base has even length.
    int get_pr(int b, int xr) {
        auto& f = flower[b];
        const int pr = static_cast<int>(std::find(f.begin(), f.end(), xr) - f.begin());
        if (pr % 2 == 1) {
            std::reverse(f.begin() + 1, f.end());
            return static_cast<int>(f.size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match[u] = edge(u, v).v;
        if (u > n) {
            const Edge e = edge(u, v);
            const int xr = flower_from[u][e.u];
            const int pr = get_pr(u, xr);
            auto& f = flower[u];
            for (int i = 0; i < pr; ++i) set_match(f[i], f[i ^ 1]);
            set_match(xr, v);
            std::rotate(f.begin(), f.begin() + pr, f.end());
        }
    }

    void augment(int u, int v) {
        for (;;) {
            const int xnv = st[match[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st[pa[xnv]]);
            u = st[pa[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++vis_stamp; u || v; std::swap(u, v)) {
            if (!u) continue;
            if (vis[u] == vis_stamp) return u;
            vis[u] = vis_stamp;
            u = st[match[u]];
            if (u) u = st[pa[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n + 1;
        while (b <= n_x && st[b]) ++b;
        if (b > n_x) ++n_x;
        lab[b] = 0;
        S[b] = 0;
        match[b] = match[lca];
        auto& f = flower[b];
        f.clear();
        f.push_back(lca);
        for (int x = u, y; x != lca; x = st[pa[y]]) {
            f.push_back(x);
            f.push_back(y = st[match[x]]);
            q_push(y);
        }
        std::reverse(f.begin() + 1, f.end());
        for (int x = v, y; x != lca; x = st[pa[y]]) {
            f.push_back(x);
            f.push_back(y = st[match[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x; ++x) {
            edge(b, x).w = 0;
            edge(x, b).w = 0;
        }
        std::fill(flower_from[b].begin(), flower_from[b].end(), 0);
        for (int xs : f) {
            for (int x = 1; x <= n_x; ++x)
                if (edge(xs, x).w > 0 &&
                    (edge(b, x).w == 0 || e_delta(edge(xs, x)) < e_delta(edge(b, x)))) {
                    edge(b, x) = edge(xs, x);
                    edge(x, b) = edge(x, xs);
                }
            for (int x = 1; x <= n; ++x)
                if (flower_from[xs][x]) flower_from[b][x] = xs;
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int sub : flower[b]) set_st(sub, sub);
        const int xr = flower_from[b][edge(b, pa[b]).u];
        const int pr = get_pr(b, xr);
        auto& f = flower[b];
        for (int i = 0; i < pr; i += 2) {
            const int xs = f[i];
            const int xns = f[i + 1];
            pa[xs] = edge(xns, xs).u;
            S[xs] = 1;
            S[xns] = 0;
            slack_src[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        S[xr] = 1;
        pa[xr] = pa[b];
        for (std::size_t i = pr + 1; i < f.size(); ++i) {
            S[f[i]] = -1;
            set_slack(f[i]);
        }
        st[b] = 0;
    }

    bool on_found_edge(const Edge& e) {
        const int u = st[e.u];
        const int v = st[e.v];
        if (S[v] == -1) {
            pa[v] = e.u;
            S[v] = 1;
            const int nu = st[match[v]];
            slack_src[v] = 0;
            slack_src[nu] = 0;
            S[nu] = 0;
            q_push(nu);
        } else if (S[v] == 0) {
            const int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool run_phase() {
        std::fill(S.begin() + 1, S.begin() + n_x + 1, -1);
        std::fill(slack_src.begin() + 1, slack_src.begin() + n_x + 1, 0);
        q.clear();
        for (int x = 1; x <= n_x; ++x)
            if (st[x] == x && !match[x]) {
                pa[x] = 0;
                S[x] = 0;
                q_push(x);
            }
        if (q.empty()) return false;

        for (;;) {
            while (!q.empty()) {
                const int u = q.front();
                q.pop_front();
                if (S[st[u]] == 1) continue;
                for (int v = 1; v <= n; ++v)
                    if (edge(u, v).w > 0 && st[u] != st[v]) {
                        if (e_delta(edge(u, v)) == 0) {
                            if (on_found_edge(edge(u, v))) return true;
                        } else {
                            update_slack(u, st[v]);
                        }
                    }
            }

            std::int64_t d = kInf;
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b && S[b] == 1) d = std::min(d, lab[b] / 2);
            for (int x = 1; x <= n_x; ++x)
                if (st[x] == x && slack_src[x]) {
                    if (S[x] == -1)
                        d = std::min(d, e_delta(edge(slack_src[x], x)));
                    else if (S[x] == 0)
                        d = std::min(d, e_delta(edge(slack_src[x], x)) / 2);
                }

            for (int u = 1; u <= n; ++u) {
                if (S[st[u]] == 0) {
                    if (lab[u] <= d) return false;  // max-weight stop; unreachable here
                    lab[u] -= d;
                } else if (S[st[u]] == 1) {
                    lab[u] += d;
                }
            }
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b && S[b] >= 0) {
                    if (S[b] == 0)
                        lab[b] += 2 * d;
                    else
                        lab[b] -= 2 * d;
                }

            q.clear();
            for (int x = 1; x <= n_x; ++x)
                if (st[x] == x && slack_src[x] && st[slack_src[x]] != x &&
                    e_delta(edge(slack_src[x], x)) == 0)
                    if (on_found_edge(edge(slack_src[x], x))) return true;
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b && S[b] == 1 && lab[b] == 0) expand_blossom(b);
        }
    }
};

// Convenience wrapper reusing one solver per thread.
inline std::vector<std::pair<int, int>> mwpm(int n,
                                             const std::vector<std::int64_t>& weights) {
    thread_local MwpmSolver solver;
    return solver.solve(n, weights);
}

}  // namespace phtqc
