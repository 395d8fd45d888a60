#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phtqc/lattice.hpp"
#include "phtqc/matching.hpp"
#include "phtqc/sampler.hpp"

namespace phtqc {

// Supercell partition of the cells plus the defect parity of each block.
// Losses merge the two cells of every lost qubit, so lost faces are always
// interior to a block and never enter any parity.
struct SyndromeGraph {
    std::vector<std::int32_t> block_of_cell;       // cell -> dense block id
    std::vector<std::vector<CellId>> block_cells;  // ascending member lists
    std::vector<std::uint8_t> block_defect;
    std::vector<std::int32_t> defect_nodes;        // ascending block ids
    bool single_block = false;                     // loss percolated everywhere
};

struct DecodeResult {
    std::vector<std::pair<int, int>> matching;  // indices into defect_nodes
    std::vector<QubitId> correction;
    std::array<bool, 3> logical_failure{false, false, false};
    bool aborted = false;
    bool failed = false;
};

namespace detail {

class DisjointSet {
public:
    explicit DisjointSet(int n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

}  // namespace detail

inline SyndromeGraph extract_syndrome(const Lattice& lattice, const ErrorSample& sample) {
    const int nc = lattice.num_cells();
    detail::DisjointSet dsu(nc);
    for (QubitId q : sample.lost) {
        const auto& cells = lattice.qubit_cells(q);
        dsu.unite(cells[0], cells[1]);
    }

    SyndromeGraph syn;
    syn.block_of_cell.assign(nc, -1);
    std::vector<std::int32_t> rep_to_block(nc, -1);
    for (CellId c = 0; c < nc; ++c) {
        const int rep = dsu.find(c);
        if (rep_to_block[rep] < 0) {
            rep_to_block[rep] = static_cast<std::int32_t>(syn.block_cells.size());
            syn.block_cells.emplace_back();
        }
        syn.block_of_cell[c] = rep_to_block[rep];
        syn.block_cells[rep_to_block[rep]].push_back(c);
    }
    syn.block_defect.assign(syn.block_cells.size(), 0);
    for (QubitId q : sample.flips) {
        const auto& cells = lattice.qubit_cells(q);
        const std::int32_t a = syn.block_of_cell[cells[0]];
        const std::int32_t b = syn.block_of_cell[cells[1]];
        if (a != b) {
            syn.block_defect[a] ^= 1;
            syn.block_defect[b] ^= 1;
        }
    }
    for (std::size_t b = 0; b < syn.block_defect.size(); ++b)
        if (syn.block_defect[b]) syn.defect_nodes.push_back(static_cast<std::int32_t>(b));
    syn.single_block = syn.block_cells.size() == 1;
    return syn;
}

// Complete graph over defect supercells; the weight of (u, v) is the
// smallest torus taxicab distance over member-cell pairs.
inline std::vector<std::int64_t> build_matching_graph(const Lattice& lattice,
                                                      const SyndromeGraph& syn) {
    if (syn.defect_nodes.size() % 2 != 0)
        throw std::logic_error("odd number of defects on a torus");
    const int n = static_cast<int>(syn.defect_nodes.size());
    std::vector<std::int64_t> w(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (CellId a : syn.block_cells[syn.defect_nodes[i]])
                for (CellId b : syn.block_cells[syn.defect_nodes[j]])
                    best = std::min<std::int64_t>(best, lattice.cell_distance(a, b));
            w[static_cast<std::size_t>(i) * n + j] = best;
            w[static_cast<std::size_t>(j) * n + i] = best;
        }
    return w;
}

namespace detail {

// Deterministic closest member-cell pair: scan in ascending id order and
// keep strict improvements.
inline std::pair<CellId, CellId> closest_members(const Lattice& lattice,
                                                 const std::vector<CellId>& u,
                                                 const std::vector<CellId>& v) {
    std::pair<CellId, CellId> best{u.front(), v.front()};
    int best_d = lattice.cell_distance(u.front(), v.front());
    for (CellId a : u)
        for (CellId b : v) {
            const int d = lattice.cell_distance(a, b);
            if (d < best_d) {
                best_d = d;
                best = {a, b};
            }
        }
    return best;
}

inline int coord_axis(const Coord& c, int axis) {
    return axis == 0 ? c.x : axis == 1 ? c.y : c.z;
}

}  // namespace detail

// Face qubits along the axis-ordered (x, then y, then z) staircase between
// two cells, always walking the short way around the torus. d odd means the
// short direction is never ambiguous.
inline std::vector<QubitId> correction_chain(const Lattice& lattice, CellId from,
                                             CellId to) {
    std::vector<QubitId> chain;
    const int m = 2 * lattice.distance();
    Coord cur = lattice.cell_coord(from);
    const Coord dst = lattice.cell_coord(to);
    for (int axis = 0; axis < 3; ++axis) {
        const int fwd = lattice.wrap(detail::coord_axis(dst, axis) -
                                     detail::coord_axis(cur, axis)) / 2;
        const int steps = std::min(fwd, lattice.distance() - fwd);
        const int dir = (fwd <= lattice.distance() - fwd) ? +1 : -1;
        for (int s = 0; s < steps; ++s) {
            Coord face = cur;
            int& fc = axis == 0 ? face.x : axis == 1 ? face.y : face.z;
            fc = (fc + dir + m) % m;
            chain.push_back(lattice.qubit_at(face));
            int& cc = axis == 0 ? cur.x : axis == 1 ? cur.y : cur.z;
            cc = (cc + 2 * dir + m) % m;
        }
    }
    return chain;
}

namespace detail {

// Crossing indicator of the fixed correlation sheet for one axis: the face
// qubits whose odd coordinate along that axis equals 1.
inline bool sheet_crossing(const Lattice& lattice, QubitId q, int axis) {
    return lattice.qubit_axis(q) == axis &&
           coord_axis(lattice.qubit_coord(q), axis) == 1;
}

}  // namespace detail

// Homology verdict per axis for the residual error flips xor correction.
// Losses are handled by routing the sheet parity through the lost-edge
// forest: each block gets crossing potentials from a BFS over its lost
// qubits, odd-degree residual cells contribute their potential, and any
// non-tree lost edge closing a cycle with odd crossing parity means no
// lost-free homologous sheet exists, which aborts the trial.
inline std::array<bool, 3> logical_failure(const Lattice& lattice,
                                           const ErrorSample& sample,
                                           const std::vector<QubitId>& correction,
                                           bool* aborted = nullptr) {
    const int nc = lattice.num_cells();
    const int nq = lattice.num_qubits();

    std::vector<std::uint8_t> residual(nq, 0);
    for (QubitId q : sample.flips) residual[q] ^= 1;
    for (QubitId q : correction) residual[q] ^= 1;
    for (QubitId q : sample.lost) residual[q] = 0;  // Z on a lost qubit acts trivially

    std::array<int, 3> parity{0, 0, 0};
    std::vector<std::uint8_t> cell_deg(nc, 0);
    for (QubitId q = 0; q < nq; ++q)
        if (residual[q]) {
            for (int axis = 0; axis < 3; ++axis)
                parity[axis] ^= detail::sheet_crossing(lattice, q, axis);
            const auto& cells = lattice.qubit_cells(q);
            cell_deg[cells[0]] ^= 1;
            cell_deg[cells[1]] ^= 1;
        }

    bool destroyed = false;
    if (!sample.lost.empty()) {
        // adjacency over lost edges only
        std::vector<std::vector<QubitId>> lost_at(nc);
        for (QubitId q : sample.lost) {
            const auto& cells = lattice.qubit_cells(q);
            lost_at[cells[0]].push_back(q);
            lost_at[cells[1]].push_back(q);
        }
        std::vector<std::uint8_t> psi(nc, 0);  // 3 crossing bits per cell
        std::vector<std::uint8_t> seen(nc, 0);
        std::vector<std::uint8_t> edge_used(nq, 0);
        std::vector<CellId> stack;
        for (CellId root = 0; root < nc; ++root) {
            if (seen[root] || lost_at[root].empty()) continue;
            seen[root] = 1;
            stack.assign(1, root);
            while (!stack.empty()) {
                const CellId c = stack.back();
                stack.pop_back();
                for (QubitId q : lost_at[c]) {
                    const auto& cells = lattice.qubit_cells(q);
                    const CellId other = cells[0] == c ? cells[1] : cells[0];
                    std::uint8_t phi = 0;
                    for (int axis = 0; axis < 3; ++axis)
                        phi |= static_cast<std::uint8_t>(
                                   detail::sheet_crossing(lattice, q, axis))
                               << axis;
                    if (!seen[other]) {
                        seen[other] = 1;
                        edge_used[q] = 1;
                        psi[other] = psi[c] ^ phi;
                        stack.push_back(other);
                    } else if (!edge_used[q]) {
                        edge_used[q] = 1;
                        // fundamental cycle of this non-tree lost edge
                        if ((psi[c] ^ psi[other] ^ phi) != 0) destroyed = true;
                    }
                }
            }
        }
        for (CellId c = 0; c < nc; ++c)
            if (cell_deg[c])
                for (int axis = 0; axis < 3; ++axis)
                    parity[axis] ^= (psi[c] >> axis) & 1;
    }

    if (aborted) *aborted = destroyed;
    if (destroyed) return {true, true, true};
    return {parity[0] != 0, parity[1] != 0, parity[2] != 0};
}

// Full pipeline for one trial: syndrome, matching, correction, verdict.
inline DecodeResult decode_trial(const Lattice& lattice, const ErrorSample& sample) {
    DecodeResult res;
    const SyndromeGraph syn = extract_syndrome(lattice, sample);
    if (syn.single_block) {
        res.aborted = true;
        res.failed = true;
        res.logical_failure = {true, true, true};
        return res;
    }
    if (!syn.defect_nodes.empty()) {
        const auto weights = build_matching_graph(lattice, syn);
        res.matching = mwpm(static_cast<int>(syn.defect_nodes.size()), weights);
        std::vector<std::uint8_t> corr(lattice.num_qubits(), 0);
        for (auto [i, j] : res.matching) {
            const auto [a, b] = detail::closest_members(
                lattice, syn.block_cells[syn.defect_nodes[i]],
                syn.block_cells[syn.defect_nodes[j]]);
            for (QubitId q : correction_chain(lattice, a, b)) corr[q] ^= 1;
        }
        for (QubitId q = 0; q < lattice.num_qubits(); ++q)
            if (corr[q]) res.correction.push_back(q);
    }
    bool aborted = false;
    res.logical_failure = logical_failure(lattice, sample, res.correction, &aborted);
    res.aborted = aborted;
    res.failed = res.aborted || res.logical_failure[0] || res.logical_failure[1] ||
                 res.logical_failure[2];
    return res;
}

// Residual stabilizer parities after correction; all-zero outside aborted
// trials is the decoder's self-consistency contract.
inline std::vector<std::int32_t> residual_syndrome(const Lattice& lattice,
                                                   const ErrorSample& sample,
                                                   const std::vector<QubitId>& correction) {
    const SyndromeGraph syn = extract_syndrome(lattice, sample);
    std::vector<std::uint8_t> defect(syn.block_cells.size(), 0);
    auto toggle = [&](QubitId q) {
        const auto& cells = lattice.qubit_cells(q);
        const std::int32_t a = syn.block_of_cell[cells[0]];
        const std::int32_t b = syn.block_of_cell[cells[1]];
        if (a != b) {
            defect[a] ^= 1;
            defect[b] ^= 1;
        }
    };
    for (QubitId q : sample.flips) toggle(q);
    for (QubitId q : correction) toggle(q);
    std::vector<std::int32_t> bad;
    for (std::size_t b = 0; b < defect.size(); ++b)
        if (defect[b]) bad.push_back(static_cast<std::int32_t>(b));
    return bad;
}

}  // namespace phtqc
