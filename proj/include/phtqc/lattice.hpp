#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace phtqc {

using CellId = std::int32_t;
using QubitId = std::int32_t;

// Raw site coordinate on the doubled grid, each component in [0, 2d).
struct Coord {
    int x = 0, y = 0, z = 0;
    bool operator==(const Coord&) const = default;
};

// Raussendorf lattice on a 3-torus of d cells per axis. Sites live on a
// doubled grid: with parity base b (0 primal, 1 dual), cells sit where all
// three coordinates are congruent to b mod 2 and face qubits where exactly
// one coordinate differs from b. Indexing is lexicographic in (x,y,z), so
// identical inputs always produce identical id assignments.
class Lattice {
public:
    static Lattice build(int d) { return Lattice(d, /*parity=*/0); }

    Lattice dual_view() const { return Lattice(d_, 1 - parity_); }

    int distance() const { return d_; }
    int parity() const { return parity_; }
    int num_cells() const { return static_cast<int>(cell_coord_.size()); }
    int num_qubits() const { return static_cast<int>(qubit_coord_.size()); }

    const Coord& cell_coord(CellId c) const { return cell_coord_.at(c); }
    const Coord& qubit_coord(QubitId q) const { return qubit_coord_.at(q); }

    // Axis along which the qubit's coordinate parity differs from the cells'.
    int qubit_axis(QubitId q) const { return qubit_axis_.at(q); }

    const std::array<QubitId, 6>& cell_faces(CellId c) const {
        return cell_faces_.at(c);
    }
    const std::array<CellId, 2>& qubit_cells(QubitId q) const {
        return qubit_cells_.at(q);
    }

    CellId cell_at(Coord c) const {
        const std::int32_t id = site_cell_[site_index(c)];
        if (id < 0) throw std::invalid_argument("site is not a cell");
        return id;
    }
    QubitId qubit_at(Coord c) const {
        const std::int32_t id = site_qubit_[site_index(c)];
        if (id < 0) throw std::invalid_argument("site is not a face qubit");
        return id;
    }

    // Taxicab distance between cell centers in cell units with wraparound.
    int cell_distance(CellId a, CellId b) const {
        const Coord& ca = cell_coord_[a];
        const Coord& cb = cell_coord_[b];
        return axis_gap(ca.x, cb.x) + axis_gap(ca.y, cb.y) + axis_gap(ca.z, cb.z);
    }

    int wrap(int v) const {
        const int m = 2 * d_;
        v %= m;
        return v < 0 ? v + m : v;
    }

private:
    Lattice(int d, int parity) : d_(d), parity_(parity) {
        if (d < 3 || d % 2 == 0)
            throw std::invalid_argument("distance must be odd and >= 3");
        const int m = 2 * d;
        site_cell_.assign(static_cast<std::size_t>(m) * m * m, -1);
        site_qubit_.assign(static_cast<std::size_t>(m) * m * m, -1);

        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                for (int z = 0; z < m; ++z) {
                    const Coord c{x, y, z};
                    const int mismatches = (x % 2 != parity_) + (y % 2 != parity_) +
                                           (z % 2 != parity_);
                    if (mismatches == 0) {
                        site_cell_[site_index(c)] = static_cast<std::int32_t>(cell_coord_.size());
                        cell_coord_.push_back(c);
                    } else if (mismatches == 1) {
                        site_qubit_[site_index(c)] = static_cast<std::int32_t>(qubit_coord_.size());
                        qubit_coord_.push_back(c);
                        if (x % 2 != parity_)
                            qubit_axis_.push_back(0);
                        else if (y % 2 != parity_)
                            qubit_axis_.push_back(1);
                        else
                            qubit_axis_.push_back(2);
                    }
                }

        cell_faces_.resize(cell_coord_.size());
        for (std::size_t c = 0; c < cell_coord_.size(); ++c) {
            const Coord& cc = cell_coord_[c];
            int k = 0;
            for (int axis = 0; axis < 3; ++axis)
                for (int dir : {+1, -1}) {
                    Coord f = cc;
                    (axis == 0 ? f.x : axis == 1 ? f.y : f.z) =
                        wrap((axis == 0 ? cc.x : axis == 1 ? cc.y : cc.z) + dir);
                    cell_faces_[c][k++] = site_qubit_[site_index(f)];
                }
        }

        qubit_cells_.resize(qubit_coord_.size());
        for (std::size_t q = 0; q < qubit_coord_.size(); ++q) {
            const Coord& qc = qubit_coord_[q];
            const int axis = qubit_axis_[q];
            for (int i = 0; i < 2; ++i) {
                Coord c = qc;
                const int dir = i == 0 ? -1 : +1;
                (axis == 0 ? c.x : axis == 1 ? c.y : c.z) =
                    wrap((axis == 0 ? qc.x : axis == 1 ? qc.y : qc.z) + dir);
                qubit_cells_[q][i] = site_cell_[site_index(c)];
            }
        }
    }

    std::size_t site_index(Coord c) const {
        const int m = 2 * d_;
        return (static_cast<std::size_t>(c.x) * m + c.y) * m + c.z;
    }

    // Per-axis torus gap in cell units (coordinates advance by 2 per cell).
    int axis_gap(int a, int b) const {
        int delta = std::abs(a - b) / 2;
        return std::min(delta, d_ - delta);
    }

    int d_;
    int parity_;
    std::vector<Coord> cell_coord_;
    std::vector<Coord> qubit_coord_;
    std::vector<int> qubit_axis_;
    std::vector<std::int32_t> site_cell_;
    std::vector<std::int32_t> site_qubit_;
    std::vector<std::array<QubitId, 6>> cell_faces_;
    std::vector<std::array<CellId, 2>> qubit_cells_;
};

inline Lattice build_lattice(int d) { return Lattice::build(d); }

}  // namespace phtqc
