#pragma once

// Test-only numerical model of the photon-loss channel. The hybrid qubit is
// held in a truncated Fock basis (coherent mode plus the two polarization
// modes); each mode is mixed with a fresh vacuum ancilla on a beam splitter
// of transmissivity 1 - eta, and weights are read out by summing projections
// over ancilla outcomes, which is the partial trace. Everything here is
// independent of the closed forms in phtqc/noise.hpp.

#include <cmath>
#include <cstddef>
#include <vector>

namespace phtqc::testing {

struct ChannelWeights {
    double w_psi_plus = 0.0;
    double w_psi_minus = 0.0;
    double w_phi_plus = 0.0;
    double w_phi_minus = 0.0;
};

class FockLossOracle {
public:
    explicit FockLossOracle(int photon_cutoff = 25) : dim_(photon_cutoff + 1) {
        // axis order (n_a, h, v, k_a, k_h, k_v); k_* are the ancillas
        dims_ = {dim_, 2, 2, dim_, 2, 2};
        strides_.assign(6, 1);
        for (int i = 4; i >= 0; --i) strides_[i] = strides_[i + 1] * dims_[i + 1];
    }

    // Coherent-state population above the cutoff; bounds the truncation error.
    double tail_mass(double alpha) const {
        const auto c = coherent(alpha);
        double kept = 0.0;
        for (double a : c) kept += a * a;
        return 1.0 - kept;
    }

    ChannelWeights run(double alpha, double eta) const {
        std::vector<double> v = initial_state(alpha);
        apply_loss(v, /*sys=*/0, /*anc=*/3, eta);
        apply_loss(v, 1, 4, eta);
        apply_loss(v, 2, 5, eta);

        const double ap = std::sqrt(1.0 - eta) * alpha;
        const auto cap = coherent(ap);
        const auto cam = coherent(-ap);
        const double s2 = 1.0 / std::sqrt(2.0);
        const double x = std::exp(-2.0 * ap * ap);

        std::vector<double> psi_p(sys_size(), 0.0), psi_m(sys_size(), 0.0);
        std::vector<double> phi_p(sys_size(), 0.0), phi_m(sys_size(), 0.0);
        for (int n = 0; n < dim_; ++n) {
            psi_p[sys_idx(n, 1, 0)] = cap[n] * s2;
            psi_m[sys_idx(n, 1, 0)] = cap[n] * s2;
            psi_p[sys_idx(n, 0, 1)] = cam[n] * s2;
            psi_m[sys_idx(n, 0, 1)] = -cam[n] * s2;
            phi_p[sys_idx(n, 0, 0)] = (cap[n] + cam[n]) * s2;
            phi_m[sys_idx(n, 0, 0)] = (cap[n] - cam[n]) * s2;
        }

        ChannelWeights w;
        w.w_psi_plus = project(v, psi_p);
        w.w_psi_minus = project(v, psi_m);
        // |Phi+-> as written are unnormalized; scale by the squared norms
        w.w_phi_plus = project(v, phi_p) / ((1.0 + x) * (1.0 + x));
        w.w_phi_minus = project(v, phi_m) / ((1.0 - x) * (1.0 - x));
        return w;
    }

    // <0,0,0| rho |0,0,0>: the hybrid qubit decayed to joint vacuum, i.e.
    // the lattice-qubit loss event.
    double vacuum_probability(double alpha, double eta) const {
        std::vector<double> v = initial_state(alpha);
        apply_loss(v, 0, 3, eta);
        apply_loss(v, 1, 4, eta);
        apply_loss(v, 2, 5, eta);
        double p = 0.0;
        const std::size_t anc_count = static_cast<std::size_t>(dim_) * 4;
        for (std::size_t anc = 0; anc < anc_count; ++anc) {
            const double amp = v[anc];  // system digits all zero
            p += amp * amp;
        }
        return p;
    }

private:
    int dim_;
    std::vector<int> dims_;
    std::vector<std::size_t> strides_;

    std::size_t sys_size() const { return static_cast<std::size_t>(dim_) * 4; }
    std::size_t sys_idx(int n, int h, int vv) const {
        return (static_cast<std::size_t>(n) * 2 + h) * 2 + vv;
    }
    std::size_t total_size() const { return sys_size() * dim_ * 4; }
    int digit(std::size_t index, int axis) const {
        return static_cast<int>((index / strides_[axis]) % dims_[axis]);
    }

    std::vector<double> coherent(double alpha) const {
        std::vector<double> c(dim_, 0.0);
        c[0] = std::exp(-alpha * alpha / 2.0);
        for (int n = 1; n < dim_; ++n) c[n] = c[n - 1] * alpha / std::sqrt(n);
        return c;
    }

    std::vector<double> initial_state(double alpha) const {
        std::vector<double> v(total_size(), 0.0);
        const auto cp = coherent(alpha);
        const auto cm = coherent(-alpha);
        const double s2 = 1.0 / std::sqrt(2.0);
        for (int n = 0; n < dim_; ++n) {
            v[n * strides_[0] + 1 * strides_[1]] = cp[n] * s2;   // |n, H>, ancillas 0
            v[n * strides_[0] + 1 * strides_[2]] = cm[n] * s2;   // |n, V>
        }
        return v;
    }

    // Beam splitter against a vacuum ancilla:
    // |n, 0> -> sum_k sqrt(C(n,k) (1-eta)^(n-k) eta^k) |n-k, k>.
    // Sources carry ancilla occupation 0 and every destination slot has a
    // unique source, so the update is safe in place.
    void apply_loss(std::vector<double>& v, int sys_axis, int anc_axis, double eta) const {
        const std::size_t s_sys = strides_[sys_axis];
        const std::size_t s_anc = strides_[anc_axis];
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (digit(i, anc_axis) != 0) continue;
            const double amp = v[i];
            if (amp == 0.0) continue;
            const int n = digit(i, sys_axis);
            for (int k = 0; k <= n; ++k) {
                const double coef = std::sqrt(binom(n, k) * std::pow(1.0 - eta, n - k) *
                                              std::pow(eta, k));
                v[i - static_cast<std::size_t>(k) * s_sys +
                  static_cast<std::size_t>(k) * s_anc] = amp * coef;
            }
        }
    }

    double project(const std::vector<double>& v, const std::vector<double>& target) const {
        const std::size_t anc_count = static_cast<std::size_t>(dim_) * 4;
        double total = 0.0;
        for (std::size_t anc = 0; anc < anc_count; ++anc) {
            double ip = 0.0;
            for (std::size_t sys = 0; sys < sys_size(); ++sys) {
                const double t = target[sys];
                if (t != 0.0) ip += t * v[sys * anc_count + anc];
            }
            total += ip * ip;
        }
        return total;
    }

    static double binom(int n, int k) {
        double r = 1.0;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    }
};

}  // namespace phtqc::testing
