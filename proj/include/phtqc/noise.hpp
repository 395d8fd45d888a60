#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace phtqc {

// Physical knobs of a PHTQC-n configuration: coherent amplitude alpha,
// photon loss rate eta and the number of Bell-measurement attempts per edge.
struct HybridParams {
    double alpha = 0.84;
    double eta = 0.0;
    int n_bsm = 2;
};

// Derived per-qubit noise figures.
struct NoiseRates {
    double p_z = 0.0;         // dephasing rate
    double p_f = 0.0;         // single-HBSM failure rate
    double n_avg = 1.0;       // mean HBSM attempts per created edge
    double p_loss = 0.0;      // lattice-qubit loss rate
    double alpha_prime = 0.0; // attenuated amplitude
};

// Weights of the loss channel output on |Psi+->, |Phi+-> (amplitude alpha').
struct ChannelDecomposition {
    double w_psi_plus = 1.0;
    double w_psi_minus = 0.0;
    double w_phi_plus = 0.0;
    double w_phi_minus = 0.0;
    double alpha_prime = 0.0;
};

namespace detail {
inline void check_alpha_eta(double alpha, double eta) {
    if (!(alpha >= 0.0))
        throw std::domain_error("alpha must be >= 0, got " + std::to_string(alpha));
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("eta must be in [0,1], got " + std::to_string(eta));
}
}  // namespace detail

inline double alpha_prime(double alpha, double eta) {
    detail::check_alpha_eta(alpha, eta);
    return std::sqrt(1.0 - eta) * alpha;
}

// p_z = [1 - (1-eta) exp(-2 eta alpha^2)] / 2
inline double dephasing_rate(double alpha, double eta) {
    detail::check_alpha_eta(alpha, eta);
    return 0.5 * (1.0 - (1.0 - eta) * std::exp(-2.0 * eta * alpha * alpha));
}

// p_f = (1+eta) exp(-2 alpha'^2) / 2
inline double hbsm_failure_rate(double alpha, double eta) {
    detail::check_alpha_eta(alpha, eta);
    const double ap = alpha_prime(alpha, eta);
    return 0.5 * (1.0 + eta) * std::exp(-2.0 * ap * ap);
}

// Probability that the hybrid qubit decays to joint vacuum: eta exp(-alpha'^2).
inline double qubit_loss_rate(double alpha, double eta) {
    detail::check_alpha_eta(alpha, eta);
    const double ap = alpha_prime(alpha, eta);
    return eta * std::exp(-ap * ap);
}

// p_loss = 1 - (1 - p_f^n / 2)^4: four edges per qubit, a missing edge
// removes either endpoint with probability 1/2.
inline double edge_loss_to_qubit_loss(double p_f, int n) {
    if (!(p_f >= 0.0 && p_f <= 1.0))
        throw std::domain_error("p_f must be in [0,1]");
    if (n < 1) throw std::domain_error("n must be >= 1");
    const double p_edge = std::pow(p_f, n);
    const double keep = 1.0 - 0.5 * p_edge;
    return 1.0 - keep * keep * keep * keep;
}

inline double avg_bsm_attempts(double p_f) {
    if (!(p_f >= 0.0 && p_f < 1.0))
        throw std::domain_error("p_f must be in [0,1) for a finite attempt count");
    return 1.0 / (1.0 - p_f);
}

// Inverts p_loss(alpha) at fixed (n, eta). The composite map is strictly
// decreasing in alpha, so plain bisection over alpha in [0, 10] suffices.
inline double alpha_for_loss_budget(double p_loss, int n, double eta) {
    if (!(eta >= 0.0 && eta < 1.0))
        throw std::domain_error("eta must be in [0,1)");
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (!(p_loss > 0.0 && p_loss < 0.9375))
        throw std::domain_error("p_loss must be in (0, 0.9375)");
    const double reachable = edge_loss_to_qubit_loss(hbsm_failure_rate(0.0, eta), n);
    if (p_loss >= reachable)
        throw std::domain_error("p_loss " + std::to_string(p_loss) +
                                " not reachable at eta " + std::to_string(eta));
    double lo = 0.0, hi = 10.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        const double val = edge_loss_to_qubit_loss(hbsm_failure_rate(mid, eta), n);
        if (val > p_loss)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Inverts dephasing_rate in eta at fixed alpha (strictly increasing in eta).
inline double eta_from_dephasing(double p_z, double alpha) {
    if (!(p_z >= 0.0 && p_z <= 0.5))
        throw std::domain_error("p_z must be in [0, 1/2]");
    if (!(alpha >= 0.0)) throw std::domain_error("alpha must be >= 0");
    if (p_z == 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (dephasing_rate(alpha, mid) < p_z)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline ChannelDecomposition channel_decomposition(double alpha, double eta) {
    detail::check_alpha_eta(alpha, eta);
    const double t = std::exp(-2.0 * eta * alpha * alpha);
    ChannelDecomposition out;
    out.w_psi_plus = 0.5 * (1.0 - eta) * (1.0 + t);
    out.w_psi_minus = 0.5 * (1.0 - eta) * (1.0 - t);
    out.w_phi_plus = 0.5 * eta;
    out.w_phi_minus = 0.5 * eta;
    out.alpha_prime = alpha_prime(alpha, eta);
    return out;
}

// Odd-parity combination of the eight independent Z events acting on one
// face qubit: init, waiting, measurement, leakage at p_z and four
// entangling links at n_avg * p_z each.
inline double effective_flip_rate(double p_z, double n_avg) {
    if (!(p_z >= 0.0 && p_z <= 0.5))
        throw std::domain_error("p_z must be in [0, 1/2]");
    if (!(n_avg >= 1.0)) throw std::domain_error("n_avg must be >= 1");
    if (n_avg * p_z > 0.5)
        throw std::domain_error("n_avg * p_z must be <= 1/2");
    const double a = 1.0 - 2.0 * p_z;
    const double b = 1.0 - 2.0 * n_avg * p_z;
    const double a4 = a * a * a * a;
    const double b4 = b * b * b * b;
    return 0.5 * (1.0 - a4 * b4);
}

// All derived rates for one configuration.
inline NoiseRates noise_rates(const HybridParams& hp) {
    NoiseRates r;
    r.alpha_prime = alpha_prime(hp.alpha, hp.eta);
    r.p_z = dephasing_rate(hp.alpha, hp.eta);
    r.p_f = hbsm_failure_rate(hp.alpha, hp.eta);
    r.n_avg = avg_bsm_attempts(r.p_f);
    r.p_loss = edge_loss_to_qubit_loss(r.p_f, hp.n_bsm);
    return r;
}

}  // namespace phtqc
