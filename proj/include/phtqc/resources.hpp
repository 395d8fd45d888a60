#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "phtqc/noise.hpp"
#include "phtqc/threshold.hpp"

namespace phtqc {

enum class CountingMode { as_printed, explicit_6l3 };

inline const char* to_string(CountingMode m) {
    return m == CountingMode::as_printed ? "as_printed" : "explicit_6l3";
}

// Average hybrid qubits consumed to synthesize one post-selected 4n-arm
// star: n four-arm stars and n-1 three-qubit links, divided by the success
// probability of the 4n-2 fusion measurements.
inline double qubits_per_star(int n, double alpha_prime) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (!(alpha_prime > 0.0))
        throw std::domain_error("cost diverges at alpha' = 0");
    const double x = std::exp(-2.0 * alpha_prime * alpha_prime);
    const double denom = (1.0 - x) * (1.0 - x);
    const double keep = std::pow(1.0 - 0.5 * x, 4 * n - 2);
    return (24.0 * n / denom + 8.0 * (n - 1) / denom) / keep;
}

// Star count for a lattice of side l = 5d/4. as_printed keeps the bare
// (5d/4)^3 = 125 d^3 / 64 prefactor; explicit_6l3 uses the 6 l^3 count of
// stars actually consumed per lattice site. The two differ by exactly 6.
inline double star_count(int d, CountingMode mode) {
    if (d < 3) throw std::domain_error("d must be >= 3");
    const double l3 = 125.0 * d * d * d / 64.0;
    return mode == CountingMode::as_printed ? l3 : 6.0 * l3;
}

inline double lattice_cost(int n, double alpha_prime, int d, CountingMode mode) {
    return qubits_per_star(n, alpha_prime) * star_count(d, mode);
}

struct ResourceReport {
    int n_bsm = 0;
    double alpha = 0.0;
    double eta = 0.0;
    double alpha_prime = 0.0;
    int d = 0;
    double qubits_per_star = 0.0;
    double stars = 0.0;
    double total = 0.0;
    CountingMode mode = CountingMode::as_printed;
    bool parity_free = false;
    double a = 0.0;
    double b = 0.0;
    int d_b = 0;
    double target_pl = 0.0;
    double achieved_pl = 0.0;
};

// Chains the distance extrapolation into the lattice cost. The default rule
// returns odd d; parity_free relaxes that for comparison against published
// even-d figures.
inline ResourceReport resource_report(const HybridParams& hp, double a, double b,
                                      int d_b, double target_pl,
                                      CountingMode mode = CountingMode::as_printed,
                                      bool parity_free = false) {
    ResourceReport r;
    r.n_bsm = hp.n_bsm;
    r.alpha = hp.alpha;
    r.eta = hp.eta;
    r.alpha_prime = alpha_prime(hp.alpha, hp.eta);
    r.a = a;
    r.b = b;
    r.d_b = d_b;
    r.target_pl = target_pl;
    r.mode = mode;
    r.parity_free = parity_free;
    r.d = parity_free ? extrapolate_distance_any(a, b, d_b, target_pl)
                      : extrapolate_distance(a, b, d_b, target_pl);
    r.achieved_pl = extrapolated_pl(a, b, d_b, r.d);
    r.qubits_per_star = phtqc::qubits_per_star(hp.n_bsm, r.alpha_prime);
    r.stars = star_count(r.d, mode);
    r.total = r.qubits_per_star * r.stars;
    return r;
}

// Published operating points of the two postselected hybrid schemes, kept
// for side-by-side reporting. PHTQC-3's suppression input is listed as
// 8.5e-3 in the published table, but only 8.5e-4 reproduces the published
// d = 16 (41); both values are carried so reports can flag the mismatch.
struct ReferenceRow {
    const char* scheme;
    int n_bsm;
    double alpha;
    double eta_op;        // operational photon loss rate
    double eta_th;        // published photon loss threshold
    double p_z_th;        // published dephasing threshold
    double a;             // suppression inputs used for extrapolation
    double a_as_listed;   // value as listed in the published table
    double b;
    int d_b;
    bool use_parity_free; // published distances for this row are even
    double n_published_1e6;
    double n_published_1e15;
};

inline constexpr ReferenceRow kReferenceRows[] = {
    {"PHTQC-2", 2, 0.84, 2.4e-3, 5.0e-3, 0.006, 1.2e-3, 1.2e-3, 2.0e-4, 9, false,
     1.1e6, 1.8e7},
    {"PHTQC-3", 3, 0.60, 2.6e-3, 5.7e-3, 0.0049, 8.5e-4, 8.5e-3, 1.7e-4, 9, true,
     2.9e7, 4.9e8},
};

}  // namespace phtqc
