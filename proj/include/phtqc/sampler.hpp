#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "phtqc/lattice.hpp"
#include "phtqc/rng.hpp"

namespace phtqc {

enum class LossMode { direct, edge };

struct SampleParams {
    double p_z = 0.0;      // per-event dephasing rate
    double n_avg = 1.0;    // entangling-link noise multiplier
    double p_loss = 0.0;   // direct mode: i.i.d. qubit loss rate
    double p_edge = 0.0;   // edge mode: per-link failure rate p_f^n
    LossMode loss_mode = LossMode::direct;
    std::uint64_t seed = 0;

    void validate() const {
        auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!in01(p_z) || !in01(p_loss) || !in01(p_edge))
            throw std::domain_error("probabilities must be in [0,1]");
        if (!(n_avg >= 1.0)) throw std::domain_error("n_avg must be >= 1");
        if (n_avg * p_z > 0.5)
            throw std::domain_error("n_avg * p_z must be <= 1/2");
    }
};

// One Monte Carlo trial: lost face qubits and effective Z flips on the
// survivors. Both lists are sorted and disjoint.
struct ErrorSample {
    std::vector<QubitId> lost;
    std::vector<QubitId> flips;
};

// Direct mode removes each face qubit i.i.d. with p_loss. Edge mode walks
// the four cluster links of each face qubit (the link's other endpoint
// belongs to the dual lattice, so every primal link is visited exactly
// once); a failed link removes one endpoint with probability 1/2, which in
// the primal view is a p_edge/2 removal per link.
inline std::vector<QubitId> sample_losses(const Lattice& lattice,
                                          const SampleParams& params, Rng& rng) {
    std::vector<QubitId> lost;
    const int nq = lattice.num_qubits();
    if (params.loss_mode == LossMode::direct) {
        if (params.p_loss == 0.0) return lost;
        for (QubitId q = 0; q < nq; ++q)
            if (rng.bernoulli(params.p_loss)) lost.push_back(q);
    } else {
        if (params.p_edge == 0.0) return lost;
        for (QubitId q = 0; q < nq; ++q) {
            bool gone = false;
            for (int link = 0; link < 4; ++link)
                if (rng.bernoulli(params.p_edge) && rng.bernoulli(0.5)) gone = true;
            if (gone) lost.push_back(q);
        }
    }
    return lost;
}

// Eight independent Z events per surviving qubit: initialization, waiting,
// measurement and leakage at p_z, plus the four entangling links at
// n_avg * p_z each. A qubit flips iff an odd number of events fired.
inline std::vector<QubitId> sample_z_errors(const Lattice& lattice,
                                            const SampleParams& params,
                                            const std::vector<QubitId>& lost,
                                            Rng& rng) {
    std::vector<QubitId> flips;
    if (params.p_z == 0.0) return flips;
    const double p_link = params.n_avg * params.p_z;
    const int nq = lattice.num_qubits();
    std::size_t lost_pos = 0;
    for (QubitId q = 0; q < nq; ++q) {
        if (lost_pos < lost.size() && lost[lost_pos] == q) {
            ++lost_pos;
            continue;
        }
        bool flip = false;
        for (int e = 0; e < 4; ++e) flip ^= rng.bernoulli(params.p_z);
        for (int e = 0; e < 4; ++e) flip ^= rng.bernoulli(p_link);
        if (flip) flips.push_back(q);
    }
    return flips;
}

// Full trial; a pure function of (lattice, params, trial_index).
inline ErrorSample sample_trial(const Lattice& lattice, const SampleParams& params,
                                std::uint64_t trial_index) {
    params.validate();
    Rng rng(params.seed, trial_index);
    ErrorSample s;
    s.lost = sample_losses(lattice, params, rng);
    s.flips = sample_z_errors(lattice, params, s.lost, rng);
    return s;
}

}  // namespace phtqc
