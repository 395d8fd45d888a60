#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "phtqc/decoder.hpp"
#include "phtqc/noise.hpp"
#include "phtqc/parallel.hpp"
#include "phtqc/rng.hpp"
#include "phtqc/sampler.hpp"

namespace phtqc {

struct CurvePoint {
    int d = 0;
    double p_z = 0.0;
    std::int64_t trials = 0;
    std::int64_t failures = 0;
    std::int64_t aborts = 0;
    double p_l = 0.0;
    double std_err = 0.0;
};

struct ThresholdEstimate {
    double p_z_th = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double nu = 0.0;
    double eta_th = 0.0;   // filled when alpha is known
    double alpha = 0.0;
    double p_loss = 0.0;
    int n_bsm = 0;
};

struct NoCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Monte Carlo estimate of the logical failure rate at one (d, p_z) point.
// A trial fails on any-axis homology flip or on a decoder abort.
inline CurvePoint estimate_logical_rate(const Lattice& lattice,
                                        const SampleParams& params,
                                        std::int64_t trials, int threads = 0) {
    params.validate();
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::atomic<std::int64_t> failures{0}, aborts{0};
    parallel_for(trials, threads, [&](std::int64_t t) {
        const ErrorSample sample = sample_trial(lattice, params, static_cast<std::uint64_t>(t));
        const DecodeResult res = decode_trial(lattice, sample);
        if (res.failed) failures.fetch_add(1, std::memory_order_relaxed);
        if (res.aborted) aborts.fetch_add(1, std::memory_order_relaxed);
    });
    CurvePoint pt;
    pt.d = lattice.distance();
    pt.p_z = params.p_z;
    pt.trials = trials;
    pt.failures = failures.load();
    pt.aborts = aborts.load();
    pt.p_l = static_cast<double>(pt.failures) / static_cast<double>(trials);
    pt.std_err = std::sqrt(pt.p_l * (1.0 - pt.p_l) / static_cast<double>(trials));
    return pt;
}

// Geometric grid of count points spanning [lo, hi].
inline std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (!(lo > 0.0 && hi > lo) || count < 2)
        throw std::invalid_argument("bad grid bounds");
    std::vector<double> g(count);
    const double r = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) g[i] = lo * std::exp(r * i);
    return g;
}

struct SweepConfig {
    std::vector<int> distances{5, 7, 9};
    std::vector<double> p_z_grid;  // default: 9 points on [0.5, 1.5] * p_z_center
    double p_z_center = 0.006;
    double n_avg = 1.0;
    double p_loss = 0.03;
    LossMode loss_mode = LossMode::direct;
    double p_edge = 0.0;
    std::int64_t trials = 10000;
    std::uint64_t seed = 0;
    int threads = 0;
};

inline std::vector<double> sweep_grid(const SweepConfig& cfg) {
    if (!cfg.p_z_grid.empty()) return cfg.p_z_grid;
    return geometric_grid(0.5 * cfg.p_z_center, 1.5 * cfg.p_z_center, 9);
}

// Full (d, p_z) sweep in deterministic order. Each point draws from its own
// derived seed so points are statistically independent.
template <typename Progress>
std::vector<CurvePoint> run_sweep(const SweepConfig& cfg, Progress&& progress) {
    const std::vector<double> grid = sweep_grid(cfg);
    std::vector<CurvePoint> points;
    std::uint64_t point_index = 0;
    for (int d : cfg.distances) {
        const Lattice lattice = build_lattice(d);
        for (double pz : grid) {
            SampleParams params;
            params.p_z = pz;
            params.n_avg = cfg.n_avg;
            params.p_loss = cfg.p_loss;
            params.p_edge = cfg.p_edge;
            params.loss_mode = cfg.loss_mode;
            std::uint64_t s = cfg.seed;
            splitmix64(s);
            s ^= splitmix64(s) + point_index;
            params.seed = splitmix64(s);
            points.push_back(estimate_logical_rate(lattice, params, cfg.trials, cfg.threads));
            progress(points.back());
            ++point_index;
        }
    }
    return points;
}

inline std::vector<CurvePoint> run_sweep(const SweepConfig& cfg) {
    return run_sweep(cfg, [](const CurvePoint&) {});
}

namespace detail {

// Least-squares quadratic fit of log p_L against x = (p_z - p_c) d^(1/nu).
// Returns the sum of squared residuals, or infinity when degenerate.
inline double scaling_sse(const std::vector<CurvePoint>& pts, double p_c, double nu) {
    double a[3][3] = {{0}};
    double b[3] = {0};
    int used = 0;
    for (const auto& p : pts) {
        if (p.failures <= 0) continue;
        const double x = (p.p_z - p_c) * std::pow(static_cast<double>(p.d), 1.0 / nu);
        const double y = std::log(p.p_l);
        const double col[3] = {1.0, x, x * x};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) a[i][j] += col[i] * col[j];
            b[i] += col[i] * y;
        }
        ++used;
    }
    if (used < 6) return std::numeric_limits<double>::infinity();
    // Gaussian elimination, 3x3
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
        m[i][3] = b[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) < 1e-30) return std::numeric_limits<double>::infinity();
        std::swap(m[col], m[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
        }
    }
    const double c0 = m[0][3] / m[0][0];
    const double c1 = m[1][3] / m[1][1];
    const double c2 = m[2][3] / m[2][2];
    double sse = 0.0;
    for (const auto& p : pts) {
        if (p.failures <= 0) continue;
        const double x = (p.p_z - p_c) * std::pow(static_cast<double>(p.d), 1.0 / nu);
        const double y = std::log(p.p_l);
        const double r = y - (c0 + c1 * x + c2 * x * x);
        sse += r * r;
    }
    return sse;
}

// Deterministic zooming grid search over (p_c, nu).
inline std::pair<double, double> fit_crossing(const std::vector<CurvePoint>& pts,
                                              double pc_lo, double pc_hi) {
    double nu_lo = 0.5, nu_hi = 2.5;
    double best_pc = 0.5 * (pc_lo + pc_hi), best_nu = 1.0;
    double best = std::numeric_limits<double>::infinity();
    for (int level = 0; level < 4; ++level) {
        const int npc = 25, nnu = 13;
        for (int i = 0; i < npc; ++i)
            for (int j = 0; j < nnu; ++j) {
                const double pc = pc_lo + (pc_hi - pc_lo) * i / (npc - 1);
                const double nu = nu_lo + (nu_hi - nu_lo) * j / (nnu - 1);
                const double sse = scaling_sse(pts, pc, nu);
                if (sse < best) {
                    best = sse;
                    best_pc = pc;
                    best_nu = nu;
                }
            }
        const double pc_step = (pc_hi - pc_lo) / (npc - 1);
        const double nu_step = (nu_hi - nu_lo) / (nnu - 1);
        pc_lo = best_pc - 2 * pc_step;
        pc_hi = best_pc + 2 * pc_step;
        nu_lo = std::max(0.3, best_nu - 2 * nu_step);
        nu_hi = best_nu + 2 * nu_step;
    }
    return {best_pc, best_nu};
}

}  // namespace detail

struct CrossingFitConfig {
    int bootstrap_resamples = 200;
    std::uint64_t bootstrap_seed = 0x626f6f74ULL;  // independent of the sweep seed
    // The quadratic scaling ansatz only holds near the crossing; points at
    // or near the any-axis saturation plateau are excluded from the fit.
    double fit_max_pl = 0.5;
};

// Locates the threshold as the crossing of the p_L(p_z) curves via a
// finite-size-scaling fit, with a bootstrap over binomial counts for the
// 95% interval. Throws NoCrossingError when the curves never change order
// inside the grid.
inline ThresholdEstimate find_crossing(const std::vector<CurvePoint>& input_points,
                                       const CrossingFitConfig& cfg = {}) {
    // canonical order makes the estimate independent of input ordering
    std::vector<CurvePoint> points = input_points;
    std::sort(points.begin(), points.end(), [](const CurvePoint& a, const CurvePoint& b) {
        return a.d != b.d ? a.d < b.d : a.p_z < b.p_z;
    });
    std::map<int, std::vector<CurvePoint>> by_d;
    for (const auto& p : points) by_d[p.d].push_back(p);
    if (by_d.size() < 2)
        throw std::invalid_argument("need at least two code distances");
    for (auto& [d, pts] : by_d) {
        if (pts.size() < 4)
            throw std::invalid_argument("need at least four grid points per distance");
        std::sort(pts.begin(), pts.end(),
                  [](const CurvePoint& a, const CurvePoint& b) { return a.p_z < b.p_z; });
    }

    bool inversion = false;
    for (auto it = by_d.begin(); it != by_d.end() && !inversion; ++it)
        for (auto jt = std::next(it); jt != by_d.end() && !inversion; ++jt) {
            bool has_pos = false, has_neg = false;
            const auto& lo = it->second;
            const auto& hi = jt->second;
            const std::size_t npts = std::min(lo.size(), hi.size());
            for (std::size_t k = 0; k < npts; ++k) {
                const double diff = hi[k].p_l - lo[k].p_l;
                if (diff > 0) has_pos = true;
                if (diff < 0) has_neg = true;
            }
            inversion = has_pos && has_neg;
        }
    if (!inversion)
        throw NoCrossingError("curves keep the same order across the whole grid");

    // fit window: drop saturated points, keep the scaling regime
    std::vector<CurvePoint> fit_points;
    for (const auto& p : points)
        if (p.failures > 0 && p.p_l <= cfg.fit_max_pl) fit_points.push_back(p);
    {
        std::map<int, int> per_d;
        for (const auto& p : fit_points) ++per_d[p.d];
        if (per_d.size() < 2 || fit_points.size() < 6)
            throw std::invalid_argument(
                "not enough points below the saturation cutoff to fit");
    }

    double pz_min = fit_points.front().p_z, pz_max = fit_points.front().p_z;
    for (const auto& p : fit_points) {
        pz_min = std::min(pz_min, p.p_z);
        pz_max = std::max(pz_max, p.p_z);
    }

    const auto [pc, nu] = detail::fit_crossing(fit_points, pz_min, pz_max);

    // bootstrap over binomial resamples of the failure counts
    std::vector<double> pcs;
    pcs.reserve(cfg.bootstrap_resamples);
    std::vector<CurvePoint> resampled = fit_points;
    for (int r = 0; r < cfg.bootstrap_resamples; ++r) {
        for (std::size_t i = 0; i < fit_points.size(); ++i) {
            Rng rng(cfg.bootstrap_seed,
                    static_cast<std::uint64_t>(r) * fit_points.size() + i);
            std::int64_t f = 0;
            for (std::int64_t t = 0; t < fit_points[i].trials; ++t)
                if (rng.bernoulli(fit_points[i].p_l)) ++f;
            resampled[i].failures = f;
            resampled[i].p_l = static_cast<double>(f) / fit_points[i].trials;
        }
        pcs.push_back(detail::fit_crossing(resampled, pz_min, pz_max).first);
    }
    std::sort(pcs.begin(), pcs.end());

    ThresholdEstimate est;
    est.p_z_th = pc;
    est.nu = nu;
    if (!pcs.empty()) {
        const auto pick = [&](double q) {
            const double pos = q * (pcs.size() - 1);
            const std::size_t i = static_cast<std::size_t>(pos);
            const double frac = pos - i;
            return i + 1 < pcs.size() ? pcs[i] * (1 - frac) + pcs[i + 1] * frac : pcs[i];
        };
        est.ci_lo = std::min(pick(0.025), pc);
        est.ci_hi = std::max(pick(0.975), pc);
    } else {
        est.ci_lo = est.ci_hi = pc;
    }
    return est;
}

// Smallest odd d >= d_b whose extrapolated logical rate b (a/b)^-((d-d_b)/2)
// is at or below the target.
inline int extrapolate_distance(double a, double b, int d_b, double target_pl) {
    if (!(b > 0.0 && a > b && a < 1.0))
        throw std::domain_error("need 0 < b < a < 1");
    if (!(target_pl > 0.0 && target_pl < b))
        throw std::domain_error("target must be in (0, b)");
    if (d_b < 1) throw std::domain_error("d_b must be >= 1");
    const double m = std::log(b / target_pl) / std::log(a / b);
    int d = d_b + 2 * static_cast<int>(std::ceil(m - 1e-12));
    if (d % 2 == 0) ++d;
    return d;
}

// Parity-free variant: smallest integer d >= d_b meeting the target within
// 25% slack, matching the two-significant-figure precision of the inputs.
inline int extrapolate_distance_any(double a, double b, int d_b, double target_pl) {
    if (!(b > 0.0 && a > b && a < 1.0))
        throw std::domain_error("need 0 < b < a < 1");
    if (!(target_pl > 0.0 && target_pl < b))
        throw std::domain_error("target must be in (0, b)");
    if (d_b < 1) throw std::domain_error("d_b must be >= 1");
    const double budget = target_pl * 1.25;
    int d = d_b;
    while (b * std::pow(b / a, 0.5 * (d - d_b)) > budget) ++d;
    return d;
}

// Extrapolated logical rate at distance d.
inline double extrapolated_pl(double a, double b, int d_b, int d) {
    return b * std::pow(b / a, 0.5 * (d - d_b));
}

}  // namespace phtqc
