#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheresync/dynamics.hpp"
#include "spheresync/eigen.hpp"
#include "spheresync/graph.hpp"
#include "spheresync/predictions.hpp"

namespace spheresync {

struct FitResult {
    double mu_hat = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int samples_used = 0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    bool envelope_used = false;
};

/// Ordinary least squares of ln y against t over [window_lo, window_hi];
/// mu_hat is the negated slope. Samples at or below the floor are excluded.
inline FitResult fit_decay(const std::vector<double>& t, const std::vector<double>& y, double window_lo,
                           double window_hi, double floor = 1e-10) {
    if (t.size() != y.size())
        throw std::invalid_argument("fit_decay: t and y lengths differ");
    if (!(window_lo < window_hi))
        throw std::invalid_argument("fit_decay: empty window");

    std::vector<double> ts, ly;
    bool any_in_window = false;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < window_lo || t[k] > window_hi) continue;
        any_in_window = true;
        if (y[k] <= floor) continue;
        ts.push_back(t[k]);
        ly.push_back(std::log(y[k]));
    }
    if (any_in_window && ts.empty())
        throw std::runtime_error("fit_decay: observable below the numerical floor throughout the window; "
                                 "shrink t_end");
    if (ts.size() < 10)
        throw std::runtime_error("fit_decay: need at least 10 usable samples in the window, have " +
                                 std::to_string(ts.size()));

    const double n = static_cast<double>(ts.size());
    double st = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        st += ts[k];
        sy += ly[k];
    }
    const double mt = st / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        sxx += (ts[k] - mt) * (ts[k] - mt);
        sxy += (ts[k] - mt) * (ly[k] - my);
    }
    if (sxx == 0.0)
        throw std::runtime_error("fit_decay: degenerate window (all samples at one time)");

    const double slope = sxy / sxx;
    FitResult fit;
    fit.mu_hat = -slope;
    fit.intercept = my - slope * mt;
    fit.samples_used = static_cast<int>(ts.size());
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;

    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double pred = fit.intercept + slope * ts[k];
        ss_res += (ly[k] - pred) * (ly[k] - pred);
        ss_tot += (ly[k] - my) * (ly[k] - my);
    }
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return fit;
}

/// fit_decay, switching to the upper envelope (local maxima of ln y) when the
/// raw fit rings: a complex slow mode oscillates in the log plot, and the
/// decay bound constrains the envelope, not the ripple.
inline FitResult fit_decay_enveloped(const std::vector<double>& t, const std::vector<double>& y,
                                     double window_lo, double window_hi, double floor = 1e-10,
                                     double r2_threshold = 0.98) {
    FitResult raw = fit_decay(t, y, window_lo, window_hi, floor);
    if (raw.r_squared >= r2_threshold) return raw;

    std::vector<double> ts, ys;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < window_lo || t[k] > window_hi || y[k] <= floor) continue;
        ts.push_back(t[k]);
        ys.push_back(y[k]);
    }
    std::vector<double> pt, py;
    for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
        if (ys[k] >= ys[k - 1] && ys[k] > ys[k + 1]) {
            pt.push_back(ts[k]);
            py.push_back(ys[k]);
        }
    }
    if (pt.size() < 10) return raw; // too few peaks to refit; keep the raw estimate

    FitResult env = fit_decay(pt, py, window_lo, window_hi, floor);
    env.envelope_used = true;
    return env;
}

struct RateOptions {
    int n = 3;
    std::uint64_t seed = 0;
    double spread = 0.05;
    double h = 0.0;         // 0: 1e-3 * min(1, 1 / ||L||_inf)
    double t_end = 0.0;     // 0: 15 / Re(lambda2)
    double floor = 1e-10;
    double window_lo = -1.0; // manual fit window override; < 0: 3 / Re(lambda2)
    double window_hi = -1.0; // < 0: auto (t_end, truncated at the floor crossing)
};

struct RateEstimate {
    int m = 0;
    int n = 0;
    std::uint64_t seed = 0;
    double spread = 0.0;
    double h = 0.0;
    double t_end = 0.0;

    Complex lambda2_value;
    double predicted_rate = 0.0; // Re(lambda2)
    double lambda2_gap = 0.0;
    bool lambda2_simple = true;

    FitResult state_fit;      // max_ij ||r_i - r_j||, expected rate Re(lambda2)
    FitResult error_fit;      // max_ij e_ij, expected rate 2 Re(lambda2)
    FitResult mean_state_fit; // diagnostics: mean over pairs
    FitResult mean_error_fit;

    double relative_error_state = 0.0;
    double relative_error_error = 0.0;
};

/// Measure the synchronization rate of a spanning-tree digraph: integrate the
/// sphere flow from a near-consensus start, then fit exponential slopes of
/// the pairwise observables. Both fits share one window — they measure the
/// same decay through two lenses, and a shared window keeps the error-entry
/// slope at exactly twice the state slope.
inline RateEstimate measure_sync_rate(const Digraph& g, const RateOptions& opt) {
    if (!has_spanning_tree(g))
        throw std::invalid_argument("measure_sync_rate: graph has no directed spanning tree");

    const Laplacian l = laplacian(g);
    const Spectrum lap_spec = eigenvalues(l.entries);
    const Complex l2 = lambda2(lap_spec, default_zero_tol(l.entries));
    const double rate = l2.real();

    RateEstimate est;
    est.m = g.node_count();
    est.n = opt.n;
    est.seed = opt.seed;
    est.spread = opt.spread;
    est.lambda2_value = l2;
    est.predicted_rate = rate;
    est.lambda2_gap = lambda2_gap(lap_spec, l2);
    est.lambda2_simple = est.lambda2_gap > 1e-6;

    est.h = opt.h > 0.0 ? opt.h : default_step(g);
    est.t_end = opt.t_end > 0.0 ? opt.t_end : 15.0 / rate;

    const SphereConfiguration cfg0 = initial_near_consensus(g.node_count(), opt.n, opt.spread, opt.seed);
    const Trajectory traj = integrate_sphere(g, cfg0, est.h, est.t_end);

    const std::size_t samples = traj.times.size();
    std::vector<double> max_err(samples), max_e(samples), mean_err(samples), mean_e(samples);
    const int m = g.node_count();
    const double pair_count = static_cast<double>(m) * (m - 1) / 2.0;
    for (std::size_t k = 0; k < samples; ++k) {
        max_err[k] = max_pairwise_distance(traj.states[k]);
        max_e[k] = max_error_entry(traj.errors[k]);
        double se = 0.0, sd = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                se += traj.errors[k](i, j);
                sd += std::sqrt(std::max(0.0, 2.0 * traj.errors[k](i, j)));
            }
        mean_e[k] = se / pair_count;
        mean_err[k] = sd / pair_count;
    }

    double window_lo = opt.window_lo >= 0.0 ? opt.window_lo : 3.0 / rate;
    double window_hi = opt.window_hi > 0.0 ? opt.window_hi : est.t_end;
    // shared floor truncation: stop where either observable decays to round-off
    for (std::size_t k = 0; k < samples; ++k) {
        if (traj.times[k] <= window_lo) continue;
        if (max_err[k] <= opt.floor || max_e[k] <= opt.floor) {
            window_hi = std::min(window_hi, traj.times[k]);
            break;
        }
    }

    est.state_fit = fit_decay_enveloped(traj.times, max_err, window_lo, window_hi, opt.floor);
    est.error_fit = fit_decay_enveloped(traj.times, max_e, window_lo, window_hi, opt.floor);
    est.mean_state_fit = fit_decay_enveloped(traj.times, mean_err, window_lo, window_hi, opt.floor);
    est.mean_error_fit = fit_decay_enveloped(traj.times, mean_e, window_lo, window_hi, opt.floor);

    est.relative_error_state = std::abs(est.state_fit.mu_hat - rate) / rate;
    est.relative_error_error = std::abs(est.error_fit.mu_hat - 2.0 * rate) / (2.0 * rate);
    return est;
}

} // namespace spheresync
