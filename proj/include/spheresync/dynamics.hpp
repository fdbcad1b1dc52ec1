#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spheresync/graph.hpp"
#include "spheresync/matrix.hpp"
#include "spheresync/rng.hpp"

namespace spheresync {

/// m oscillator states on the unit sphere S^{n-1}.
struct SphereConfiguration {
    int n = 0;
    std::vector<std::vector<double>> states;
    double time = 0.0;

    int count() const { return static_cast<int>(states.size()); }
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

/// Largest deviation of any state norm from one.
inline double max_norm_deviation(const SphereConfiguration& cfg) {
    double dev = 0.0;
    for (const auto& r : cfg.states) dev = std::max(dev, std::abs(norm(r) - 1.0));
    return dev;
}

/// Right side of the sphere flow: v_i = sum_j a_ij (r_j - (r_i . r_j) r_i).
/// Each v_i is tangent to the sphere at r_i.
inline std::vector<std::vector<double>> sphere_rhs(const Digraph& g, const SphereConfiguration& cfg) {
    const int m = cfg.count();
    if (m != g.node_count())
        throw std::invalid_argument("sphere_rhs: configuration size does not match graph");
    std::vector<std::vector<double>> out(static_cast<std::size_t>(m),
                                         std::vector<double>(static_cast<std::size_t>(cfg.n), 0.0));
    for (int i = 0; i < m; ++i) {
        const auto& ri = cfg.states[static_cast<std::size_t>(i)];
        auto& vi = out[static_cast<std::size_t>(i)];
        for (int j = 0; j < m; ++j) {
            const double a = g.weights()(i, j);
            if (a == 0.0) continue;
            const auto& rj = cfg.states[static_cast<std::size_t>(j)];
            const double proj = dot(ri, rj);
            for (int k = 0; k < cfg.n; ++k)
                vi[static_cast<std::size_t>(k)] += a * (rj[static_cast<std::size_t>(k)] - proj * ri[static_cast<std::size_t>(k)]);
        }
    }
    return out;
}

/// Synchronization error matrix e_ij = 1 - r_i . r_j (equivalently half the
/// squared distance). Symmetric with exact zero diagonal.
inline Mat error_from_states(const SphereConfiguration& cfg) {
    const int m = cfg.count();
    Mat e(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double v = 1.0 - dot(cfg.states[static_cast<std::size_t>(i)], cfg.states[static_cast<std::size_t>(j)]);
            e(i, j) = v;
            e(j, i) = v;
        }
    return e;
}

namespace detail {

// Riccati right side with the Laplacian and adjacency prebuilt:
// -LE - EL^T - alpha 1^T - 1 alpha^T + Lambda E + E Lambda,
// alpha_i = sum_l a_il e_il.
inline Mat riccati_rhs_pre(const Mat& l, const Mat& w, const Mat& e) {
    const int m = e.rows();
    std::vector<double> alpha(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += w(i, j) * e(i, j);
        alpha[static_cast<std::size_t>(i)] = s;
    }
    const Mat le = l * e;
    Mat out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out(i, j) = -le(i, j) - le(j, i) - alpha[static_cast<std::size_t>(i)] - alpha[static_cast<std::size_t>(j)] +
                        alpha[static_cast<std::size_t>(i)] * e(i, j) + e(i, j) * alpha[static_cast<std::size_t>(j)];
    return out;
}

inline void check_finite(const Mat& e, double t) {
    for (double v : e.data())
        if (!std::isfinite(v))
            throw std::runtime_error("integration produced a non-finite state at t = " + std::to_string(t));
}

} // namespace detail

inline Mat riccati_rhs(const Digraph& g, const Mat& e) {
    if (!e.square() || e.rows() != g.node_count())
        throw std::invalid_argument("riccati_rhs: error matrix does not match graph");
    return detail::riccati_rhs_pre(laplacian(g).entries, g.weights(), e);
}

/// Sampled solution of either flow. Error matrices are recorded for both
/// integrators; sphere runs also keep the configurations.
struct Trajectory {
    std::vector<double> times;
    std::vector<SphereConfiguration> states;
    std::vector<Mat> errors;
    double h = 0.0;
    double t_end = 0.0;
    /// Largest per-step constraint drift removed by renormalization
    /// (sphere runs) or by symmetrization (error-matrix runs).
    double max_step_correction = 0.0;
};

/// Step size heuristic: stiffness scales with the coupling strength.
inline double default_step(const Digraph& g) {
    const double norm = laplacian(g).entries.norm_inf();
    return 1e-3 * std::min(1.0, norm > 0.0 ? 1.0 / norm : 1.0);
}

/// Classical fixed-step 4th order integration of the sphere flow. States are
/// renormalized to unit length after every step; the removed drift is O(h^5)
/// per step and the maximum is reported on the trajectory.
inline Trajectory integrate_sphere(const Digraph& g, const SphereConfiguration& cfg0, double h, double t_end,
                                   int max_samples = 2000) {
    if (h <= 0.0 || t_end < 0.0)
        throw std::invalid_argument("integrate_sphere: need h > 0 and t_end >= 0");
    const int m = cfg0.count();
    const int n = cfg0.n;
    const long steps = static_cast<long>(std::ceil(t_end / h - 1e-12));
    const long record_every = std::max(1L, (steps + max_samples - 1) / std::max(1, max_samples));

    Trajectory traj;
    traj.h = h;
    traj.t_end = t_end;

    SphereConfiguration cfg = cfg0;

    auto axpy = [&](const SphereConfiguration& base, const std::vector<std::vector<double>>& dir, double a) {
        SphereConfiguration out = base;
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < n; ++k)
                out.states[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +=
                    a * dir[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        return out;
    };

    auto record = [&](const SphereConfiguration& c) {
        traj.times.push_back(c.time);
        traj.states.push_back(c);
        traj.errors.push_back(error_from_states(c));
    };

    record(cfg);
    for (long step = 1; step <= steps; ++step) {
        const auto k1 = sphere_rhs(g, cfg);
        const auto k2 = sphere_rhs(g, axpy(cfg, k1, 0.5 * h));
        const auto k3 = sphere_rhs(g, axpy(cfg, k2, 0.5 * h));
        const auto k4 = sphere_rhs(g, axpy(cfg, k3, h));
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < n; ++k) {
                auto& x = cfg.states[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                x += (h / 6.0) * (k1[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                                  2.0 * k2[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                                  2.0 * k3[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                                  k4[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
            }
        for (auto& r : cfg.states) {
            const double len = norm(r);
            if (!std::isfinite(len) || len == 0.0)
                throw std::runtime_error("integrate_sphere: non-finite state at t = " + std::to_string(cfg.time));
            traj.max_step_correction = std::max(traj.max_step_correction, std::abs(len - 1.0));
            for (double& x : r) x /= len;
        }
        cfg.time = static_cast<double>(step) * h;
        if (step % record_every == 0 || step == steps) record(cfg);
    }
    return traj;
}

/// Same integrator on the error-matrix flow. Symmetry and the zero diagonal
/// are re-enforced after every step; the removed drift is reported.
inline Trajectory integrate_riccati(const Digraph& g, const Mat& e0, double h, double t_end,
                                    int max_samples = 2000) {
    if (h <= 0.0 || t_end < 0.0)
        throw std::invalid_argument("integrate_riccati: need h > 0 and t_end >= 0");
    const int m = g.node_count();
    if (!e0.square() || e0.rows() != m)
        throw std::invalid_argument("integrate_riccati: error matrix does not match graph");

    const Mat l = laplacian(g).entries;
    const Mat& w = g.weights();
    const long steps = static_cast<long>(std::ceil(t_end / h - 1e-12));
    const long record_every = std::max(1L, (steps + max_samples - 1) / std::max(1, max_samples));

    Trajectory traj;
    traj.h = h;
    traj.t_end = t_end;

    Mat e = e0;
    double t = 0.0;
    traj.times.push_back(t);
    traj.errors.push_back(e);

    for (long step = 1; step <= steps; ++step) {
        const Mat k1 = detail::riccati_rhs_pre(l, w, e);
        const Mat k2 = detail::riccati_rhs_pre(l, w, e + 0.5 * h * k1);
        const Mat k3 = detail::riccati_rhs_pre(l, w, e + 0.5 * h * k2);
        const Mat k4 = detail::riccati_rhs_pre(l, w, e + h * k3);
        e += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        detail::check_finite(e, t);

        double drift = 0.0;
        for (int i = 0; i < m; ++i) {
            drift = std::max(drift, std::abs(e(i, i)));
            e(i, i) = 0.0;
            for (int j = i + 1; j < m; ++j) {
                drift = std::max(drift, std::abs(e(i, j) - e(j, i)));
                const double sym = 0.5 * (e(i, j) + e(j, i));
                e(i, j) = sym;
                e(j, i) = sym;
            }
        }
        traj.max_step_correction = std::max(traj.max_step_correction, drift);

        t = static_cast<double>(step) * h;
        if (step % record_every == 0 || step == steps) {
            traj.times.push_back(t);
            traj.errors.push_back(e);
        }
    }
    return traj;
}

/// m points within geodesic distance `spread` of a random base point on
/// S^{n-1}, reproducible from the seed. All points lie in an open half-sphere
/// whenever spread < pi/2. spread = 0 collapses onto the base point.
inline SphereConfiguration initial_near_consensus(int m, int n, double spread, std::uint64_t seed) {
    if (m < 2 || n < 2)
        throw std::invalid_argument("initial_near_consensus: need m >= 2 and n >= 2");
    if (spread < 0.0 || spread >= std::acos(-1.0) / 2.0)
        throw std::invalid_argument("initial_near_consensus: spread must lie in [0, pi/2)");

    Rng rng(seed);
    auto unit_gaussian = [&](void) {
        std::vector<double> v(static_cast<std::size_t>(n));
        double len = 0.0;
        do {
            for (double& x : v) x = rng.gaussian();
            len = norm(v);
        } while (len < 1e-8);
        for (double& x : v) x /= len;
        return v;
    };

    const std::vector<double> base = unit_gaussian();

    SphereConfiguration cfg;
    cfg.n = n;
    cfg.time = 0.0;
    cfg.states.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<double> u;
        double len = 0.0;
        do {
            u = unit_gaussian();
            const double c = dot(u, base);
            for (int k = 0; k < n; ++k) u[static_cast<std::size_t>(k)] -= c * base[static_cast<std::size_t>(k)];
            len = norm(u);
        } while (len < 1e-8);
        for (double& x : u) x /= len;

        const double phi = spread * rng.uniform01();
        std::vector<double> r(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            r[static_cast<std::size_t>(k)] = std::cos(phi) * base[static_cast<std::size_t>(k)] +
                                             std::sin(phi) * u[static_cast<std::size_t>(k)];
        cfg.states.push_back(std::move(r));
    }
    return cfg;
}

/// Max over pairs of the state distance ||r_i - r_j||.
inline double max_pairwise_distance(const SphereConfiguration& cfg) {
    double best = 0.0;
    const int m = cfg.count();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            double s = 0.0;
            for (int k = 0; k < cfg.n; ++k) {
                const double d = cfg.states[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -
                                 cfg.states[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                s += d * d;
            }
            best = std::max(best, std::sqrt(s));
        }
    return best;
}

/// Max over pairs of the error-matrix entry.
inline double max_error_entry(const Mat& e) {
    double best = 0.0;
    for (int i = 0; i < e.rows(); ++i)
        for (int j = i + 1; j < e.cols(); ++j) best = std::max(best, e(i, j));
    return best;
}

} // namespace spheresync
