#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <stdexcept>
#include <vector>

#include "spheresync/eigen.hpp"
#include "spheresync/matrix.hpp"

namespace spheresync {

/// Default threshold for deciding that a Laplacian eigenvalue is the zero one.
inline double default_zero_tol(const Mat& l) { return 1e-8 * l.norm_inf(); }

/// The eigenvalue with the smallest real part among those with real part
/// above zero_tol. Ties go to the smallest |imag|, then to positive imag, so
/// the result is deterministic for conjugate pairs.
inline Complex lambda2(const Spectrum& spec, double zero_tol) {
    if (zero_tol < 0.0)
        throw std::invalid_argument("lambda2: zero_tol must be nonnegative");
    bool found = false;
    Complex best;
    auto better = [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        if (std::abs(a.imag()) != std::abs(b.imag())) return std::abs(a.imag()) < std::abs(b.imag());
        return a.imag() > b.imag();
    };
    for (const Complex& v : spec.values) {
        if (v.real() <= zero_tol) continue;
        if (!found || better(v, best)) {
            best = v;
            found = true;
        }
    }
    if (!found)
        throw std::runtime_error("lambda2: no eigenvalue with real part above zero_tol "
                                 "(rank deficiency / no spanning tree)");
    return best;
}

/// Split a Laplacian spectrum into the single zero eigenvalue and the rest.
/// Throws unless exactly one eigenvalue has real part <= zero_tol, which is
/// the rank(L) = m - 1 condition the closed-form spectra require.
inline std::vector<Complex> nonzero_eigenvalues(const Spectrum& spec, double zero_tol) {
    std::vector<Complex> nonzero;
    int zeros = 0;
    for (const Complex& v : spec.values) {
        if (v.real() <= zero_tol)
            ++zeros;
        else
            nonzero.push_back(v);
    }
    if (zeros != 1)
        throw std::runtime_error("spectrum has " + std::to_string(zeros) +
                                 " eigenvalues with real part <= zero_tol; rank condition "
                                 "rank(L) = m - 1 violated");
    return nonzero;
}

namespace detail {

inline Spectrum finish_spectrum(std::vector<Complex> values) {
    Spectrum s;
    s.dimension = static_cast<int>(values.size());
    std::sort(values.begin(), values.end(), complex_less);
    s.values = std::move(values);
    return s;
}

} // namespace detail

/// Closed-form spectrum of the full linearized operator on R^{m x m} for a
/// Laplacian spectrum {0, l_2, ..., l_m}:
/// {0 x m} ∪ {l_i} ∪ {2 l_j} ∪ {l_p + l_q twice, 2 <= q < p}. Size m^2.
inline Spectrum predicted_spectrum_full(const Spectrum& lap_spec, double zero_tol) {
    const auto nz = nonzero_eigenvalues(lap_spec, zero_tol);
    const int m = lap_spec.dimension;
    std::vector<Complex> pred;
    pred.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) pred.emplace_back(0.0, 0.0);
    for (const Complex& v : nz) pred.push_back(v);
    for (const Complex& v : nz) pred.push_back(2.0 * v);
    for (std::size_t q = 0; q < nz.size(); ++q)
        for (std::size_t p = q + 1; p < nz.size(); ++p) {
            pred.push_back(nz[p] + nz[q]);
            pred.push_back(nz[p] + nz[q]);
        }
    return detail::finish_spectrum(std::move(pred));
}

/// Spectrum of the restriction to the symmetric hollow subspace:
/// {2 l_j} ∪ {l_p + l_q once}. Its smallest real part is 2 Re(l_2), the decay
/// rate of the error matrix.
inline Spectrum predicted_spectrum_S0(const Spectrum& lap_spec, double zero_tol) {
    const auto nz = nonzero_eigenvalues(lap_spec, zero_tol);
    std::vector<Complex> pred;
    for (const Complex& v : nz) pred.push_back(2.0 * v);
    for (std::size_t q = 0; q < nz.size(); ++q)
        for (std::size_t p = q + 1; p < nz.size(); ++p) pred.push_back(nz[p] + nz[q]);
    return detail::finish_spectrum(std::move(pred));
}

/// Spectrum of the restriction to the skew-symmetric subspace:
/// {l_i} ∪ {l_p + l_q once}.
inline Spectrum predicted_spectrum_K(const Spectrum& lap_spec, double zero_tol) {
    const auto nz = nonzero_eigenvalues(lap_spec, zero_tol);
    std::vector<Complex> pred;
    for (const Complex& v : nz) pred.push_back(v);
    for (std::size_t q = 0; q < nz.size(); ++q)
        for (std::size_t p = q + 1; p < nz.size(); ++p) pred.push_back(nz[p] + nz[q]);
    return detail::finish_spectrum(std::move(pred));
}

/// Pairwise sums {l_i + l_j, i < j} over the whole spectrum, zero included.
/// This is the Lyapunov-map spectrum on the skew-symmetric subspace and needs
/// no rank assumption.
inline Spectrum pairwise_sum_spectrum(const Spectrum& lap_spec) {
    std::vector<Complex> sums;
    const std::size_t m = lap_spec.values.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) sums.push_back(lap_spec.values[i] + lap_spec.values[j]);
    return detail::finish_spectrum(std::move(sums));
}

/// Distance from lambda2 to the nearest other eigenvalue. Small gaps flag
/// repeated (possibly defective) lambda2, where finite-window rate fits and
/// eigenvalue pairings lose accuracy.
inline double lambda2_gap(const Spectrum& spec, const Complex& l2) {
    double gap = std::numeric_limits<double>::infinity();
    bool skipped_self = false;
    for (const Complex& v : spec.values) {
        if (!skipped_self && v == l2) {
            skipped_self = true;
            continue;
        }
        gap = std::min(gap, std::abs(v - l2));
    }
    return gap;
}

} // namespace spheresync
