#pragma once

#include <cmath>
#include <string>
#include <stdexcept>
#include <vector>

#include "spheresync/eigen.hpp"
#include "spheresync/graph.hpp"
#include "spheresync/kronecker.hpp"
#include "spheresync/linear_operator.hpp"
#include "spheresync/pairing.hpp"
#include "spheresync/predictions.hpp"
#include "spheresync/subspaces.hpp"

namespace spheresync {

/// Blocks of the linearized operator in the ordered basis
/// [sym_hollow, diagonal, skew]. The operator maps the symmetric subspace
/// into the hollow symmetric one and projects onto the skew subspace as the
/// Lyapunov map, so the matrix is block triangular:
///
///     [ T11  T12  T13 ]
///     [  0    0   T23 ]
///     [  0    0   T33 ]      with T33 equal to the Lyapunov block S33.
///
/// Only the zero blocks and T33 = S33 are theorems; T12, T13, T23 are
/// reported without any assertion on their values.
struct BlockStructureReport {
    Mat t11, t12, t13, t23, t33;
    Mat s33;
    double max_zero_block_abs = 0.0;
    double max_t33_vs_s33 = 0.0;
};

inline BlockStructureReport verify_block_structure(const Laplacian& l, double tol = 1e-10) {
    const int m = l.entries.rows();
    const Mat full = matrix_on_subspace_basis(m, [&](const Mat& x) { return apply_T(l.entries, x); });

    const int n1 = m * (m - 1) / 2;
    const int n2 = m;
    auto block = [&](int r0, int r1, int c0, int c1) {
        Mat b(r1 - r0, c1 - c0);
        for (int i = r0; i < r1; ++i)
            for (int j = c0; j < c1; ++j) b(i - r0, j - c0) = full(i, j);
        return b;
    };

    BlockStructureReport report;
    report.t11 = block(0, n1, 0, n1);
    report.t12 = block(0, n1, n1, n1 + n2);
    report.t13 = block(0, n1, n1 + n2, m * m);
    report.t23 = block(n1, n1 + n2, n1 + n2, m * m);
    report.t33 = block(n1 + n2, m * m, n1 + n2, m * m);
    report.s33 = lyapunov_matrix_on_skew(l.entries);

    double zero_mag = 0.0;
    zero_mag = std::max(zero_mag, block(n1, m * m, 0, n1).max_abs());          // rows 2..3, col 1
    zero_mag = std::max(zero_mag, block(n1, m * m, n1, n1 + n2).max_abs());    // rows 2..3, col 2 (T22 = 0 too)
    report.max_zero_block_abs = zero_mag;
    report.max_t33_vs_s33 = max_abs_diff(report.t33, report.s33);

    if (report.max_zero_block_abs > tol || report.max_t33_vs_s33 > tol)
        throw std::logic_error("verify_block_structure: block pattern violated (zero blocks " +
                               std::to_string(report.max_zero_block_abs) + ", T33 vs S33 " +
                               std::to_string(report.max_t33_vs_s33) + "); this indicates a bug");
    return report;
}

/// Eigenvalues of the full m^2 x m^2 linearized operator against the
/// closed-form prediction from the Laplacian spectrum.
struct Prop2Report {
    SpectralReport spectra;
    double tol = 0.0;
    bool passed = false;
};

inline Prop2Report verify_prop2(const Digraph& g, double tol) {
    const Laplacian l = laplacian(g);
    const Spectrum lap_spec = eigenvalues(l.entries);
    const Spectrum predicted = predicted_spectrum_full(lap_spec, default_zero_tol(l.entries));
    const Spectrum computed = eigenvalues(build_operator_T(l).matrix);

    Prop2Report report;
    report.spectra = pair_spectra(computed, predicted);
    report.tol = tol;
    report.passed = report.spectra.max_residual <= tol;
    return report;
}

/// Spectrum of the Lyapunov map restricted to the skew subspace against the
/// pairwise sums of the Laplacian eigenvalues.
struct Lemma1Report {
    SpectralReport spectra;
    double tol = 0.0;
    bool passed = false;
};

inline Lemma1Report verify_lemma1(const Laplacian& l, double tol) {
    const Spectrum computed = eigenvalues(lyapunov_matrix_on_skew(l.entries));
    const Spectrum predicted = pairwise_sum_spectrum(eigenvalues(l.entries));

    Lemma1Report report;
    report.spectra = pair_spectra(computed, predicted);
    report.tol = tol;
    report.passed = report.spectra.max_residual <= tol;
    return report;
}

/// spec(A + B) = spec(A) whenever AB = BC and B^2 = 0. Both signs of B are
/// exercised, covering the A - B usage.
struct Lemma3Report {
    double ab_minus_bc_max_abs = 0.0;
    double b_squared_max_abs = 0.0;
    SpectralReport plus;  // eig(A + B) vs eig(A)
    SpectralReport minus; // eig(A - B) vs eig(A)
    double tol = 0.0;
    bool passed = false;
};

inline Lemma3Report verify_lemma3(const Mat& a, const Mat& b, const Mat& c, double tol) {
    if (!a.square() || !b.square() || !c.square() || a.rows() != b.rows() || a.rows() != c.rows())
        throw std::invalid_argument("verify_lemma3: matrices must be square and same order");

    Lemma3Report report;
    report.ab_minus_bc_max_abs = max_abs_diff(a * b, b * c);
    report.b_squared_max_abs = (b * b).max_abs();
    report.tol = tol;
    if (report.ab_minus_bc_max_abs > tol)
        throw std::invalid_argument("verify_lemma3: AB = BC violated (max deviation " +
                                    std::to_string(report.ab_minus_bc_max_abs) + ")");
    if (report.b_squared_max_abs > tol)
        throw std::invalid_argument("verify_lemma3: B^2 = 0 violated (max entry " +
                                    std::to_string(report.b_squared_max_abs) + ")");

    const Spectrum base = eigenvalues(a);
    report.plus = pair_spectra(eigenvalues(a + b), base);
    report.minus = pair_spectra(eigenvalues(a - b), base);
    report.passed = report.plus.max_residual <= tol && report.minus.max_residual <= tol;
    return report;
}

/// The nilpotent splitting used to reach the closed-form spectrum:
/// A = L ⊗ I + I ⊗ L - 1 ⊗ Lhat and B = Lhat ⊗ 1. Row sums of L vanish, so
/// B^2 = 0, (I ⊗ L) B = 0 and (1 ⊗ Lhat) B = 0, and A - B (the full operator
/// matrix) has the spectrum of A. All four facts are checked numerically.
struct Lemma3ConstructionReport {
    double b_squared_max_abs = 0.0;
    double il_b_max_abs = 0.0;
    double onehat_b_max_abs = 0.0;
    SpectralReport spectra; // eig(A - B) vs eig(A)
    double tol = 0.0;
    bool passed = false;
};

inline Lemma3ConstructionReport verify_lemma3_construction(const Laplacian& l, double tol) {
    const int m = l.entries.rows();
    const Mat eye = Mat::identity(m);
    const Mat one = Mat::ones(m);
    const Mat hat = hat_matrix(l.entries);

    const Mat a = kron(l.entries, eye) + kron(eye, l.entries) - kron(one, hat);
    const Mat b = kron(hat, one);

    Lemma3ConstructionReport report;
    report.b_squared_max_abs = (b * b).max_abs();
    report.il_b_max_abs = (kron(eye, l.entries) * b).max_abs();
    report.onehat_b_max_abs = (kron(one, hat) * b).max_abs();
    report.spectra = pair_spectra(eigenvalues(a - b), eigenvalues(a));
    report.tol = tol;
    report.passed = report.spectra.max_residual <= tol && report.b_squared_max_abs <= tol;
    return report;
}

/// Numerical semisimplicity probe: cluster the computed eigenvalues, then
/// check that each cluster's geometric multiplicity (via singular values of
/// the shifted matrix) matches its size. Spectral comparisons on matrices
/// that fail this probe carry O(eps^(1/k)) eigenvalue error for a size-k
/// Jordan block, so callers flag them instead of asserting tight tolerances.
inline bool spectrum_semisimple(const Mat& a, const Spectrum& spec, double cluster_tol = 1e-6) {
    const int n = a.rows();
    std::vector<std::vector<Complex>> clusters;
    for (const Complex& v : spec.values) {
        bool placed = false;
        for (auto& cluster : clusters) {
            for (const Complex& w : cluster) {
                if (std::abs(v - w) <= cluster_tol) {
                    cluster.push_back(v);
                    placed = true;
                    break;
                }
            }
            if (placed) break;
        }
        if (!placed) clusters.push_back({v});
    }

    const double sigma_tol = 10.0 * cluster_tol * std::max(1.0, a.norm_inf());
    for (const auto& cluster : clusters) {
        if (cluster.size() < 2) continue;
        Complex mean(0.0, 0.0);
        for (const Complex& v : cluster) mean += v;
        mean /= static_cast<double>(cluster.size());

        // real 2n x 2n embedding of A - mean*I
        Mat embed(2 * n, 2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double x = a(i, j) - (i == j ? mean.real() : 0.0);
                embed(i, j) = x;
                embed(n + i, n + j) = x;
            }
        for (int i = 0; i < n; ++i) {
            embed(i, n + i) = mean.imag();
            embed(n + i, i) = -mean.imag();
        }
        const auto sv = singular_values(embed);
        int deficient = 0;
        for (double s : sv)
            if (s < sigma_tol) ++deficient;
        if (deficient / 2 < static_cast<int>(cluster.size())) return false;
    }
    return true;
}

} // namespace spheresync
