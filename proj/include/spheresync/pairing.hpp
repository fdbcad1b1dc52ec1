#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spheresync/eigen.hpp"
#include "spheresync/matrix.hpp"

namespace spheresync {

/// Exact minimum-cost assignment on a square cost matrix (Hungarian method
/// with potentials, O(n^3)). Returns the column assigned to each row.
inline std::vector<int> min_cost_assignment(const Mat& cost) {
    if (!cost.square())
        throw std::invalid_argument("min_cost_assignment: cost matrix must be square");
    const int n = cost.rows();
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (p[static_cast<std::size_t>(j)] > 0) row_to_col[static_cast<std::size_t>(p[static_cast<std::size_t>(j)]) - 1] = j - 1;
    return row_to_col;
}

/// Two eigenvalue multisets matched by a minimum-cost bipartite assignment on
/// |computed - predicted|. Greedy pairing mis-ranks near-degenerate clusters,
/// hence the full assignment.
struct SpectralReport {
    Spectrum computed;
    Spectrum predicted;
    std::vector<int> pairing; // pairing[k]: index into predicted for computed k
    double max_residual = 0.0;
};

inline SpectralReport pair_spectra(Spectrum computed, Spectrum predicted) {
    if (computed.values.size() != predicted.values.size())
        throw std::invalid_argument("pair_spectra: multiset sizes differ");
    const int n = static_cast<int>(computed.values.size());

    SpectralReport report;
    if (n == 0) {
        report.computed = std::move(computed);
        report.predicted = std::move(predicted);
        return report;
    }

    Mat cost(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cost(i, j) = std::abs(computed.values[static_cast<std::size_t>(i)] -
                                  predicted.values[static_cast<std::size_t>(j)]);

    report.pairing = min_cost_assignment(cost);
    report.max_residual = 0.0;
    for (int i = 0; i < n; ++i)
        report.max_residual = std::max(report.max_residual, cost(i, report.pairing[static_cast<std::size_t>(i)]));
    report.computed = std::move(computed);
    report.predicted = std::move(predicted);
    return report;
}

} // namespace spheresync
