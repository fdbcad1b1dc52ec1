#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "spheresync/matrix.hpp"

namespace spheresync {

/// Index pairs (i, j) with i < j in lexicographic order. This ordering fixes
/// the basis layout below and the e_i_j trajectory columns.
inline std::vector<std::pair<int, int>> index_pairs(int m) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    return pairs;
}

/// Canonical ordered bases of the decomposition R^{m x m} =
/// (symmetric hollow) ⊕ (diagonal) ⊕ (skew-symmetric):
///   sym_hollow:  E_ij + E_ji for i < j, lexicographic
///   diagonal:    E_ii
///   skew:        E_ij - E_ji for i < j, lexicographic
struct SubspaceBases {
    int m = 0;
    std::vector<Mat> sym_hollow;
    std::vector<Mat> diagonal;
    std::vector<Mat> skew;
};

inline SubspaceBases subspace_bases(int m) {
    if (m < 2)
        throw std::invalid_argument("subspace_bases: need m >= 2");
    SubspaceBases b;
    b.m = m;
    for (const auto& [i, j] : index_pairs(m)) {
        Mat sym(m, m), skw(m, m);
        sym(i, j) = 1.0;
        sym(j, i) = 1.0;
        skw(i, j) = 1.0;
        skw(j, i) = -1.0;
        b.sym_hollow.push_back(std::move(sym));
        b.skew.push_back(std::move(skw));
    }
    for (int i = 0; i < m; ++i) {
        Mat d(m, m);
        d(i, i) = 1.0;
        b.diagonal.push_back(std::move(d));
    }
    return b;
}

/// Coordinates of an arbitrary m x m matrix in the ordered basis
/// [sym_hollow, diagonal, skew]. The decomposition is unique:
/// sym coord (i,j) = (X_ij + X_ji)/2, diag coord i = X_ii,
/// skew coord (i,j) = (X_ij - X_ji)/2.
inline std::vector<double> subspace_coordinates(const Mat& x) {
    if (!x.square())
        throw std::invalid_argument("subspace_coordinates: matrix must be square");
    const int m = x.rows();
    const auto pairs = index_pairs(m);
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(m) * m);
    for (const auto& [i, j] : pairs) coords.push_back(0.5 * (x(i, j) + x(j, i)));
    for (int i = 0; i < m; ++i) coords.push_back(x(i, i));
    for (const auto& [i, j] : pairs) coords.push_back(0.5 * (x(i, j) - x(j, i)));
    return coords;
}

inline Mat from_subspace_coordinates(int m, const std::vector<double>& coords) {
    const auto pairs = index_pairs(m);
    const std::size_t expected = pairs.size() * 2 + static_cast<std::size_t>(m);
    if (coords.size() != expected)
        throw std::invalid_argument("from_subspace_coordinates: wrong coordinate count");
    Mat x(m, m);
    std::size_t k = 0;
    for (const auto& [i, j] : pairs) {
        x(i, j) += coords[k];
        x(j, i) += coords[k];
        ++k;
    }
    for (int i = 0; i < m; ++i) x(i, i) += coords[k++];
    for (const auto& [i, j] : pairs) {
        x(i, j) += coords[k];
        x(j, i) -= coords[k];
        ++k;
    }
    return x;
}

} // namespace spheresync
