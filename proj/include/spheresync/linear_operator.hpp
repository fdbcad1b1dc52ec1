#pragma once

#include <stdexcept>
#include <vector>

#include "spheresync/graph.hpp"
#include "spheresync/kronecker.hpp"
#include "spheresync/matrix.hpp"
#include "spheresync/subspaces.hpp"

namespace spheresync {

/// The m x m^2 block-diagonal matrix with block i equal to row i of L.
/// Applied to vec(X) it reads off the diagonal of L X.
inline Mat hat_matrix(const Mat& l) {
    const int m = l.rows();
    Mat hat(m, m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) hat(i, i * m + j) = l(i, j);
    return hat;
}

/// Lyapunov mapping S(X) = L X + X L^T.
inline Mat apply_lyapunov(const Mat& l, const Mat& x) {
    return l * x + x * l.transpose();
}

inline Mat apply_lyapunov(const Laplacian& l, const Mat& x) {
    return apply_lyapunov(l.entries, x);
}

/// Linearization of the error flow at consensus:
/// T(X) = L X + X L^T - Lhat vec(X) 1^T - 1 (vec(X))^T Lhat^T.
/// Lhat vec(X) is exactly the diagonal of L X, so no m^2-sized product is formed.
inline Mat apply_T(const Mat& l, const Mat& x) {
    const int m = l.rows();
    if (!x.square() || x.rows() != m)
        throw std::invalid_argument("apply_T: shape mismatch");
    const Mat lx = l * x;
    Mat out = lx + x * l.transpose();
    std::vector<double> d(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) d[static_cast<std::size_t>(i)] = lx(i, i);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(i, j) -= d[static_cast<std::size_t>(i)] + d[static_cast<std::size_t>(j)];
    return out;
}

inline Mat apply_T(const Laplacian& l, const Mat& x) {
    return apply_T(l.entries, x);
}

/// The m^2 x m^2 matrix realization of T(.) under column stacking, built from
/// the four Kronecker terms. Kept separate from apply_T so the identity
/// vec(T(X)) = T vec(X) is a genuine two-route check in the tests.
struct OperatorT {
    Mat matrix;
    Mat hat;
    Laplacian source;
};

inline OperatorT build_operator_T(const Laplacian& l) {
    const int m = l.entries.rows();
    const Mat eye = Mat::identity(m);
    const Mat one = Mat::ones(m);
    const Mat hat = hat_matrix(l.entries);
    Mat t = kron(l.entries, eye);
    t += kron(eye, l.entries);
    t -= kron(one, hat);
    t -= kron(hat, one);
    return {std::move(t), hat, l};
}

/// Matrix of a linear map X -> F(X) on R^{m x m} in the ordered basis
/// [sym_hollow, diagonal, skew].
template <typename Map>
inline Mat matrix_on_subspace_basis(int m, Map&& f) {
    const SubspaceBases bases = subspace_bases(m);
    const int dim = m * m;
    Mat out(dim, dim);
    int col = 0;
    auto emit = [&](const Mat& basis_elem) {
        const auto coords = subspace_coordinates(f(basis_elem));
        for (int r = 0; r < dim; ++r) out(r, col) = coords[static_cast<std::size_t>(r)];
        ++col;
    };
    for (const Mat& b : bases.sym_hollow) emit(b);
    for (const Mat& b : bases.diagonal) emit(b);
    for (const Mat& b : bases.skew) emit(b);
    return out;
}

/// Matrix of the Lyapunov mapping restricted to the skew-symmetric subspace,
/// in the lexicographic pair basis.
inline Mat lyapunov_matrix_on_skew(const Mat& l) {
    const int m = l.rows();
    const auto pairs = index_pairs(m);
    const int dim = static_cast<int>(pairs.size());
    Mat out(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const auto [i, j] = pairs[static_cast<std::size_t>(col)];
        Mat x(m, m);
        x(i, j) = 1.0;
        x(j, i) = -1.0;
        const Mat y = apply_lyapunov(l, x);
        for (int row = 0; row < dim; ++row) {
            const auto [p, q] = pairs[static_cast<std::size_t>(row)];
            out(row, col) = 0.5 * (y(p, q) - y(q, p));
        }
    }
    return out;
}

} // namespace spheresync
