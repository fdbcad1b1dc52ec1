#pragma once

#include <stdexcept>

#include "spheresync/matrix.hpp"

namespace spheresync {

/// Kronecker product (a ⊗ b): block (i, j) equals a(i, j) * b.
inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return out;
}

/// Column-stacking operator, returned as an (rows*cols)-by-1 matrix.
inline Mat vec(const Mat& x) {
    Mat out(x.rows() * x.cols(), 1);
    for (int j = 0; j < x.cols(); ++j)
        for (int i = 0; i < x.rows(); ++i)
            out(j * x.rows() + i, 0) = x(i, j);
    return out;
}

/// Inverse of vec for a known target shape.
inline Mat unvec(const Mat& v, int rows, int cols) {
    if (v.cols() != 1 || v.rows() != rows * cols)
        throw std::invalid_argument("unvec: shape mismatch");
    Mat out(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            out(i, j) = v(j * rows + i, 0);
    return out;
}

} // namespace spheresync
