#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheresync/matrix.hpp"

namespace spheresync {

/// Eigenvalue multiset of a square real matrix, with algebraic multiplicity.
/// Values are sorted by (real, imag) so equal inputs give identical output.
struct Spectrum {
    std::vector<Complex> values;
    int dimension = 0;
};

/// QR iteration failed to deflate within the iteration budget.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Balancing (EISPACK balanc): first permute rows/columns so that any
// eigenvalue readable off an isolated row or column is split off exactly,
// then equilibrate the remaining window with powers of two. The permutation
// stage is what makes triangular-up-to-permutation inputs (directed path
// Laplacians and friends) come out with exact eigenvalues.
struct BalanceWindow {
    int low;
    int high;
};

inline BalanceWindow balance(Mat& a) {
    const int n = a.rows();
    int low = 0, high = n - 1;

    auto exchange = [&](int j, int k) {
        if (j == k) return;
        for (int i = 0; i < n; ++i) std::swap(a(i, j), a(i, k));
        for (int i = 0; i < n; ++i) std::swap(a(j, i), a(k, i));
    };

    bool moved = true;
    while (moved && high >= low) {
        moved = false;
        for (int j = high; j >= low; --j) {
            bool zero_row = true;
            for (int i = low; i <= high; ++i)
                if (i != j && a(j, i) != 0.0) { zero_row = false; break; }
            if (zero_row) {
                exchange(j, high);
                --high;
                moved = true;
                break;
            }
        }
    }
    moved = true;
    while (moved && low <= high) {
        moved = false;
        for (int j = low; j <= high; ++j) {
            bool zero_col = true;
            for (int i = low; i <= high; ++i)
                if (i != j && a(i, j) != 0.0) { zero_col = false; break; }
            if (zero_col) {
                exchange(j, low);
                ++low;
                moved = true;
                break;
            }
        }
    }

    constexpr double radix = 2.0;
    constexpr double sq = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = low; i <= high; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = low; j <= high; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0;
            const double s = c + r;
            while (c < g) { f *= radix; c *= sq; }
            g = r * radix;
            while (c >= g) { f /= radix; c /= sq; }
            if ((c + r) / f < 0.95 * s) {
                const double gi = 1.0 / f;
                for (int j = 0; j < n; ++j) a(i, j) *= gi;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
                done = false;
            }
        }
    }
    return {low, high};
}

// Householder reduction to upper Hessenberg form inside the balance window
// (EISPACK orthes). Entries below the subdiagonal are zeroed afterwards.
inline void hessenberg(Mat& h, int low, int high) {
    const int n = h.rows();
    std::vector<double> ort(static_cast<std::size_t>(std::max(n, 1)), 0.0);

    for (int m = low + 1; m <= high - 1; ++m) {
        double scale = 0.0;
        for (int i = m; i <= high; ++i) scale += std::abs(h(i, m - 1));
        if (scale == 0.0) continue;

        double hh = 0.0;
        for (int i = high; i >= m; --i) {
            ort[i] = h(i, m - 1) / scale;
            hh += ort[i] * ort[i];
        }
        double g = std::sqrt(hh);
        if (ort[m] > 0.0) g = -g;
        hh -= ort[m] * g;
        ort[m] -= g;

        for (int j = m; j < n; ++j) {
            double f = 0.0;
            for (int i = high; i >= m; --i) f += ort[i] * h(i, j);
            f /= hh;
            for (int i = m; i <= high; ++i) h(i, j) -= f * ort[i];
        }
        for (int i = 0; i <= high; ++i) {
            double f = 0.0;
            for (int j = high; j >= m; --j) f += ort[j] * h(i, j);
            f /= hh;
            for (int j = m; j <= high; ++j) h(i, j) -= f * ort[j];
        }
        h(m, m - 1) = scale * g;
        for (int i = m + 1; i <= high; ++i) h(i, m - 1) = 0.0;
    }
}

// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only
// (EISPACK hqr). Destroys h.
inline void hqr(Mat& h, int low, int high, std::vector<double>& wr, std::vector<double>& wi) {
    const int n = h.rows();

    double norm = 0.0;
    {
        int k = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = k; j < n; ++j) norm += std::abs(h(i, j));
            k = i;
            if (i < low || i > high) {
                wr[i] = h(i, i);
                wi[i] = 0.0;
            }
        }
    }

    int en = high;
    double t = 0.0;
    int itn = 30 * std::max(n, 1);

    while (en >= low) {
        int its = 0;
        const int na = en - 1;
        const int enm2 = na - 1;
        bool two_roots = false;
        double x = 0.0, y = 0.0, w = 0.0;
        double p = 0.0, q = 0.0, r = 0.0, s = 0.0, zz = 0.0;
        int l = low;

        for (;;) {
            for (l = en; l > low; --l) {
                s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
                if (s == 0.0) s = norm;
                const double tst1 = s;
                const double tst2 = tst1 + std::abs(h(l, l - 1));
                if (tst2 == tst1) break;
            }

            x = h(en, en);
            if (l == en) break;
            y = h(na, na);
            w = h(en, na) * h(na, en);
            if (l == na) {
                two_roots = true;
                break;
            }

            if (itn == 0)
                throw convergence_error("eigenvalues: QR iteration exceeded 30n steps");

            if (its == 10 || its == 20) {
                // exceptional shift
                t += x;
                for (int i = low; i <= en; ++i) h(i, i) -= x;
                s = std::abs(h(en, na)) + std::abs(h(na, enm2));
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            ++its;
            --itn;

            int m;
            for (m = enm2; m >= l; --m) {
                zz = h(m, m);
                r = x - zz;
                s = y - zz;
                p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - zz - r - s;
                r = h(m + 2, m + 1);
                s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                const double tst1 =
                    std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(zz) + std::abs(h(m + 1, m + 1)));
                const double tst2 = tst1 + std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
                if (tst2 == tst1) break;
            }
            for (int i = m + 2; i <= en; ++i) {
                h(i, i - 2) = 0.0;
                if (i != m + 2) h(i, i - 3) = 0.0;
            }

            for (int k = m; k <= na; ++k) {
                const bool notlast = (k != na);
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = notlast ? h(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
                if (k != m)
                    h(k, k - 1) = -s * x;
                else if (l != m)
                    h(k, k - 1) = -h(k, k - 1);
                p += s;
                x = p / s;
                y = q / s;
                zz = r / s;
                q /= p;
                r /= p;

                if (!notlast) {
                    for (int j = k; j < n; ++j) {
                        p = h(k, j) + q * h(k + 1, j);
                        h(k, j) -= p * x;
                        h(k + 1, j) -= p * y;
                    }
                    const int imax = std::min(en, k + 3);
                    for (int i = 0; i <= imax; ++i) {
                        p = x * h(i, k) + y * h(i, k + 1);
                        h(i, k) -= p;
                        h(i, k + 1) -= p * q;
                    }
                } else {
                    for (int j = k; j < n; ++j) {
                        p = h(k, j) + q * h(k + 1, j) + r * h(k + 2, j);
                        h(k, j) -= p * x;
                        h(k + 1, j) -= p * y;
                        h(k + 2, j) -= p * zz;
                    }
                    const int imax = std::min(en, k + 3);
                    for (int i = 0; i <= imax; ++i) {
                        p = x * h(i, k) + y * h(i, k + 1) + zz * h(i, k + 2);
                        h(i, k) -= p;
                        h(i, k + 1) -= p * q;
                        h(i, k + 2) -= p * r;
                    }
                }
            }
        }

        if (two_roots) {
            p = (y - x) / 2.0;
            q = p * p + w;
            zz = std::sqrt(std::abs(q));
            x += t;
            if (q >= 0.0) {
                zz = p + std::copysign(zz, p);
                wr[na] = x + zz;
                wr[en] = (zz != 0.0) ? x - w / zz : wr[na];
                wi[na] = 0.0;
                wi[en] = 0.0;
            } else {
                wr[na] = x + p;
                wr[en] = x + p;
                wi[na] = zz;
                wi[en] = -zz;
            }
            en = enm2;
        } else {
            wr[en] = x + t;
            wi[en] = 0.0;
            en = na;
        }
    }
}

inline bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace detail

/// All eigenvalues of a square real matrix, with algebraic multiplicity.
/// Balancing + Householder Hessenberg reduction + Francis double-shift QR.
inline Spectrum eigenvalues(const Mat& a) {
    if (!a.square())
        throw std::invalid_argument("eigenvalues: matrix must be square");
    const int n = a.rows();

    Mat h = a;
    const auto window = detail::balance(h);
    detail::hessenberg(h, window.low, window.high);

    std::vector<double> wr(static_cast<std::size_t>(n), 0.0);
    std::vector<double> wi(static_cast<std::size_t>(n), 0.0);
    detail::hqr(h, window.low, window.high, wr, wi);

    Spectrum spec;
    spec.dimension = n;
    spec.values.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) spec.values.emplace_back(wr[i], wi[i]);
    std::sort(spec.values.begin(), spec.values.end(), detail::complex_less);
    return spec;
}

/// Singular values in descending order, by one-sided Jacobi rotations.
inline std::vector<double> singular_values(const Mat& a) {
    Mat u = a;
    const int m = u.rows(), n = u.cols();
    constexpr double eps = 1e-15;

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int i = 0; i < m; ++i) {
                    app += u(i, p) * u(i, p);
                    aqq += u(i, q) * u(i, q);
                    apq += u(i, p) * u(i, q);
                }
                if (apq == 0.0 || std::abs(apq) <= eps * std::sqrt(app * aqq)) continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double tt = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + tt * tt);
                const double sn = cs * tt;
                for (int i = 0; i < m; ++i) {
                    const double up = u(i, p), uq = u(i, q);
                    u(i, p) = cs * up - sn * uq;
                    u(i, q) = sn * up + cs * uq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += u(i, j) * u(i, j);
        sv[static_cast<std::size_t>(j)] = std::sqrt(s);
    }
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

/// Count of singular values above rel_tol times the largest one.
inline int numeric_rank(const Mat& a, double rel_tol = 1e-9) {
    if (rel_tol <= 0.0)
        throw std::invalid_argument("numeric_rank: tolerance must be positive");
    const auto sv = singular_values(a);
    if (sv.empty() || sv[0] == 0.0) return 0;
    int r = 0;
    for (double s : sv)
        if (s > rel_tol * sv[0]) ++r;
    return r;
}

} // namespace spheresync
