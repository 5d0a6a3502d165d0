#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "focklab/points.hpp"

namespace oracle {

using cd = std::complex<double>;

// Cyclic Jacobi on the real symmetric embedding [[Re, -Im], [Im, Re]]; each eigenvalue appears twice.
inline std::vector<double> hermitian_eigenvalues(const std::vector<std::vector<cd>>& h) {
    std::size_t n = h.size(), m = 2 * n;
    std::vector<std::vector<double>> a(m, std::vector<double>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = h[i][j].real();
            a[i + n][j + n] = h[i][j].real();
            a[i][j + n] = -h[i][j].imag();
            a[i + n][j] = h[i][j].imag();
        }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(m);
    for (std::size_t i = 0; i < m; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    double h = (b - a) / n, s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double d_rho_plain(double alpha, cd z, cd w) {
    double r = std::sqrt(2.0 * alpha);
    return r * std::abs(z - w) / (r + std::min(std::abs(z), std::abs(w)));
}

inline double min_pair_d_rho(double alpha, const focklab::PointSeq& s, std::size_t* i_out = nullptr,
                             std::size_t* j_out = nullptr) {
    double best = INFINITY;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            double d = d_rho_plain(alpha, s[i].to_complex(), s[j].to_complex());
            if (d < best) {
                best = d;
                if (i_out) *i_out = i;
                if (j_out) *j_out = j;
            }
        }
    return best;
}

// prod (1 - z / lambda_k) in ordinary arithmetic
inline cd product(const std::vector<cd>& zeros, cd z) {
    cd p = 1.0;
    for (const auto& l : zeros) p *= 1.0 - z / l;
    return p;
}

}  // namespace oracle
