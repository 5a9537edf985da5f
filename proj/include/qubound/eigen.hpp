#pragma once

// Eigendecomposition of small Hermitian matrices by cyclic complex Jacobi
// rotations.  At dimension 2 a single rotation is exact; at dimension 4 the
// sweep converges quadratically and a handful of sweeps reaches the target.
// The output is fully deterministic: eigenvalues ascend, each eigenvector is
// re-orthonormalised in that order, and the global phase is fixed by making
// the largest-magnitude component real and nonnegative.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qubound/matrix.hpp"

namespace qubound {

template <std::size_t N>
struct EigenSystem {
    std::array<double, N> values{};                    // ascending
    std::array<std::array<cxd, N>, N> vectors{};       // vectors[k] pairs with values[k]

    // Rebuild sum_k values[k] |v_k><v_k|, for residual checks.
    Matrix<N> reconstruct() const {
        Matrix<N> m;
        for (std::size_t k = 0; k < N; ++k)
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t c = 0; c < N; ++c)
                    m(r, c) += values[k] * vectors[k][r] * std::conj(vectors[k][c]);
        return m;
    }
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

}  // namespace detail

template <std::size_t N>
EigenSystem<N> hermitian_eigensystem(const Matrix<N>& input) {
    const double asym = input.hermiticity_error();
    if (asym > 1e-10)
        throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian (max |M - M^+| = " +
                                    std::to_string(asym) + ")");

    // Work on the symmetrised copy so roundoff-level asymmetry cannot leak in.
    Matrix<N> a = (input + input.adjoint()) * cxd{0.5, 0.0};
    Matrix<N> v = Matrix<N>::identity();  // accumulated rotations, columns = eigenvectors

    constexpr int max_sweeps = 100;
    constexpr double off_tol = 1e-12;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) < off_tol) break;
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= 1e-300) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const cxd phase = a(p, q) / r;  // e^{i beta}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Choose the smaller rotation angle zeroing a(p,q):
                // tan(2t) = 2r / (app - aqq).
                const double tau = (app - aqq) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // Unitary acting on the (p,q) plane:
                //   U = [ c            -s e^{i beta} ]
                //       [ s e^{-i beta}       c      ]
                for (std::size_t k = 0; k < N; ++k) {
                    if (k == p || k == q) continue;
                    const cxd akp = a(k, p);
                    const cxd akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(phase) * akq;
                    a(k, q) = -s * phase * akp + c * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = app * c * c + aqq * s * s + 2.0 * r * c * s;
                a(q, q) = app * s * s + aqq * c * c - 2.0 * r * c * s;
                a(p, q) = a(q, p) = 0.0;

                for (std::size_t k = 0; k < N; ++k) {
                    const cxd vkp = v(k, p);
                    const cxd vkq = v(k, q);
                    v(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    v(k, q) = -s * phase * vkp + c * vkq;
                }
            }
        }
    }

    // Sort ascending; equal eigenvalues keep their sweep order.
    std::array<std::size_t, N> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenSystem<N> es;
    for (std::size_t k = 0; k < N; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < N; ++r) es.vectors[k][r] = v(r, order[k]);
    }

    // Modified Gram-Schmidt in ascending-eigenvalue order.  The rotations
    // already produce an orthonormal set; this pins degenerate subspaces to
    // one deterministic basis and scrubs accumulated roundoff.
    for (std::size_t k = 0; k < N; ++k) {
        auto& vk = es.vectors[k];
        for (std::size_t j = 0; j < k; ++j) {
            cxd overlap = 0.0;
            for (std::size_t r = 0; r < N; ++r) overlap += std::conj(es.vectors[j][r]) * vk[r];
            for (std::size_t r = 0; r < N; ++r) vk[r] -= overlap * es.vectors[j][r];
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < N; ++r) nrm += std::norm(vk[r]);
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < N; ++r) vk[r] /= nrm;

        // Phase convention: the largest-magnitude component (first such index
        // on ties) becomes real and nonnegative.
        std::size_t imax = 0;
        double amax = -1.0;
        for (std::size_t r = 0; r < N; ++r) {
            const double m = std::abs(vk[r]);
            if (m > amax + 1e-15) {
                amax = m;
                imax = r;
            }
        }
        if (amax > 0.0) {
            const cxd ph = vk[imax] / std::abs(vk[imax]);
            for (std::size_t r = 0; r < N; ++r) vk[r] *= std::conj(ph);
            vk[imax] = cxd{std::abs(vk[imax]), 0.0};
        }
    }
    return es;
}

}  // namespace qubound
