#pragma once

// Entropies, all in bits (base-2 logarithms).

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubound/eigen.hpp"
#include "qubound/matrix.hpp"

namespace qubound {

namespace detail {

// x log2 x with the usual continuous extension 0 log 0 = 0.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace detail

// Shannon entropy of a probability vector.  Weights may carry roundoff:
// values in [-1e-12, 0) are clamped to zero, and the sum must be 1 within
// 1e-9.  Anything worse is a caller bug and throws.
inline double shannon(std::span<const double> weights) {
    double sum = 0.0;
    double h = 0.0;
    for (double w : weights) {
        if (w < -1e-12)
            throw std::invalid_argument("shannon: negative weight " + std::to_string(w));
        if (w > 0.0) h -= detail::xlog2x(w);
        sum += std::max(w, 0.0);
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("shannon: weights sum to " + std::to_string(sum) +
                                    ", expected 1");
    return h;
}

inline double shannon(const std::vector<double>& weights) {
    return shannon(std::span<const double>{weights});
}

template <std::size_t K>
double shannon(const std::array<double, K>& weights) {
    return shannon(std::span<const double>{weights.data(), K});
}

// H(x) = -x log2 x - (1-x) log2(1-x); accepts 1e-12 of roundoff past [0, 1].
inline double binary_entropy(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12)
        throw std::invalid_argument("binary_entropy: argument " + std::to_string(x) +
                                    " outside [0, 1]");
    x = std::min(std::max(x, 0.0), 1.0);
    return -detail::xlog2x(x) - detail::xlog2x(1.0 - x);
}

// Von Neumann entropy S(m) = -Tr[m log2 m] of a density operator given as a
// raw matrix.  Eigenvalues in [-1e-9, 0) are treated as roundoff zeros; a
// genuinely negative spectrum or a trace away from 1 throws.
template <std::size_t N>
double von_neumann(const Matrix<N>& m) {
    const EigenSystem<N> es = hermitian_eigensystem(m);
    double h = 0.0;
    double sum = 0.0;
    for (double lam : es.values) {
        if (lam < -1e-9)
            throw std::invalid_argument("von_neumann: eigenvalue " + std::to_string(lam) +
                                        " < 0, not a density matrix");
        if (lam > 0.0) h -= detail::xlog2x(lam);
        sum += std::max(lam, 0.0);
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw std::invalid_argument("von_neumann: trace " + std::to_string(sum) +
                                    ", not a density matrix");
    return h;
}

// S(X|memory) = S(AB) - S(memory side); negative for entangled states.
inline double conditional_vn(const Matrix4& rho, Party memory = Party::B) {
    return von_neumann(rho) - von_neumann(partial_trace(rho, memory));
}

// I(A:B) = S(A) + S(B) - S(AB).
inline double mutual_information(const Matrix4& rho) {
    return von_neumann(partial_trace(rho, Party::A)) + von_neumann(partial_trace(rho, Party::B)) -
           von_neumann(rho);
}

}  // namespace qubound
