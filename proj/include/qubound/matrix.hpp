#pragma once

// Dense complex matrices of dimension 2 and 4 (one qubit / two qubits),
// stored by value on the stack.  Everything downstream works with these two
// sizes only, so the dimension is a compile-time parameter and no general
// linear-algebra backend is needed.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qubound {

using cxd = std::complex<double>;

template <std::size_t N>
struct Matrix {
    static_assert(N == 2 || N == 4, "Matrix only supports dimensions 2 and 4");

    std::array<cxd, N * N> e{};

    static constexpr std::size_t dim = N;

    cxd& operator()(std::size_t r, std::size_t c) { return e[r * N + c]; }
    const cxd& operator()(std::size_t r, std::size_t c) const { return e[r * N + c]; }

    static Matrix zero() { return Matrix{}; }

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    Matrix adjoint() const {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    cxd trace() const {
        cxd t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    // Largest entry-wise deviation from the adjoint; zero for Hermitian input.
    double hermiticity_error() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c)
                worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return worst;
    }

    bool is_hermitian(double tol = 1e-10) const { return hermiticity_error() <= tol; }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cxd& v : e) s += std::norm(v);
        return std::sqrt(s);
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) e[i] += o.e[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) e[i] -= o.e[i];
        return *this;
    }
    Matrix& operator*=(cxd s) {
        for (auto& v : e) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cxd s) { return a *= s; }
    friend Matrix operator*(cxd s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const cxd ark = a(r, k);
                if (ark == cxd{0.0, 0.0}) continue;
                for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

// Which half of a bipartite (2x2) system an operation refers to.
enum class Party { A, B };

inline const char* party_name(Party p) { return p == Party::A ? "A" : "B"; }

inline Matrix2 sigma_x() {
    Matrix2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline Matrix2 sigma_y() {
    Matrix2 m;
    m(0, 1) = cxd{0.0, -1.0};
    m(1, 0) = cxd{0.0, 1.0};
    return m;
}

inline Matrix2 sigma_z() {
    Matrix2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

// Kronecker product; the only instantiation that fits the supported sizes is
// 2 (x) 2 -> 4, which the static_assert documents.
template <std::size_t N1, std::size_t N2>
Matrix<N1 * N2> tensor_product(const Matrix<N1>& a, const Matrix<N2>& b) {
    static_assert(N1 * N2 <= 4, "tensor_product result dimension must stay within 4");
    Matrix<N1 * N2> m;
    for (std::size_t ra = 0; ra < N1; ++ra)
        for (std::size_t ca = 0; ca < N1; ++ca)
            for (std::size_t rb = 0; rb < N2; ++rb)
                for (std::size_t cb = 0; cb < N2; ++cb)
                    m(ra * N2 + rb, ca * N2 + cb) = a(ra, ca) * b(rb, cb);
    return m;
}

// Reduce a two-qubit operator to one side: keep == Party::A traces out B and
// vice versa.  Index convention: row = 2*a + b for subsystem indices (a, b).
inline Matrix2 partial_trace(const Matrix4& m, Party keep) {
    Matrix2 r;
    if (keep == Party::A) {
        for (std::size_t a0 = 0; a0 < 2; ++a0)
            for (std::size_t a1 = 0; a1 < 2; ++a1)
                for (std::size_t b = 0; b < 2; ++b) r(a0, a1) += m(2 * a0 + b, 2 * a1 + b);
    } else {
        for (std::size_t b0 = 0; b0 < 2; ++b0)
            for (std::size_t b1 = 0; b1 < 2; ++b1)
                for (std::size_t a = 0; a < 2; ++a) r(b0, b1) += m(2 * a + b0, 2 * a + b1);
    }
    return r;
}

// n . sigma for a unit vector n.  Hermitian with eigenvalues -1 and +1.
inline Matrix2 bloch_operator(const std::array<double, 3>& n) {
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(len - 1.0) > 1e-12)
        throw std::invalid_argument("bloch_operator: direction must be a unit vector, |n| = " +
                                    std::to_string(len));
    Matrix2 m;
    m(0, 0) = n[2];
    m(1, 1) = -n[2];
    m(0, 1) = cxd{n[0], -n[1]};
    m(1, 0) = cxd{n[0], n[1]};
    return m;
}

}  // namespace qubound
