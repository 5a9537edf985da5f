#pragma once

// Two-qubit density matrices: the named families used throughout, plus a
// seeded random-state generator and a validity checker.  Basis order is
// |00>, |01>, |10>, |11> with the first ket belonging to party A.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubound/eigen.hpp"
#include "qubound/matrix.hpp"

namespace qubound {

namespace detail {

inline std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace detail

template <std::size_t N>
struct DensityMatrix {
    Matrix<N> mat;
    std::string label;
};

// A measurement direction on the Bloch sphere, kept in canonical spherical
// coordinates: theta in [0, pi], phi in [0, 2*pi).
struct Observable {
    double theta;
    double phi;

    Observable(double theta_, double phi_) : theta(theta_), phi(phi_) {
        constexpr double pi = std::numbers::pi;
        if (theta < -1e-12 || theta > pi + 1e-12)
            throw std::invalid_argument("Observable: theta = " + std::to_string(theta) +
                                        " outside [0, pi]");
        if (phi < -1e-12 || phi >= 2.0 * pi + 1e-12)
            throw std::invalid_argument("Observable: phi = " + std::to_string(phi) +
                                        " outside [0, 2*pi)");
        theta = std::min(std::max(theta, 0.0), pi);
        phi = std::max(phi, 0.0);
        if (phi >= 2.0 * pi) phi -= 2.0 * pi;
    }

    std::array<double, 3> direction() const {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta)};
    }

    Matrix2 matrix() const { return bloch_operator(direction()); }

    static Observable x() { return {std::numbers::pi / 2.0, 0.0}; }
    static Observable y() { return {std::numbers::pi / 2.0, std::numbers::pi / 2.0}; }
    static Observable z() { return {0.0, 0.0}; }

    // Canonicalise an arbitrary (not necessarily unit) direction; the phi of
    // a pole is fixed to 0 so equal directions compare equal.
    static Observable from_direction(const std::array<double, 3>& n) {
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (len < 1e-12)
            throw std::invalid_argument("Observable::from_direction: zero direction");
        const double nz = std::min(std::max(n[2] / len, -1.0), 1.0);
        const double theta = std::acos(nz);
        double phi = 0.0;
        if (std::abs(n[0]) > 1e-15 * len || std::abs(n[1]) > 1e-15 * len) {
            phi = std::atan2(n[1], n[0]);
            if (phi < 0.0) phi += 2.0 * std::numbers::pi;
            if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
        }
        return {theta, phi};
    }

    // Short token: one of "x", "y", "z" when the axis matches, otherwise
    // "theta,phi" in degrees (the same syntax the CLI accepts).
    std::string describe() const {
        constexpr double pi = std::numbers::pi;
        const auto near = [](double a, double b) { return std::abs(a - b) < 1e-9; };
        if (near(theta, 0.0)) return "z";
        if (near(theta, pi / 2.0)) {
            if (near(phi, 0.0)) return "x";
            if (near(phi, pi / 2.0)) return "y";
        }
        return detail::fmt_num(theta * 180.0 / pi) + "," + detail::fmt_num(phi * 180.0 / pi);
    }
};

struct ValidityReport {
    double hermiticity_error = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Check the density-matrix axioms (Hermitian, unit trace, positive
// semidefinite) and report every violation rather than just the first.
template <std::size_t N>
ValidityReport validate(const DensityMatrix<N>& rho) {
    ValidityReport rep;
    rep.hermiticity_error = rho.mat.hermiticity_error();
    rep.trace_error = std::abs(rho.mat.trace() - cxd{1.0, 0.0});
    if (rep.hermiticity_error > 1e-10)
        rep.violations.push_back("not Hermitian: max |M - M^+| = " +
                                 std::to_string(rep.hermiticity_error));
    if (rep.trace_error > 1e-10)
        rep.violations.push_back("trace differs from 1 by " + std::to_string(rep.trace_error));
    const Matrix<N> sym = (rho.mat + rho.mat.adjoint()) * cxd{0.5, 0.0};
    const auto es = hermitian_eigensystem(sym);
    rep.min_eigenvalue = es.values[0];
    if (rep.min_eigenvalue < -1e-9)
        rep.violations.push_back("not positive semidefinite: min eigenvalue = " +
                                 std::to_string(rep.min_eigenvalue));
    return rep;
}

namespace detail {

inline void require_unit_interval(double v, const char* fn, const char* name) {
    if (v < -1e-12 || v > 1.0 + 1e-12)
        throw std::invalid_argument(std::string(fn) + ": " + name + " = " + std::to_string(v) +
                                    " outside [0, 1]");
}

}  // namespace detail

// |psi> = sqrt(alpha) |01> - sqrt(1 - alpha) |10>, as a density matrix.
inline DensityMatrix<4> pure_entangled(double alpha) {
    detail::require_unit_interval(alpha, "pure_entangled", "alpha");
    alpha = std::min(std::max(alpha, 0.0), 1.0);
    const double cross = -std::sqrt(alpha * (1.0 - alpha));
    Matrix4 m;
    m(1, 1) = alpha;
    m(2, 2) = 1.0 - alpha;
    m(1, 2) = cross;
    m(2, 1) = cross;
    return {m, "pure_entangled(alpha=" + detail::fmt_num(alpha) + ")"};
}

// p |Psi-><Psi-| + (1 - p) I/4 with the singlet |Psi-> = (|01> - |10>)/sqrt(2).
inline DensityMatrix<4> werner(double p) {
    detail::require_unit_interval(p, "werner", "p");
    p = std::min(std::max(p, 0.0), 1.0);
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = (1.0 - p) / 4.0;
    m(1, 1) += p / 2.0;
    m(2, 2) += p / 2.0;
    m(1, 2) = -p / 2.0;
    m(2, 1) = -p / 2.0;
    return {m, "werner(p=" + detail::fmt_num(p) + ")"};
}

// p |Phi+><Phi+| + (1 - p) |Psi-><Psi-|, a rank-2 Bell mixture.
inline DensityMatrix<4> bell_diagonal(double p) {
    detail::require_unit_interval(p, "bell_diagonal", "p");
    p = std::min(std::max(p, 0.0), 1.0);
    Matrix4 m;
    m(0, 0) = m(3, 3) = p / 2.0;
    m(0, 3) = m(3, 0) = p / 2.0;
    m(1, 1) = m(2, 2) = (1.0 - p) / 2.0;
    m(1, 2) = m(2, 1) = -(1.0 - p) / 2.0;
    return {m, "bell_diagonal(p=" + detail::fmt_num(p) + ")"};
}

// (I (x) I + cx sx(x)sx + cy sy(x)sy + cz sz(x)sz) / 4: maximally mixed
// marginals with correlation vector (cx, cy, cz).  Positivity is equivalent
// to the four Bell-basis eigenvalues being nonnegative, and the thrown
// message names the offending one.
inline DensityMatrix<4> mixed_marginal(double cx, double cy, double cz) {
    const struct {
        const char* name;
        double value;
    } lambdas[] = {
        {"lambda(Phi+)", (1.0 + cx - cy + cz) / 4.0},
        {"lambda(Phi-)", (1.0 - cx + cy + cz) / 4.0},
        {"lambda(Psi+)", (1.0 + cx + cy - cz) / 4.0},
        {"lambda(Psi-)", (1.0 - cx - cy - cz) / 4.0},
    };
    for (const auto& l : lambdas)
        if (l.value < -1e-12)
            throw std::invalid_argument("mixed_marginal: (" + detail::fmt_num(cx) + ", " +
                                        detail::fmt_num(cy) + ", " + detail::fmt_num(cz) +
                                        ") is not a state: " + l.name + " = " +
                                        std::to_string(l.value));
    Matrix4 m = Matrix4::identity() * cxd{0.25, 0.0};
    m += tensor_product(sigma_x(), sigma_x()) * cxd{cx / 4.0, 0.0};
    m += tensor_product(sigma_y(), sigma_y()) * cxd{cy / 4.0, 0.0};
    m += tensor_product(sigma_z(), sigma_z()) * cxd{cz / 4.0, 0.0};
    return {m, "mixed_marginal(cx=" + detail::fmt_num(cx) + ",cy=" + detail::fmt_num(cy) +
                   ",cz=" + detail::fmt_num(cz) + ")"};
}

// p |00><00| + (1 - p) |11><11|: classically correlated, zero discord.
inline DensityMatrix<4> classical_state(double p) {
    detail::require_unit_interval(p, "classical_state", "p");
    p = std::min(std::max(p, 0.0), 1.0);
    Matrix4 m;
    m(0, 0) = p;
    m(3, 3) = 1.0 - p;
    return {m, "classical_state(p=" + detail::fmt_num(p) + ")"};
}

// rho (x) rho: the uncorrelated two-copy product of a single-qubit state.
inline DensityMatrix<4> product_copy(const DensityMatrix<2>& rho) {
    const auto rep = validate(rho);
    if (!rep.ok())
        throw std::invalid_argument("product_copy: input is not a density matrix: " +
                                    rep.violations.front());
    return {tensor_product(rho.mat, rho.mat), "product_copy(" + rho.label + ")"};
}

// Seeded Ginibre construction: G is 4 x rank with i.i.d. standard complex
// Gaussian entries and the state is G G^+ / Tr[G G^+].  Same seed, same state.
inline DensityMatrix<4> random_state(std::uint64_t seed, int rank = 4) {
    if (rank < 1 || rank > 4)
        throw std::invalid_argument("random_state: rank " + std::to_string(rank) +
                                    " outside [1, 4]");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<std::array<cxd, 4>, 4> g{};
    for (std::size_t r = 0; r < 4; ++r)
        for (int c = 0; c < rank; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g[r][static_cast<std::size_t>(c)] = cxd{re, im};
        }
    Matrix4 m;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            for (int k = 0; k < rank; ++k)
                m(r, c) += g[r][static_cast<std::size_t>(k)] *
                           std::conj(g[c][static_cast<std::size_t>(k)]);
    const double tr = m.trace().real();
    m *= cxd{1.0 / tr, 0.0};
    return {m, "random(seed=" + std::to_string(seed) + ",rank=" + std::to_string(rank) + ")"};
}

}  // namespace qubound
