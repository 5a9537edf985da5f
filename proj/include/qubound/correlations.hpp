#pragma once

// Correlation measures built on one-sided measurements: the Holevo-type
// classical gain of a fixed measurement, the classical information C^M
// (gain maximized over all projective directions), quantum discord, and the
// extractable classical information of same-observable outcome records.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qubound/detail/nelder_mead.hpp"
#include "qubound/entropy.hpp"
#include "qubound/matrix.hpp"
#include "qubound/measurement.hpp"
#include "qubound/states.hpp"

namespace qubound {

struct OptimizationResult {
    double value = 0.0;                  // bits
    Observable argmax = Observable::z();
    int iterations = 0;
    bool converged = false;
};

namespace detail {

// Entropy of a 2x2 Hermitian PSD matrix via the closed-form eigenvalues
// t/2 +- sqrt(t^2/4 - det); avoids a Jacobi call in optimizer inner loops.
inline double entropy2(const Matrix2& m) {
    const double t = m.trace().real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    const double disc = std::sqrt(std::max(t * t / 4.0 - det, 0.0));
    const double lo = std::max(t / 2.0 - disc, 0.0);
    const double hi = std::max(t / 2.0 + disc, 0.0);
    return -xlog2x(lo) - xlog2x(hi);
}

// S(unmeasured marginal) - sum_j p_j S(rho_{cond,j}) for a projective
// measurement along unit direction n on `measured`.  s_marginal is the first
// term, passed in because it does not depend on n.
inline double one_sided_gain(const Matrix4& rho, const std::array<double, 3>& n, Party measured,
                             double s_marginal) {
    const Matrix2 ns = bloch_operator(n);
    const Matrix2 id = Matrix2::identity();
    const Party kept = measured == Party::B ? Party::A : Party::B;
    double avg = 0.0;
    for (int sign = +1; sign >= -1; sign -= 2) {
        Matrix2 pi = id * cxd{0.5, 0.0} + ns * cxd{0.5 * sign, 0.0};
        const Matrix4 lifted =
            measured == Party::B ? tensor_product(id, pi) : tensor_product(pi, id);
        // Tr_kept[(Pi lifted) rho (Pi lifted)] = Tr_kept[(Pi lifted) rho]
        // because the projector is idempotent and the trace is cyclic within
        // the measured factor.
        const Matrix2 k = partial_trace(lifted * rho, kept);
        const double p = std::max(k.trace().real(), 0.0);
        if (p > 1e-12) avg += p * entropy2(k * cxd{1.0 / p, 0.0});
    }
    return s_marginal - avg;
}

inline std::array<double, 3> spherical_direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace detail

// C^R-type gain of measuring obs on `side`: how much the measurement record
// lowers the entropy of the other party's state, S(rho_other) minus the
// average conditional entropy.
inline double classical_gain(const Matrix4& rho, const Observable& obs, Party side) {
    const Party kept = side == Party::B ? Party::A : Party::B;
    const double s_marginal = von_neumann(partial_trace(rho, kept));
    return detail::one_sided_gain(rho, obs.direction(), side, s_marginal);
}

// C^M: classical_gain maximized over all projective directions.  Coarse
// 64 x 128 (theta, phi) grid to localize the global maximum, then
// Nelder-Mead refinement from the best grid point.
inline OptimizationResult classical_information(const Matrix4& rho, Party side) {
    const Party kept = side == Party::B ? Party::A : Party::B;
    const double s_marginal = von_neumann(partial_trace(rho, kept));
    const auto gain = [&](double theta, double phi) {
        return detail::one_sided_gain(rho, detail::spherical_direction(theta, phi), side,
                                      s_marginal);
    };

    constexpr int n_theta = 64;
    constexpr int n_phi = 128;
    constexpr double pi = std::numbers::pi;
    double best_val = -1.0;
    double best_theta = 0.0;
    double best_phi = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = pi * (i + 0.5) / n_theta;  // midpoints avoid the poles
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * pi * j / n_phi;
            const double v = gain(theta, phi);
            if (v > best_val + 1e-12) {  // first grid point attaining the max wins
                best_val = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    const auto nm = detail::nelder_mead(
        [&](const std::vector<double>& x) { return -gain(x[0], x[1]); },
        {best_theta, best_phi}, pi / n_theta, 1e-10, 500);

    OptimizationResult res;
    res.value = -nm.value;
    res.argmax = Observable::from_direction(detail::spherical_direction(nm.x[0], nm.x[1]));
    res.iterations = nm.iterations;
    res.converged = nm.converged;
    return res;
}

// Closed form for maximally-mixed-marginal states: 1 - H((1 - c_M)/2) with
// c_M the largest |c_i|.  Serves as the analytic oracle for
// classical_information on that family.
inline double luo_classical_information(double cx, double cy, double cz) {
    (void)mixed_marginal(cx, cy, cz);  // parameter validation (throws on invalid triple)
    const double c_m = std::max({std::abs(cx), std::abs(cy), std::abs(cz)});
    return 1.0 - binary_entropy((1.0 - c_m) / 2.0);
}

// D = I(A:B) - C^M, measurement on `side`.  Tiny negatives (within 1e-7,
// pure optimizer noise) are clamped to zero.
inline OptimizationResult quantum_discord(const Matrix4& rho, Party side) {
    OptimizationResult res = classical_information(rho, side);
    double d = mutual_information(rho) - res.value;
    if (d < 0.0 && d > -1e-7) d = 0.0;
    res.value = d;
    return res;
}

// Classical mutual information of the outcome table when both parties
// measure the same observable: H(A-outcomes) - H(A-outcomes | B-outcome).
inline double extractable_classical_information(const Matrix4& rho, const Observable& obs) {
    const OutcomeDistribution d = joint_distribution(rho, obs, obs);
    const double h_a = binary_entropy(d.marginal_a(0));
    double h_cond = 0.0;
    for (std::size_t b = 0; b < 2; ++b) {
        const double pb = d.marginal_b(b);
        if (pb > 1e-12) h_cond += pb * binary_entropy(d.p[0][b] / pb);
    }
    return h_a - h_cond;
}

}  // namespace qubound
