#pragma once

// The uncertainty-bound layer: complementarity constants, the two left-hand
// sides (entropic and Fano/disagreement form), the five lower bounds L0-L4,
// a generic two-party guessing-game evaluator, and the search for the
// measurement settings minimizing the Fano-form uncertainty.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qubound/correlations.hpp"
#include "qubound/detail/nelder_mead.hpp"
#include "qubound/entropy.hpp"
#include "qubound/matrix.hpp"
#include "qubound/measurement.hpp"
#include "qubound/states.hpp"

namespace qubound {

// Largest squared eigenstate overlap c = max_{i,j} |<r_i|s_j>|^2.
// 1/2 for mutually unbiased qubit pairs, 1 for equal/antipodal directions.
inline double complementarity(const Observable& obs_r, const Observable& obs_s) {
    const auto er = hermitian_eigensystem(obs_r.matrix());
    const auto es = hermitian_eigensystem(obs_s.matrix());
    double c = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            cxd ov = 0.0;
            for (std::size_t k = 0; k < 2; ++k) ov += std::conj(er.vectors[i][k]) * es.vectors[j][k];
            c = std::max(c, std::norm(ov));
        }
    return std::min(c, 1.0);
}

namespace detail {

inline double ordering_complementarity(const Matrix2& rho_a, const EigenSystem<2>& first,
                                       const EigenSystem<2>& second) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        cxd pi = 0.0;
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                pi += std::conj(first.vectors[i][a]) * rho_a(a, b) * first.vectors[i][b];
        const double p = std::max(pi.real(), 0.0);
        double cmax = 0.0;
        for (std::size_t j = 0; j < 2; ++j) {
            cxd ov = 0.0;
            for (std::size_t k = 0; k < 2; ++k)
                ov += std::conj(first.vectors[i][k]) * second.vectors[j][k];
            cmax = std::max(cmax, std::norm(ov));
        }
        cmax = std::min(std::max(cmax, 1e-300), 1.0);
        sum += p * std::log2(1.0 / cmax);
    }
    return sum;
}

}  // namespace detail

// State-weighted complementarity c'(rho_a) = sum_i p_i^r log2(1/max_j c_ij),
// maximized over the two measurement orderings.  Equals log2(1/c) = 1 for
// mutually unbiased pairs regardless of the state.
inline double adaptive_complementarity(const Matrix2& rho_a, const Observable& obs_r,
                                       const Observable& obs_s) {
    const auto er = hermitian_eigensystem(obs_r.matrix());
    const auto es = hermitian_eigensystem(obs_s.matrix());
    return std::max(detail::ordering_complementarity(rho_a, er, es),
                    detail::ordering_complementarity(rho_a, es, er));
}

// S(R_A|B) + S(S_A|B): dephase A in each observable's basis, then take the
// conditional entropy with B as memory.
inline double lhs_entropic(const Matrix4& rho, const Observable& obs_r, const Observable& obs_s) {
    return conditional_vn(dephase(rho, obs_r, Party::A), Party::B) +
           conditional_vn(dephase(rho, obs_s, Party::A), Party::B);
}

// H(p_d^R) + H(p_d^S): binary entropies of the same-observable disagreement
// probabilities.
inline double lhs_fano(const Matrix4& rho, const Observable& obs_r, const Observable& obs_s) {
    return binary_entropy(p_different(rho, obs_r)) + binary_entropy(p_different(rho, obs_s));
}

// Classical strategy: no memory assistance beyond the side marginal,
// L0 = c'(rho_side) + S(rho_side).
inline double bound_l0(const Matrix4& rho, const Observable& obs_r, const Observable& obs_s,
                       Party side = Party::B) {
    const Matrix2 marg = partial_trace(rho, side);
    return adaptive_complementarity(marg, obs_r, obs_s) + von_neumann(marg);
}

// Memory-assisted bound L1 = c'(rho_A) + S(A|B).
inline double bound_l1(const Matrix4& rho, const Observable& obs_r, const Observable& obs_s) {
    return adaptive_complementarity(partial_trace(rho, Party::A), obs_r, obs_s) +
           conditional_vn(rho, Party::B);
}

namespace detail {

// max{0, D - C^M} = max{0, I - 2 C^M}; differences within 1e-9 of zero are
// optimizer noise and never manufacture a positive correction.
inline double discord_correction(double mutual_info, double cm_value) {
    const double corr = mutual_info - 2.0 * cm_value;
    return corr > 1e-9 ? corr : 0.0;
}

}  // namespace detail

// Discord-tightened bound L2 = L1 + max{0, D - C^M} with discord and C^M
// evaluated on `side`.  The overload taking an OptimizationResult lets
// callers reuse one C^M computation across many settings.
inline double bound_l2(const Matrix4& rho, const Observable& obs_r, const Observable& obs_s,
                       Party side, const OptimizationResult& cm) {
    return bound_l1(rho, obs_r, obs_s) +
           detail::discord_correction(mutual_information(rho), cm.value);
}

inline double bound_l2(const Matrix4& rho, const Observable& obs_r, const Observable& obs_s,
                       Party side = Party::B) {
    return bound_l2(rho, obs_r, obs_s, side, classical_information(rho, side));
}

// Fine-grained bound at fixed settings, L3 = H(p_d^R) + H(p_d^S).  The
// disagreement probability is exactly the a(+)b=1 equal-settings game
// winning probability, and H(p) = H(1-p) absorbs the win/lose relabeling.
inline double bound_l3(const Matrix4& rho, const Observable& obs_r, const Observable& obs_s) {
    return lhs_fano(rho, obs_r, obs_s);
}

// Extractable-classical-information bound
// L4 = c'(rho_A) + S(rho_A) - C^{R,R} - C^{S,S}.
inline double bound_l4(const Matrix4& rho, const Observable& obs_r, const Observable& obs_s) {
    const Matrix2 marg_a = partial_trace(rho, Party::A);
    return adaptive_complementarity(marg_a, obs_r, obs_s) + von_neumann(marg_a) -
           extractable_classical_information(rho, obs_r) -
           extractable_classical_information(rho, obs_s);
}

// A two-party guessing game: each round draws a setting pair (t_a, t_b) with
// probability setting_probs[t_a * |B| + t_b], both parties measure, and the
// round is won when win[pair][a][b] = 1.
struct GameSpec {
    std::vector<Observable> settings_a;
    std::vector<Observable> settings_b;
    std::vector<double> setting_probs;                    // over pairs, row-major in t_a
    std::vector<std::array<std::array<int, 2>, 2>> win;   // win[pair][a][b] in {0, 1}
};

// Equal settings on both sides, won exactly when the outcomes differ.
inline GameSpec anticorrelation_game(const Observable& obs) {
    GameSpec g;
    g.settings_a = {obs};
    g.settings_b = {obs};
    g.setting_probs = {1.0};
    g.win = {{{{{0, 1}}, {{1, 0}}}}};
    return g;
}

inline double game_probability(const Matrix4& rho, const GameSpec& game) {
    const std::size_t na = game.settings_a.size();
    const std::size_t nb = game.settings_b.size();
    if (na == 0 || nb == 0)
        throw std::invalid_argument("game_probability: empty setting list");
    if (game.setting_probs.size() != na * nb || game.win.size() != na * nb)
        throw std::invalid_argument("game_probability: expected " + std::to_string(na * nb) +
                                    " setting pairs, got " +
                                    std::to_string(game.setting_probs.size()) + " probs and " +
                                    std::to_string(game.win.size()) + " win rows");
    double psum = 0.0;
    for (double p : game.setting_probs) {
        if (p < -1e-12)
            throw std::invalid_argument("game_probability: negative setting probability");
        psum += std::max(p, 0.0);
    }
    if (std::abs(psum - 1.0) > 1e-9)
        throw std::invalid_argument("game_probability: setting probabilities sum to " +
                                    std::to_string(psum));
    double won = 0.0;
    for (std::size_t ta = 0; ta < na; ++ta)
        for (std::size_t tb = 0; tb < nb; ++tb) {
            const std::size_t pair = ta * nb + tb;
            const double pp = std::max(game.setting_probs[pair], 0.0);
            if (pp == 0.0) continue;
            const OutcomeDistribution d =
                joint_distribution(rho, game.settings_a[ta], game.settings_b[tb]);
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) {
                    const int v = game.win[pair][a][b];
                    if (v != 0 && v != 1)
                        throw std::invalid_argument("game_probability: win table entry " +
                                                    std::to_string(v) + " not in {0, 1}");
                    if (v) won += pp * d.p[a][b];
                }
        }
    return won;
}

struct SettingsResult {
    Observable obs_r = Observable::z();
    Observable obs_s = Observable::x();
    double value = 0.0;  // lhs_fano at the returned pair
    int iterations = 0;
    bool converged = false;
};

namespace detail {

// Correlation matrix T_ij = Tr[rho sigma_i (x) sigma_j].  For equal local
// settings along n the disagreement probability is (1 - n.T.n)/2; the local
// Bloch terms cancel, which makes this the natural optimizer objective.
inline std::array<std::array<double, 3>, 3> correlation_matrix(const Matrix4& rho) {
    const Matrix2 paulis[3] = {sigma_x(), sigma_y(), sigma_z()};
    std::array<std::array<double, 3>, 3> t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t[i][j] = (tensor_product(paulis[i], paulis[j]) * rho).trace().real();
    return t;
}

inline double quadratic_disagreement(const std::array<std::array<double, 3>, 3>& t,
                                     const std::array<double, 3>& n) {
    double q = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q += n[i] * t[i][j] * n[j];
    return std::min(std::max((1.0 - q) / 2.0, 0.0), 1.0);
}

// A mutually unbiased pair from three angles: the first direction from
// (theta, phi), the second in its orthogonal plane at rotation psi.
struct MubPair {
    std::array<double, 3> r;
    std::array<double, 3> s;
};

inline MubPair mub_pair(double theta, double phi, double psi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    const std::array<double, 3> r = {st * cp, st * sp, ct};
    const std::array<double, 3> theta_hat = {ct * cp, ct * sp, -st};
    const std::array<double, 3> phi_hat = {-sp, cp, 0.0};
    const double cpsi = std::cos(psi), spsi = std::sin(psi);
    std::array<double, 3> s{};
    for (int i = 0; i < 3; ++i) s[i] = cpsi * theta_hat[i] + spsi * phi_hat[i];
    return {r, s};
}

}  // namespace detail

// Search for the mutually unbiased pair (c' pinned to 1) minimizing the
// Fano-form uncertainty: 32^3 grid over (theta, phi, psi) followed by
// Nelder-Mead refinement; ties on the grid are broken by scan order.
inline SettingsResult optimize_settings(const Matrix4& rho) {
    const auto t = detail::correlation_matrix(rho);
    const auto objective = [&](double theta, double phi, double psi) {
        const auto pair = detail::mub_pair(theta, phi, psi);
        return binary_entropy(detail::quadratic_disagreement(t, pair.r)) +
               binary_entropy(detail::quadratic_disagreement(t, pair.s));
    };

    constexpr int n = 32;
    constexpr double pi = std::numbers::pi;
    double best_val = 3.0;
    std::array<double, 3> best_x{};
    for (int i = 0; i < n; ++i) {
        const double theta = pi * (i + 0.5) / n;
        for (int j = 0; j < n; ++j) {
            const double phi = 2.0 * pi * j / n;
            for (int k = 0; k < n; ++k) {
                const double psi = 2.0 * pi * k / n;
                const double v = objective(theta, phi, psi);
                if (v < best_val - 1e-12) {
                    best_val = v;
                    best_x = {theta, phi, psi};
                }
            }
        }
    }

    const auto nm = detail::nelder_mead(
        [&](const std::vector<double>& x) { return objective(x[0], x[1], x[2]); },
        {best_x[0], best_x[1], best_x[2]}, pi / n, 1e-10, 500);

    const auto pair = detail::mub_pair(nm.x[0], nm.x[1], nm.x[2]);
    SettingsResult res;
    res.obs_r = Observable::from_direction(pair.r);
    res.obs_s = Observable::from_direction(pair.s);
    res.value = lhs_fano(rho, res.obs_r, res.obs_s);
    res.iterations = nm.iterations;
    res.converged = nm.converged;
    return res;
}

// Everything at once for one (state, settings, side) triple.
struct BoundReport {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 0.0;
    double lhs_entropic = 0.0;
    double lhs_fano = 0.0;
    Observable obs_r = Observable::z();
    Observable obs_s = Observable::x();
    Party side = Party::B;
    double classical_info = 0.0;  // C^M on `side`
    double discord = 0.0;         // D on `side`
    bool optimizer_converged = false;
};

// Overload reusing a precomputed C^M result (it is settings-independent, so
// sweeps over settings need it only once per state).
inline BoundReport full_report(const Matrix4& rho, const Observable& obs_r,
                               const Observable& obs_s, Party side,
                               const OptimizationResult& cm) {
    BoundReport rep;
    rep.obs_r = obs_r;
    rep.obs_s = obs_s;
    rep.side = side;

    const Matrix2 marg_a = partial_trace(rho, Party::A);
    const Matrix2 marg_b = partial_trace(rho, Party::B);
    const double s_a = von_neumann(marg_a);
    const double s_b = von_neumann(marg_b);
    const double s_ab = von_neumann(rho);
    const double cprime_a = adaptive_complementarity(marg_a, obs_r, obs_s);
    const double mutual = s_a + s_b - s_ab;

    const Matrix2& marg_side = side == Party::A ? marg_a : marg_b;
    rep.l0 = adaptive_complementarity(marg_side, obs_r, obs_s) +
             (side == Party::A ? s_a : s_b);
    rep.l1 = cprime_a + (s_ab - s_b);
    rep.l2 = rep.l1 + detail::discord_correction(mutual, cm.value);
    rep.l3 = lhs_fano(rho, obs_r, obs_s);
    rep.lhs_fano = rep.l3;
    rep.l4 = cprime_a + s_a - extractable_classical_information(rho, obs_r) -
             extractable_classical_information(rho, obs_s);
    rep.lhs_entropic = lhs_entropic(rho, obs_r, obs_s);

    rep.classical_info = cm.value;
    double d = mutual - cm.value;
    if (d < 0.0 && d > -1e-7) d = 0.0;
    rep.discord = d;
    rep.optimizer_converged = cm.converged;
    return rep;
}

inline BoundReport full_report(const Matrix4& rho, const Observable& obs_r,
                               const Observable& obs_s, Party side = Party::B) {
    return full_report(rho, obs_r, obs_s, side, classical_information(rho, side));
}

}  // namespace qubound
