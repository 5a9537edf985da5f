#pragma once

// Projective measurements along Bloch directions and what they do to a
// two-qubit state: joint outcome tables, post-measurement conditional
// ensembles, and the dephasing (measure-and-forget) channel.

#include <array>
#include <cmath>
#include <cstddef>

#include "qubound/matrix.hpp"
#include "qubound/states.hpp"

namespace qubound {

// Outcome 0 projects onto the +1 eigenvector of n.sigma, outcome 1 onto -1.
struct ProjectorPair {
    Matrix2 pi0;
    Matrix2 pi1;

    const Matrix2& operator[](std::size_t a) const { return a == 0 ? pi0 : pi1; }
};

inline ProjectorPair projectors(const Observable& obs) {
    const Matrix2 ns = obs.matrix();
    const Matrix2 id = Matrix2::identity();
    return {(id + ns) * cxd{0.5, 0.0}, (id - ns) * cxd{0.5, 0.0}};
}

// Joint probabilities p[a][b] of outcomes (a, b) when A measures obs_a and B
// measures obs_b.
struct OutcomeDistribution {
    std::array<std::array<double, 2>, 2> p{};

    double marginal_a(std::size_t a) const { return p[a][0] + p[a][1]; }
    double marginal_b(std::size_t b) const { return p[0][b] + p[1][b]; }
    double disagreement() const { return p[0][1] + p[1][0]; }
};

inline OutcomeDistribution joint_distribution(const Matrix4& rho, const Observable& obs_a,
                                              const Observable& obs_b) {
    const ProjectorPair pa = projectors(obs_a);
    const ProjectorPair pb = projectors(obs_b);
    OutcomeDistribution d;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            const double w = (tensor_product(pa[a], pb[b]) * rho).trace().real();
            d.p[a][b] = std::max(w, 0.0);  // clamp roundoff
        }
    return d;
}

// Probability that both parties measure along the same direction and get
// different outcomes.
inline double p_different(const Matrix4& rho, const Observable& obs) {
    return joint_distribution(rho, obs, obs).disagreement();
}

// One branch of a measured ensemble.  A branch whose outcome never occurs
// carries defined = false and a maximally mixed placeholder state; such
// branches contribute nothing to averages.
struct ConditionalBranch {
    double prob = 0.0;
    Matrix2 state;
    bool defined = false;
};

struct ConditionalEnsemble {
    std::array<ConditionalBranch, 2> branches;
};

// Measure `measured` along obs; return the outcome probabilities and the
// conditional states left on the other side.
inline ConditionalEnsemble condition_on(const Matrix4& rho, const Observable& obs,
                                        Party measured) {
    const ProjectorPair pp = projectors(obs);
    const Matrix2 id = Matrix2::identity();
    const Party kept = measured == Party::B ? Party::A : Party::B;
    ConditionalEnsemble ens;
    for (std::size_t j = 0; j < 2; ++j) {
        const Matrix4 proj =
            measured == Party::B ? tensor_product(id, pp[j]) : tensor_product(pp[j], id);
        const Matrix4 sandwiched = proj * rho * proj;
        const double prob = std::max(sandwiched.trace().real(), 0.0);
        auto& br = ens.branches[j];
        br.prob = prob;
        if (prob > 1e-12) {
            br.state = partial_trace(sandwiched, kept) * cxd{1.0 / prob, 0.0};
            br.defined = true;
        } else {
            br.prob = 0.0;
            br.state = id * cxd{0.5, 0.0};
            br.defined = false;
        }
    }
    return ens;
}

// Remove the coherences of one side in the obs eigenbasis:
// rho -> sum_j P_j rho P_j with P_j acting on `side` only.
inline Matrix4 dephase(const Matrix4& rho, const Observable& obs, Party side) {
    const ProjectorPair pp = projectors(obs);
    const Matrix2 id = Matrix2::identity();
    Matrix4 out;
    for (std::size_t j = 0; j < 2; ++j) {
        const Matrix4 proj =
            side == Party::A ? tensor_product(pp[j], id) : tensor_product(id, pp[j]);
        out += proj * rho * proj;
    }
    return out;
}

}  // namespace qubound
