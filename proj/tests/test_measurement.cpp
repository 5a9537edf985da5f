#include <catch2/catch_amalgamated.hpp>

#include "qubound/entropy.hpp"
#include "qubound/measurement.hpp"
#include "qubound/states.hpp"

using namespace qubound;

TEST_CASE("projector pairs", "[measurement]") {
    const auto pz = projectors(Observable::z());
    REQUIRE(pz.pi0(0, 0).real() == Catch::Approx(1.0).margin(1e-15));
    REQUIRE(pz.pi0(1, 1).real() == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(pz.pi1(1, 1).real() == Catch::Approx(1.0).margin(1e-15));

    for (const Observable& o :
         {Observable::x(), Observable::y(), Observable(1.1, 2.2), Observable(2.8, 5.9)}) {
        const auto pp = projectors(o);
        REQUIRE((pp.pi0 + pp.pi1 - Matrix2::identity()).frobenius_norm() < 1e-14);
        REQUIRE((pp.pi0 * pp.pi0 - pp.pi0).frobenius_norm() < 1e-14);
        REQUIRE((pp.pi1 * pp.pi1 - pp.pi1).frobenius_norm() < 1e-14);
        REQUIRE((pp.pi0 * pp.pi1).frobenius_norm() < 1e-14);
        // pi0 belongs to the +1 eigenvalue of n.sigma
        REQUIRE((o.matrix() * pp.pi0 - pp.pi0).frobenius_norm() < 1e-14);
    }
}

TEST_CASE("joint distributions on known states", "[measurement]") {
    // singlet measured along any common axis: always opposite outcomes
    for (const Observable& o : {Observable::z(), Observable::x(), Observable(0.7, 1.3)}) {
        const auto d = joint_distribution(werner(1.0).mat, o, o);
        REQUIRE(d.p[0][1] == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(d.p[1][0] == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(d.disagreement() == Catch::Approx(1.0).margin(1e-12));
    }

    // werner: p(same outcome along z) = (1-p)/4 each cell
    for (double p : {0.2, 0.723}) {
        const auto d = joint_distribution(werner(p).mat, Observable::z(), Observable::z());
        REQUIRE(d.p[0][0] == Catch::Approx((1.0 - p) / 4.0).margin(1e-12));
        REQUIRE(d.p[1][1] == Catch::Approx((1.0 - p) / 4.0).margin(1e-12));
        REQUIRE(d.disagreement() == Catch::Approx((1.0 + p) / 2.0).margin(1e-12));
        REQUIRE(d.marginal_a(0) == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(d.marginal_b(1) == Catch::Approx(0.5).margin(1e-12));
    }

    // classical state along z is perfectly correlated
    const auto dc = joint_distribution(classical_state(0.3).mat, Observable::z(), Observable::z());
    REQUIRE(dc.p[0][0] == Catch::Approx(0.3).margin(1e-12));
    REQUIRE(dc.p[1][1] == Catch::Approx(0.7).margin(1e-12));
    REQUIRE(dc.disagreement() == Catch::Approx(0.0).margin(1e-12));

    // mixed settings on a product state factorize
    Matrix2 q;
    q(0, 0) = 0.9;
    q(1, 1) = 0.1;
    const auto dp = joint_distribution(product_copy({q, "q"}).mat, Observable::z(),
                                       Observable::x());
    REQUIRE(dp.p[0][0] == Catch::Approx(0.45).margin(1e-12));
    REQUIRE(dp.marginal_a(0) == Catch::Approx(0.9).margin(1e-12));
    REQUIRE(dp.marginal_b(0) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("disagreement probability closed form", "[measurement]") {
    // equal settings along n: p_d = (1 - n.T.n)/2 with T the correlation matrix
    const auto states = {mixed_marginal(0.5, -0.2, -0.3).mat, werner(0.6).mat,
                         bell_diagonal(0.4).mat};
    const Observable dirs[] = {Observable::z(), Observable::x(), Observable(0.9, 4.0)};
    for (const auto& rho : states)
        for (const auto& o : dirs) {
            const auto n = o.direction();
            const Matrix2 paulis[3] = {sigma_x(), sigma_y(), sigma_z()};
            double q = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    q += n[i] * n[j] *
                         (tensor_product(paulis[i], paulis[j]) * rho).trace().real();
            REQUIRE(p_different(rho, o) == Catch::Approx((1.0 - q) / 2.0).margin(1e-12));
        }
}

TEST_CASE("conditioning on one side", "[measurement]") {
    // classical state, B measured in z: branch b leaves A in |b><b|
    const auto ens = condition_on(classical_state(0.3).mat, Observable::z(), Party::B);
    REQUIRE(ens.branches[0].prob == Catch::Approx(0.3).margin(1e-12));
    REQUIRE(ens.branches[1].prob == Catch::Approx(0.7).margin(1e-12));
    REQUIRE(ens.branches[0].defined);
    REQUIRE(ens.branches[0].state(0, 0).real() == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(ens.branches[1].state(1, 1).real() == Catch::Approx(1.0).margin(1e-12));

    // singlet, B measured along n: A collapses to the opposite direction
    const Observable n(1.2, 0.4);
    const auto ens2 = condition_on(werner(1.0).mat, n, Party::B);
    const Matrix2 expect =
        (Matrix2::identity() - n.matrix()) * cxd{0.5, 0.0};  // -1 eigenprojector
    for (std::size_t j = 0; j < 2; ++j) REQUIRE(ens2.branches[j].prob ==
                                                Catch::Approx(0.5).margin(1e-12));
    REQUIRE((ens2.branches[0].state - expect).frobenius_norm() < 1e-12);

    // probabilities always average back to the marginal
    const Matrix4 rho = random_state(11).mat;
    const auto ens3 = condition_on(rho, Observable(0.6, 2.0), Party::A);
    Matrix2 avg;
    for (const auto& br : ens3.branches) avg += br.state * cxd{br.prob, 0.0};
    REQUIRE((avg - partial_trace(rho, Party::B)).frobenius_norm() < 1e-12);

    // an outcome that never occurs is flagged undefined
    const auto ens4 = condition_on(classical_state(1.0).mat, Observable::z(), Party::B);
    REQUIRE(ens4.branches[1].prob == 0.0);
    REQUIRE_FALSE(ens4.branches[1].defined);
    REQUIRE(ens4.branches[0].defined);
}

TEST_CASE("dephasing channel", "[measurement]") {
    // dephasing A in z kills the x/y correlations of a correlation-diagonal state
    const Matrix4 rho = mixed_marginal(0.5, -0.2, -0.3).mat;
    const Matrix4 dz = dephase(rho, Observable::z(), Party::A);
    REQUIRE(std::abs(dz.trace() - cxd{1.0, 0.0}) < 1e-12);
    REQUIRE((tensor_product(sigma_x(), sigma_x()) * dz).trace().real() ==
            Catch::Approx(0.0).margin(1e-12));
    REQUIRE((tensor_product(sigma_y(), sigma_y()) * dz).trace().real() ==
            Catch::Approx(0.0).margin(1e-12));
    REQUIRE((tensor_product(sigma_z(), sigma_z()) * dz).trace().real() ==
            Catch::Approx(-0.3).margin(1e-12));

    // idempotent, and it never touches the other side's marginal
    const Observable o(2.0, 1.0);
    const Matrix4 once = dephase(rho, o, Party::A);
    REQUIRE((dephase(once, o, Party::A) - once).frobenius_norm() < 1e-12);
    REQUIRE((partial_trace(once, Party::B) - partial_trace(rho, Party::B)).frobenius_norm() <
            1e-12);

    // entropy never decreases under dephasing
    REQUIRE(von_neumann(once) >= von_neumann(rho) - 1e-12);
}
