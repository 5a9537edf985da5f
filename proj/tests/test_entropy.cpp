#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "qubound/entropy.hpp"
#include "qubound/states.hpp"

using namespace qubound;

TEST_CASE("shannon entropy", "[entropy]") {
    REQUIRE(shannon(std::vector<double>{0.25, 0.25, 0.25, 0.25}) ==
            Catch::Approx(2.0).margin(1e-14));
    REQUIRE(shannon(std::vector<double>{1.0, 0.0, 0.0}) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(shannon(std::array<double, 2>{0.5, 0.5}) == Catch::Approx(1.0).margin(1e-14));
    // tiny negative roundoff is clamped
    REQUIRE(shannon(std::vector<double>{1.0 + 5e-13, -5e-13}) ==
            Catch::Approx(0.0).margin(1e-11));
    REQUIRE_THROWS_AS(shannon(std::vector<double>{-0.1, 1.1}), std::invalid_argument);
    REQUIRE_THROWS_AS(shannon(std::vector<double>{0.4, 0.4}), std::invalid_argument);
}

TEST_CASE("binary entropy", "[entropy]") {
    REQUIRE(binary_entropy(0.0) == 0.0);
    REQUIRE(binary_entropy(1.0) == 0.0);
    REQUIRE(binary_entropy(0.5) == Catch::Approx(1.0).margin(1e-14));
    for (double x : {0.1, 0.23, 0.42})
        REQUIRE(binary_entropy(x) == Catch::Approx(binary_entropy(1.0 - x)).margin(1e-14));
    REQUIRE(binary_entropy(-1e-13) == 0.0);
    REQUIRE(binary_entropy(1.0 + 1e-13) == 0.0);
    REQUIRE_THROWS_AS(binary_entropy(-0.01), std::invalid_argument);
    REQUIRE_THROWS_AS(binary_entropy(1.01), std::invalid_argument);
}

TEST_CASE("von neumann entropy", "[entropy]") {
    REQUIRE(von_neumann(pure_entangled(0.37).mat) == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(von_neumann(Matrix4::identity() * cxd{0.25, 0.0}) ==
            Catch::Approx(2.0).margin(1e-12));
    REQUIRE(von_neumann(Matrix2::identity() * cxd{0.5, 0.0}) ==
            Catch::Approx(1.0).margin(1e-12));

    // Werner spectrum {(1+3p)/4, (1-p)/4 x3}
    for (double p : {0.2, 0.5, 0.723}) {
        const double big = (1.0 + 3.0 * p) / 4.0;
        const double small = (1.0 - p) / 4.0;
        const double expect = shannon(std::vector<double>{big, small, small, small});
        REQUIRE(von_neumann(werner(p).mat) == Catch::Approx(expect).margin(1e-12));
    }

    // the reduced state of a pure entangled state has entropy H(alpha)
    for (double a : {0.1, 0.3, 0.5, 0.9})
        REQUIRE(von_neumann(partial_trace(pure_entangled(a).mat, Party::A)) ==
                Catch::Approx(binary_entropy(a)).margin(1e-12));

    REQUIRE_THROWS_AS(von_neumann(sigma_z()), std::invalid_argument);
}

TEST_CASE("conditional entropy", "[entropy]") {
    // product state: S(A|B) = S(A)
    Matrix2 a;
    a(0, 0) = 0.8;
    a(1, 1) = 0.2;
    const DensityMatrix<2> qa{a, "diag"};
    const auto prod = product_copy(qa);
    REQUIRE(conditional_vn(prod.mat, Party::B) ==
            Catch::Approx(binary_entropy(0.8)).margin(1e-12));

    // maximally entangled: S(A|B) = -1
    REQUIRE(conditional_vn(werner(1.0).mat, Party::B) == Catch::Approx(-1.0).margin(1e-9));
    REQUIRE(conditional_vn(pure_entangled(0.5).mat, Party::A) ==
            Catch::Approx(-1.0).margin(1e-9));

    // perfectly classically correlated: S(A|B) = 0
    for (double p : {0.25, 0.5, 0.8})
        REQUIRE(conditional_vn(classical_state(p).mat, Party::B) ==
                Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("mutual information", "[entropy]") {
    Matrix2 a;
    a(0, 0) = 0.6;
    a(1, 1) = 0.4;
    REQUIRE(mutual_information(product_copy({a, "diag"}).mat) ==
            Catch::Approx(0.0).margin(1e-12));
    REQUIRE(mutual_information(werner(1.0).mat) == Catch::Approx(2.0).margin(1e-9));
    for (double p : {0.3, 0.5})
        REQUIRE(mutual_information(classical_state(p).mat) ==
                Catch::Approx(binary_entropy(p)).margin(1e-10));
    for (double a2 : {0.2, 0.5, 0.7})
        REQUIRE(mutual_information(pure_entangled(a2).mat) ==
                Catch::Approx(2.0 * binary_entropy(a2)).margin(1e-9));
}
