#include "doctest.h"

#include "q3d/spectral/quadrature.hpp"

#include <cmath>

using q3d::gauss_legendre;

TEST_CASE("weights sum to the measure of [-1,1]") {
    for (int n = 1; n <= 30; ++n) {
        const auto rule = gauss_legendre(n);
        CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
        for (int i = 0; i < n; ++i) CHECK(rule.weights[i] > 0.0);
    }
}

TEST_CASE("nodes are ascending and inside (-1,1)") {
    for (int n : {1, 2, 3, 7, 16, 33}) {
        const auto rule = gauss_legendre(n);
        for (int i = 0; i < n; ++i) CHECK(std::abs(rule.nodes[i]) < 1.0);
        for (int i = 1; i < n; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
}

TEST_CASE("n-point rule integrates x^(2n-1) exactly") {
    // Odd powers integrate to zero over the symmetric interval.
    for (int n = 1; n <= 20; ++n) {
        const auto rule = gauss_legendre(n);
        const double v = rule.integrate([&](double x) { return std::pow(x, 2 * n - 1); });
        CHECK(std::abs(v) < 1e-13);
    }
}

TEST_CASE("n-point rule integrates x^(2n-2) exactly") {
    // Highest even power still inside the exactness range, nonzero value.
    for (int n = 1; n <= 20; ++n) {
        const auto rule = gauss_legendre(n);
        const int d = 2 * n - 2;
        const double v = rule.integrate([&](double x) { return std::pow(x, d); });
        CHECK(v == doctest::Approx(2.0 / (d + 1)).epsilon(1e-13));
    }
}

TEST_CASE("invalid point count throws") {
    CHECK_THROWS(gauss_legendre(0));
    CHECK_THROWS(gauss_legendre(-3));
}
