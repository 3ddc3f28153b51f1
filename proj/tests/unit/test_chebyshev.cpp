#include "doctest.h"

#include "q3d/spectral/chebyshev.hpp"

#include <cmath>
#include <random>

using namespace q3d;

TEST_CASE("low-order values") {
    CHECK(chebyshev(0, -0.7) == doctest::Approx(1.0));
    CHECK(chebyshev(0, 0.2) == doctest::Approx(1.0));
    CHECK(chebyshev(1, 0.3) == doctest::Approx(0.3));
    CHECK(chebyshev(2, 0.5) == doctest::Approx(-0.5));  // 2x^2 - 1
}

TEST_CASE("values stay bounded by one") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int m = 0; m <= 20; ++m)
        for (int i = 0; i < 50; ++i) CHECK(std::abs(chebyshev(m, dist(rng))) <= 1.0 + 1e-12);
}

TEST_CASE("constant samples give a single coefficient") {
    Eigen::VectorXd f = Eigen::VectorXd::Constant(9, 5.0);
    const auto c = chebyshev_coeffs(f);
    CHECK(c[0] == doctest::Approx(5.0).epsilon(1e-14));
    for (int m = 1; m < c.size(); ++m) CHECK(std::abs(c[m]) < 1e-14);
}

TEST_CASE("sampling T_2 reproduces the unit coefficient vector") {
    const int M = 8;
    const auto x = chebyshev_points(M);
    Eigen::VectorXd f(M + 1);
    for (int j = 0; j <= M; ++j) f[j] = chebyshev(2, x[j]);
    const auto c = chebyshev_coeffs(f);
    for (int m = 0; m <= M; ++m)
        CHECK(c[m] == doctest::Approx(m == 2 ? 1.0 : 0.0).epsilon(1e-13));
}

TEST_CASE("degree-4 polynomial round-trips through the transform") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    Eigen::VectorXd poly(5);
    for (auto& v : poly) v = dist(rng);
    auto eval_poly = [&](double x) {
        double s = 0.0;
        for (int k = 4; k >= 0; --k) s = s * x + poly[k];
        return s;
    };

    const int M = 8;
    const auto x = chebyshev_points(M);
    Eigen::VectorXd f(M + 1);
    for (int j = 0; j <= M; ++j) f[j] = eval_poly(x[j]);
    const auto c = chebyshev_coeffs(f);

    std::uniform_real_distribution<double> pts(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double xi = pts(rng);
        CHECK(chebyshev_eval(c, xi) == doctest::Approx(eval_poly(xi)).epsilon(1e-12));
    }
}

TEST_CASE("fast transform matches direct summation to 1e-13") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int M : {1, 2, 3, 5, 8, 13, 16, 31, 64}) {
        Eigen::VectorXd f(M + 1);
        for (auto& v : f) v = dist(rng);
        const auto fast = chebyshev_coeffs(f);
        const auto direct = chebyshev_coeffs_direct(f);
        for (int m = 0; m <= M; ++m) CHECK(std::abs(fast[m] - direct[m]) < 1e-13);
    }
}

TEST_CASE("single sample and empty input") {
    Eigen::VectorXd one(1);
    one[0] = 3.25;
    CHECK(chebyshev_coeffs(one)[0] == doctest::Approx(3.25));
    Eigen::VectorXd empty(0);
    CHECK_THROWS(chebyshev_coeffs(empty));
}

TEST_CASE("domain checks") {
    CHECK_THROWS(chebyshev(-1, 0.0));
    CHECK_THROWS(chebyshev(3, 1.2));
}
