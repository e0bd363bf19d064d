#include <doctest.h>

#include <cmath>
#include <random>

#include "sweep/errors.hpp"
#include "sweep/geometry.hpp"
#include "sweep/optimizer.hpp"

using namespace sweep;
using optimizer::Quadratic1D;
using optimizer::argmin_quadratic;

TEST_CASE("argmin_quadratic") {
  auto [x, f] = argmin_quadratic({1.0, -4.0, 4.0, -1e18, 1e18});
  CHECK(x == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f == doctest::Approx(0.0));

  // Free-flight branch of the straight-run fixture: the vertex lands at
  // 2304/2310 for tau = 1.
  const double s = 8.0, T = 6.0, D = 48.0, tau = 1.0;
  Quadratic1D q{0.5 * s * s * T * T + 0.5 * tau * T, -s * T * D, 0.5 * D * D, 0.0,
                std::numeric_limits<double>::infinity()};
  auto [a, J] = argmin_quadratic(q);
  CHECK(a == doctest::Approx(2304.0 / 2310.0).epsilon(1e-15));
  CHECK(J == doctest::Approx(2.992207792207792).epsilon(1e-12));

  auto [clamped, fc] = argmin_quadratic({1.0, -4.0, 4.0, 3.0, 10.0});
  CHECK(clamped == 3.0);
  CHECK(fc == doctest::Approx(1.0));

  CHECK_THROWS_AS(argmin_quadratic({1.0, 0.0, 0.0, 2.0, 1.0}), ModelError);
}

TEST_CASE("minimize_scalar") {
  auto [x, f] = optimizer::minimize_scalar([](double v) { return (v - kPi) * (v - kPi); },
                                           0.0, 10.0, 1e-8);
  CHECK(std::abs(x - kPi) <= 1e-8);
  CHECK(f <= 1e-14);

  SUBCASE("constant function ties break to the left edge") {
    auto [lo, flo] = optimizer::minimize_scalar([](double) { return 42.0; }, -2.0, 5.0, 1e-9);
    CHECK(lo == -2.0);
    CHECK(flo == 42.0);
  }

  SUBCASE("agrees with the closed form on the swing-branch cost shape") {
    // Same coefficients the swing branch of the collinear fixture produces.
    const double s = 8.0, T = 6.0, tau = 1.0;
    const double reach = std::sqrt(540.0) + (std::acos(-0.25) * 6.0 + 18.0 / 8.0) * s;
    Quadratic1D q{0.5 * s * s * T * T + 0.5 * tau * T, -reach * s * T, 0.5 * reach * reach,
                  0.0, 10.0};
    auto [xq, fq] = argmin_quadratic(q);
    auto [xs, fs] = optimizer::minimize_scalar([&](double v) { return q(v); }, 0.0, 10.0, 1e-9);
    CHECK(std::abs(xq - xs) <= 1e-7);
    CHECK(std::abs(fq - fs) <= 1e-9 * std::max(1.0, std::abs(fq)));
    CHECK(xq == doctest::Approx(2.675632).epsilon(1e-6));
  }

  SUBCASE("agrees with the closed form on random convex quadratics") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
      const double c2 = 0.1 + std::abs(u(rng));
      const double c1 = u(rng);
      const double c0 = u(rng);
      Quadratic1D q{c2, c1, c0, -20.0, 20.0};
      auto [xq, fq] = argmin_quadratic(q);
      auto [xs, fs] = optimizer::minimize_scalar([&](double v) { return q(v); }, -20.0, 20.0, 1e-9);
      CHECK(std::abs(xq - xs) <= 1e-7);
      CHECK(std::abs(fq - fs) <= 1e-9 * std::max(1.0, std::abs(fq)));
    }
  }

  CHECK_THROWS_AS(optimizer::minimize_scalar([](double v) { return v; }, 1.0, 0.0, 1e-6),
                  ModelError);
}
