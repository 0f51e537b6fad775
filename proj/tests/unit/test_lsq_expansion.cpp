#include "polya/error.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/lsq_expansion.hpp"
#include "polya/numeric.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace polya;

TEST_CASE("Gaussian coefficients match the closed form")
{
    for (double w : {0.0, 0.5, 1.0, 2.0, 3.0})
        for (const auto& a : a_coeff_series(KernelIndex(1), 8, w)) {
            const double exact =
                2 * std::numbers::pi * std::exp(-w * w / 2) * factorial(2 * a.m) / (std::pow(2.0, a.m) * factorial(a.m));
            CHECK(a.value == doctest::Approx(exact).epsilon(1e-9));
            CHECK(a.method == CoeffMethod::leibniz);
        }
}

TEST_CASE("A_0 is twice F squared")
{
    for (double w : {0.0, 1.7, 4.0}) {
        const double f = eval_transform(KernelIndex(2), PlanePoint(w, 0.0)).re;
        CHECK(a_coeff(KernelIndex(2), 0, w).value == doctest::Approx(2 * f * f).epsilon(1e-12));
    }
}

TEST_CASE("coefficients of F_4 are nonnegative")
{
    for (double w = 0.0; w <= 8.0; w += 0.5)
        for (const auto& a : a_coeff_series(KernelIndex(2), 6, w)) CHECK(a.value >= -a.err_estimate);
}

TEST_CASE("Leibniz and direct 2-D routes agree")
{
    for (int m = 0; m <= 2; ++m)
        for (double w : {0.0, 1.5}) {
            const ACoeffSample a = a_coeff(KernelIndex(2), m, w);
            const ACoeffSample b = a_coeff_direct(KernelIndex(2), m, w);
            CHECK(b.method == CoeffMethod::direct2d);
            CHECK(std::abs(a.value - b.value) <= a.err_estimate + b.err_estimate);
            CHECK(std::abs(b.imag_part) <= b.err_estimate);
        }
}

TEST_CASE("series reproduces |F|^2")
{
    for (double s : {0.25, 1.0})
        for (double w : {0.0, 3.0, 6.0}) {
            const PlanePoint p(w, s);
            const SeriesValue v = l2_series(KernelIndex(2), p, kMaxCoeffOrder);
            const double exact = eval_transform(KernelIndex(2), p).l_squared;
            CHECK(std::abs(v.value - exact) <= 1e-9 * exact);
            CHECK_FALSE(v.truncation_flag);
        }
    // too few terms at large sigma raises the flag
    CHECK(l2_series(KernelIndex(2), PlanePoint(1.0, 3.0), 2).truncation_flag);
}

TEST_CASE("modulus grows away from the axis")
{
    const auto grid = arange_inclusive(0.0, 3.0, 0.1);
    const auto p = monotonicity_profile(KernelIndex(2), 3.4534641283624214, grid);
    CHECK(p.monotone);
    CHECK(p.samples.front().second < 1e-20);
    CHECK_THROWS_AS(monotonicity_profile(KernelIndex(2), 1.0, std::vector<double>{1.0, 0.5}), Error);
}

TEST_CASE("product factor forms")
{
    for (double w : {0.0, 1.0, 5.0})
        for (double s : {0.0, 0.5, 2.0}) {
            CHECK(p_factor_expanded(w, s, 3.0) == doctest::Approx(p_factor_sum_of_squares(w, s, 3.0)));
            const double h = 1e-6;
            const double fd = (p_factor_sum_of_squares(w, s + h, 3.0) - p_factor_sum_of_squares(w, s - h, 3.0)) / (2 * h);
            CHECK(p_factor_sigma_derivative(w, s, 3.0) == doctest::Approx(fd).epsilon(1e-6));
        }
}

TEST_CASE("coefficient orders are bounded")
{
    CHECK_THROWS_AS(a_coeff(KernelIndex(2), kMaxCoeffOrder + 1, 0.0), Error);
    CHECK_THROWS_AS(a_coeff(KernelIndex(2), -1, 0.0), Error);
    CHECK_THROWS_AS(a_coeff_direct(KernelIndex(2), kMaxDirectOrder + 1, 0.0), Error);
    CHECK_THROWS_AS(a_coeff_direct(KernelIndex(2), 1, kMaxDirectW + 1), Error);
}
