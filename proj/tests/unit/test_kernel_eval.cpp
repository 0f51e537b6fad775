#include "golden.hpp"

#include "polya/error.hpp"
#include "polya/kernel_eval.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace polya;

TEST_CASE("transform matches high-precision reference values")
{
    const CsvTable t = load_golden("transform_values.csv");
    REQUIRE(t.rows.size() >= 10);
    for (const auto& r : t.rows) {
        const KernelIndex n(std::stoi(r[0]));
        const int k = std::stoi(r[1]);
        const PlanePoint p(parse_number(r[2]), parse_number(r[3]));
        const complex ref(parse_number(r[4]), parse_number(r[5]));
        const EvalResult v = eval_derivative(n, k, p, {});
        INFO("n=" << r[0] << " k=" << k << " w=" << p.w << " sigma=" << p.sigma);
        CHECK(std::abs(v.value() - ref) <= v.err_estimate);
        CHECK(v.err_estimate <= 1e-11 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("origin values against the Gamma oracle")
{
    for (const auto& r : load_golden("origin_values.csv").rows) {
        const KernelIndex n(std::stoi(r[0]));
        const double ref = parse_number(r[2]);
        const EvalResult v = eval_transform(n, PlanePoint(0.0, 0.0));
        CHECK(std::abs(v.re - ref) / ref <= 1e-12);
        CHECK(v.im == doctest::Approx(0.0));
    }
}

TEST_CASE("n = 1 agrees with the closed-form Gaussian")
{
    for (double w : {-5.0, -1.0, 0.0, 0.3, 4.0, 9.0})
        for (double s : {-4.0, -0.5, 0.0, 1.0, 6.0}) {
            const PlanePoint p(w, s);
            const EvalResult a = eval_transform(KernelIndex(1), p);
            const EvalResult b = closed_form_gaussian(p);
            CHECK(std::abs(a.value() - b.value()) <= a.err_estimate + 1e-15 * b.modulus());
        }
    CHECK(closed_form_gaussian(PlanePoint(0, 0)).re == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
}

TEST_CASE("reflection symmetries hold to quadrature error")
{
    for (int n : {2, 3, 5})
        for (double w : {0.7, 6.0, 21.0})
            for (double s : {0.4, 2.5}) {
                const KernelIndex k(n);
                const EvalResult f = eval_transform(k, PlanePoint(w, s));
                const EvalResult conj = eval_transform(k, PlanePoint(w, -s));
                const EvalResult even = eval_transform(k, PlanePoint(-w, -s));
                CHECK(std::abs(conj.value() - std::conj(f.value())) <= f.err_estimate + conj.err_estimate);
                CHECK(std::abs(even.value() - f.value()) <= f.err_estimate + even.err_estimate);
            }
}

TEST_CASE("real axis gives real values")
{
    for (double w : {0.0, 1.0, 13.0, 55.0}) {
        const EvalResult f = eval_transform(KernelIndex(2), PlanePoint(w, 0.0));
        CHECK(std::abs(f.im) <= f.err_estimate);
    }
}

TEST_CASE("sigma derivative equals -i times the w derivative")
{
    // central difference in sigma of F against -i F'
    const KernelIndex n(2);
    const PlanePoint p(2.3, 0.8);
    const double h = 1e-4;
    const complex fd = (eval_transform(n, PlanePoint(p.w, p.sigma + h)).value() -
                        eval_transform(n, PlanePoint(p.w, p.sigma - h)).value()) / (2 * h);
    const complex d = eval_derivative(n, 1, p).value();
    CHECK(std::abs(fd - complex(0, -1) * d) <= 1e-7);
}

TEST_CASE("evaluation is deterministic")
{
    const EvalResult a = eval_transform(KernelIndex(3), PlanePoint(17.25, 1.5));
    const EvalResult b = eval_transform(KernelIndex(3), PlanePoint(17.25, 1.5));
    CHECK(a.re == b.re);
    CHECK(a.im == b.im);
    CHECK(a.err_estimate == b.err_estimate);
}

TEST_CASE("truncation radius")
{
    const double t1 = truncation_radius(KernelIndex(2), 0.0, 0, 1e-6);
    const double t2 = truncation_radius(KernelIndex(2), 0.0, 0, 1e-14);
    CHECK(t1 >= 1.0);
    CHECK(t2 > t1);
    CHECK(truncation_radius(KernelIndex(2), 3.0, 0, 1e-12) > truncation_radius(KernelIndex(2), 0.0, 0, 1e-12));
    CHECK(truncation_radius(KernelIndex(2), 0.0, 8, 1e-12) > truncation_radius(KernelIndex(2), 0.0, 0, 1e-12));
    // the tail beyond T is below tol: 2 exp(-T^4) T^-3 / 4 for n = 2, sigma = 0
    const double T = truncation_radius(KernelIndex(2), 0.0, 0, 1e-12);
    CHECK(std::exp(-std::pow(T, 4)) / (2 * std::pow(T, 3)) <= 1e-12);
}

TEST_CASE("invalid input is rejected")
{
    CHECK_THROWS_AS(KernelIndex(0), Error);
    CHECK_THROWS_AS(KernelIndex(7), Error);
    CHECK_THROWS_AS(PlanePoint(std::numeric_limits<double>::quiet_NaN(), 0.0), Error);
    CHECK_THROWS_AS(eval_derivative(KernelIndex(2), kMaxDerivativeOrder + 1, PlanePoint(0, 0)), Error);
    CHECK_THROWS_AS(eval_derivative(KernelIndex(2), -1, PlanePoint(0, 0)), Error);
    QuadratureSpec bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(eval_transform(KernelIndex(2), PlanePoint(1, 1), bad), Error);
}

TEST_CASE("overflow guard")
{
    try {
        eval_transform(KernelIndex(1), PlanePoint(0.0, 1e3));
        FAIL("expected an overflow guard");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OverflowGuard);
    }
}

TEST_CASE("contour shift engages only off the cancellation-free region")
{
    CHECK(describe_contour(KernelIndex(2), 0, PlanePoint(0.0, 0.0)).shift == 0.0);
    CHECK(describe_contour(KernelIndex(2), 0, PlanePoint(0.0, 5.0)).shift == 0.0);
    CHECK(describe_contour(KernelIndex(2), 0, PlanePoint(60.0, 0.0)).shift != 0.0);
}
