#include "polya/error.hpp"
#include "polya/orbit.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace polya;

TEST_CASE("on the axis the orbit is a segment and J vanishes")
{
    const OrbitTrace t = orbit_trace(KernelIndex(2), 0.0, 1.0, 0.0, 10.0, 0.5);
    CHECK(t.samples.size() == 21);
    for (const auto& s : t.samples) {
        CHECK(std::abs(s.I) <= s.radius_err);
        CHECK(std::abs(s.J) <= s.J_err);
    }
}

TEST_CASE("Gaussian orbit radius and angular momentum")
{
    const double v = 1.5;
    for (double sigma : {0.5, 1.5}) {
        const OrbitTrace t = orbit_trace(KernelIndex(1), sigma, v, -3.0, 3.0, 0.25);
        for (const auto& s : t.samples) {
            const double radius = std::sqrt(std::numbers::pi) * std::exp((sigma * sigma - s.w * s.w) / 4);
            CHECK(std::hypot(s.R, s.I) == doctest::Approx(radius).epsilon(1e-12));
            const double j = v * std::numbers::pi * (sigma / 2) * std::exp((sigma * sigma - s.w * s.w) / 2);
            CHECK(s.J == doctest::Approx(j).epsilon(1e-10));
        }
    }
    const OrbitTrace small = orbit_trace(KernelIndex(1), 0.5, 1.0, 0.0, 4.0, 1.0);
    const OrbitTrace large = orbit_trace(KernelIndex(1), 1.0, 1.0, 0.0, 4.0, 1.0);
    for (std::size_t i = 0; i < small.samples.size(); ++i)
        CHECK(std::hypot(large.samples[i].R, large.samples[i].I) > std::hypot(small.samples[i].R, small.samples[i].I));
}

TEST_CASE("J is positive above the axis and negative below")
{
    for (double w = 0.0; w <= 12.0; w += 0.75) {
        CHECK(angular_momentum(KernelIndex(2), PlanePoint(w, 0.7), 1.0) > 0.0);
        CHECK(angular_momentum(KernelIndex(2), PlanePoint(w, -0.7), 1.0) < 0.0);
    }
}

TEST_CASE("three forms of J agree")
{
    for (int n : {1, 2, 3})
        for (double w : {0.0, 2.0, 6.5})
            for (double s : {0.25, 1.0, 2.0}) {
                const AngularMomentumForms f = angular_momentum_forms(KernelIndex(n), PlanePoint(w, s), 2.0);
                CHECK(f.consistent());
                CHECK(f.finite_difference_err < 1e-6 * std::max(1.0, std::abs(f.direct)));
            }
}

TEST_CASE("orbit argument checks")
{
    CHECK_THROWS_AS(orbit_trace(KernelIndex(2), 1.0, 1.0, 0.0, 1.0, 0.0), Error);
    CHECK_THROWS_AS(orbit_trace(KernelIndex(2), 1.0, -1.0, 0.0, 1.0, 0.1), Error);
    CHECK_THROWS_AS(orbit_trace(KernelIndex(2), 1.0, 1.0, 1.0, 0.0, 0.1), Error);
    CHECK_THROWS_AS(angular_momentum(KernelIndex(2), PlanePoint(1, 1), 0.0), Error);
}
