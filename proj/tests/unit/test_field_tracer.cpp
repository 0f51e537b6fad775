#include "polya/error.hpp"
#include "polya/field_tracer.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/zero_finder.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace polya;

TEST_CASE("asymptote formula")
{
    const int branches[] = {0, 1};
    const double sigmas[] = {1.0, 4.0, 9.0};
    const auto curves = asymptote_curves(KernelIndex(2), branches, sigmas);
    REQUIRE(curves.size() == 2);
    CHECK(curves[0].samples[1].w == doctest::Approx(std::numbers::pi / 2));
    CHECK(curves[1].samples[1].w == doctest::Approx(3 * std::numbers::pi / 2));
    for (const auto& c : curves)
        for (std::size_t i = 1; i < c.samples.size(); ++i) CHECK(c.samples[i].w < c.samples[i - 1].w);
    const double bad[] = {0.0};
    CHECK_THROWS_AS(asymptote_curves(KernelIndex(2), branches, bad), Error);
}

TEST_CASE("grid sampling")
{
    const GridField g = sample_field_grid(KernelIndex(2), {0.0, 2.0, -3.0, 3.0}, {5, 7});
    REQUIRE(g.values.size() == 35);
    CHECK(g.w_axis[3] == 0.0);
    for (std::size_t j = 0; j < g.w_axis.size(); ++j) CHECK(std::abs(g.at(0, j).im) <= g.at(0, j).err_estimate);
    for (std::size_t i = 0; i < g.sigma_axis.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(g.at(i, j).re - g.at(i, 6 - j).re) <= g.at(i, j).err_estimate + g.at(i, 6 - j).err_estimate);

    const GridField h = sample_field_grid(KernelIndex(1), {0.5, 2.0, 0.0, 4.0}, {4, 5});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            const EvalResult ref = closed_form_gaussian(PlanePoint(h.w_axis[j], h.sigma_axis[i]));
            CHECK(std::abs(h.at(i, j).value() - ref.value()) <= 1e-12);
        }
    CHECK_THROWS_AS(sample_field_grid(KernelIndex(2), {}, {1, 5}), Error);
}

TEST_CASE("Gaussian R lines are the hyperbolas w sigma = pi(1 + 2m)")
{
    const KernelIndex n(1);
    const GridField g = sample_field_grid(n, {1.0, 4.0, 0.0, 6.0}, {40, 80});
    const auto lines = extract_field_lines(g, FieldKind::R_line);
    CHECK(lines.size() >= 3);
    for (const auto& raw : lines) {
        const FieldLine l = refine_field_line(n, raw);
        CHECK(l.max_residual <= 1e-12);
        for (const auto& p : l.points) {
            const double k = (p.w * p.sigma / std::numbers::pi - 1) / 2;
            CHECK(std::abs(k - std::round(k)) <= 1e-6);
        }
    }
}

TEST_CASE("I lines include both axes")
{
    const GridField g = sample_field_grid(KernelIndex(2), {0.0, 3.0, 0.0, 8.0}, {30, 80});
    const auto lines = extract_field_lines(g, FieldKind::I_line);
    bool sigma_axis = false, w_axis = false;
    for (const auto& l : lines) {
        bool all_s0 = true, all_w0 = true;
        for (const auto& p : l.points) {
            all_s0 = all_s0 && p.sigma == 0.0;
            all_w0 = all_w0 && p.w == 0.0;
        }
        sigma_axis = sigma_axis || (all_s0 && l.points.size() == g.w_axis.size());
        w_axis = w_axis || (all_w0 && l.points.size() == g.sigma_axis.size());
    }
    CHECK(sigma_axis);
    CHECK(w_axis);
    // I lines leave the sigma axis where F' vanishes, between consecutive zeros
    CHECK(lines.size() >= 4);
}

TEST_CASE("R lines cross the axis at the zeros, perpendicularly")
{
    const KernelIndex n(2);
    const auto zeros = first_real_zeros(n, 3);
    const GridField g = sample_field_grid(n, {0.0, 3.0, 0.0, 10.5}, {40, 120});
    int ends = 0;
    for (const auto& raw : extract_field_lines(g, FieldKind::R_line)) {
        const FieldLine l = refine_field_line(n, raw);
        for (const PlanePoint& p : {l.points.front(), l.points.back()}) {
            if (std::abs(p.sigma) > 1e-9) continue;
            double best = 1e300;
            for (const auto& z : zeros) best = std::min(best, std::abs(z.alpha - p.w));
            CHECK(best <= 1e-9);
            ++ends;
        }
    }
    CHECK(ends == 3);
    for (const auto& z : zeros) {
        const auto g2 = crossing_components(n, z);
        CHECK(std::abs(g2.slope) <= 1e-3);
        CHECK(std::abs(g2.r_sigma) <= 1e-12);
        CHECK(std::abs(g2.r_w) > 0.0);
    }
}

TEST_CASE("crossing gradient needs zeros")
{
    ZeroRecord z;
    z.n = KernelIndex(1);
    z.alpha = 1.0;
    try {
        crossing_gradient(KernelIndex(1), z);
        FAIL("expected NoZeros");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoZeros);
    }
}

TEST_CASE("no off-axis meeting of R and I lines")
{
    const KernelIndex n(2);
    const GridField g = sample_field_grid(n, {0.1, 6.0, -8.0, 8.0}, {60, 160});
    auto r = extract_field_lines(g, FieldKind::R_line);
    auto i = extract_field_lines(g, FieldKind::I_line);
    for (auto& l : r) l = refine_field_line(n, l);
    for (auto& l : i) l = refine_field_line(n, l);
    CHECK(intersection_audit(r, i, 1e-4).passed());
    CHECK(family_audit(r, 1e-4).passed());
    CHECK(family_audit(i, 1e-4).passed());
}

TEST_CASE("audit geometry")
{
    CHECK(intersection_audit({}, {}, 1e-3).near_points.empty());
    const FieldLine a{FieldKind::R_line, {PlanePoint(0.0, 1.0), PlanePoint(2.0, 1.0)}, 0.0};
    const FieldLine b{FieldKind::I_line, {PlanePoint(1.0, 0.0), PlanePoint(1.0, 2.0)}, 0.0};
    const FieldLine c{FieldKind::I_line, {PlanePoint(0.0, 0.0), PlanePoint(2.0, 0.0)}, 0.0};
    const FieldLine ra[] = {a};
    const FieldLine ib[] = {b};
    const auto hit = intersection_audit(ra, ib, 1e-6);
    REQUIRE(hit.off_axis.size() == 1);
    CHECK(hit.off_axis[0].w == doctest::Approx(1.0));
    CHECK(hit.off_axis[0].sigma == doctest::Approx(1.0));
    const FieldLine ic[] = {c};
    const auto axis = intersection_audit(ib, ic, 1e-6);
    CHECK(axis.near_points.size() == 1);
    CHECK(axis.passed());
    const FieldLine both[] = {a, b};
    CHECK_FALSE(family_audit(both, 1e-6).passed());
}

TEST_CASE("R line gaps to the asymptotes shrink for the low branches")
{
    for (int m = 0; m <= 2; ++m) {
        const double g10 = asymptote_gap(KernelIndex(2), m, 10.0);
        const double g30 = asymptote_gap(KernelIndex(2), m, 30.0);
        CHECK(g10 > g30);
        CHECK(g30 > 0.0);
        CHECK(g30 <= 0.02);
    }
}

TEST_CASE("field crossings along a horizontal cut")
{
    // for n = 1, R vanishes at w = pi(1 + 2m)/sigma
    const auto roots = field_crossings(KernelIndex(1), FieldKind::R_line, 2.0, 0.0, 6.0, 0.05);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-11));
    CHECK(roots[1] == doctest::Approx(3 * std::numbers::pi / 2).epsilon(1e-11));
}
