#include "polya/error.hpp"
#include "polya/hadamard.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/lsq_expansion.hpp"
#include "polya/numeric.hpp"
#include "polya/zero_finder.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace polya;

namespace {

using Poly = std::vector<long double>;  // ascending powers

Poly multiply(const Poly& a, const Poly& b)
{
    Poly out(a.size() + b.size() - 1, 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// p(u + shift) as a polynomial in u.
Poly shifted(const Poly& p, long double shift)
{
    Poly out(p.size(), 0.0L);
    for (std::size_t k = 0; k < p.size(); ++k)
        for (std::size_t j = 0; j <= k; ++j)
            out[j] += p[k] * static_cast<long double>(binomial(static_cast<int>(k), static_cast<int>(j))) *
                      std::pow(shift, static_cast<long double>(k - j));
    return out;
}

/// (-1)^m 2 d^2m/du^2m [P(u+w) P(u-w)] at u = 0, by explicit expansion.
double expanded_entry(double c, const std::vector<double>& alphas, double w, int m)
{
    Poly p{static_cast<long double>(c)};
    for (double a : alphas) p = multiply(p, {1.0L, 0.0L, -1.0L / (static_cast<long double>(a) * a)});
    const Poly q = multiply(shifted(p, w), shifted(p, -w));
    const long double coef = 2 * m < static_cast<int>(q.size()) ? q[static_cast<std::size_t>(2 * m)] : 0.0L;
    return static_cast<double>((m % 2 ? -2.0L : 2.0L) * static_cast<long double>(factorial(2 * m)) * coef);
}

std::vector<ZeroRecord> fake_zeros(const std::vector<double>& alphas)
{
    std::vector<ZeroRecord> out;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        ZeroRecord z;
        z.n = KernelIndex(2);
        z.index = static_cast<int>(i) + 1;
        z.alpha = alphas[i];
        out.push_back(z);
    }
    return out;
}

}  // namespace

TEST_CASE("recursion table matches explicit polynomial expansion")
{
    const std::vector<double> alphas{1.3, 2.9, 4.1, 5.6};
    const ProductSpec spec(KernelIndex(2), 1.7, fake_zeros(alphas), 4);
    for (double w : {0.0, 0.8, 2.5}) {
        const TTable t = t_table(spec, w, 8);
        for (int K = 1; K <= 4; ++K) {
            const std::vector<double> head(alphas.begin(), alphas.begin() + K);
            for (int m = 0; m <= 8; ++m) {
                const double ref = expanded_entry(spec.c, head, w, m);
                INFO("K=" << K << " m=" << m << " w=" << w);
                CHECK(t.at(K, m) == doctest::Approx(ref).epsilon(1e-12).scale(t.row_scale(K)));
            }
        }
    }
}

TEST_CASE("single-factor base cases")
{
    const double c = 1.1, a = 2.0, w = 0.6;
    const ProductSpec spec(KernelIndex(2), c, fake_zeros({a}), 1);
    const TTable t = t_table(spec, w, 4);
    const double a2 = a * a;
    CHECK(t.at(1, 0) == doctest::Approx(2 * c * c * (1 - w * w / a2) * (1 - w * w / a2)));
    CHECK(t.at(1, 1) == doctest::Approx(8 * c * c * (1 / a2 + w * w / (a2 * a2))));
    CHECK(t.at(1, 2) == doctest::Approx(48 * c * c / (a2 * a2)));
    CHECK(t.at(1, 3) == 0.0);
    CHECK(t.at(1, 4) == 0.0);
}

TEST_CASE("T entries approach the coefficients as zero pairs are added")
{
    const KernelIndex n(2);
    const ProductSpec spec(n, leading_constant(n), first_real_zeros(n, 40), 40);
    for (double w : {0.0, 2.0}) {
        const TTable t = t_table(spec, w, 6);
        for (int m = 0; m <= 3; ++m) {
            const double a = a_coeff(n, m, w).value;
            CHECK(std::abs(t.at(40, m) - a) <= std::abs(t.at(10, m) - a));
        }
        for (int K = 1; K <= 40; ++K)
            for (int m = 0; m <= 6; ++m) CHECK(t.at(K, m) >= -1e-12 * t.row_scale(K));
    }
}

TEST_CASE("partial product vanishes at its zeros and equals c at the origin")
{
    const ProductSpec spec(KernelIndex(2), 1.8, fake_zeros({3.0, 6.0}), 2);
    CHECK(partial_product(spec, PlanePoint(0, 0)).re == doctest::Approx(1.8));
    CHECK(std::abs(partial_product(spec, PlanePoint(3.0, 0)).re) <= 1e-15);
    CHECK(std::abs(partial_product(spec, PlanePoint(6.0, 0)).re) <= 1e-15);
    CHECK(spec.truncated(1).pairs == 1);
}

TEST_CASE("product residual shrinks with more pairs")
{
    const KernelIndex n(2);
    const ProductSpec spec(n, leading_constant(n), first_real_zeros(n, 40), 40);
    const std::vector<double> ws{0.5, 1.5, 2.5};
    CHECK(product_residual(n, spec, ws).max_residual < product_residual(n, spec.truncated(5), ws).max_residual);
}

TEST_CASE("product spec validation")
{
    CHECK_THROWS_AS(ProductSpec(KernelIndex(2), 1.0, fake_zeros({1.0}), 2), Error);
    CHECK_THROWS_AS(ProductSpec(KernelIndex(2), -1.0, fake_zeros({1.0}), 1), Error);
    const ProductSpec spec(KernelIndex(2), 1.0, fake_zeros({1.0}), 1);
    CHECK_THROWS_AS(t_table(spec, 0.0, kMaxTableOrder + 1), Error);
}
