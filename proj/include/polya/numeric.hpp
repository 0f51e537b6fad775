#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace polya {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class ComplexCompensatedSum {
public:
    void add(std::complex<double> x) noexcept
    {
        re_.add(x.real());
        im_.add(x.imag());
    }
    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_, im_;
};

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order, thread-safe.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int order);

double binomial(int n, int k);
double factorial(int n);

/// Runs body(i) for i in [0, count) on a fixed pool of worker threads.
/// Each index is processed exactly once; callers write results by index, so
/// output never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Evenly spaced samples lo, lo+step, ... up to hi (inclusive within 1e-9 step).
std::vector<double> arange_inclusive(double lo, double hi, double step);

}  // namespace polya
