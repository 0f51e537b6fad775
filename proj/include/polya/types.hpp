#pragma once

#include <complex>
#include <optional>

namespace polya {

using complex = std::complex<double>;

/// Half-degree of the kernel exp(-t^(2n)).
class KernelIndex {
public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 6;

    explicit KernelIndex(int n);

    int value() const noexcept { return n_; }
    int degree() const noexcept { return 2 * n_; }

    friend bool operator==(KernelIndex, KernelIndex) = default;

private:
    int n_;
};

/// z = w - i*sigma.
struct PlanePoint {
    double w = 0.0;
    double sigma = 0.0;

    PlanePoint() = default;
    PlanePoint(double w_, double sigma_);

    complex z() const noexcept { return {w, -sigma}; }
    static PlanePoint from_z(complex z) { return {z.real(), -z.imag()}; }
};

struct QuadratureSpec {
    double tol = 1e-12;       ///< absolute error target
    double rel_tol = 1e-12;   ///< error target relative to the integrand's L1 mass
    int max_panels = 4000;
    int panel_order = 16;     ///< each panel is checked against a rule of twice this order
    std::optional<double> truncation_radius_override;

    void validate() const;

    /// Target actually enforced for an integrand of absolute mass `scale`.
    double target(double scale) const noexcept;

    QuadratureSpec scaled(double factor) const;
};

struct EvalResult {
    double re = 0.0;
    double im = 0.0;
    double err_estimate = 0.0;
    double l_squared = 0.0;

    EvalResult() = default;
    EvalResult(double re_, double im_, double err)
        : re(re_), im(im_), err_estimate(err), l_squared(re_ * re_ + im_ * im_) {}
    EvalResult(complex v, double err) : EvalResult(v.real(), v.imag(), err) {}

    complex value() const noexcept { return {re, im}; }
    double modulus() const noexcept { return std::abs(value()); }
};

}  // namespace polya
