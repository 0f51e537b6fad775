#include "polya/types.hpp"

#include "polya/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace polya {

KernelIndex::KernelIndex(int n) : n_(n)
{
    require(n >= kMin && n <= kMax,
            "kernel index n must lie in [" + std::to_string(kMin) + ", " + std::to_string(kMax) +
                "], got " + std::to_string(n));
}

PlanePoint::PlanePoint(double w_, double sigma_) : w(w_), sigma(sigma_)
{
    require(std::isfinite(w_) && std::isfinite(sigma_), "plane point coordinates must be finite");
}

void QuadratureSpec::validate() const
{
    require(tol > 0.0 && std::isfinite(tol), "quadrature tol must be positive");
    require(rel_tol >= 0.0 && std::isfinite(rel_tol), "quadrature rel_tol must be nonnegative");
    require(max_panels >= 1, "max_panels must be at least 1");
    require(panel_order >= 4 && panel_order <= 64, "panel_order must lie in [4, 64]");
    if (truncation_radius_override)
        require(*truncation_radius_override > 0.0, "truncation radius override must be positive");
}

double QuadratureSpec::target(double scale) const noexcept
{
    return std::max(tol, rel_tol * scale);
}

QuadratureSpec QuadratureSpec::scaled(double factor) const
{
    QuadratureSpec out = *this;
    out.tol *= factor;
    out.rel_tol *= factor;
    return out;
}

}  // namespace polya
