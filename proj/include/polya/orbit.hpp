#pragma once

#include "polya/types.hpp"

#include <vector>

namespace polya {

struct OrbitSample {
    double t = 0.0;
    double w = 0.0;
    double R = 0.0;
    double I = 0.0;
    double J = 0.0;
    double J_err = 0.0;
    double radius_err = 0.0;  ///< error bound on sqrt(R^2 + I^2)
};

/// (R, I) along w = v t at fixed sigma. Unit mass.
struct OrbitTrace {
    KernelIndex n{1};
    double sigma = 0.0;
    double v = 1.0;
    std::vector<OrbitSample> samples;
};

/// Samples t_lo, t_lo + dt, ... up to t_hi inclusive.
OrbitTrace orbit_trace(KernelIndex n, double sigma, double v, double t_lo, double t_hi, double dt,
                       const QuadratureSpec& q = {});

/// v (R I_w - I R_w).
double angular_momentum(KernelIndex n, PlanePoint p, double v, const QuadratureSpec& q = {});

/// The three ways of writing J, each with its own error bound.
struct AngularMomentumForms {
    double direct = 0.0;          ///< v (R I_w - I R_w)
    double direct_err = 0.0;
    double cauchy_riemann = 0.0;  ///< v (R R_sigma + I I_sigma)
    double cauchy_riemann_err = 0.0;
    double finite_difference = 0.0;  ///< v/2 d(L^2)/dsigma, Richardson-extrapolated
    double finite_difference_err = 0.0;

    bool consistent() const noexcept;
};

AngularMomentumForms angular_momentum_forms(KernelIndex n, PlanePoint p, double v, const QuadratureSpec& q = {});

}  // namespace polya
