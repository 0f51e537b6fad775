#pragma once

#include "polya/types.hpp"
#include "polya/zero_finder.hpp"

#include <span>
#include <vector>

namespace polya {

struct Window {
    double sigma_lo = 0.0, sigma_hi = 30.0;
    double w_lo = 0.0, w_hi = 8.0;
};

struct Resolution {
    int n_sigma = 400;
    int n_w = 600;
};

/// Samples of F on a rectangular (sigma, w) lattice, row-major in sigma.
struct GridField {
    KernelIndex n{1};
    std::vector<double> sigma_axis;
    std::vector<double> w_axis;
    std::vector<EvalResult> values;
    QuadratureSpec quad;

    const EvalResult& at(std::size_t i_sigma, std::size_t j_w) const
    {
        return values[i_sigma * w_axis.size() + j_w];
    }
};

enum class FieldKind { R_line, I_line };

const char* to_string(FieldKind kind) noexcept;

struct FieldLine {
    FieldKind which = FieldKind::R_line;
    std::vector<PlanePoint> points;
    /// Largest |R| (or |I|) along the line divided by max(1, |F|) at the same
    /// vertex. Far from the axis |F| grows like exp(c sigma^(2n/(2n-1))), so an
    /// absolute residual is meaningless there.
    double max_residual = 0.0;
};

struct AsymptoteCurve {
    KernelIndex n{1};
    int branch = 0;
    std::vector<PlanePoint> samples;
};

GridField sample_field_grid(KernelIndex n, const Window& window, const Resolution& resolution,
                            const QuadratureSpec& q = {});

/// Marching squares on sign(R) or sign(I) with linear edge interpolation,
/// linked into polylines. Saddle cells are split by the sign at the cell
/// centre, which costs one extra evaluation.
///
/// I vanishes identically on sigma = 0 and on w = 0. Those axes, when they are
/// grid lines, are emitted as their own lines, and cells touching them work
/// with I/sigma (resp. I/w, I/(sigma w)) whose limits on the axis come from F'
/// (resp. F''), so the curves leaving the axis are still found.
std::vector<FieldLine> extract_field_lines(const GridField& grid, FieldKind which);

/// Moves every vertex along the gradient of the field by damped Newton steps
/// until |field| <= max(q.tol max(1, |F|), err_estimate). The gradient comes
/// from F'(z): R_w + i I_w = F', R_sigma + i I_sigma = -i F'.
/// Throws NewtonStall if |F'| vanishes within its error at a vertex with
/// |sigma| > 1e-6.
FieldLine refine_field_line(KernelIndex n, const FieldLine& line, const QuadratureSpec& q = {});

/// w = (2n/sigma)^(1/(2n-1)) (pi/2) (1 + 2m) for each branch m.
std::vector<AsymptoteCurve> asymptote_curves(KernelIndex n, std::span<const int> branches,
                                             std::span<const double> sigma_samples);

struct CrossingGradient {
    double r_sigma = 0.0;  ///< Im F'(alpha)
    double r_w = 0.0;      ///< Re F'(alpha)
    double slope = 0.0;    ///< dw/dsigma = -r_sigma / r_w
};

CrossingGradient crossing_components(KernelIndex n, const ZeroRecord& zero, const QuadratureSpec& q = {});

/// dw/dsigma of the R = 0 line through (0, alpha). Throws NoZeros for n = 1.
double crossing_gradient(KernelIndex n, const ZeroRecord& zero, const QuadratureSpec& q = {});

/// Ascending w in [w_lo, w_hi] where the field vanishes along fixed sigma,
/// located by a scan at `step` and bisection to 1e-12.
std::vector<double> field_crossings(KernelIndex n, FieldKind which, double sigma, double w_lo, double w_hi,
                                    double step, const QuadratureSpec& q = {});

/// (w_line - w_asym) / w_asym for the branch-th R line (counted upward from
/// w = 0) at the given sigma.
double asymptote_gap(KernelIndex n, int branch, double sigma, const QuadratureSpec& q = {});

struct AuditResult {
    std::vector<PlanePoint> near_points;  ///< every close approach found
    std::vector<PlanePoint> off_axis;     ///< the subset with |sigma| > axis_tol
    bool passed() const { return off_axis.empty(); }
};

/// Close approaches (< proximity_tol) between any R-line segment and any
/// I-line segment.
AuditResult intersection_audit(std::span<const FieldLine> r_lines, std::span<const FieldLine> i_lines,
                               double proximity_tol, double axis_tol = 1e-9);

/// Close approaches between distinct lines of one family.
AuditResult family_audit(std::span<const FieldLine> lines, double proximity_tol, double axis_tol = 1e-9);

}  // namespace polya
