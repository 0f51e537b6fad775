#include "polya/hadamard.hpp"

#include "polya/error.hpp"
#include "polya/kernel_eval.hpp"
#include "polya/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace polya {

ProductSpec::ProductSpec(KernelIndex n_, double c_, std::vector<ZeroRecord> zeros_, int pairs_)
    : n(n_), c(c_), zeros(std::move(zeros_)), pairs(pairs_)
{
    require(c > 0.0, "leading constant must be positive");
    require(pairs >= 0 && pairs <= static_cast<int>(zeros.size()),
            "product uses " + std::to_string(pairs) + " pairs but only " +
                std::to_string(zeros.size()) + " zeros are available");
    for (const auto& z : zeros) require(z.alpha > 0.0, "zeros must be positive");
}

ProductSpec ProductSpec::truncated(int pairs_) const { return ProductSpec(n, c, zeros, pairs_); }

double TTable::row_scale(int K) const
{
    double s = 0.0;
    for (double v : values.at(K - 1)) s = std::max(s, std::abs(v));
    return s;
}

double leading_constant(KernelIndex n, const QuadratureSpec& q)
{
    const double c = eval_transform(n, PlanePoint(0.0, 0.0), q).re;
    if (!(c > 0.0)) fail(ErrorKind::ToleranceNotMet, "F(0) evaluated nonpositive");
    return c;
}

EvalResult partial_product(const ProductSpec& spec, PlanePoint p)
{
    const complex z = p.z();
    const complex z2 = z * z;
    complex prod = spec.c;
    for (int r = 0; r < spec.pairs; ++r) {
        const double a = spec.zeros[static_cast<std::size_t>(r)].alpha;
        prod *= 1.0 - z2 / (a * a);
    }
    const double err = 4.0 * std::numeric_limits<double>::epsilon() * (spec.pairs + 1) * std::abs(prod);
    return EvalResult(prod, err);
}

ProductResidual product_residual(KernelIndex n, const ProductSpec& spec, std::span<const double> w_grid,
                                 const QuadratureSpec& q)
{
    ProductResidual out;
    out.rows.resize(w_grid.size());
    parallel_for(w_grid.size(), [&](std::size_t i) {
        const PlanePoint at(w_grid[i], 0.0);
        const double f = eval_transform(n, at, q).re;
        const double p = partial_product(spec, at).re;
        out.rows[i] = {w_grid[i], f, p, std::abs(f - p)};
    });
    for (const auto& row : out.rows) out.max_residual = std::max(out.max_residual, row.residual);
    return out;
}

TTable t_table(const ProductSpec& spec, double w, int m_max)
{
    require(m_max >= 0 && m_max <= kMaxTableOrder,
            "m_max must lie in [0, " + std::to_string(kMaxTableOrder) + "]");
    TTable table{spec, w, m_max, {}};
    std::vector<double> prev(static_cast<std::size_t>(m_max) + 1, 0.0);
    prev[0] = 2.0 * spec.c * spec.c;
    for (int K = 0; K < spec.pairs; ++K) {
        const double a2 = spec.zeros[static_cast<std::size_t>(K)].alpha *
                          spec.zeros[static_cast<std::size_t>(K)].alpha;
        const double a4 = a2 * a2;
        const double lead = (1.0 - w * w / a2) * (1.0 - w * w / a2);
        const double second = 4.0 * (1.0 / a2 + w * w / a4);
        const double fourth = 24.0 / a4;
        std::vector<double> next(prev.size(), 0.0);
        for (int m = 0; m <= m_max; ++m) {
            double v = lead * prev[m];
            if (m >= 1) v += binomial(2 * m, 2) * second * prev[m - 1];
            if (m >= 2) v += binomial(2 * m, 4) * fourth * prev[m - 2];
            next[m] = v;
        }
        table.values.push_back(next);
        prev = std::move(next);
    }
    return table;
}

}  // namespace polya
