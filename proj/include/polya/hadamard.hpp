#pragma once

#include "polya/types.hpp"
#include "polya/zero_finder.hpp"

#include <span>
#include <vector>

namespace polya {

inline constexpr int kMaxTableOrder = 12;

/// P_N(z) = c * prod_{r<=N} (1 - z^2 / alpha_r^2).
struct ProductSpec {
    KernelIndex n{1};
    double c = 1.0;
    std::vector<ZeroRecord> zeros;
    int pairs = 0;  ///< N

    ProductSpec() = default;
    ProductSpec(KernelIndex n_, double c_, std::vector<ZeroRecord> zeros_, int pairs_);
    ProductSpec truncated(int pairs_) const;
};

/// T_{K,m}(w) = (-1)^m 2 d^2m/du^2m [P_K(u+w) P_K(u-w)] at u = 0.
struct TTable {
    ProductSpec spec;
    double w = 0.0;
    int m_max = 0;
    std::vector<std::vector<double>> values;  ///< values[K-1][m], 1 <= K <= N

    double at(int K, int m) const { return values.at(K - 1).at(m); }
    /// Largest magnitude in row K; the reference scale for sign checks.
    double row_scale(int K) const;
};

/// F_2n(0), which must be positive.
double leading_constant(KernelIndex n, const QuadratureSpec& q = {});

EvalResult partial_product(const ProductSpec& spec, PlanePoint p);

struct ProductResidualRow {
    double w = 0.0;
    double transform = 0.0;
    double product = 0.0;
    double residual = 0.0;
};

struct ProductResidual {
    std::vector<ProductResidualRow> rows;
    double max_residual = 0.0;
};

ProductResidual product_residual(KernelIndex n, const ProductSpec& spec, std::span<const double> w_grid,
                                 const QuadratureSpec& q = {});

/// Builds T from T_{0,0} = 2c^2 (the empty product) through the three-term
/// recursion
///   T_{K+1,m} = (1 - w^2/a^2)^2 T_{K,m} + C(2m,2) 4 (1/a^2 + w^2/a^4) T_{K,m-1}
///             + C(2m,4) 24/a^4 T_{K,m-2},   a = alpha_{K+1},
/// which reproduces T_{1,0} = 2c^2(1 - w^2/a^2)^2, T_{1,1} = 8c^2(1/a^2 + w^2/a^4),
/// T_{1,2} = 48c^2/a^4 and T_{1,m} = 0 for m >= 3.
TTable t_table(const ProductSpec& spec, double w, int m_max);

}  // namespace polya
