#include "hcoint/yield_demo.hpp"

#include <algorithm>
#include <array>

#include "hcoint/error.hpp"

namespace hcoint {

namespace {

/// Integral over (a, b] of a step function with equal pieces on (0, 1].
double integrate_steps(std::span<const double> pieces, double a, double b) {
    const double w = 1.0 / static_cast<double>(pieces.size());
    double total = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double lo = std::max(a, w * static_cast<double>(i));
        const double hi = std::min(b, w * static_cast<double>(i + 1));
        if (hi > lo) total += pieces[i] * (hi - lo);
    }
    return total;
}

Vector discretize(std::span<const double> pieces, Index p) {
    Vector v(p);
    for (Index i = 0; i < p; ++i)
        v(i) = integrate_steps(pieces, static_cast<double>(i) / static_cast<double>(p),
                               static_cast<double>(i + 1) / static_cast<double>(p));
    return v;
}

}  // namespace

YieldCharacteristics yield_characteristics(Index p) {
    if (p < 4) throw Error(ErrorCode::InvalidArgument, "yield grid needs at least 4 cells");
    const std::array<double, 1> level{1.0};
    const std::array<double, 2> slope{-0.5, 0.5};
    const std::array<double, 4> curvature{0.25, -0.25, -0.25, 0.25};
    return {discretize(level, p), discretize(slope, p), discretize(curvature, p)};
}

ModelSpec yield_demo_model(Index p) {
    if (p < 4) throw Error(ErrorCode::InvalidArgument, "yield grid needs at least 4 cells");
    const Matrix pc = Matrix::Constant(p, p, 1.0 / static_cast<double>(p));
    const Matrix a1 = pc + 0.5 * (Matrix::Identity(p, p) - pc);
    return {ArModel({a1}), RankPolicy{}, RootOptions{}};
}

Index analytic_order(const LaurentSeries& series, const Vector& v, double tol) {
    double scale = 0.0;
    for (const auto& c : series.coeffs) scale = std::max(scale, c.cwiseAbs().maxCoeff());
    const double thresh = tol * std::max(1.0, scale) * std::max(1.0, v.norm());
    for (Index n = 0; n < series.d; ++n)
        if ((v.transpose() * series.coeffs[static_cast<std::size_t>(n)]).norm() > thresh) return series.d - n;
    return 0;
}

}  // namespace hcoint
