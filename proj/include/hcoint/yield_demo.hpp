#pragma once

#include "hcoint/laurent.hpp"
#include "hcoint/model_io.hpp"

namespace hcoint {

/// Level, slope and curvature functionals on p equal cells of (0, 1].
struct YieldCharacteristics {
    Vector level;
    Vector slope;
    Vector curvature;
};

/**
 * Entry i is the integral of the step function over cell i, so <v, x> is the
 * integral of v(u) x(u) for x constant on cells. Throws Error(InvalidArgument)
 * for p < 4.
 */
[[nodiscard]] YieldCharacteristics yield_characteristics(Index p);

/// AR(1) on the grid: the cell-constant curve is a random walk, the rest mean-reverts at rate 0.5.
[[nodiscard]] ModelSpec yield_demo_model(Index p);

/// d minus the first n with v' C_n != 0 (relative tolerance `tol`); 0 if none of C_0..C_{d-1} sees v.
[[nodiscard]] Index analytic_order(const LaurentSeries& series, const Vector& v, double tol = 1e-8);

}  // namespace hcoint
