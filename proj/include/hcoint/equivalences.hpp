#pragma once

#include <string>
#include <vector>

#include "hcoint/decomposition.hpp"
#include "hcoint/laurent.hpp"

namespace hcoint {

/// One of the equivalent characterizations of the pole order, with its residual.
struct EquivalenceCheck {
    std::string name;
    bool holds = false;
    /// Principal-angle gap, or identity residual for the pole-order statement.
    double residual = 0.0;
};

struct PoleEquivalenceReport {
    std::vector<EquivalenceCheck> checks;
    DirectSumReport zeta_chain;
    DirectSumReport tau_chain;
    bool all_hold = false;
    [[nodiscard]] double max_residual() const;
};

/**
 * @brief Cross-checks the recursion against the Laurent coefficients.
 *
 * Statements: pole order d (identity in equation d, C_0 != 0), zeta_d = Z_d^perp,
 * Ker C_0 = Z_d, tau_d = T_d^perp, Im C_0 = tau_d, plus completeness of both
 * chains. A statement holds when its residual is below `tol`.
 */
[[nodiscard]] PoleEquivalenceReport verify_pole_equivalences(const Decomposition& dec,
                                                             const LaurentSeries& series,
                                                             const RankPolicy& policy,
                                                             double tol = 1e-6);

/// Residual of the chain identity at step h, equation n (0 <= n <= d - h).
struct ChainResidual {
    Index h = 0;
    Index n = 0;
    double left = 0.0;
    double right = 0.0;
};

/**
 * Left: S_h C_n + P_{Z_h^perp} sum_{k=1}^n A_{h+1,k} C_{n-k} = [n + h = d] P_{Z_h^perp}.
 * Right: C_n S_h + sum_{k=1}^n C_{n-k} A_{h+1,k} P_{T_h^perp} = [n + h = d] P_{T_h^perp}.
 */
[[nodiscard]] std::vector<ChainResidual> chain_identity_residuals(const Decomposition& dec,
                                                                  const LaurentSeries& series);

/**
 * Norms of v' G_j for j = 0..d-h-1, where G_j is the coefficient of
 * (1-z)^{j-d} in gamma_h(z) A(z)^{-1}. All vanish iff v' gamma_h A^{-1} has a
 * pole of order at most h.
 */
[[nodiscard]] std::vector<double> cancellation_residuals(const Decomposition& dec,
                                                         const LaurentSeries& series, Index h,
                                                         const Vector& v);

}  // namespace hcoint
