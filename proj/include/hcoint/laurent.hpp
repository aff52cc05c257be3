#pragma once

#include <optional>
#include <vector>

#include "hcoint/ar_model.hpp"
#include "hcoint/decomposition.hpp"
#include "hcoint/linalg.hpp"

namespace hcoint {

/// A(z)^{-1} = sum_n C_n (1 - z)^{n - d} around z = 1.
struct LaurentSeries {
    Index d = 0;
    std::vector<Matrix> coeffs;
    double radius = 0.0;
    Index nodes = 0;
    /// Largest imaginary part discarded from C_0..C_{d+2}, relative to max(1, |C_n|).
    double max_imag = 0.0;
    /// Largest identity-system residual over equations 0..min(N, d+2), left and right.
    double residual = 0.0;
};

struct LaurentOptions {
    /// Number of coefficients is count + 1 (C_0..C_count); defaults to d + 4.
    std::optional<Index> count;
    double radius = 0.1;
    Index nodes = 128;
    double imag_tol = 1e-10;
    /// Identity residuals above this fail the certificate.
    double certificate_tol = 1e-8;
    bool enforce_certificate = true;
    /// Worker threads for node evaluation; results are reduced in node order.
    unsigned jobs = 1;
};

/**
 * @brief Coefficients of w^d B(w)^{-1}, B(w) = A(1 - w), by the trapezoid rule
 * on |w| = radius.
 *
 * Throws Error(SingularOnCircle) when B is singular at a node and
 * Error(RadiusTooLarge) when the identity-system certificate fails (or C_0
 * vanishes, or imaginary residue exceeds imag_tol).
 */
[[nodiscard]] LaurentSeries laurent_coeffs(const TaylorPencil& pencil, Index d,
                                           const LaurentOptions& options = {});

struct IdentityResiduals {
    /// Spectral norm of the left/right version of equation n, n = 0..N.
    std::vector<double> left;
    std::vector<double> right;
    /// ||A(z) Ahat(z)^{-1} - I|| at 8 points on |1 - z| = radius / 2.
    std::vector<double> pointwise;

    [[nodiscard]] double max_equation(Index upto) const;
    [[nodiscard]] double max_pointwise() const;
};

[[nodiscard]] IdentityResiduals identity_residuals(const TaylorPencil& pencil,
                                                   const LaurentSeries& series);

struct TailOptions {
    Index terms = 512;
    /// Contour radius in the z-plane, strictly between 1 and the nearest stable root.
    double radius = 1.5;
    Index nodes = 2048;
    unsigned jobs = 1;
};

/**
 * @brief Loadings of the common-trends representation plus the linear-process tail.
 *
 * loadings[n] = C_n for n < d. tail[j] are the lag weights psi_j of
 * C_d*(z) = A(z)^{-1} - sum_{n<d} C_n (1-z)^{n-d}, so that y_t = sum_j psi_j e_{t-j}.
 */
struct CommonTrendsOperators {
    Index d = 0;
    std::vector<Matrix> loadings;
    std::vector<Matrix> tail;
    double tail_radius = 0.0;
};

/**
 * Packages C_0..C_{d-1}, checks Im C_0 = attractor and Ker C_0 contains Z_d,
 * and computes the tail weights. Throws Error(AttractorMismatch) when the
 * principal-angle residual exceeds 1e-6.
 */
[[nodiscard]] CommonTrendsOperators common_trends(const TaylorPencil& pencil,
                                                  const LaurentSeries& series,
                                                  const Decomposition& dec,
                                                  const TailOptions& tail = {});

/// Lag weights of C_d*(z); see CommonTrendsOperators.
[[nodiscard]] std::vector<Matrix> linear_process_weights(const TaylorPencil& pencil,
                                                         const LaurentSeries& series,
                                                         const TailOptions& tail);

}  // namespace hcoint
