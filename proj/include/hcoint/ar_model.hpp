#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hcoint/linalg.hpp"

namespace hcoint {

/**
 * @brief AR(k) recursion x_t = A1 x_{t-1} + ... + Ak x_{t-k} + e_t on R^p.
 *
 * Coefficients are square p x p operators; noise_cov is symmetric positive
 * semidefinite (identity by default). All entries must be finite.
 */
class ArModel {
public:
    ArModel(std::vector<Matrix> coeffs, Matrix noise_cov);
    explicit ArModel(std::vector<Matrix> coeffs);

    [[nodiscard]] Index dim() const noexcept { return p_; }
    [[nodiscard]] Index order() const noexcept { return static_cast<Index>(coeffs_.size()); }
    [[nodiscard]] const std::vector<Matrix>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] const Matrix& coeff(Index lag) const { return coeffs_.at(static_cast<std::size_t>(lag - 1)); }
    [[nodiscard]] const Matrix& noise_cov() const noexcept { return noise_cov_; }

private:
    Index p_ = 0;
    std::vector<Matrix> coeffs_;
    Matrix noise_cov_;
};

/// Expansion A(z) = sum_n A_n (1 - z)^n; coefficients beyond the stored ones are zero.
class TaylorPencil {
public:
    explicit TaylorPencil(std::vector<Matrix> coeffs);

    [[nodiscard]] Index dim() const noexcept { return coeffs_.front().rows(); }
    [[nodiscard]] Index degree() const noexcept { return static_cast<Index>(coeffs_.size()) - 1; }
    [[nodiscard]] const std::vector<Matrix>& coeffs() const noexcept { return coeffs_; }
    /// A_n, or the zero matrix for n > degree().
    [[nodiscard]] Matrix coeff(Index n) const;
    /// Largest spectral norm among the coefficients.
    [[nodiscard]] double scale() const;

private:
    std::vector<Matrix> coeffs_;
};

[[nodiscard]] TaylorPencil taylor_at_one(const ArModel& m);

[[nodiscard]] CMatrix evaluate(const ArModel& m, Complex z);
[[nodiscard]] CMatrix evaluate(const TaylorPencil& pencil, Complex z);

/// Companion matrix of the recursion (A1 itself when k = 1).
[[nodiscard]] Matrix companion(const ArModel& m);

struct RootOptions {
    double unit_tol = 1e-7;
    double stability_margin = 1e-6;
    /// Eigenvalues this close to 1 are candidates for the unit cluster.
    double cluster_radius = 1e-2;
};

struct RootDiagnostics {
    std::vector<Complex> eigenvalues;
    /// Number of companion eigenvalues assigned to the cluster at 1.
    Index unit_cluster_size = 0;
    bool has_unit_root = false;
    /// |mean(cluster) - 1|.
    double cluster_center_error = 0.0;
    /// Largest modulus among eigenvalues outside the cluster (0 if none).
    double max_other_modulus = 0.0;
    /// 1 - max_other_modulus.
    double stability_gap = 1.0;
    /// min |1 - 1/lambda| over non-cluster eigenvalues: distance from z = 1 to the
    /// nearest other characteristic root. Infinite when there is none.
    double root_distance = 0.0;
    Index dim_ker_a0 = 0;
    Index dim_coker_a0 = 0;
    /// A(1) numerically zero; the recursion still applies with tau_0 = {0}.
    bool a0_vanishes = false;
    std::vector<Complex> boundary_eigenvalues;
    std::vector<Complex> explosive_eigenvalues;
    RootOptions options;
};

[[nodiscard]] RootDiagnostics root_diagnostics(const ArModel& m, const RankPolicy& policy,
                                               const RootOptions& options = {});

enum class FiniteTypeReason { None, NoUnitRoot, ExplosiveOrBoundaryRoot, SeasonalUnitRoot };

[[nodiscard]] std::string_view to_string(FiniteTypeReason r) noexcept;

struct FiniteTypeVerdict {
    bool pass = false;
    FiniteTypeReason reason = FiniteTypeReason::None;
    std::string detail;
};

[[nodiscard]] FiniteTypeVerdict assert_finite_type(const RootDiagnostics& d);

/// Default contour radius for the Laurent expansion: min(0.1, root_distance / 3).
[[nodiscard]] double default_laurent_radius(const RootDiagnostics& d);

/// Radius for the lag-series contour: halfway between 1 and the nearest stable root (at most 2).
[[nodiscard]] double default_tail_radius(const RootDiagnostics& d);

}  // namespace hcoint
