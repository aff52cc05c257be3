#pragma once

#include <vector>

#include "hcoint/ar_model.hpp"
#include "hcoint/linalg.hpp"

namespace hcoint {

/// One step h of the subspace recursion.
struct StepRecord {
    Index h = 0;
    /// S_h = P_{Z_h^perp} A_{h,1} P_{T_h^perp} (S_0 = A_0).
    Matrix s;
    Matrix s_pinv;
    /// Image of S_h.
    Subspace zeta;
    /// Row space of S_h; basis = right singular vectors in descending order.
    Subspace tau;
    /// A_{h+1,n} for n = 1..a_next.size().
    std::vector<Matrix> a_next;
    /// Rank threshold applied to S_h.
    double threshold = 0.0;
};

/**
 * @brief Result of the subspace recursion on A_0, A_1, ...
 *
 * R^p = tau_0 + ... + tau_d (orthogonal, tau_d nonzero). tau_d is the
 * attractor space and T_d = tau_0 + ... + tau_{d-1} the cointegrating space.
 */
class Decomposition {
public:
    Decomposition(Index d, std::vector<StepRecord> steps, RankPolicy policy);

    [[nodiscard]] Index order() const noexcept { return d_; }
    [[nodiscard]] Index dim() const noexcept { return steps_.front().s.rows(); }
    [[nodiscard]] const std::vector<StepRecord>& steps() const noexcept { return steps_; }
    [[nodiscard]] const StepRecord& step(Index h) const;
    [[nodiscard]] const RankPolicy& policy() const noexcept { return policy_; }

    [[nodiscard]] const Subspace& attractor() const noexcept { return steps_.back().tau; }
    [[nodiscard]] Subspace coint_space() const { return tau_sum(d_); }
    [[nodiscard]] std::vector<Index> dims() const;

    /// Z_h = zeta_0 + ... + zeta_{h-1} (zero space for h = 0).
    [[nodiscard]] Subspace zeta_sum(Index h) const;
    /// T_h = tau_0 + ... + tau_{h-1} (zero space for h = 0).
    [[nodiscard]] Subspace tau_sum(Index h) const;

private:
    Index d_;
    std::vector<StepRecord> steps_;
    RankPolicy policy_;
};

/**
 * @brief Runs the recursion until T_{h+1} fills R^p and returns d = h.
 *
 * Requires a pencil with a unit root of finite type (A_0 singular). Throws
 * Error(NoUnitRoot) when A_0 is invertible and Error(DCapExceeded) when the
 * recursion does not close within p * k steps, which signals an inconsistent
 * rank policy.
 */
[[nodiscard]] Decomposition decompose(const TaylorPencil& pencil, const RankPolicy& policy);

enum class RelationVariant {
    /// sum_n S_h^+ A_{h+1,n} (1 - z)^n, n = 1..d-h-1.
    Verbatim,
    /// d = 2, h = 0 only: S_0^+ A_{1,1} P_{tau_2}, which drops stationary terms.
    AttractorProjected,
};

/// Polynomial cointegrating relation for directions in tau_h.
struct RelationTemplate {
    Index h = 0;
    Index d = 0;
    Subspace space;
    /// Coefficient of Delta^n, n = 1..poly_coeffs.size().
    std::vector<Matrix> poly_coeffs;

    /// Row vectors v' * poly_coeffs[n-1].
    [[nodiscard]] std::vector<Vector> for_direction(const Vector& v) const;
};

[[nodiscard]] RelationTemplate relations(const Decomposition& dec, Index h,
                                         RelationVariant variant = RelationVariant::Verbatim);

/// Nilpotency index of (A1 - I) restricted to the generalized eigenspace of 1.
[[nodiscard]] Index jordan_oracle_ar1(const Matrix& a1, const RankPolicy& policy);

enum class BssOutcome { Holds, Fails, NotApplicable };

[[nodiscard]] std::string_view to_string(BssOutcome o) noexcept;

struct BssReport {
    BssOutcome outcome = BssOutcome::NotApplicable;
    DirectSumReport direct_sum;
};

/// Checks R^p = Im A_0 (+) A_1 Ker A_0 (non-orthogonal direct sum).
[[nodiscard]] BssReport bss_condition_check(const TaylorPencil& pencil, const RankPolicy& policy);

}  // namespace hcoint
