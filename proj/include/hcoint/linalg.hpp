#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hcoint {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/**
 * @brief Global rank-decision rule.
 *
 * A singular value is counted iff it exceeds
 * max(rel_tol * max(sigma_max, scale), abs_floor). The optional scale lets
 * callers judge a matrix against the size of the operator it was derived
 * from, so rounding noise in a theoretically zero matrix is not taken as rank.
 */
struct RankPolicy {
    double rel_tol = 1e-9;
    double abs_floor = 1e-13;

    /// Throws Error(InvalidArgument) unless 0 < rel_tol < 1 and abs_floor > 0.
    void validate() const;

    [[nodiscard]] double threshold(double sigma_max, double scale = 0.0) const noexcept;
};

/**
 * @brief Linear subspace of R^n held by an orthonormal basis.
 *
 * The zero subspace has a basis with no columns. Two subspaces are equal iff
 * they have the same rank and all principal angles vanish; bases are never
 * compared directly.
 */
class Subspace {
public:
    Subspace() = default;

    /// `basis` must have orthonormal columns (checked to 1e-10).
    Subspace(Matrix basis, double tol_used);

    static Subspace zero(Index ambient_dim);
    static Subspace whole(Index ambient_dim);

    /// Orthonormalizes the column span of `vectors` under `policy`.
    static Subspace span_of(const Matrix& vectors, const RankPolicy& policy);

    [[nodiscard]] Index ambient_dim() const noexcept { return basis_.rows(); }
    [[nodiscard]] Index rank() const noexcept { return basis_.cols(); }
    [[nodiscard]] bool is_zero() const noexcept { return basis_.cols() == 0; }
    [[nodiscard]] bool is_whole() const noexcept { return basis_.cols() == basis_.rows(); }
    [[nodiscard]] const Matrix& basis() const noexcept { return basis_; }
    [[nodiscard]] double tol_used() const noexcept { return tol_used_; }

private:
    Matrix basis_;
    double tol_used_ = 0.0;
};

[[nodiscard]] Subspace image(const Matrix& m, const RankPolicy& policy, double scale = 0.0);
[[nodiscard]] Subspace kernel_perp(const Matrix& m, const RankPolicy& policy, double scale = 0.0);
[[nodiscard]] Subspace kernel(const Matrix& m, const RankPolicy& policy, double scale = 0.0);
[[nodiscard]] Subspace complement(const Subspace& s);
[[nodiscard]] Matrix projector(const Subspace& s);
[[nodiscard]] Matrix pinv(const Matrix& m, const RankPolicy& policy, double scale = 0.0);
[[nodiscard]] Index rank(const Matrix& m, const RankPolicy& policy, double scale = 0.0);

/// Orthogonal sum of mutually orthogonal (or merely independent) parts.
[[nodiscard]] Subspace sum(std::span<const Subspace> parts, const RankPolicy& policy);

/// Angles in [0, pi/2], ascending, min(rank1, rank2) of them.
[[nodiscard]] std::vector<double> principal_angles(const Subspace& a, const Subspace& b);

/// Largest principal angle when ranks agree, pi/2 otherwise (0 for two zero spaces).
[[nodiscard]] double subspace_gap(const Subspace& a, const Subspace& b);

[[nodiscard]] bool same_subspace(const Subspace& a, const Subspace& b, double angle_tol = 1e-8);

struct DirectSumReport {
    bool is_direct_sum = false;
    Index rank_sum = 0;
    Index ambient_dim = 0;
    Index joint_rank = 0;
    /// Smallest singular value of the concatenated bases (1 for an orthogonal sum).
    double min_singular = 0.0;
    /// pairwise_angles[i][j] for i < j: principal angles between parts i and j.
    std::vector<std::vector<std::vector<double>>> pairwise_angles;
};

/// True iff the ranks add up to the ambient dimension and the parts are independent.
[[nodiscard]] DirectSumReport direct_sum_check(std::span<const Subspace> parts,
                                               const RankPolicy& policy);

/**
 * @brief Canonical orthonormal basis of a subspace.
 *
 * Gram-Schmidt applied to the reduced row echelon form of the projector, then
 * each column flipped so its first nonzero entry is positive. Depends only on
 * the subspace, which makes it suitable for golden files.
 */
[[nodiscard]] Matrix canonical_basis(const Subspace& s, double tol = 1e-8);

/// Flips each column so its first entry with |x| > tol is positive.
void apply_sign_convention(Matrix& columns, double tol = 1e-12);

}  // namespace hcoint
