#include "hcoint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hcoint/error.hpp"

namespace hcoint {

namespace {

using Svd = Eigen::JacobiSVD<Matrix>;

Index count_above(const Vector& sigma, double thr) {
    Index r = 0;
    while (r < sigma.size() && sigma(r) > thr) ++r;
    return r;
}

double largest(const Vector& sigma) { return sigma.size() > 0 ? sigma(0) : 0.0; }

}  // namespace

void RankPolicy::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw Error(ErrorCode::InvalidArgument, "rank policy: rel_tol must lie in (0, 1)");
    if (!(abs_floor > 0.0))
        throw Error(ErrorCode::InvalidArgument, "rank policy: abs_floor must be positive");
}

double RankPolicy::threshold(double sigma_max, double scale) const noexcept {
    return std::max(rel_tol * std::max(sigma_max, scale), abs_floor);
}

Subspace::Subspace(Matrix basis, double tol_used)
    : basis_(std::move(basis)), tol_used_(tol_used) {
    if (basis_.cols() > basis_.rows())
        throw Error(ErrorCode::InvalidArgument, "subspace: more basis vectors than dimensions");
    if (basis_.cols() > 0) {
        const Matrix gram = basis_.transpose() * basis_;
        const double err = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
        if (!(err < 1e-10))
            throw Error(ErrorCode::InvalidArgument, "subspace: basis is not orthonormal");
    }
}

Subspace Subspace::zero(Index ambient_dim) { return Subspace(Matrix(ambient_dim, 0), 0.0); }

Subspace Subspace::whole(Index ambient_dim) {
    return Subspace(Matrix::Identity(ambient_dim, ambient_dim), 0.0);
}

Subspace Subspace::span_of(const Matrix& vectors, const RankPolicy& policy) {
    return image(vectors, policy);
}

Subspace image(const Matrix& m, const RankPolicy& policy, double scale) {
    if (m.cols() == 0 || m.rows() == 0) return Subspace::zero(m.rows());
    Svd svd(m, Eigen::ComputeThinU);
    const double thr = policy.threshold(largest(svd.singularValues()), scale);
    const Index r = count_above(svd.singularValues(), thr);
    return Subspace(svd.matrixU().leftCols(r), thr);
}

Subspace kernel_perp(const Matrix& m, const RankPolicy& policy, double scale) {
    if (m.cols() == 0 || m.rows() == 0) return Subspace::zero(m.cols());
    Svd svd(m, Eigen::ComputeFullV);
    const double thr = policy.threshold(largest(svd.singularValues()), scale);
    const Index r = count_above(svd.singularValues(), thr);
    return Subspace(svd.matrixV().leftCols(r), thr);
}

Subspace kernel(const Matrix& m, const RankPolicy& policy, double scale) {
    if (m.rows() == 0) return Subspace::whole(m.cols());
    Svd svd(m, Eigen::ComputeFullV);
    const double thr = policy.threshold(largest(svd.singularValues()), scale);
    const Index r = count_above(svd.singularValues(), thr);
    return Subspace(svd.matrixV().rightCols(m.cols() - r), thr);
}

Subspace complement(const Subspace& s) {
    const Index n = s.ambient_dim();
    if (s.is_zero()) return Subspace::whole(n);
    if (s.is_whole()) return Subspace::zero(n);
    Svd svd(s.basis(), Eigen::ComputeFullU);
    return Subspace(svd.matrixU().rightCols(n - s.rank()), s.tol_used());
}

Matrix projector(const Subspace& s) { return s.basis() * s.basis().transpose(); }

Matrix pinv(const Matrix& m, const RankPolicy& policy, double scale) {
    if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
    Svd svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    const double thr = policy.threshold(largest(sigma), scale);
    const Index r = count_above(sigma, thr);
    const Matrix u = svd.matrixU().leftCols(r);
    const Matrix v = svd.matrixV().leftCols(r);
    return v * sigma.head(r).cwiseInverse().asDiagonal() * u.transpose();
}

Index rank(const Matrix& m, const RankPolicy& policy, double scale) {
    if (m.size() == 0) return 0;
    Svd svd(m);
    return count_above(svd.singularValues(), policy.threshold(largest(svd.singularValues()), scale));
}

Subspace sum(std::span<const Subspace> parts, const RankPolicy& policy) {
    if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "sum: no parts");
    const Index n = parts.front().ambient_dim();
    Index cols = 0;
    for (const auto& p : parts) {
        if (p.ambient_dim() != n) throw Error(ErrorCode::InvalidArgument, "sum: ambient mismatch");
        cols += p.rank();
    }
    if (cols == 0) return Subspace::zero(n);
    Matrix all(n, cols);
    Index at = 0;
    for (const auto& p : parts) {
        all.middleCols(at, p.rank()) = p.basis();
        at += p.rank();
    }
    // Orthonormal parts have unit singular values; judge rank against 1.
    return image(all, policy, 1.0);
}

std::vector<double> principal_angles(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw Error(ErrorCode::InvalidArgument, "principal_angles: ambient mismatch");
    if (a.is_zero() || b.is_zero()) return {};
    const Subspace& big = a.rank() >= b.rank() ? a : b;
    const Subspace& small = a.rank() >= b.rank() ? b : a;
    // Cosines lose precision near 1, so small angles come from the sines instead.
    const Vector cosines = Svd(big.basis().transpose() * small.basis()).singularValues();
    const Matrix resid = small.basis() - big.basis() * (big.basis().transpose() * small.basis());
    const Vector sines = Svd(resid).singularValues();  // descending
    const Index r = small.rank();
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(r));
    for (Index i = 0; i < r; ++i) {
        const double c = std::clamp(cosines(i), 0.0, 1.0);
        const double s = std::clamp(sines(r - 1 - i), 0.0, 1.0);
        angles.push_back(c > 0.7071 ? std::asin(s) : std::acos(c));
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

double subspace_gap(const Subspace& a, const Subspace& b) {
    if (a.rank() != b.rank()) return std::numbers::pi / 2;
    if (a.is_zero()) return 0.0;
    // sin of the largest angle is ||(I - P_a) B||_2; robust for tiny angles.
    const Matrix resid = b.basis() - a.basis() * (a.basis().transpose() * b.basis());
    Svd svd(resid);
    const double s = std::clamp(largest(svd.singularValues()), 0.0, 1.0);
    return std::asin(s);
}

bool same_subspace(const Subspace& a, const Subspace& b, double angle_tol) {
    return a.rank() == b.rank() && subspace_gap(a, b) < angle_tol;
}

DirectSumReport direct_sum_check(std::span<const Subspace> parts, const RankPolicy& policy) {
    DirectSumReport rep;
    if (parts.empty()) return rep;
    rep.ambient_dim = parts.front().ambient_dim();
    for (const auto& p : parts) rep.rank_sum += p.rank();
    rep.pairwise_angles.assign(parts.size(), std::vector<std::vector<double>>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            rep.pairwise_angles[i][j] = principal_angles(parts[i], parts[j]);

    if (rep.rank_sum == 0) {
        rep.min_singular = 0.0;
        rep.is_direct_sum = rep.ambient_dim == 0;
        return rep;
    }
    Matrix all(rep.ambient_dim, rep.rank_sum);
    Index at = 0;
    for (const auto& p : parts) {
        all.middleCols(at, p.rank()) = p.basis();
        at += p.rank();
    }
    Svd svd(all);
    const Vector& sigma = svd.singularValues();
    rep.min_singular = sigma(sigma.size() - 1);
    rep.joint_rank = count_above(sigma, policy.threshold(largest(sigma), 1.0));
    rep.is_direct_sum = rep.rank_sum == rep.ambient_dim && rep.joint_rank == rep.rank_sum;
    return rep;
}

void apply_sign_convention(Matrix& columns, double tol) {
    for (Index j = 0; j < columns.cols(); ++j) {
        for (Index i = 0; i < columns.rows(); ++i) {
            if (std::abs(columns(i, j)) > tol) {
                if (columns(i, j) < 0) columns.col(j) *= -1.0;
                break;
            }
        }
    }
}

Matrix canonical_basis(const Subspace& s, double tol) {
    const Index n = s.ambient_dim();
    const Index r = s.rank();
    if (r == 0) return Matrix(n, 0);

    // Reduced row echelon form of the projector with partial pivoting.
    Matrix a = projector(s);
    Index row = 0;
    for (Index col = 0; col < n && row < r; ++col) {
        Index piv = row;
        for (Index i = row + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) <= tol) continue;
        a.row(row).swap(a.row(piv));
        a.row(row) /= a(row, col);
        for (Index i = 0; i < n; ++i)
            if (i != row) a.row(i) -= a(i, col) * a.row(row);
        ++row;
    }

    // Modified Gram-Schmidt over the echelon rows, in order.
    Matrix q(n, r);
    for (Index k = 0; k < r; ++k) {
        Vector v = a.row(k).transpose();
        for (int pass = 0; pass < 2; ++pass)
            for (Index j = 0; j < k; ++j) v -= q.col(j).dot(v) * q.col(j);
        q.col(k) = v.normalized();
    }
    apply_sign_convention(q);
    return q;
}

}  // namespace hcoint
