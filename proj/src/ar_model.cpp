#include "hcoint/ar_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "hcoint/error.hpp"

namespace hcoint {

namespace {

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite())
        throw Error(ErrorCode::InvalidArgument, std::string(what) + ": non-finite entry");
}

double binomial(Index n, Index k) {
    double r = 1.0;
    for (Index i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

ArModel::ArModel(std::vector<Matrix> coeffs, Matrix noise_cov)
    : coeffs_(std::move(coeffs)), noise_cov_(std::move(noise_cov)) {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "ar model: order must be >= 1");
    p_ = coeffs_.front().rows();
    if (p_ == 0) throw Error(ErrorCode::InvalidArgument, "ar model: dimension must be >= 1");
    for (const auto& a : coeffs_) {
        if (a.rows() != p_ || a.cols() != p_)
            throw Error(ErrorCode::InvalidArgument, "ar model: coefficients must be p x p");
        require_finite(a, "ar model coefficient");
    }
    if (noise_cov_.rows() != p_ || noise_cov_.cols() != p_)
        throw Error(ErrorCode::InvalidArgument, "ar model: noise_cov must be p x p");
    require_finite(noise_cov_, "noise_cov");
    if ((noise_cov_ - noise_cov_.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw Error(ErrorCode::InvalidArgument, "ar model: noise_cov is not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(noise_cov_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw Error(ErrorCode::InvalidArgument, "ar model: noise_cov is not positive semidefinite");
}

ArModel::ArModel(std::vector<Matrix> coeffs)
    : ArModel(coeffs, Matrix::Identity(coeffs.empty() ? 0 : coeffs.front().rows(),
                                       coeffs.empty() ? 0 : coeffs.front().rows())) {}

TaylorPencil::TaylorPencil(std::vector<Matrix> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "pencil: no coefficients");
    const Index p = coeffs_.front().rows();
    for (const auto& a : coeffs_)
        if (a.rows() != p || a.cols() != p)
            throw Error(ErrorCode::InvalidArgument, "pencil: coefficients must be p x p");
}

Matrix TaylorPencil::coeff(Index n) const {
    if (n >= 0 && n <= degree()) return coeffs_[static_cast<std::size_t>(n)];
    return Matrix::Zero(dim(), dim());
}

double TaylorPencil::scale() const {
    double s = 0.0;
    for (const auto& a : coeffs_) {
        Eigen::JacobiSVD<Matrix> svd(a);
        s = std::max(s, svd.singularValues()(0));
    }
    return s;
}

TaylorPencil taylor_at_one(const ArModel& m) {
    const Index p = m.dim();
    const Index k = m.order();
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(k + 1));
    Matrix a0 = Matrix::Identity(p, p);
    for (const auto& a : m.coeffs()) a0 -= a;
    out.push_back(std::move(a0));
    for (Index n = 1; n <= k; ++n) {
        Matrix an = Matrix::Zero(p, p);
        for (Index h = 0; h <= k - n; ++h) an += binomial(n + h, n) * m.coeff(n + h);
        out.push_back((n % 2 == 1 ? 1.0 : -1.0) * an);
    }
    return TaylorPencil(std::move(out));
}

CMatrix evaluate(const ArModel& m, Complex z) {
    // Horner on sum_h A_h z^h, then I - z * (...)
    const Index p = m.dim();
    CMatrix acc = CMatrix::Zero(p, p);
    for (Index h = m.order(); h >= 1; --h) acc = acc * z + m.coeff(h).cast<Complex>();
    return CMatrix::Identity(p, p) - acc * z;
}

CMatrix evaluate(const TaylorPencil& pencil, Complex z) {
    const Complex w = 1.0 - z;
    CMatrix acc = CMatrix::Zero(pencil.dim(), pencil.dim());
    for (Index n = pencil.degree(); n >= 0; --n) acc = acc * w + pencil.coeff(n).cast<Complex>();
    return acc;
}

Matrix companion(const ArModel& m) {
    const Index p = m.dim();
    const Index k = m.order();
    if (k == 1) return m.coeff(1);
    Matrix c = Matrix::Zero(p * k, p * k);
    for (Index h = 1; h <= k; ++h) c.block(0, (h - 1) * p, p, p) = m.coeff(h);
    c.block(p, 0, p * (k - 1), p * (k - 1)).setIdentity();
    return c;
}

RootDiagnostics root_diagnostics(const ArModel& m, const RankPolicy& policy, const RootOptions& opt) {
    RootDiagnostics d;
    d.options = opt;
    Eigen::EigenSolver<Matrix> es(companion(m), false);
    const auto& ev = es.eigenvalues();
    d.eigenvalues.assign(ev.data(), ev.data() + ev.size());

    // Candidates near 1, nearest first; the cluster is the largest prefix whose
    // centroid sits within unit_tol of 1.
    std::vector<std::size_t> order(d.eigenvalues.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(d.eigenvalues[a] - 1.0) < std::abs(d.eigenvalues[b] - 1.0);
    });
    std::size_t candidates = 0;
    while (candidates < order.size() &&
           std::abs(d.eigenvalues[order[candidates]] - 1.0) < opt.cluster_radius)
        ++candidates;
    std::size_t cluster = 0;
    Complex running = 0.0;
    for (std::size_t n = 1; n <= candidates; ++n) {
        running += d.eigenvalues[order[n - 1]];
        const double err = std::abs(running / static_cast<double>(n) - 1.0);
        if (err < opt.unit_tol) {
            cluster = n;
            d.cluster_center_error = err;
        }
    }
    d.unit_cluster_size = static_cast<Index>(cluster);
    d.has_unit_root = cluster > 0;

    d.root_distance = std::numeric_limits<double>::infinity();
    for (std::size_t n = cluster; n < order.size(); ++n) {
        const Complex lam = d.eigenvalues[order[n]];
        const double mod = std::abs(lam);
        d.max_other_modulus = std::max(d.max_other_modulus, mod);
        if (mod > 1.0 + opt.stability_margin)
            d.explosive_eigenvalues.push_back(lam);
        else if (mod >= 1.0 - opt.stability_margin)
            d.boundary_eigenvalues.push_back(lam);
        if (mod > 0.0) d.root_distance = std::min(d.root_distance, std::abs(1.0 - 1.0 / lam));
    }
    d.stability_gap = 1.0 - d.max_other_modulus;

    const TaylorPencil pencil = taylor_at_one(m);
    const Matrix& a0 = pencil.coeffs().front();
    const double scale = std::max(1.0, pencil.scale());
    d.dim_ker_a0 = kernel(a0, policy, scale).rank();
    d.dim_coker_a0 = m.dim() - image(a0, policy, scale).rank();
    d.a0_vanishes = d.dim_ker_a0 == m.dim();
    return d;
}

std::string_view to_string(FiniteTypeReason r) noexcept {
    switch (r) {
        case FiniteTypeReason::None: return "None";
        case FiniteTypeReason::NoUnitRoot: return "NoUnitRoot";
        case FiniteTypeReason::ExplosiveOrBoundaryRoot: return "ExplosiveOrBoundaryRoot";
        case FiniteTypeReason::SeasonalUnitRoot: return "SeasonalUnitRoot";
    }
    return "Unknown";
}

FiniteTypeVerdict assert_finite_type(const RootDiagnostics& d) {
    FiniteTypeVerdict v;
    if (!d.boundary_eigenvalues.empty()) {
        v.reason = FiniteTypeReason::SeasonalUnitRoot;
        v.detail = std::to_string(d.boundary_eigenvalues.size()) +
                   " eigenvalue(s) on the unit circle away from 1";
        return v;
    }
    if (!d.explosive_eigenvalues.empty()) {
        v.reason = FiniteTypeReason::ExplosiveOrBoundaryRoot;
        v.detail = std::to_string(d.explosive_eigenvalues.size()) + " eigenvalue(s) outside the unit circle";
        return v;
    }
    if (!d.has_unit_root || d.dim_ker_a0 == 0) {
        v.reason = FiniteTypeReason::NoUnitRoot;
        v.detail = d.has_unit_root ? "eigenvalue cluster at 1 but A(1) is numerically invertible"
                                   : "no eigenvalue at 1; A(1) is invertible";
        return v;
    }
    v.pass = true;
    v.detail = "unit root of finite type at z = 1";
    return v;
}

double default_laurent_radius(const RootDiagnostics& d) {
    return std::min(0.1, d.root_distance / 3.0);
}

double default_tail_radius(const RootDiagnostics& d) {
    if (d.max_other_modulus <= 0.0) return 2.0;
    const double nearest = 1.0 / d.max_other_modulus;
    return std::min(2.0, 1.0 + 0.5 * (nearest - 1.0));
}

}  // namespace hcoint
