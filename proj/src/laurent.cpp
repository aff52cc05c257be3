#include "hcoint/laurent.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <cmath>
#include <numbers>
#include <thread>

#include "hcoint/error.hpp"

namespace hcoint {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

// Contour values near a pole of order d lose about d digits to the inversion,
// so the Taylor contour runs in extended precision.
using LComplex = std::complex<long double>;
using LCMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;

std::string format_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads; fn writes to slot i only.
template <class Fn>
void for_each_node(Index n, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (jobs == 1) {
        for (Index i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            for (Index i = t; i < n; i += jobs) fn(i);
        });
}

template <class M>
M checked_inverse(const M& m) {
    Eigen::PartialPivLU<M> lu(m);
    if (!(lu.rcond() > 1e-14))
        throw Error(ErrorCode::SingularOnCircle, "A(z) is numerically singular on the contour");
    return lu.inverse();
}

double norm2(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double norm2(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

/// sum_{k} A_k C_{n-k} (left) or C_{n-k} A_k (right), minus delta_{n,d} I.
Matrix equation(const TaylorPencil& pencil, const LaurentSeries& s, Index n, bool left) {
    const Index p = pencil.dim();
    Matrix acc = Matrix::Zero(p, p);
    for (Index k = 0; k <= std::min(n, pencil.degree()); ++k) {
        const Matrix& c = s.coeffs[static_cast<std::size_t>(n - k)];
        acc += left ? Matrix(pencil.coeff(k) * c) : Matrix(c * pencil.coeff(k));
    }
    if (n == s.d) acc -= Matrix::Identity(p, p);
    return acc;
}

/// Equations checked by the certificate: 0..d+2 (high-order coefficients lose
/// relative accuracy as (R/r)^n, so later equations are not a fair test).
Index certificate_span(const LaurentSeries& s) {
    return std::min<Index>(static_cast<Index>(s.coeffs.size()) - 1, s.d + 2);
}

}  // namespace

LaurentSeries laurent_coeffs(const TaylorPencil& pencil, Index d, const LaurentOptions& opt) {
    if (d < 0) throw Error(ErrorCode::InvalidArgument, "laurent: pole order must be >= 0");
    if (!(opt.radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "laurent: radius must be positive");
    if (opt.nodes < 8) throw Error(ErrorCode::InvalidArgument, "laurent: need at least 8 nodes");
    const Index count = opt.count.value_or(d + 4);
    if (count < 0 || count >= opt.nodes)
        throw Error(ErrorCode::InvalidArgument, "laurent: coefficient count must be below node count");
    const Index p = pencil.dim();
    const Index m = opt.nodes;

    // F(w_j) = w_j^d B(w_j)^{-1}, B(w) = sum_n A_n w^n.
    std::vector<LCMatrix> pencil_l;
    for (const Matrix& a : pencil.coeffs()) pencil_l.push_back(a.cast<long double>().cast<LComplex>());
    std::vector<LCMatrix> values(static_cast<std::size_t>(m));
    for_each_node(m, opt.jobs, [&](Index j) {
        const LComplex w = std::polar(static_cast<long double>(opt.radius),
                                      kTwoPiL * static_cast<long double>(j) / static_cast<long double>(m));
        LCMatrix b = LCMatrix::Zero(p, p);
        for (auto it = pencil_l.rbegin(); it != pencil_l.rend(); ++it) b = b * w + *it;
        values[static_cast<std::size_t>(j)] = std::pow(w, static_cast<int>(d)) * checked_inverse(b);
    });

    LaurentSeries s;
    s.d = d;
    s.radius = opt.radius;
    s.nodes = m;
    for (Index n = 0; n <= count; ++n) {
        LCMatrix acc = LCMatrix::Zero(p, p);
        const long double scale = std::pow(static_cast<long double>(opt.radius), -static_cast<long double>(n));
        for (Index j = 0; j < m; ++j) {
            // w_j^{-n} = r^{-n} e^{-2 pi i j n / M}; exact index arithmetic for the phase.
            const Index phase = (j * n) % m;
            const LComplex twiddle =
                std::polar(scale, -kTwoPiL * static_cast<long double>(phase) / static_cast<long double>(m));
            acc += values[static_cast<std::size_t>(j)] * twiddle;
        }
        acc /= static_cast<long double>(m);
        const Matrix re = acc.real().cast<double>();
        if (n <= d + 2)
            s.max_imag = std::max(s.max_imag, static_cast<double>(acc.imag().cwiseAbs().maxCoeff()) /
                                                  std::max(1.0, re.cwiseAbs().maxCoeff()));
        s.coeffs.push_back(re);
    }

    const IdentityResiduals res = identity_residuals(pencil, s);
    s.residual = res.max_equation(certificate_span(s));
    if (opt.enforce_certificate) {
        if (s.max_imag > opt.imag_tol)
            throw Error(ErrorCode::RadiusTooLarge, "laurent: imaginary residue " + format_sci(s.max_imag));
        if (!(s.residual < opt.certificate_tol))
            throw Error(ErrorCode::RadiusTooLarge, "laurent: identity residual " + format_sci(s.residual));
        if (norm2(s.coeffs.front()) < 1e-8)
            throw Error(ErrorCode::RadiusTooLarge, "laurent: C_0 vanishes, pole order is lower than d");
    }
    return s;
}

double IdentityResiduals::max_equation(Index upto) const {
    double r = 0.0;
    for (Index n = 0; n <= upto && n < static_cast<Index>(left.size()); ++n)
        r = std::max({r, left[static_cast<std::size_t>(n)], right[static_cast<std::size_t>(n)]});
    return r;
}

double IdentityResiduals::max_pointwise() const {
    return pointwise.empty() ? 0.0 : *std::max_element(pointwise.begin(), pointwise.end());
}

IdentityResiduals identity_residuals(const TaylorPencil& pencil, const LaurentSeries& s) {
    IdentityResiduals r;
    const Index n_max = static_cast<Index>(s.coeffs.size()) - 1;
    for (Index n = 0; n <= n_max; ++n) {
        r.left.push_back(norm2(equation(pencil, s, n, true)));
        r.right.push_back(norm2(equation(pencil, s, n, false)));
    }
    const Index p = pencil.dim();
    for (int k = 0; k < 8; ++k) {
        const Complex w = std::polar(0.5 * s.radius, kTwoPi * (k + 0.5) / 8.0);
        CMatrix inv = CMatrix::Zero(p, p);
        for (Index n = n_max; n >= 0; --n) inv = inv * w + s.coeffs[static_cast<std::size_t>(n)].cast<Complex>();
        inv *= std::pow(w, -static_cast<int>(s.d));
        r.pointwise.push_back(norm2(CMatrix(evaluate(pencil, 1.0 - w) * inv - CMatrix::Identity(p, p))));
    }
    return r;
}

std::vector<Matrix> linear_process_weights(const TaylorPencil& pencil, const LaurentSeries& s,
                                           const TailOptions& opt) {
    if (!(opt.radius > 1.0))
        throw Error(ErrorCode::InvalidArgument, "tail: contour radius must exceed 1");
    if (opt.terms < 0 || opt.terms > opt.nodes / 2)
        throw Error(ErrorCode::InvalidArgument, "tail: terms must lie in [0, nodes / 2]");
    if (static_cast<Index>(s.coeffs.size()) < s.d)
        throw Error(ErrorCode::InvalidArgument, "tail: series lacks principal-part coefficients");
    const Index p = pencil.dim();
    const Index m = opt.nodes;

    std::vector<CMatrix> values(static_cast<std::size_t>(m));
    for_each_node(m, opt.jobs, [&](Index j) {
        const Complex z = std::polar(opt.radius, kTwoPi * static_cast<double>(j) / static_cast<double>(m));
        const Complex w = 1.0 - z;
        CMatrix principal = CMatrix::Zero(p, p);
        for (Index n = 0; n < s.d; ++n)
            principal += s.coeffs[static_cast<std::size_t>(n)].cast<Complex>() *
                         std::pow(w, static_cast<int>(n - s.d));
        values[static_cast<std::size_t>(j)] = checked_inverse(evaluate(pencil, z)) - principal;
    });

    std::vector<Matrix> psi;
    for (Index k = 0; k < opt.terms; ++k) {
        CMatrix acc = CMatrix::Zero(p, p);
        for (Index j = 0; j < m; ++j) {
            const Index phase = (j * k) % m;
            acc += values[static_cast<std::size_t>(j)] *
                   std::polar(std::pow(opt.radius, -static_cast<double>(k)),
                              -kTwoPi * static_cast<double>(phase) / static_cast<double>(m));
        }
        psi.push_back(acc.real() / static_cast<double>(m));
    }
    return psi;
}

CommonTrendsOperators common_trends(const TaylorPencil& pencil, const LaurentSeries& s,
                                    const Decomposition& dec, const TailOptions& tail) {
    if (s.d != dec.order())
        throw Error(ErrorCode::AttractorMismatch, "series pole order differs from the decomposition");
    if (static_cast<Index>(s.coeffs.size()) < s.d)
        throw Error(ErrorCode::InvalidArgument, "series lacks principal-part coefficients");
    const RankPolicy& policy = dec.policy();
    const Matrix& c0 = s.coeffs.front();
    const Subspace img = image(c0, policy);
    const double gap = subspace_gap(img, dec.attractor());
    if (!(gap < 1e-6))
        throw Error(ErrorCode::AttractorMismatch,
                    "Im C_0 differs from the attractor (angle " + std::to_string(gap) + ")");
    const Subspace zd = dec.zeta_sum(dec.order());
    if (!zd.is_zero()) {
        const double leak = norm2(Matrix(c0 * zd.basis())) / std::max(1e-300, norm2(c0));
        if (!(leak < 1e-6))
            throw Error(ErrorCode::AttractorMismatch, "Ker C_0 does not contain Z_d");
    }

    CommonTrendsOperators ct;
    ct.d = s.d;
    ct.loadings.assign(s.coeffs.begin(), s.coeffs.begin() + s.d);
    ct.tail = linear_process_weights(pencil, s, tail);
    ct.tail_radius = tail.radius;
    return ct;
}

}  // namespace hcoint
