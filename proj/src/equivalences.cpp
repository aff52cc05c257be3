#include "hcoint/equivalences.hpp"

#include <algorithm>

#include "hcoint/error.hpp"

namespace hcoint {

namespace {

double norm2(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

EquivalenceCheck angle_check(std::string name, const Subspace& a, const Subspace& b, double tol,
                             bool require_nonzero = false) {
    EquivalenceCheck c{std::move(name), false, subspace_gap(a, b)};
    c.holds = c.residual < tol && !(require_nonzero && a.is_zero());
    return c;
}

}  // namespace

double PoleEquivalenceReport::max_residual() const {
    double r = 0.0;
    for (const auto& c : checks) r = std::max(r, c.residual);
    return r;
}

PoleEquivalenceReport verify_pole_equivalences(const Decomposition& dec, const LaurentSeries& series,
                                               const RankPolicy& policy, double tol) {
    if (series.d != dec.order() || series.coeffs.empty())
        throw Error(ErrorCode::InvalidArgument, "series does not match the decomposition order");
    const Index d = dec.order();
    const Index p = dec.dim();
    PoleEquivalenceReport rep;

    const Matrix& c0 = series.coeffs.front();
    EquivalenceCheck pole{"pole_order", false, series.residual};
    pole.holds = series.residual < tol && norm2(c0) > tol;
    rep.checks.push_back(pole);

    const Subspace zd = dec.zeta_sum(d);
    const Subspace td = dec.tau_sum(d);
    rep.checks.push_back(angle_check("zeta_d_is_Z_d_perp", dec.step(d).zeta, complement(zd), tol, true));
    rep.checks.push_back(angle_check("ker_C0_is_Z_d", kernel(c0, policy), zd, tol));
    rep.checks.push_back(angle_check("tau_d_is_T_d_perp", dec.step(d).tau, complement(td), tol, true));
    rep.checks.push_back(angle_check("im_C0_is_tau_d", image(c0, policy), dec.attractor(), tol));

    std::vector<Subspace> zetas, taus;
    for (const auto& st : dec.steps()) {
        zetas.push_back(st.zeta);
        taus.push_back(st.tau);
    }
    rep.zeta_chain = direct_sum_check(zetas, policy);
    rep.tau_chain = direct_sum_check(taus, policy);
    const bool zeta_ok = rep.zeta_chain.is_direct_sum && rep.zeta_chain.joint_rank == p;
    const bool tau_ok = rep.tau_chain.is_direct_sum && rep.tau_chain.joint_rank == p;
    rep.checks.push_back({"zeta_chain_complete", zeta_ok, 1.0 - rep.zeta_chain.min_singular});
    rep.checks.push_back({"tau_chain_complete", tau_ok, 1.0 - rep.tau_chain.min_singular});

    rep.all_hold = std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.holds; });
    return rep;
}

std::vector<ChainResidual> chain_identity_residuals(const Decomposition& dec, const LaurentSeries& series) {
    const Index d = dec.order();
    const Index p = dec.dim();
    if (static_cast<Index>(series.coeffs.size()) <= d)
        throw Error(ErrorCode::InvalidArgument, "series needs coefficients C_0..C_d");
    const Matrix id = Matrix::Identity(p, p);
    auto c = [&](Index n) -> const Matrix& { return series.coeffs[static_cast<std::size_t>(n)]; };

    std::vector<ChainResidual> out;
    for (Index h = 0; h <= d; ++h) {
        const StepRecord& st = dec.step(h);
        const Matrix pz = id - projector(dec.zeta_sum(h));
        const Matrix pt = id - projector(dec.tau_sum(h));
        for (Index n = 0; n <= d - h; ++n) {
            Matrix left = st.s * c(n);
            Matrix right = c(n) * st.s;
            for (Index k = 1; k <= n; ++k) {
                const Matrix& a = st.a_next[static_cast<std::size_t>(k - 1)];
                left += pz * a * c(n - k);
                right += c(n - k) * a * pt;
            }
            if (n + h == d) {
                left -= pz;
                right -= pt;
            }
            out.push_back({h, n, norm2(left), norm2(right)});
        }
    }
    return out;
}

std::vector<double> cancellation_residuals(const Decomposition& dec, const LaurentSeries& series, Index h,
                                           const Vector& v) {
    const Index d = dec.order();
    if (h < 0 || h >= d) throw Error(ErrorCode::IndexOutOfRange, "cancellation needs 0 <= h < d");
    if (static_cast<Index>(series.coeffs.size()) < d - h)
        throw Error(ErrorCode::InvalidArgument, "series too short for the cancellation check");
    const StepRecord& st = dec.step(h);
    const Matrix pt = projector(st.tau);
    std::vector<double> out;
    for (Index j = 0; j < d - h; ++j) {
        Matrix g = pt * series.coeffs[static_cast<std::size_t>(j)];
        for (Index n = 1; n <= std::min(j, d - h - 1); ++n)
            g += st.s_pinv * st.a_next[static_cast<std::size_t>(n - 1)] *
                 series.coeffs[static_cast<std::size_t>(j - n)];
        out.push_back((v.transpose() * g).norm());
    }
    return out;
}

}  // namespace hcoint
