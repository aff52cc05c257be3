#include "hcoint/decomposition.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "hcoint/error.hpp"

namespace hcoint {

namespace {

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Subspace extend(const Subspace& acc, const Subspace& part) {
    if (part.is_zero()) return acc;
    if (acc.is_zero()) return part;
    Matrix all(acc.ambient_dim(), acc.rank() + part.rank());
    all << acc.basis(), part.basis();
    // Parts are orthogonal by construction; re-orthonormalize to absorb rounding.
    Eigen::HouseholderQR<Matrix> qr(all);
    Matrix q = qr.householderQ() * Matrix::Identity(all.rows(), all.cols());
    return Subspace(std::move(q), std::max(acc.tol_used(), part.tol_used()));
}

}  // namespace

Decomposition::Decomposition(Index d, std::vector<StepRecord> steps, RankPolicy policy)
    : d_(d), steps_(std::move(steps)), policy_(policy) {
    if (steps_.size() != static_cast<std::size_t>(d_ + 1))
        throw Error(ErrorCode::InvalidArgument, "decomposition: need d + 1 steps");
}

const StepRecord& Decomposition::step(Index h) const {
    if (h < 0 || h > d_) throw Error(ErrorCode::IndexOutOfRange, "step index out of range");
    return steps_[static_cast<std::size_t>(h)];
}

std::vector<Index> Decomposition::dims() const {
    std::vector<Index> out;
    for (const auto& s : steps_) out.push_back(s.tau.rank());
    return out;
}

Subspace Decomposition::zeta_sum(Index h) const {
    Subspace acc = Subspace::zero(dim());
    for (Index j = 0; j < h; ++j) acc = extend(acc, step(j).zeta);
    return acc;
}

Subspace Decomposition::tau_sum(Index h) const {
    Subspace acc = Subspace::zero(dim());
    for (Index j = 0; j < h; ++j) acc = extend(acc, step(j).tau);
    return acc;
}

Decomposition decompose(const TaylorPencil& pencil, const RankPolicy& policy) {
    policy.validate();
    const Index p = pencil.dim();
    const Index d_cap = std::max<Index>(1, p * pencil.degree());
    const Index ledger = d_cap + 1;
    const double pencil_scale = pencil.scale();

    std::vector<StepRecord> steps;
    Subspace z_acc = Subspace::zero(p);
    Subspace t_acc = Subspace::zero(p);

    for (Index h = 0;; ++h) {
        if (h > d_cap)
            throw Error(ErrorCode::DCapExceeded,
                        "recursion did not close within " + std::to_string(d_cap) + " steps");
        StepRecord rec;
        rec.h = h;

        // A_{h+1,n}; built before S_h since it needs S_0..S_{h-1} only.
        if (h == 0) {
            for (Index n = 1; n <= ledger; ++n) rec.a_next.push_back(pencil.coeff(n));
        } else {
            const auto& a_h = steps.back().a_next;  // A_{h,n}
            for (std::size_t n = 1; n < a_h.size(); ++n) {
                Matrix acc = Matrix::Zero(p, p);
                for (Index j = 0; j < h; ++j) {
                    const auto& sj = steps[static_cast<std::size_t>(j)];
                    acc += sj.s_pinv * sj.a_next[n - 1];
                }
                rec.a_next.push_back(a_h[n] - a_h[0] * acc);
            }
        }

        double scale = pencil_scale;
        if (h == 0) {
            rec.s = pencil.coeff(0);
        } else {
            const Matrix& a_h1 = steps.back().a_next.front();
            const Matrix pz = Matrix::Identity(p, p) - projector(z_acc);
            const Matrix pt = Matrix::Identity(p, p) - projector(t_acc);
            rec.s = pz * a_h1 * pt;
            scale = std::max(scale, spectral_norm(a_h1));
        }
        Eigen::JacobiSVD<Matrix> svd(rec.s);
        rec.threshold = policy.threshold(svd.singularValues()(0), scale);
        rec.zeta = image(rec.s, policy, scale);
        rec.tau = kernel_perp(rec.s, policy, scale);
        rec.s_pinv = pinv(rec.s, policy, scale);
        assert(rec.zeta.rank() == rec.tau.rank());
        assert(((rec.s_pinv * rec.s) - projector(rec.tau)).cwiseAbs().maxCoeff() < 1e-8);

        if (h == 0 && rec.tau.is_whole())
            throw Error(ErrorCode::NoUnitRoot, "A_0 is invertible: no unit root at z = 1");

        z_acc = extend(z_acc, rec.zeta);
        t_acc = extend(t_acc, rec.tau);
        steps.push_back(std::move(rec));
        if (t_acc.rank() == p) return Decomposition(h, std::move(steps), policy);
    }
}

std::vector<Vector> RelationTemplate::for_direction(const Vector& v) const {
    std::vector<Vector> out;
    for (const auto& c : poly_coeffs) out.emplace_back(c.transpose() * v);
    return out;
}

RelationTemplate relations(const Decomposition& dec, Index h, RelationVariant variant) {
    if (h < 0 || h > dec.order())
        throw Error(ErrorCode::IndexOutOfRange, "relation index outside 0..d");
    RelationTemplate rel;
    rel.h = h;
    rel.d = dec.order();
    const auto& st = dec.step(h);
    rel.space = st.tau;
    if (variant == RelationVariant::AttractorProjected) {
        if (dec.order() != 2 || h != 0)
            throw Error(ErrorCode::InvalidArgument, "projected relation is defined for d = 2, h = 0 only");
        rel.poly_coeffs.push_back(st.s_pinv * st.a_next.front() * projector(dec.attractor()));
        return rel;
    }
    for (Index n = 1; n <= dec.order() - h - 1; ++n)
        rel.poly_coeffs.push_back(st.s_pinv * st.a_next[static_cast<std::size_t>(n - 1)]);
    return rel;
}

Index jordan_oracle_ar1(const Matrix& a1, const RankPolicy& policy) {
    const Index p = a1.rows();
    const Matrix nil = a1 - Matrix::Identity(p, p);
    const double nscale = std::max(1.0, spectral_norm(nil));

    // Nullities of (A - I)^m grow until m reaches the largest Jordan block at 1.
    auto nullity = [&](Index m) {
        Matrix pw = Matrix::Identity(p, p);
        for (Index i = 0; i < m; ++i) pw = pw * nil;
        return p - rank(pw, policy, std::pow(nscale, static_cast<double>(m)));
    };
    Index prev = nullity(1);
    if (prev == 0) throw Error(ErrorCode::NoUnitEigenvalue, "1 is not an eigenvalue of A1");
    Index m = 1;
    while (m < p) {
        const Index next = nullity(m + 1);
        if (next == prev) break;
        prev = next;
        ++m;
    }

    // Restrict to the generalized eigenspace and read off the nilpotency index.
    Matrix pw = Matrix::Identity(p, p);
    for (Index i = 0; i < m; ++i) pw = pw * nil;
    const Subspace gen = kernel(pw, policy, std::pow(nscale, static_cast<double>(m)));
    const Matrix restricted = gen.basis().transpose() * nil * gen.basis();
    const double rscale = std::max(1.0, spectral_norm(restricted));
    Matrix r = Matrix::Identity(gen.rank(), gen.rank());
    for (Index k = 1; k <= gen.rank(); ++k) {
        r = r * restricted;
        if (rank(r, policy, std::pow(rscale, static_cast<double>(k))) == 0) return k;
    }
    return gen.rank();
}

std::string_view to_string(BssOutcome o) noexcept {
    switch (o) {
        case BssOutcome::Holds: return "Holds";
        case BssOutcome::Fails: return "Fails";
        case BssOutcome::NotApplicable: return "NotApplicable";
    }
    return "Unknown";
}

BssReport bss_condition_check(const TaylorPencil& pencil, const RankPolicy& policy) {
    BssReport rep;
    const double scale = pencil.scale();
    const Matrix& a0 = pencil.coeffs().front();
    const Subspace ker = kernel(a0, policy, scale);
    if (ker.is_zero()) return rep;
    const Subspace img = image(a0, policy, scale);
    const Subspace moved = image(pencil.coeff(1) * ker.basis(), policy, scale);
    const Subspace parts[] = {img, moved};
    rep.direct_sum = direct_sum_check(parts, policy);
    rep.outcome = rep.direct_sum.is_direct_sum ? BssOutcome::Holds : BssOutcome::Fails;
    return rep;
}

}  // namespace hcoint
