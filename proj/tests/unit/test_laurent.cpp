#include <doctest.h>

#include "hcoint/equivalences.hpp"
#include "hcoint/error.hpp"
#include "hcoint/laurent.hpp"
#include "support/models.hpp"

using namespace hcoint;
namespace ht = hcoint::testing;

namespace {

struct Fitted {
    TaylorPencil pencil;
    Decomposition dec;
    LaurentSeries series;
};

Fitted fit(const ArModel& m, LaurentOptions opt = {}) {
    TaylorPencil pencil = taylor_at_one(m);
    Decomposition dec = decompose(pencil, RankPolicy{});
    opt.radius = default_laurent_radius(root_diagnostics(m, RankPolicy{}));
    LaurentSeries s = laurent_coeffs(pencil, dec.order(), opt);
    return {std::move(pencil), std::move(dec), std::move(s)};
}

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("closed-form coefficients of diag(1 - z, 1 - 0.5 z)") {
    // 1/(1 - 0.5 z) = 2 / (1 + w), w = 1 - z, so C_{n+1} has 2 (-1)^n in the second slot.
    const Fitted f = fit(ht::diag_example());
    REQUIRE(f.series.d == 1);
    CHECK((f.series.coeffs[0] - diag2(1, 0)).norm() < 1e-12);
    CHECK((f.series.coeffs[1] - diag2(0, 2)).norm() < 1e-12);
    CHECK((f.series.coeffs[2] - diag2(0, -2)).norm() < 1e-12);
    CHECK((f.series.coeffs[3] - diag2(0, 2)).norm() < 1e-11);
    CHECK(f.series.max_imag < 1e-10);
}

TEST_CASE("fixtures: leading coefficient and certificate") {
    const Fitted f1 = fit(ht::i1_band());
    Matrix c0 = Matrix::Zero(6, 6);
    c0(0, 0) = 1.0;
    CHECK((f1.series.coeffs[0] - c0).norm() < 1e-12);
    CHECK(f1.series.residual < 1e-8);

    const Fitted f2 = fit(ht::i2_band());
    Matrix c0b = Matrix::Zero(6, 6);
    c0b(0, 1) = 1.0;
    CHECK((f2.series.coeffs[0] - c0b).norm() < 1e-12);
    CHECK(f2.series.residual < 1e-8);
    const IdentityResiduals r = identity_residuals(f2.pencil, f2.series);
    CHECK(r.max_equation(f2.series.d + 2) < 1e-8);
}

TEST_CASE("pointwise inverse check needs enough terms") {
    LaurentOptions opt;
    opt.count = 1 + 16;
    const Fitted f = fit(ht::i1_band(), opt);
    CHECK(identity_residuals(f.pencil, f.series).max_pointwise() < 1e-8);
}

TEST_CASE("pole-order consistency") {
    const Fitted f = fit(ht::i2_band());
    const Index d = f.series.d;
    SUBCASE("over-stated order gives vanishing leading terms and a shifted sequence") {
        LaurentOptions opt;
        opt.radius = f.series.radius;
        opt.enforce_certificate = false;
        const LaurentSeries s = laurent_coeffs(f.pencil, d + 2, opt);
        CHECK(s.coeffs[0].norm() < 1e-8);
        CHECK(s.coeffs[1].norm() < 1e-8);
        for (Index n = 0; n <= d + 2; ++n)
            CHECK((s.coeffs[static_cast<std::size_t>(n + 2)] - f.series.coeffs[static_cast<std::size_t>(n)]).norm() < 1e-8);
        opt.enforce_certificate = true;
        CHECK_THROWS_AS((void)laurent_coeffs(f.pencil, d + 1, opt), Error);
    }
    SUBCASE("under-stated order fails the certificate") {
        LaurentOptions opt;
        opt.radius = f.series.radius;
        try {
            (void)laurent_coeffs(f.pencil, d - 1, opt);
            FAIL("certificate accepted a wrong pole order");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::RadiusTooLarge);
        }
        opt.enforce_certificate = false;
        const LaurentSeries s = laurent_coeffs(f.pencil, d - 1, opt);
        CHECK(s.residual > 1e-3);
    }
}

TEST_CASE("radius invariance and rank of C_0 on random models") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pm = ht::random_pass_model(rng);
        const Fitted f = fit(pm.model);
        LaurentOptions half;
        half.radius = f.series.radius / 2;
        const LaurentSeries s2 = laurent_coeffs(f.pencil, f.series.d, half);
        for (std::size_t n = 0; n < f.series.coeffs.size(); ++n) {
            const double ref = std::max(1.0, f.series.coeffs[n].norm());
            INFO("n = " << n << ", d = " << f.series.d << ", r = " << f.series.radius);
            CHECK((s2.coeffs[n] - f.series.coeffs[n]).norm() / ref < 1e-7);
        }
        CHECK(rank(f.series.coeffs[0], RankPolicy{}) == f.dec.attractor().rank());
    }
}

TEST_CASE("contour through a root is rejected") {
    // diag(1 - z, 1 - 0.5 z) has a root at z = 2, i.e. w = -1.
    LaurentOptions opt;
    opt.radius = 1.0;
    try {
        (void)laurent_coeffs(taylor_at_one(ht::diag_example()), 1, opt);
        FAIL("expected SingularOnCircle");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularOnCircle);
    }
}

TEST_CASE("parallel node evaluation is bit-identical") {
    std::mt19937_64 rng(41);
    const auto pm = ht::random_pass_model(rng);
    const TaylorPencil pencil = taylor_at_one(pm.model);
    const Index d = decompose(pencil, RankPolicy{}).order();
    LaurentOptions one, four;
    one.radius = four.radius = default_laurent_radius(root_diagnostics(pm.model, RankPolicy{}));
    four.jobs = 4;
    const LaurentSeries a = laurent_coeffs(pencil, d, one), b = laurent_coeffs(pencil, d, four);
    for (std::size_t n = 0; n < a.coeffs.size(); ++n) CHECK(a.coeffs[n] == b.coeffs[n]);
}

TEST_CASE("common trends operators") {
    const Fitted f = fit(ht::i1_band());
    TailOptions tail;
    tail.radius = 1.5;
    tail.terms = 40;
    const CommonTrendsOperators ct = common_trends(f.pencil, f.series, f.dec, tail);
    REQUIRE(ct.loadings.size() == 1);
    CHECK((ct.loadings[0] - f.series.coeffs[0]).norm() == 0.0);
    // psi_j = diag(0, 0.5^j, ..., 0.5^j).
    double w = 1.0;
    for (const auto& psi : ct.tail) {
        Vector diag = Vector::Constant(6, w);
        diag(0) = 0.0;
        CHECK((psi - Matrix(diag.asDiagonal())).norm() < 1e-12);
        w *= 0.5;
    }

    const Fitted f2 = fit(ht::i2_band());
    const CommonTrendsOperators ct2 = common_trends(f2.pencil, f2.series, f2.dec, tail);
    CHECK(ct2.loadings.size() == 2);
    CHECK(same_subspace(image(ct2.loadings[0], RankPolicy{}), f2.dec.attractor()));

    // A decomposition of a different model does not match.
    CHECK_THROWS_AS((void)common_trends(f.pencil, f.series, f2.dec, tail), Error);
}

TEST_CASE("tail weights reproduce A(z)^{-1} minus its principal part") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 5; ++trial) {
        const auto pm = ht::random_pass_model(rng);
        const auto diag = root_diagnostics(pm.model, RankPolicy{});
        const Fitted f = fit(pm.model);
        TailOptions tail;
        tail.radius = default_tail_radius(diag);
        const auto psi = linear_process_weights(f.pencil, f.series, tail);
        // Evaluate both sides at z = 0.5 (inside the unit disc).
        const Complex z = 0.5;
        CMatrix lhs = CMatrix::Zero(pm.model.dim(), pm.model.dim());
        Complex zj = 1.0;
        for (const auto& m : psi) {
            lhs += zj * m.cast<Complex>();
            zj *= z;
        }
        CMatrix rhs = evaluate(pm.model, z).inverse();
        for (Index n = 0; n < f.series.d; ++n)
            rhs -= f.series.coeffs[static_cast<std::size_t>(n)].cast<Complex>() *
                   std::pow(1.0 - z, static_cast<double>(n - f.series.d));
        CHECK((lhs - rhs).norm() < 1e-8 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("pole equivalences and chain identities") {
    const Fitted f1 = fit(ht::i1_band());
    const auto rep1 = verify_pole_equivalences(f1.dec, f1.series, RankPolicy{});
    CHECK(rep1.all_hold);
    CHECK(rep1.checks.size() == 7);
    CHECK(rep1.max_residual() < 1e-8);

    const Fitted f2 = fit(ht::i2_band());
    const auto rep2 = verify_pole_equivalences(f2.dec, f2.series, RankPolicy{});
    CHECK(rep2.all_hold);
    // Ker C_0 = Z_2 = span{e1, e3, e4, e5, e6}.
    Matrix z(6, 5);
    z.setZero();
    Index j = 0;
    for (Index i : {0, 2, 3, 4, 5}) z(i, j++) = 1.0;
    CHECK(same_subspace(kernel(f2.series.coeffs[0], RankPolicy{}), Subspace(z, 0.0)));

    for (const auto& c : chain_identity_residuals(f2.dec, f2.series)) {
        CHECK(c.left < 1e-10);
        CHECK(c.right < 1e-10);
    }

    // A block-diagonal stationary-plus-random-walk model with a rotated basis.
    std::mt19937_64 rng(61);
    const Matrix q = ht::random_orthogonal(rng, 4);
    Matrix a = Matrix::Zero(4, 4);
    a(0, 0) = 1.0;
    a.bottomRightCorner(3, 3) = 0.3 * ht::random_orthogonal(rng, 3);
    const Fitted f3 = fit(ArModel({q * a * q.transpose()}));
    const auto rep3 = verify_pole_equivalences(f3.dec, f3.series, RankPolicy{});
    CHECK(rep3.all_hold);
    CHECK(rep3.max_residual() < 1e-8);
}

TEST_CASE("gamma_h cancels the leading poles") {
    const Fitted f = fit(ht::i2_band());
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 5; ++trial) {
        const Vector v = f.dec.step(0).tau.basis() * ht::gaussian_matrix(rng, 4, 1);
        for (double r : cancellation_residuals(f.dec, f.series, 0, v)) CHECK(r < 1e-8);
    }
    // Without the Delta correction, e_2 still sees the pole of order one.
    CHECK((ht::unit(6, 1).transpose() * f.series.coeffs[1]).norm() > 0.1);
    CHECK_THROWS_AS((void)cancellation_residuals(f.dec, f.series, 2, ht::unit(6, 0)), Error);
}

TEST_CASE("fourth-order pole keeps a real, certified expansion") {
    // A Jordan block of size 4 at 1 next to a stable coordinate, in a skewed basis.
    Matrix j = Matrix::Zero(5, 5);
    for (Index i = 0; i < 4; ++i) j(i, i) = 1.0;
    for (Index i = 0; i < 3; ++i) j(i, i + 1) = 1.0;
    j(4, 4) = 0.6;
    std::mt19937_64 rng(4);
    const Matrix v = ht::random_basis(rng, 5);
    const Fitted f = fit(ArModel({Matrix(v * j * v.inverse())}));
    REQUIRE(f.dec.order() == 4);
    CHECK(f.series.max_imag < 1e-10);
    CHECK(f.series.residual < 1e-12);
    // One block of maximal size: C_0 has rank one.
    CHECK(rank(f.series.coeffs[0], RankPolicy{}) == 1);
}
