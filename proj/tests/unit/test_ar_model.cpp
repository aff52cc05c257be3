#include <doctest.h>

#include <limits>

#include "hcoint/ar_model.hpp"
#include "hcoint/error.hpp"
#include "support/models.hpp"

using namespace hcoint;
namespace ht = hcoint::testing;

namespace {

/// I - sum A°_h z^h evaluated term by term, independent of the library's Horner code.
CMatrix direct(const ArModel& m, Complex z) {
    CMatrix a = CMatrix::Identity(m.dim(), m.dim());
    Complex zh = 1.0;
    for (Index h = 1; h <= m.order(); ++h) {
        zh *= z;
        a -= zh * m.coeff(h).cast<Complex>();
    }
    return a;
}

}  // namespace

TEST_CASE("model validation") {
    CHECK_THROWS_AS(ArModel(std::vector<Matrix>{}), Error);
    CHECK_THROWS_AS(ArModel({Matrix::Zero(2, 3)}), Error);
    CHECK_THROWS_AS(ArModel({Matrix::Zero(2, 2), Matrix::Zero(3, 3)}), Error);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ArModel({bad}), Error);
    Matrix cov = Matrix::Identity(2, 2);
    cov(0, 1) = 0.5;
    CHECK_THROWS_AS(ArModel({Matrix::Zero(2, 2)}, cov), Error);  // not symmetric
    cov(1, 0) = 0.5;
    CHECK_NOTHROW(ArModel({Matrix::Zero(2, 2)}, cov));
    cov(0, 1) = cov(1, 0) = 2.0;
    CHECK_THROWS_AS(ArModel({Matrix::Zero(2, 2)}, cov), Error);  // indefinite
    CHECK(ArModel({Matrix::Zero(3, 3)}).noise_cov() == Matrix::Identity(3, 3));
}

TEST_CASE("Taylor coefficients at z = 1") {
    std::mt19937_64 rng(3);
    SUBCASE("k = 1") {
        const Matrix m = ht::gaussian_matrix(rng, 3, 3);
        const TaylorPencil t = taylor_at_one(ArModel({m}));
        REQUIRE(t.degree() == 1);
        CHECK((t.coeff(0) - (Matrix::Identity(3, 3) - m)).norm() < 1e-15);
        CHECK((t.coeff(1) - m).norm() < 1e-15);
        CHECK(t.coeff(5).isZero());
    }
    SUBCASE("k = 2") {
        const Matrix a1 = ht::gaussian_matrix(rng, 3, 3), a2 = ht::gaussian_matrix(rng, 3, 3);
        const TaylorPencil t = taylor_at_one(ArModel({a1, a2}));
        CHECK((t.coeff(0) - (Matrix::Identity(3, 3) - a1 - a2)).norm() < 1e-14);
        CHECK((t.coeff(1) - (a1 + 2 * a2)).norm() < 1e-14);
        CHECK((t.coeff(2) + a2).norm() < 1e-14);
    }
    SUBCASE("all coefficients zero") {
        const TaylorPencil t = taylor_at_one(ArModel({Matrix::Zero(2, 2), Matrix::Zero(2, 2)}));
        CHECK(t.coeff(0) == Matrix::Identity(2, 2));
        CHECK(t.coeff(1).isZero());
        CHECK(t.coeff(2).isZero());
    }
}

TEST_CASE("both representations of A(z) agree") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 10; ++trial) {
        const Index k = 1 + trial % 4;
        std::vector<Matrix> coeffs;
        for (Index h = 0; h < k; ++h) coeffs.push_back(0.5 * ht::gaussian_matrix(rng, 4, 4));
        const ArModel m(coeffs);
        const TaylorPencil t = taylor_at_one(m);
        for (int s = 0; s < 10; ++s) {
            const Complex z(n(rng), n(rng));
            const CMatrix ref = direct(m, z);
            CHECK((evaluate(m, z) - ref).norm() < 1e-10 * (1.0 + ref.norm()));
            CHECK((evaluate(t, z) - ref).norm() < 1e-9 * (1.0 + ref.norm()));
        }
        CHECK((evaluate(m, 0.0) - CMatrix::Identity(4, 4)).norm() < 1e-15);
    }
    // A(1) of the I(1) band model is diag(0, 0.5, ..., 0.5).
    Vector diag = Vector::Constant(6, 0.5);
    diag(0) = 0.0;
    CHECK((evaluate(ht::i1_band(), 1.0).real() - Matrix(diag.asDiagonal())).norm() < 1e-15);
}

TEST_CASE("companion matrix and eigenvalue count") {
    std::mt19937_64 rng(4);
    const ArModel m({ht::gaussian_matrix(rng, 3, 3), ht::gaussian_matrix(rng, 3, 3)});
    const Matrix c = companion(m);
    CHECK(c.rows() == 6);
    CHECK(root_diagnostics(m, RankPolicy{}).eigenvalues.size() == 6);
    // For k = 1 the eigenvalues are those of A1 itself.
    const Matrix a1 = ht::gaussian_matrix(rng, 4, 4);
    CHECK(companion(ArModel({a1})) == a1);
    // det A(1/lambda) = 0 at each companion eigenvalue.
    for (const Complex& lam : root_diagnostics(m, RankPolicy{}).eigenvalues) {
        if (std::abs(lam) < 1e-6) continue;
        const CMatrix a = evaluate(m, 1.0 / lam);
        CHECK(Eigen::JacobiSVD<CMatrix>(a).singularValues().tail(1)(0) < 1e-8 * (1.0 + a.norm()));
    }
}

TEST_CASE("finite-type verdicts") {
    const RankPolicy pol;
    SUBCASE("scalar random walk") {
        const auto d = root_diagnostics(ArModel({Matrix::Identity(1, 1)}), pol);
        const auto v = assert_finite_type(d);
        CHECK(v.pass);
        CHECK(d.dim_ker_a0 == 1);
        CHECK(d.a0_vanishes);
        CHECK(d.root_distance == std::numeric_limits<double>::infinity());
        CHECK(default_laurent_radius(d) == 0.1);
    }
    SUBCASE("I(1) band model") {
        const auto d = root_diagnostics(ht::i1_band(), pol);
        CHECK(assert_finite_type(d).pass);
        CHECK(d.unit_cluster_size == 1);
        CHECK(d.dim_ker_a0 == 1);
        CHECK(d.dim_coker_a0 == 1);
        CHECK(d.max_other_modulus == doctest::Approx(0.5));
        CHECK(d.root_distance == doctest::Approx(1.0));
        CHECK(default_laurent_radius(d) == doctest::Approx(0.1));
        CHECK(default_tail_radius(d) == doctest::Approx(1.5));
    }
    SUBCASE("I(2) band model has a cluster of three") {
        const auto d = root_diagnostics(ht::i2_band(), pol);
        CHECK(assert_finite_type(d).pass);
        CHECK(d.unit_cluster_size == 3);
        CHECK(d.dim_ker_a0 == 2);
    }
    SUBCASE("root at z = -1") {
        const auto v = assert_finite_type(root_diagnostics(ArModel({-Matrix::Identity(2, 2)}), pol));
        CHECK_FALSE(v.pass);
        CHECK(v.reason == FiniteTypeReason::SeasonalUnitRoot);
    }
    SUBCASE("stationary") {
        const auto v = assert_finite_type(root_diagnostics(ArModel({0.5 * Matrix::Identity(3, 3)}), pol));
        CHECK_FALSE(v.pass);
        CHECK(v.reason == FiniteTypeReason::NoUnitRoot);
    }
    SUBCASE("explosive root next to a unit root") {
        Matrix a = Matrix::Identity(2, 2);
        a(1, 1) = 1.5;
        const auto v = assert_finite_type(root_diagnostics(ArModel({a}), pol));
        CHECK_FALSE(v.pass);
        CHECK(v.reason == FiniteTypeReason::ExplosiveOrBoundaryRoot);
        CHECK(to_string(v.reason) == "ExplosiveOrBoundaryRoot");
    }
    SUBCASE("unit root with a complex pair on the circle") {
        Matrix a = Matrix::Zero(3, 3);
        a(0, 0) = 1.0;
        a(1, 2) = 1.0;
        a(2, 1) = -1.0;  // eigenvalues +-i
        CHECK(assert_finite_type(root_diagnostics(ArModel({a}), pol)).reason ==
              FiniteTypeReason::SeasonalUnitRoot);
    }
    SUBCASE("Jordan block of size 4 is one cluster") {
        std::mt19937_64 rng(2);
        const Matrix a = ht::planted_jordan(rng, 6, 4);
        const auto d = root_diagnostics(ArModel({a}), pol);
        CHECK(assert_finite_type(d).pass);
        CHECK(d.unit_cluster_size >= 4);
    }
}

TEST_CASE("PASS implies equal kernel and cokernel dimensions") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        const auto pm = ht::random_pass_model(rng);
        const auto d = root_diagnostics(pm.model, RankPolicy{});
        REQUIRE(assert_finite_type(d).pass);
        CHECK(d.dim_ker_a0 == d.dim_coker_a0);
    }
}
