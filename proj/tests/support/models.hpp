#pragma once

// Fixtures and random model generators shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hcoint/ar_model.hpp"

namespace hcoint::testing {

inline Matrix i1_band_a1() {
    Matrix a = 0.5 * Matrix::Identity(6, 6);
    a(0, 0) = 1.0;
    return a;
}

inline Matrix i2_band_a1() {
    Matrix a = 0.5 * Matrix::Identity(6, 6);
    a(0, 0) = a(0, 1) = a(1, 1) = a(2, 2) = 1.0;
    return a;
}

inline ArModel i1_band() { return ArModel({i1_band_a1()}); }
inline ArModel i2_band() { return ArModel({i2_band_a1()}); }

/// diag(1 - z, 1 - 0.5 z).
inline ArModel diag_example() {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 0.5;
    return ArModel({a});
}

inline Vector unit(Index p, Index i) { return Vector::Unit(p, i); }

inline Matrix gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols) {
    std::normal_distribution<double> n;
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = n(rng);
    return m;
}

inline Matrix random_orthogonal(std::mt19937_64& rng, Index p) {
    Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, p, p));
    return qr.householderQ() * Matrix::Identity(p, p);
}

inline double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

/// Matrix with spectral norm exactly `norm`.
inline Matrix scaled_gaussian(std::mt19937_64& rng, Index p, double norm) {
    Matrix g = gaussian_matrix(rng, p, p);
    return g * (norm / spectral_norm(g));
}

/// Well-conditioned change of basis: orthogonal times (I + small).
inline Matrix random_basis(std::mt19937_64& rng, Index p) {
    return random_orthogonal(rng, p) * (Matrix::Identity(p, p) + scaled_gaussian(rng, p, 0.3));
}

struct PlantedModel {
    ArModel model;
    /// Largest Jordan block at 1, equal to the pole order of A(z)^{-1}.
    Index d = 0;
};

/**
 * A1 = V J V^{-1}: Jordan blocks at 1 whose largest has size `max_block`, the
 * remaining coordinates stable (|lambda| <= 0.8, real or complex pairs).
 */
inline Matrix planted_jordan(std::mt19937_64& rng, Index p, Index max_block) {
    std::uniform_int_distribution<Index> size_dist(1, max_block);
    std::uniform_real_distribution<double> mod(0.0, 0.8), angle(0.0, std::numbers::pi);
    Matrix j = Matrix::Zero(p, p);
    Index at = 0;
    auto jordan_block = [&](Index size) {
        for (Index i = 0; i < size; ++i) {
            j(at + i, at + i) = 1.0;
            if (i + 1 < size) j(at + i, at + i + 1) = 1.0;
        }
        at += size;
    };
    jordan_block(max_block);
    std::bernoulli_distribution extra(0.3);
    while (at < p && extra(rng)) jordan_block(std::min(size_dist(rng), p - at));
    std::bernoulli_distribution complex_pair(0.4);
    while (at < p) {
        const double r = mod(rng);
        if (at + 1 < p && complex_pair(rng)) {
            const double th = angle(rng);
            j(at, at) = j(at + 1, at + 1) = r * std::cos(th);
            j(at, at + 1) = r * std::sin(th);
            j(at + 1, at) = -r * std::sin(th);
            at += 2;
        } else {
            j(at, at) = (std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0) * r;
            at += 1;
        }
    }
    const Matrix v = random_basis(rng, p);
    return v * j * v.inverse();
}

/// k = 1 model with a planted Jordan structure; p in [max_block, 8].
inline PlantedModel random_ar1(std::mt19937_64& rng, Index max_block) {
    const Index p = std::uniform_int_distribution<Index>(std::max<Index>(max_block, 2), 8)(rng);
    return {ArModel({planted_jordan(rng, p, max_block)}), max_block};
}

/**
 * (I - M z)(I - Phi1 z - Phi2 z^2) with M from planted_jordan and a small
 * stable second factor, giving k in {1, 2, 3}. The pole order at 1 is the
 * largest Jordan block of M at 1.
 */
inline PlantedModel random_pass_model(std::mt19937_64& rng) {
    const Index p = std::uniform_int_distribution<Index>(2, 8)(rng);
    const Index max_block = std::uniform_int_distribution<Index>(1, std::min<Index>(3, p))(rng);
    const Index k = std::uniform_int_distribution<Index>(1, 3)(rng);
    const Matrix m = planted_jordan(rng, p, max_block);
    if (k == 1) return {ArModel({m}), max_block};
    const Matrix phi1 = scaled_gaussian(rng, p, 0.3);
    const Matrix phi2 = k == 3 ? scaled_gaussian(rng, p, 0.15) : Matrix::Zero(p, p);
    std::vector<Matrix> coeffs{m + phi1, phi2 - m * phi1};
    if (k == 3) coeffs.push_back(-m * phi2);
    return {ArModel(std::move(coeffs)), max_block};
}

}  // namespace hcoint::testing
