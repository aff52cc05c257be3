#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "hcoint/ar_model.hpp"
#include "hcoint/decomposition.hpp"
#include "hcoint/error.hpp"
#include "hcoint/laurent.hpp"

namespace hcoint {

/// Rows are consecutive times t_min, t_min + 1, ...; columns are coordinates.
template <class Scalar>
struct TimeSeries {
    Index t_min = 0;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;

    [[nodiscard]] Index t_max() const noexcept { return t_min + values.rows() - 1; }
    [[nodiscard]] Index length() const noexcept { return values.rows(); }
    [[nodiscard]] auto row_at(Index t) const { return values.row(t - t_min); }
    [[nodiscard]] auto row_at(Index t) { return values.row(t - t_min); }
};

/**
 * @brief Bilateral cumulation: sum_{i=1}^t w_i for t >= 1, 0 at t = 0 and
 * -sum_{i=t+1}^0 w_i for t <= -1, on the stored range.
 *
 * Needs w_1 (or nothing to the right of it) and w_0 (or nothing to the left),
 * i.e. t_min <= 1 and t_max >= 0. Exact for integer scalars.
 */
template <class Scalar>
[[nodiscard]] TimeSeries<Scalar> cumulate(const TimeSeries<Scalar>& w) {
    if (w.length() == 0) return w;
    if (w.t_min > 1 || w.t_max() < 0)
        throw Error(ErrorCode::InvalidArgument, "cumulate: range must reach t = 0 or t = 1 from both sides");
    using Row = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
    TimeSeries<Scalar> out{w.t_min, decltype(w.values)::Zero(w.values.rows(), w.values.cols())};
    Row acc = Row::Zero(w.values.cols());
    for (Index t = 1; t <= w.t_max(); ++t) {
        acc += w.row_at(t);
        out.row_at(t) = acc;
    }
    acc.setZero();
    for (Index t = -1; t >= w.t_min; --t) {
        acc -= w.row_at(t + 1);
        out.row_at(t) = acc;
    }
    return out;
}

/// First difference w_t - w_{t-1} on t_min + 1..t_max.
template <class Scalar>
[[nodiscard]] TimeSeries<Scalar> difference(const TimeSeries<Scalar>& w) {
    if (w.length() < 2) throw Error(ErrorCode::InvalidArgument, "difference: need at least two points");
    const Index n = w.length() - 1;
    return {w.t_min + 1, w.values.bottomRows(n) - w.values.topRows(n)};
}

struct ShockSequence {
    TimeSeries<double> noise;
    std::uint64_t seed = 0;
    Matrix cov;
};

/// i.i.d. N(0, cov) vectors on t_min..t_max, reproducible from (seed, cov, range).
[[nodiscard]] ShockSequence gaussian_noise(Index p, const Matrix& cov, Index t_min, Index t_max,
                                           std::uint64_t seed);

enum class Provenance { ArRecursion, CommonTrends };
[[nodiscard]] std::string_view to_string(Provenance p) noexcept;

struct SamplePath {
    TimeSeries<double> path;
    Provenance provenance = Provenance::ArRecursion;
    std::shared_ptr<const ShockSequence> shocks;
};

/// Forward recursion with x_t = 0 for t <= 0. Shocks must start at or before 1 - k.
[[nodiscard]] SamplePath simulate_ar(const ArModel& m, std::shared_ptr<const ShockSequence> shocks);

/**
 * @brief sum_{h=1}^d C_{d-h} s_{h,t} + sum_j psi_j e_{t-j} for t >= 1, where
 * s_{h,t} is the h-fold cumulation of the shocks and shocks before t = 1 are
 * zeroed (zero initial values). Values for t <= 0 are zero.
 */
[[nodiscard]] SamplePath simulate_common_trends(const CommonTrendsOperators& ct,
                                                std::shared_ptr<const ShockSequence> shocks);

struct ScalarSeries {
    Index t_min = 0;
    Vector values;
    [[nodiscard]] Index t_max() const noexcept { return t_min + values.size() - 1; }
};

/// <v, x_t>, plus sum_n <r_n, Delta^n x_t> when a relation is given (starts n_max points later).
[[nodiscard]] ScalarSeries v_characteristic(const SamplePath& path, const Vector& v,
                                            const RelationTemplate* relation = nullptr);

struct GrowthEstimate {
    /// OLS slope of log V(m) on log m; about 2h + 1 for I(h).
    double slope = 0.0;
    double order_estimate = 0.0;
    /// Nearest integer to order_estimate, floored at 0.
    Index order = 0;
};

/**
 * @brief Coarse integration order from variance growth across scales.
 *
 * V(m) is the mean square of the fourth-order scale-m difference
 * (1 - L^m)^4 applied to the partial sums S_t, for m = 8, 16, ... <= T/16.
 * For an I(h) series (h <= 3) V(m) grows like m^{2h+1}; the order estimate
 * (slope - 1) / 2 is rounded with +-0.5 bands and floored at 0.
 * Throws Error(SeriesTooShort) below 256 points.
 */
[[nodiscard]] GrowthEstimate growth_diagnostic(std::span<const double> series);

/// Header t,x_1,...,x_p then rows t >= 1; shortest round-trip decimals, LF endings.
void write_path_csv(std::ostream& os, const TimeSeries<double>& path);

/// Shortest decimal form that parses back to the same double (locale-independent).
[[nodiscard]] std::string format_double(double x);

}  // namespace hcoint
