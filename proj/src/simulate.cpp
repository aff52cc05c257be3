#include "hcoint/simulate.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <random>

namespace hcoint {

ShockSequence gaussian_noise(Index p, const Matrix& cov, Index t_min, Index t_max, std::uint64_t seed) {
    if (p <= 0 || cov.rows() != p || cov.cols() != p)
        throw Error(ErrorCode::InvalidArgument, "gaussian_noise: covariance must be p x p");
    if (t_max < t_min) throw Error(ErrorCode::InvalidArgument, "gaussian_noise: empty time range");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (cov + cov.transpose()));
    const Matrix factor = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    ShockSequence s;
    s.seed = seed;
    s.cov = cov;
    s.noise.t_min = t_min;
    s.noise.values.resize(t_max - t_min + 1, p);
    Vector z(p);
    for (Index i = 0; i < s.noise.values.rows(); ++i) {
        for (Index j = 0; j < p; ++j) z(j) = normal(rng);
        s.noise.values.row(i) = (factor * z).transpose();
    }
    return s;
}

std::string_view to_string(Provenance p) noexcept {
    return p == Provenance::ArRecursion ? "ar-recursion" : "common-trends";
}

SamplePath simulate_ar(const ArModel& m, std::shared_ptr<const ShockSequence> shocks) {
    if (!shocks) throw Error(ErrorCode::InvalidArgument, "simulate_ar: no shocks");
    const auto& e = shocks->noise;
    if (e.values.cols() != m.dim()) throw Error(ErrorCode::InvalidArgument, "simulate_ar: dimension mismatch");
    if (e.t_min > 1 - m.order())
        throw Error(ErrorCode::InvalidArgument, "simulate_ar: shocks must start at or before 1 - k");
    SamplePath out;
    out.provenance = Provenance::ArRecursion;
    out.path = {e.t_min, Matrix::Zero(e.values.rows(), e.values.cols())};
    for (Index t = 1; t <= e.t_max(); ++t) {
        Vector x = e.row_at(t).transpose();
        for (Index h = 1; h <= m.order(); ++h) x += m.coeff(h) * out.path.row_at(t - h).transpose();
        out.path.row_at(t) = x.transpose();
    }
    out.shocks = std::move(shocks);
    return out;
}

SamplePath simulate_common_trends(const CommonTrendsOperators& ct, std::shared_ptr<const ShockSequence> shocks) {
    if (!shocks) throw Error(ErrorCode::InvalidArgument, "simulate_common_trends: no shocks");
    const auto& e = shocks->noise;
    const Index p = e.values.cols();
    if (e.t_min > 0) throw Error(ErrorCode::InvalidArgument, "simulate_common_trends: shocks must cover t = 0");
    if (!ct.loadings.empty() && ct.loadings.front().rows() != p)
        throw Error(ErrorCode::InvalidArgument, "simulate_common_trends: dimension mismatch");

    TimeSeries<double> eps{e.t_min, e.values};
    for (Index t = e.t_min; t <= 0; ++t) eps.row_at(t).setZero();

    SamplePath out;
    out.provenance = Provenance::CommonTrends;
    out.path = {e.t_min, Matrix::Zero(e.values.rows(), p)};
    TimeSeries<double> s = eps;
    for (Index h = 1; h <= ct.d; ++h) {
        s = cumulate(s);
        const Matrix& c = ct.loadings[static_cast<std::size_t>(ct.d - h)];
        for (Index t = 1; t <= e.t_max(); ++t) out.path.row_at(t) += s.row_at(t) * c.transpose();
    }
    const Index terms = static_cast<Index>(ct.tail.size());
    for (Index t = 1; t <= e.t_max(); ++t) {
        Vector y = Vector::Zero(p);
        for (Index j = 0; j < std::min(terms, t); ++j)
            y += ct.tail[static_cast<std::size_t>(j)] * eps.row_at(t - j).transpose();
        out.path.row_at(t) += y.transpose();
    }
    out.shocks = std::move(shocks);
    return out;
}

ScalarSeries v_characteristic(const SamplePath& path, const Vector& v, const RelationTemplate* relation) {
    const auto& x = path.path;
    if (v.size() != x.values.cols()) throw Error(ErrorCode::InvalidArgument, "v_characteristic: dimension mismatch");
    ScalarSeries out{x.t_min, x.values * v};
    if (!relation || relation->poly_coeffs.empty()) return out;

    const auto rows = relation->for_direction(v);
    const Index lag = static_cast<Index>(rows.size());
    if (x.length() <= lag) throw Error(ErrorCode::InvalidArgument, "v_characteristic: path too short");
    out.t_min = x.t_min + lag;
    out.values = out.values.tail(x.length() - lag).eval();
    TimeSeries<double> diff = x;
    for (Index n = 1; n <= lag; ++n) {
        diff = difference(diff);
        const Vector proj = diff.values * rows[static_cast<std::size_t>(n - 1)];
        out.values += proj.tail(out.values.size());
    }
    return out;
}

GrowthEstimate growth_diagnostic(std::span<const double> series) {
    const Index n = static_cast<Index>(series.size());
    if (n < 256) throw Error(ErrorCode::SeriesTooShort, "growth_diagnostic: need at least 256 points");
    constexpr int kOrder = 4;
    constexpr double kBinom[kOrder + 1] = {1.0, -4.0, 6.0, -4.0, 1.0};

    std::vector<double> partial(static_cast<std::size_t>(n + 1), 0.0);
    for (Index t = 0; t < n; ++t) partial[static_cast<std::size_t>(t + 1)] = partial[static_cast<std::size_t>(t)] + series[static_cast<std::size_t>(t)];

    std::vector<double> logs_m, logs_v;
    for (Index m = 8; m <= n / 16; m *= 2) {
        double sum_sq = 0.0;
        const Index count = n + 1 - kOrder * m;
        for (Index t = kOrder * m; t <= n; ++t) {
            double x = 0.0;
            for (int q = 0; q <= kOrder; ++q) x += kBinom[q] * partial[static_cast<std::size_t>(t - q * m)];
            sum_sq += x * x;
        }
        logs_m.push_back(std::log(static_cast<double>(m)));
        logs_v.push_back(std::log(std::max(sum_sq / static_cast<double>(count), 1e-300)));
    }
    const double k = static_cast<double>(logs_m.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < logs_m.size(); ++i) {
        mx += logs_m[i] / k;
        my += logs_v[i] / k;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < logs_m.size(); ++i) {
        sxy += (logs_m[i] - mx) * (logs_v[i] - my);
        sxx += (logs_m[i] - mx) * (logs_m[i] - mx);
    }
    GrowthEstimate g;
    g.slope = sxy / sxx;
    g.order_estimate = 0.5 * (g.slope - 1.0);
    g.order = std::max<Index>(0, static_cast<Index>(std::lround(g.order_estimate)));
    return g;
}

std::string format_double(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

void write_path_csv(std::ostream& os, const TimeSeries<double>& path) {
    std::string out = "t";
    for (Index j = 1; j <= path.values.cols(); ++j) out += ",x_" + std::to_string(j);
    out += '\n';
    for (Index t = std::max<Index>(1, path.t_min); t <= path.t_max(); ++t) {
        out += std::to_string(t);
        for (Index j = 0; j < path.values.cols(); ++j) out += ',' + format_double(path.row_at(t)(j));
        out += '\n';
    }
    os << out;
}

}  // namespace hcoint
