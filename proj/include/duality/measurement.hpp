#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "duality/interferometer.hpp"
#include "duality/rng.hpp"

// Monte Carlo simulation of the repeated-measurement protocol: the same input
// state is sent through the interferometer many times per phase value, the
// frequency of the -1 outcome is recorded, and a sinusoid is fitted to the
// frequencies to recover an empirical visibility.

namespace duality {

struct ExperimentPlan {
    InterferometerConfig config;
    int phi_points;               // uniform phase samples on [0, 2pi), >= 3
    long long shots_per_point;    // >= 1
    std::uint64_t seed;
    std::string rng_name = splitmix64_name;
};

struct PointCount {
    double phi;
    long long successes;
    long long shots;
};

// Frequencies drawn from Bernoulli(p(phi)) with a per-point substream of the
// seeded generator; an identical plan reproduces identical counts bit for bit,
// and points are independent of evaluation order.
inline std::vector<PointCount> sample_counts(const ExperimentPlan& plan) {
    if (plan.phi_points < 3) {
        throw std::invalid_argument("sample_counts: phi_points must be >= 3");
    }
    if (plan.shots_per_point < 1) {
        throw std::invalid_argument("sample_counts: shots_per_point must be >= 1");
    }
    if (plan.rng_name != splitmix64_name) {
        throw std::invalid_argument("sample_counts: unknown rng_name '" + plan.rng_name + "'");
    }
    std::vector<PointCount> counts;
    counts.reserve(plan.phi_points);
    for (int k = 0; k < plan.phi_points; ++k) {
        const double phi = 2.0 * pi * k / plan.phi_points;
        const double p = detection_probability(plan.config, phi);
        SplitMix64 gen = substream(plan.seed, static_cast<std::uint64_t>(k));
        long long successes = 0;
        for (long long shot = 0; shot < plan.shots_per_point; ++shot) {
            if (gen.next_double() < p) ++successes;
        }
        counts.push_back({phi, successes, plan.shots_per_point});
    }
    return counts;
}

// Fitted fringe model p(phi) ~ a - b cos(phi) - c sin(phi).
struct FringeFit {
    double a, b, c;
    double i_max, i_min;       // a +- sqrt(b^2 + c^2)
    double visibility_hat;     // (i_max - i_min)/(i_max + i_min)
    double std_error;          // delta-method propagation of binomial variance
};

namespace detail {

// Solve the 3x3 system m beta = v and invert m (partial pivoting).
inline void solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> v,
                   std::array<double, 3>& beta, std::array<std::array<double, 3>, 3>& inv) {
    std::array<std::array<double, 6>, 3> aug{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) aug[i][j] = m[i][j];
        aug[i][3 + i] = 1.0;
    }
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(m[i][j]));
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
        }
        if (std::abs(aug[pivot][col]) <= 1e-12 * std::max(scale, 1.0)) {
            throw std::invalid_argument("fit_fringe: rank-deficient design matrix");
        }
        std::swap(aug[col], aug[pivot]);
        std::swap(v[col], v[pivot]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double factor = aug[r][col] / aug[col][col];
            for (int j = 0; j < 6; ++j) aug[r][j] -= factor * aug[col][j];
            v[r] -= factor * v[col];
        }
    }
    for (int i = 0; i < 3; ++i) {
        beta[i] = v[i] / aug[i][i];
        for (int j = 0; j < 3; ++j) inv[i][j] = aug[i][3 + j] / aug[i][i];
    }
}

} // namespace detail

// Unweighted ordinary least squares of frequencies on {1, cos phi, sin phi}
// via the closed-form 3x3 normal equations. The standard error comes from the
// sandwich estimator with per-point binomial variance y(1-y)/shots pushed
// through the gradient of sqrt(b^2+c^2)/a.
inline FringeFit fit_fringe_frequencies(const std::vector<double>& phis,
                                        const std::vector<double>& freqs,
                                        const std::vector<long long>& shots) {
    if (phis.size() != freqs.size() || phis.size() != shots.size()) {
        throw std::invalid_argument("fit_fringe: mismatched input lengths");
    }
    const std::set<double> distinct(phis.begin(), phis.end());
    if (distinct.size() < 3) {
        throw std::invalid_argument("fit_fringe: need >= 3 distinct phase values");
    }

    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> rhs{};
    for (std::size_t k = 0; k < phis.size(); ++k) {
        const std::array<double, 3> x{1.0, std::cos(phis[k]), std::sin(phis[k])};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += x[i] * x[j];
            rhs[i] += x[i] * freqs[k];
        }
    }
    std::array<double, 3> beta{};
    std::array<std::array<double, 3>, 3> minv{};
    detail::solve3(m, rhs, beta, minv);

    const double a = beta[0];
    const double b = -beta[1];
    const double c = -beta[2];
    const double r = std::hypot(b, c);

    FringeFit fit{};
    fit.a = a;
    fit.b = b;
    fit.c = c;
    fit.i_max = a + r;
    fit.i_min = a - r;

    if (a <= 1e-12) {
        fit.visibility_hat = 0.0;
        fit.std_error = std::numeric_limits<double>::infinity();
        return fit;
    }
    fit.visibility_hat = r / a;

    // cov(beta) = M^-1 (sum var_k x_k x_k^T) M^-1
    std::array<std::array<double, 3>, 3> middle{};
    for (std::size_t k = 0; k < phis.size(); ++k) {
        const double var = freqs[k] * (1.0 - freqs[k]) / static_cast<double>(shots[k]);
        const std::array<double, 3> x{1.0, std::cos(phis[k]), std::sin(phis[k])};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) middle[i][j] += var * x[i] * x[j];
    }
    std::array<std::array<double, 3>, 3> cov{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) s += minv[i][p] * middle[p][q] * minv[q][j];
            cov[i][j] = s;
        }

    std::array<double, 3> grad{};
    if (r < 1e-15) {
        // Direction of the amplitude gradient is undefined at r = 0; bound it
        // by the full (b, c) variance instead.
        fit.std_error = std::sqrt(std::max(0.0, cov[1][1] + cov[2][2])) / a;
        return fit;
    }
    grad[0] = -r / (a * a);
    grad[1] = beta[1] / (a * r);   // d/d beta_1 of sqrt(beta1^2+beta2^2)/a
    grad[2] = beta[2] / (a * r);
    double var_v = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) var_v += grad[i] * cov[i][j] * grad[j];
    fit.std_error = std::sqrt(std::max(0.0, var_v));
    return fit;
}

inline FringeFit fit_fringe(const std::vector<PointCount>& counts) {
    std::vector<double> phis, freqs;
    std::vector<long long> shots;
    phis.reserve(counts.size());
    freqs.reserve(counts.size());
    shots.reserve(counts.size());
    for (const PointCount& pc : counts) {
        phis.push_back(pc.phi);
        freqs.push_back(static_cast<double>(pc.successes) / static_cast<double>(pc.shots));
        shots.push_back(pc.shots);
    }
    return fit_fringe_frequencies(phis, freqs, shots);
}

inline FringeFit run_experiment(const ExperimentPlan& plan) {
    return fit_fringe(sample_counts(plan));
}

} // namespace duality
