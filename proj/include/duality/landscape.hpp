#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "duality/interferometer.hpp"

// Closed-form landscapes of the duality sum P^2 + V^2 over the orientation of
// the middle-unitary axis, and the tight bound L_U = max over input states.

namespace duality {

// Axis orientation in spherical coordinates: polar angle theta from +z,
// azimuth xi from +x. m = cos(theta) e_z + sin(theta)(cos(xi) e_x + sin(xi) e_y).
class SphericalAxis {
public:
    SphericalAxis(double theta, double xi) {
        if (theta < -invariant_tol || theta > pi + invariant_tol) {
            throw std::invalid_argument("SphericalAxis: theta must lie in [0, pi]");
        }
        theta_ = std::clamp(theta, 0.0, pi);
        xi_ = std::fmod(xi, 2.0 * pi);
        if (xi_ < 0.0) xi_ += 2.0 * pi;
    }

    double theta() const { return theta_; }
    double xi() const { return xi_; }

    UnitAxis to_axis() const {
        const double st = std::sin(theta_);
        return UnitAxis::normalized({st * std::cos(xi_), st * std::sin(xi_), std::cos(theta_)});
    }

    static SphericalAxis from_axis(const UnitAxis& m) {
        const double theta = std::acos(std::clamp(m.z(), -1.0, 1.0));
        double xi = std::atan2(m.y(), m.x());
        if (xi < 0.0) xi += 2.0 * pi;
        return {theta, xi};
    }

private:
    double theta_;
    double xi_;
};

struct DualityResult {
    double predictability;
    double visibility;
    double sum;   // predictability^2 + visibility^2
};

// P^2 + V^2 for one configuration. Visibility comes from the closed form at
// the balanced splitter and from the exact sinusoid scan otherwise.
inline DualityResult duality_sum(const InterferometerConfig& cfg) {
    const double p = predictability(cfg);
    const double v = is_balanced(cfg) ? visibility_closed_form(cfg) : visibility_scan(cfg, 3);
    return {p, v, p * p + v * v};
}

// F(s_x, Theta, xi): the duality sum for input s = s_x e_x through the
// balanced splitter, axis given in spherical coordinates:
//
//   |s_x|^2 ( 1 + sin^2(T) (cos^2(T) cos^2(x) + sin^2(x))
//                 / (1 + s_x sin(T) cos(T) cos(x))^2 ).
//
// The denominator stays >= 1/2 for |s_x| <= 1, so the expression has no
// in-domain singularity.
inline double F_spherical(double s_x, double theta, double xi) {
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const double cx = std::cos(xi);
    const double sx2 = std::sin(xi) * std::sin(xi);
    const double num = st * st * (ct * ct * cx * cx + sx2);
    const double den = 1.0 + s_x * st * ct * cx;
    return s_x * s_x * (1.0 + num / (den * den));
}

// Pure-state slice F(1, Theta, xi).
inline double F_pure(double theta, double xi) {
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const double cx = std::cos(xi);
    const double sxi = std::sin(xi);
    const double num = st * st * ct * ct * cx * cx + st * st * sxi * sxi;
    const double den = 1.0 + st * ct * cx;
    return 1.0 + num / (den * den);
}

// Same landscape in Cartesian axis coordinates, pure input s = e_x:
//
//   f(m_x, m_z) = 1 + (1 - m_x^2)(1 - m_z^2) / (1 + m_z m_x)^2,
//
// defined on the disk m_x^2 + m_z^2 <= 1 (so that m_y exists).
inline double f_cartesian(double m_x, double m_z) {
    if (m_x * m_x + m_z * m_z > 1.0 + invariant_tol) {
        throw std::domain_error("f_cartesian: m_x^2 + m_z^2 > 1, no unit axis exists");
    }
    const double den = 1.0 + m_z * m_x;
    return 1.0 + (1.0 - m_x * m_x) * (1.0 - m_z * m_z) / (den * den);
}

// Profile along the rotated basis e_x' = (e_x + e_z)/sqrt(2): the axis swings
// from e_y (m_x' = 0) to e_x' (m_x' = 1) and the sum becomes
//
//   f~(s_x, m_x') = s_x^2 + s_x^2 (1 - m_x'^2/2)^2 / (1 + s_x m_x'^2/2)^2.
inline double f_rotated(double s_x, double m_x_prime) {
    const double u = m_x_prime * m_x_prime / 2.0;
    const double ratio = (1.0 - u) / (1.0 + s_x * u);
    return s_x * s_x + s_x * s_x * ratio * ratio;
}

// The quoted closed form for the unbalanced splitter, kept verbatim. Its
// azimuth convention disagrees with F_spherical (see the consistency report,
// which adjudicates both conventions against the matrix oracle); canonical
// values come from duality_sum.
inline double duality_sum_omega_paper(double s_x, double theta, double xi, double omega) {
    const double s2t = std::sin(2.0 * theta);
    const double c2t = std::cos(2.0 * theta);
    const double s2w = std::sin(2.0 * omega);
    const double c2w = std::cos(2.0 * omega);
    const double st = std::sin(theta);
    const double cx = std::cos(xi);
    const double g = s2t * c2w * std::sin(xi) + s2w * c2t + s2w * st * st * cx * cx;
    const double sw = std::sin(omega);
    const double den = 1.0 - s_x / 2.0 * g;
    return s_x * s_x * (sw * sw + (g * g / 4.0 + st * st * cx * cx) / (den * den));
}

// ---------------------------------------------------------------------------
// L_U: the tight bound, maximized over input states
// ---------------------------------------------------------------------------

struct DualityBound {
    double l_max;
    BlochVector argmax_state;
    long long iterations;    // objective evaluations spent
    int grid_resolution;     // sphere-lattice size of the coarse stage
};

struct LmaxOptions {
    int grid_points = 10000;
    double refine_tol = 1e-6;
};

namespace detail {

inline BlochVector spherical_state(double polar, double azimuth, double radius) {
    const double sp = std::sin(polar);
    return {radius * sp * std::cos(azimuth),
            radius * sp * std::sin(azimuth),
            radius * std::cos(polar)};
}

// Golden-section maximization over [lo, hi]; endpoints included. Returns the
// best abscissa found once the bracket is narrower than tol.
template <typename F>
double golden_max(F&& f, double lo, double hi, double tol, double& best_value,
                  long long& evals) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double best_x = lo;
    best_value = f(lo);
    ++evals;
    const double f_hi = f(hi);
    ++evals;
    if (f_hi > best_value) {
        best_value = f_hi;
        best_x = hi;
    }
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    evals += 2;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    for (auto [x, fx] : {std::pair{c, fc}, std::pair{d, fd}}) {
        if (fx > best_value) {
            best_value = fx;
            best_x = x;
        }
    }
    return best_x;
}

struct LmaxCandidate {
    double value;
    double polar, azimuth, radius;
    Vec3 direction;
};

// Coordinate-wise golden-section ascent from one starting point; h is the
// per-coordinate bracket half-width, shrunk once a cycle stops improving.
template <typename Objective>
LmaxCandidate refine_candidate(Objective&& objective, LmaxCandidate c, double refine_tol,
                               long long& evals) {
    double x[3] = {c.polar, c.azimuth, c.radius};
    double h[3] = {0.08, 0.08, 0.30};
    double best = c.value;
    const auto eval_coord = [&](int i, double v) {
        double p[3] = {x[0], x[1], x[2]};
        p[i] = v;
        return objective(p[0], p[1], p[2]);
    };
    for (int cycle = 0; cycle < 200; ++cycle) {
        if (h[0] <= refine_tol && h[1] <= refine_tol && h[2] <= refine_tol) break;
        const double before = best;
        for (int i = 0; i < 3; ++i) {
            double lo = x[i] - h[i];
            double hi = x[i] + h[i];
            if (i == 0) { lo = std::max(lo, 0.0); hi = std::min(hi, pi); }
            if (i == 2) { lo = std::max(lo, 0.0); hi = std::min(hi, 1.0); }
            double line_best = 0.0;
            const double xi_new = golden_max(
                [&](double v) { return eval_coord(i, v); },
                lo, hi, std::max(h[i] * 1e-3, refine_tol * 0.1), line_best, evals);
            if (line_best >= best) {
                best = line_best;
                x[i] = xi_new;
            }
        }
        // Shrink only once a cycle stops producing real progress, so a slowly
        // drifting maximizer is not cut off by a collapsing bracket.
        if (best - before < 1e-9) {
            for (double& hc : h) hc = std::max(hc * 0.5, refine_tol * 0.5);
        }
    }
    return {best, x[0], x[1], x[2], spherical_state(x[0], x[1], 1.0)};
}

} // namespace detail

// Maximum of the duality sum over all input states for a fixed axis and
// beam-splitter angle. Stage 1 scans a Fibonacci lattice of pure states plus
// radial shells r in {0.25, 0.5, 0.75} to rule out interior maxima; stage 2
// refines (polar, azimuth, radius) coordinate-wise by golden section until
// the step drops below refine_tol. Refinement starts from the few best
// angularly separated lattice cells, not just the single best one: distinct
// humps of the landscape can lie closer in value than the lattice resolution
// resolves, so each gets climbed and the winner taken. Fully deterministic.
inline DualityBound l_max(const UnitAxis& axis, double omega, const LmaxOptions& opt = {}) {
    if (opt.grid_points < 1) {
        throw std::invalid_argument("l_max: grid_points must be positive");
    }
    long long evals = 0;
    const auto objective = [&](double polar, double azimuth, double radius) {
        ++evals;
        return duality_sum({omega, axis, detail::spherical_state(polar, azimuth, radius)}).sum;
    };

    const double golden_angle = pi * (3.0 - std::sqrt(5.0));
    const int n = opt.grid_points;
    constexpr std::size_t max_candidates = 8;
    constexpr double min_separation_cos = 0.955;  // ~0.3 rad apart
    std::vector<detail::LmaxCandidate> candidates;
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double polar = std::acos(std::clamp(z, -1.0, 1.0));
        const double azimuth = golden_angle * k;
        const Vec3 direction = detail::spherical_state(polar, azimuth, 1.0);
        for (double radius : {1.0, 0.25, 0.5, 0.75}) {
            const double value = objective(polar, azimuth, radius);
            bool merged = false;
            for (detail::LmaxCandidate& c : candidates) {
                if (dot(direction, c.direction) >= min_separation_cos) {
                    if (value > c.value) c = {value, polar, azimuth, radius, direction};
                    merged = true;
                    break;
                }
            }
            if (merged) continue;
            if (candidates.size() < max_candidates) {
                candidates.push_back({value, polar, azimuth, radius, direction});
            } else {
                auto worst = std::min_element(
                    candidates.begin(), candidates.end(),
                    [](const auto& a, const auto& b) { return a.value < b.value; });
                if (value > worst->value) *worst = {value, polar, azimuth, radius, direction};
            }
        }
    }

    detail::LmaxCandidate best{-1.0, 0.0, 0.0, 1.0, {0.0, 0.0, 1.0}};
    for (const detail::LmaxCandidate& c : candidates) {
        const detail::LmaxCandidate refined =
            detail::refine_candidate(objective, c, opt.refine_tol, evals);
        if (refined.value > best.value) best = refined;
    }

    return {best.value, detail::spherical_state(best.polar, best.azimuth, best.radius), evals, n};
}

} // namespace duality
