#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "duality/qubit.hpp"

// The generalized two-way interferometer
//
//     BS(omega)  ->  U(axis, phi)  ->  BS(omega)^-1  ->  measure sigma_z
//
// with BS(omega) = e^{-i omega sigma_y / 2} (omega = pi/2 is the balanced
// 50:50 splitter) and U = e^{-i axis.sigma phi/2}. Detection probability,
// predictability and fringe visibility are each available along two routes:
// a closed form in Bloch language and a matrix-evolution oracle.

namespace duality {

struct InterferometerConfig {
    double omega;        // beam-splitter angle, radians
    UnitAxis axis;       // rotation axis of the middle unitary
    BlochVector input;   // initial state, |input| <= 1

    InterferometerConfig(double omega_, const UnitAxis& axis_, const BlochVector& input_)
        : omega(omega_), axis(axis_), input(input_) {
        if (!is_valid_state(input_)) {
            throw std::invalid_argument("InterferometerConfig: input state outside the Bloch ball");
        }
    }
};

inline bool is_balanced(const InterferometerConfig& cfg) {
    return std::abs(cfg.omega - pi / 2.0) <= invariant_tol;
}

// Axis of the overall unitary at omega = pi/2:
//   t(m) = -m_z e_x + m_y e_y + m_x e_z.
// Exact component permutation, no trigonometry.
inline UnitAxis t_vector(const UnitAxis& m) {
    return {-m.z(), m.y(), m.x()};
}

// Axis of the overall unitary for arbitrary omega: m rotated by -omega about
// e_y. Reduces to t_vector(m) at omega = pi/2.
inline UnitAxis conjugated_axis(const UnitAxis& m, double omega) {
    const double c = std::cos(omega);
    const double s = std::sin(omega);
    return UnitAxis::normalized({c * m.x() - s * m.z(),
                                 m.y(),
                                 s * m.x() + c * m.z()});
}

// V = e^{+i omega sigma_y/2} U e^{-i omega sigma_y/2}, as an explicit matrix
// product. This is the oracle route; closed forms never touch it.
inline Unitary2 overall_unitary(const InterferometerConfig& cfg, double phi) {
    const Unitary2 bs = rotation_unitary(UnitAxis::ey(), cfg.omega);
    const Unitary2 bs_inv = rotation_unitary(UnitAxis::ey(), -cfg.omega);
    return bs_inv * rotation_unitary(cfg.axis, phi) * bs;
}

// p(phi) = a - b cos(phi) - c sin(phi); exact for every omega.
struct FringeCoefficients {
    double a, b, c;
};

inline FringeCoefficients fringe_coefficients(const InterferometerConfig& cfg) {
    const Vec3 t = conjugated_axis(cfg.axis, cfg.omega).vec();
    const Vec3& s = cfg.input;
    const double ts_tz = dot(t, s) * t.z;
    return {0.5 * (1.0 - ts_tz),
            0.5 * (s.z - ts_tz),
            0.5 * cross(t, s).z};
}

// Probability of the -1 outcome after the full pass, closed form.
inline double detection_probability(const InterferometerConfig& cfg, double phi) {
    const FringeCoefficients f = fringe_coefficients(cfg);
    const double p = f.a - f.b * std::cos(phi) - f.c * std::sin(phi);
    return std::clamp(p, 0.0, 1.0);
}

// Same quantity via trace[(1 - sigma_z)/2 . V rho V^dagger].
inline double detection_probability_oracle(const InterferometerConfig& cfg, double phi) {
    const Unitary2 v = overall_unitary(cfg, phi);
    const DensityMatrix rho_f = conjugate_state(v, bloch_to_density(cfg.input));
    const Mat2 projector_minus{0.0, 0.0, 0.0, 1.0};
    const double p = (projector_minus * rho_f).trace().real();
    return std::clamp(p, 0.0, 1.0);
}

// Final Bloch vector after the full pass.
inline BlochVector final_state(const InterferometerConfig& cfg, double phi) {
    return rotate_bloch(conjugated_axis(cfg.axis, cfg.omega), phi, cfg.input);
}

// P = |w+ - w-| = |s_z cos(omega) - s_x sin(omega)|, the a-priori path bias
// after the first beam splitter. |s_x| for the balanced splitter.
inline double predictability(const InterferometerConfig& cfg) {
    const double p = std::abs(cfg.input.z * std::cos(cfg.omega) -
                              cfg.input.x * std::sin(cfg.omega));
    return std::min(p, 1.0);
}

// Matrix route: push the state through the first splitter and read |s_1z|.
inline double predictability_oracle(const InterferometerConfig& cfg) {
    const Unitary2 bs = rotation_unitary(UnitAxis::ey(), cfg.omega);
    const BlochVector s1 = density_to_bloch(conjugate_state(bs, bloch_to_density(cfg.input)));
    return std::min(std::abs(s1.z), 1.0);
}

// Closed-form visibility for the balanced splitter,
//
//   V = sqrt( ([s_z - (t.s) t_z]^2 + [(t x s)_z]^2) / [1 - (t.s) t_z]^2 ),
//
// with t = t_vector(axis). A vanishing denominator happens only for
// s = e_z = +-t, where p(phi) vanishes identically and V = 0.
inline double visibility_closed_form(const InterferometerConfig& cfg) {
    if (!is_balanced(cfg)) {
        throw std::invalid_argument("visibility_closed_form: defined for omega = pi/2 only; use visibility_scan");
    }
    const Vec3 t = t_vector(cfg.axis).vec();
    const Vec3& s = cfg.input;
    const double ts_tz = dot(t, s) * t.z;
    const double den = 1.0 - ts_tz;
    if (den < 1e-15) return 0.0;
    const double b = s.z - ts_tz;
    const double c = cross(t, s).z;
    return std::min(std::sqrt(b * b + c * c) / den, 1.0);
}

// Visibility from the fringe itself, (I_max - I_min)/(I_max + I_min), for any
// omega. p(phi) is exactly sinusoidal, so three oracle samples at
// phi in {0, pi/2, pi} recover the coefficients without error:
//   a = (p(0) + p(pi))/2,  b = (p(pi) - p(0))/2,  c = a - p(pi/2).
// For n_points >= 10^4 the result is additionally validated against a dense
// grid I_max/I_min extraction.
inline double visibility_scan(const InterferometerConfig& cfg, int n_points) {
    if (n_points < 3) {
        throw std::invalid_argument("visibility_scan: n_points must be >= 3");
    }
    const double p0 = detection_probability_oracle(cfg, 0.0);
    const double p_half = detection_probability_oracle(cfg, pi / 2.0);
    const double p_pi = detection_probability_oracle(cfg, pi);
    const double a = (p0 + p_pi) / 2.0;
    const double b = (p_pi - p0) / 2.0;
    const double c = a - p_half;
    if (a <= 1e-15) return 0.0;
    const double v = std::min(std::sqrt(b * b + c * c) / a, 1.0);

    if (n_points >= 10000) {
        double i_max = -1.0;
        double i_min = 2.0;
        for (int k = 0; k < n_points; ++k) {
            const double p = detection_probability_oracle(cfg, 2.0 * pi * k / n_points);
            i_max = std::max(i_max, p);
            i_min = std::min(i_min, p);
        }
        const double sum = i_max + i_min;
        const double v_dense = sum > 0.0 ? (i_max - i_min) / sum : 0.0;
        if (std::abs(v - v_dense) > 1e-6) {
            throw std::logic_error("visibility_scan: 3-point recovery disagrees with dense-grid extraction");
        }
    }
    return v;
}

// One recorded fringe: detection probability on a phase grid over [0, 2pi).
struct FringeCurve {
    std::vector<double> phis;
    std::vector<double> probs;
};

inline FringeCurve fringe_curve(const InterferometerConfig& cfg, int n_points = 256) {
    if (n_points < 1) {
        throw std::invalid_argument("fringe_curve: n_points must be positive");
    }
    FringeCurve curve;
    curve.phis.reserve(n_points);
    curve.probs.reserve(n_points);
    for (int k = 0; k < n_points; ++k) {
        const double phi = 2.0 * pi * k / n_points;
        curve.phis.push_back(phi);
        curve.probs.push_back(detection_probability(cfg, phi));
    }
    return curve;
}

} // namespace duality
