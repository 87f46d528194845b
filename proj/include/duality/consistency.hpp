#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include "duality/landscape.hpp"
#include "duality/rng.hpp"

// Numerical adjudication of every closed form against the matrix-evolution
// pipeline, which is the single source of truth. This includes the quoted
// closed form for the unbalanced splitter, whose azimuth convention is
// checked both verbatim and with xi -> pi/2 - xi, and the value of the
// Cartesian landscape on the line m_z = -m_x.

namespace duality {

struct ConsistencyReport {
    int samples = 0;
    std::uint64_t seed = 0;

    // closed forms vs the matrix oracle
    double residual_p_balanced = 0.0;        // detection probability, omega = pi/2
    double residual_p_general = 0.0;         // detection probability, random omega
    double residual_visibility_balanced = 0.0; // closed-form visibility vs scan
    double residual_duality_spherical = 0.0;   // F_spherical vs oracle P^2 + V^2

    // quoted omega-formula vs oracle P^2 + V^2
    double widetext_identity_xi_balanced = 0.0;
    double widetext_shifted_xi_balanced = 0.0;
    double widetext_identity_xi_general = 0.0;
    double widetext_shifted_xi_general = 0.0;

    // f_cartesian on the segment m_z = -m_x, |m_x| < 1/sqrt(2)
    double line_max_deviation_from_two = 0.0;
    double line_value = 0.0;

    std::string adjudication;
};

namespace detail {

inline BlochVector random_ball(SplitMix64& g) {
    const double z = 2.0 * g.next_double() - 1.0;
    const double az = 2.0 * pi * g.next_double();
    const double r = std::cbrt(g.next_double());
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * s * std::cos(az), r * s * std::sin(az), r * z};
}

inline UnitAxis random_axis(SplitMix64& g) {
    const double z = 2.0 * g.next_double() - 1.0;
    const double az = 2.0 * pi * g.next_double();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return UnitAxis::normalized({s * std::cos(az), s * std::sin(az), z});
}

// P^2 + V^2 with both factors taken from the matrix-evolution route.
inline double oracle_duality_sum(const InterferometerConfig& cfg) {
    const double p = predictability_oracle(cfg);
    const double v = visibility_scan(cfg, 3);
    return p * p + v * v;
}

} // namespace detail

inline ConsistencyReport run_consistency(int samples, std::uint64_t seed) {
    ConsistencyReport rep;
    rep.samples = samples;
    rep.seed = seed;
    SplitMix64 g = substream(seed, 0);

    for (int i = 0; i < samples; ++i) {
        const UnitAxis axis = detail::random_axis(g);
        const BlochVector s = detail::random_ball(g);
        const double phi = 2.0 * pi * g.next_double();
        const double omega = 2.0 * pi * g.next_double();

        const InterferometerConfig balanced{pi / 2.0, axis, s};
        rep.residual_p_balanced = std::max(
            rep.residual_p_balanced,
            std::abs(detection_probability(balanced, phi) - detection_probability_oracle(balanced, phi)));
        rep.residual_visibility_balanced = std::max(
            rep.residual_visibility_balanced,
            std::abs(visibility_closed_form(balanced) - visibility_scan(balanced, 3)));

        const InterferometerConfig general{omega, axis, s};
        rep.residual_p_general = std::max(
            rep.residual_p_general,
            std::abs(detection_probability(general, phi) - detection_probability_oracle(general, phi)));

        // landscape slices use s = s_x e_x and a spherical axis
        const double sx = 2.0 * g.next_double() - 1.0;
        const double theta = pi * g.next_double();
        const double xi = 2.0 * pi * g.next_double();
        const double st = std::sin(theta);
        const UnitAxis sph_axis = UnitAxis::normalized({st * std::cos(xi), st * std::sin(xi), std::cos(theta)});
        const double oracle_balanced = detail::oracle_duality_sum({pi / 2.0, sph_axis, {sx, 0.0, 0.0}});
        rep.residual_duality_spherical = std::max(
            rep.residual_duality_spherical,
            std::abs(F_spherical(sx, theta, xi) - oracle_balanced));

        const double sx_pos = std::abs(sx);
        const double oracle_pos = detail::oracle_duality_sum({pi / 2.0, sph_axis, {sx_pos, 0.0, 0.0}});
        rep.widetext_identity_xi_balanced = std::max(
            rep.widetext_identity_xi_balanced,
            std::abs(duality_sum_omega_paper(sx_pos, theta, xi, pi / 2.0) - oracle_pos));
        rep.widetext_shifted_xi_balanced = std::max(
            rep.widetext_shifted_xi_balanced,
            std::abs(duality_sum_omega_paper(sx_pos, theta, pi / 2.0 - xi, pi / 2.0) - oracle_pos));

        const double oracle_omega = detail::oracle_duality_sum({omega, sph_axis, {sx_pos, 0.0, 0.0}});
        rep.widetext_identity_xi_general = std::max(
            rep.widetext_identity_xi_general,
            std::abs(duality_sum_omega_paper(sx_pos, theta, xi, omega) - oracle_omega));
        rep.widetext_shifted_xi_general = std::max(
            rep.widetext_shifted_xi_general,
            std::abs(duality_sum_omega_paper(sx_pos, theta, pi / 2.0 - xi, omega) - oracle_omega));
    }

    // the line m_z = -m_x
    const int line_samples = std::max(samples, 2);
    double line_min = 3.0, line_max = -1.0;
    for (int i = 0; i < line_samples; ++i) {
        const double mx = (2.0 * g.next_double() - 1.0) * (1.0 / std::sqrt(2.0) - 1e-9);
        const double f = f_cartesian(mx, -mx);
        line_min = std::min(line_min, f);
        line_max = std::max(line_max, f);
        rep.line_max_deviation_from_two = std::max(rep.line_max_deviation_from_two, std::abs(f - 2.0));
    }
    rep.line_value = (line_min + line_max) / 2.0;

    std::ostringstream adj;
    adj << "matrix evolution is ground truth. quoted omega-formula at omega=pi/2: "
        << "verbatim xi residual " << rep.widetext_identity_xi_balanced
        << ", shifted xi (xi -> pi/2 - xi) residual " << rep.widetext_shifted_xi_balanced
        << " -> the shifted convention is the one consistent with F(s_x, Theta, xi) at the balanced splitter. "
        << "for general omega the residuals are " << rep.widetext_identity_xi_general
        << " (verbatim) and " << rep.widetext_shifted_xi_general
        << " (shifted): neither convention reproduces the oracle away from omega = pi/2. "
        << "f_cartesian equals " << rep.line_value << " on the line m_z = -m_x (max deviation from 2: "
        << rep.line_max_deviation_from_two << "), not 1; the additive second term is what attains 1 there.";
    rep.adjudication = adj.str();
    return rep;
}

} // namespace duality
