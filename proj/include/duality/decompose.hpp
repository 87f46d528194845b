#pragma once

#include <stdexcept>

#include "duality/qubit.hpp"

// Phase-shifter / beam-splitter / phase-shifter factorization of a 2x2
// unitary:
//
//   U = e^{i varphi} diag(e^{i psi}, e^{-i psi})
//                    [[cos chi, sin chi], [-sin chi, cos chi]]
//                    diag(e^{i delta}, e^{-i delta})
//     = e^{i varphi} e^{i psi sigma_z} e^{i chi sigma_y} e^{i delta sigma_z}.

namespace duality {

struct FactoredUnitary {
    double varphi;   // global phase
    double psi;      // outgoing phase shift, (-pi, pi]
    double chi;      // beam-splitter angle, [0, pi/2]
    double delta;    // incoming phase shift, (-pi, pi]
};

namespace detail {
inline double wrap_pi(double a) {
    // into (-pi, pi]
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    if (a > pi) a -= 2.0 * pi;
    return a;
}
} // namespace detail

// Literal product of the four factors.
inline Unitary2 recompose(const FactoredUnitary& f) {
    const Mat2 left{std::polar(1.0, f.psi), 0.0, 0.0, std::polar(1.0, -f.psi)};
    const Mat2 middle{std::cos(f.chi), std::sin(f.chi), -std::sin(f.chi), std::cos(f.chi)};
    const Mat2 right{std::polar(1.0, f.delta), 0.0, 0.0, std::polar(1.0, -f.delta)};
    return std::polar(1.0, f.varphi) * (left * middle * right);
}

// Extracts (varphi, psi, chi, delta). After removing the global phase the
// SU(2) representative reads [[a, b], [-conj(b), conj(a)]] with
// a = cos(chi) e^{i(psi + delta)} and b = sin(chi) e^{i(psi - delta)}. The
// sign of the representative is fixed by requiring arg of the dominant entry
// to lie in (-pi/2, pi/2], which keeps psi/chi/delta invariant under any
// global phase of the input; varphi absorbs the difference. Degenerate
// conventions: chi = 0 or pi/2 puts the whole phase into psi and sets
// delta = 0.
inline FactoredUnitary factorize_unitary(const Unitary2& u) {
    if (!is_unitary(u, 1e-10)) {
        throw std::invalid_argument("factorize_unitary: input is not unitary");
    }
    double varphi = std::arg(u.det()) / 2.0;
    Mat2 w = std::polar(1.0, -varphi) * u;
    const double abs_a = std::abs(w.m00);
    const double abs_b = std::abs(w.m01);
    const double ref_arg = abs_a >= abs_b ? std::arg(w.m00) : std::arg(w.m01);
    if (ref_arg <= -pi / 2.0 || ref_arg > pi / 2.0) {
        w = complex(-1.0, 0.0) * w;
        varphi = detail::wrap_pi(varphi + pi);
    }
    const complex a = w.m00;
    const complex b = w.m01;
    const double chi = std::atan2(std::abs(b), std::abs(a));
    double psi = 0.0;
    double delta = 0.0;
    if (std::abs(b) <= 1e-14) {
        psi = std::arg(a);
    } else if (std::abs(a) <= 1e-14) {
        psi = std::arg(b);
    } else {
        psi = (std::arg(a) + std::arg(b)) / 2.0;
        delta = (std::arg(a) - std::arg(b)) / 2.0;
    }
    return {varphi, psi, chi, delta};
}

} // namespace duality
