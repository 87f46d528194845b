#include <doctest.h>

#include "duality/qubit.hpp"
#include "test_helpers.hpp"

using namespace duality;
using test_helpers::random_axis;
using test_helpers::random_ball;
using test_helpers::random_angle;

namespace {
const complex i_unit(0.0, 1.0);
}

TEST_CASE("bloch_to_density landmark states") {
    // maximally mixed
    const DensityMatrix mixed = bloch_to_density({0.0, 0.0, 0.0});
    CHECK(max_abs_diff(mixed, {0.5, 0.0, 0.0, 0.5}) == 0.0);

    // |0><0|
    const DensityMatrix up = bloch_to_density({0.0, 0.0, 1.0});
    CHECK(max_abs_diff(up, {1.0, 0.0, 0.0, 0.0}) == 0.0);

    // (1 + sigma_x)/2: every entry 1/2
    const DensityMatrix plus = bloch_to_density({1.0, 0.0, 0.0});
    CHECK(max_abs_diff(plus, {0.5, 0.5, 0.5, 0.5}) == 0.0);
}

TEST_CASE("bloch_to_density rejects vectors outside the ball") {
    CHECK_THROWS_AS(bloch_to_density({1.0 + 1e-6, 0.0, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(bloch_to_density({1.0, 0.0, 0.0}));
}

TEST_CASE("density_to_bloch inverts the representation") {
    const BlochVector origin = density_to_bloch({0.5, 0.0, 0.0, 0.5});
    CHECK(norm(origin) == 0.0);

    const BlochVector ez = density_to_bloch({1.0, 0.0, 0.0, 0.0});
    CHECK(ez.z == doctest::Approx(1.0).epsilon(1e-14));

    const BlochVector ex = density_to_bloch({0.5, 0.5, 0.5, 0.5});
    CHECK(ex.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(ex.y) < 1e-15);
    CHECK(std::abs(ex.z) < 1e-15);

    SplitMix64 g(11);
    for (int k = 0; k < 1000; ++k) {
        const BlochVector s = random_ball(g);
        const BlochVector back = density_to_bloch(bloch_to_density(s));
        CHECK(norm(back - s) < 1e-12);
    }
}

TEST_CASE("density_to_bloch rejects invalid matrices") {
    // non-Hermitian
    CHECK_THROWS_AS(density_to_bloch({0.5, 0.3, 0.1, 0.5}), std::invalid_argument);
    // trace != 1
    CHECK_THROWS_AS(density_to_bloch({0.7, 0.0, 0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("rotation_unitary known matrices") {
    // the balanced beam splitter (1 - i sigma_y)/sqrt(2)
    const Unitary2 bs = rotation_unitary(UnitAxis::ey(), pi / 2.0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(max_abs_diff(bs, {r, -r, r, r}) < 1e-15);

    // zero angle
    SplitMix64 gz(3);
    const Unitary2 id = rotation_unitary(random_axis(gz), 0.0);
    CHECK(max_abs_diff(id, Mat2::identity()) == 0.0);

    // diagonal exponential of sigma_z
    const double phi = 0.8;
    const Unitary2 ps = rotation_unitary(UnitAxis::ez(), phi);
    const Mat2 expect{std::polar(1.0, -phi / 2.0), 0.0, 0.0, std::polar(1.0, phi / 2.0)};
    CHECK(max_abs_diff(ps, expect) < 1e-15);
}

TEST_CASE("rotation_unitary is special unitary") {
    SplitMix64 g(17);
    for (int k = 0; k < 200; ++k) {
        const Unitary2 u = rotation_unitary(random_axis(g), random_angle(g));
        CHECK(is_unitary(u));
        CHECK(std::abs(u.det() - complex(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("full turn gives the spinor sign") {
    SplitMix64 g(23);
    for (int k = 0; k < 50; ++k) {
        const UnitAxis axis = random_axis(g);
        const Unitary2 u = rotation_unitary(axis, 2.0 * pi);
        CHECK(max_abs_diff(u, complex(-1.0, 0.0) * Mat2::identity()) < 1e-12);
        const BlochVector s = random_ball(g);
        const BlochVector rotated = density_to_bloch(conjugate_state(u, bloch_to_density(s)));
        CHECK(norm(rotated - s) < 1e-12);
        CHECK(norm(rotate_bloch(axis, 2.0 * pi, s) - s) < 1e-12);
    }
}

TEST_CASE("rotate_bloch landmark rotations") {
    // balanced splitter sends e_z to e_x
    const BlochVector sx = rotate_bloch(UnitAxis::ey(), pi / 2.0, {0.0, 0.0, 1.0});
    CHECK(norm(sx - Vec3{1.0, 0.0, 0.0}) < 1e-15);

    // ... and s_x e_x to -s_x e_z  (e_y x e_x = -e_z)
    const BlochVector sz = rotate_bloch(UnitAxis::ey(), pi / 2.0, {0.4, 0.0, 0.0});
    CHECK(norm(sz - Vec3{0.0, 0.0, -0.4}) < 1e-15);

    // the depolarized state is a fixed point
    SplitMix64 g(5);
    const BlochVector zero = rotate_bloch(random_axis(g), random_angle(g), {0.0, 0.0, 0.0});
    CHECK(norm(zero) == 0.0);
}

TEST_CASE("rotate_bloch is an isometry") {
    SplitMix64 g(29);
    for (int k = 0; k < 10000; ++k) {
        const BlochVector s = random_ball(g);
        const BlochVector r = rotate_bloch(random_axis(g), random_angle(g), s);
        CHECK(std::abs(norm(r) - norm(s)) < 1e-12);
    }
}

TEST_CASE("rotate_bloch agrees with unitary conjugation") {
    SplitMix64 g(31);
    for (int k = 0; k < 10000; ++k) {
        const UnitAxis axis = random_axis(g);
        const double angle = random_angle(g);
        const BlochVector s = random_ball(g);
        const BlochVector via_bloch = rotate_bloch(axis, angle, s);
        const BlochVector via_matrix =
            density_to_bloch(conjugate_state(rotation_unitary(axis, angle), bloch_to_density(s)));
        CHECK(norm(via_bloch - via_matrix) < 1e-12);
    }
}

TEST_CASE("rotations about one axis compose additively") {
    SplitMix64 g(37);
    for (int k = 0; k < 1000; ++k) {
        const UnitAxis axis = random_axis(g);
        const double a = random_angle(g);
        const double b = random_angle(g);
        const BlochVector s = random_ball(g);
        const BlochVector two_step = rotate_bloch(axis, b, rotate_bloch(axis, a, s));
        const BlochVector one_step = rotate_bloch(axis, a + b, s);
        CHECK(norm(two_step - one_step) < 1e-12);
    }
}

TEST_CASE("conjugate_state landmark maps") {
    SplitMix64 g(41);
    const DensityMatrix rho = bloch_to_density(random_ball(g));
    CHECK(max_abs_diff(conjugate_state(Mat2::identity(), rho), rho) == 0.0);

    const Unitary2 bs = rotation_unitary(UnitAxis::ey(), pi / 2.0);
    const DensityMatrix rho_x = conjugate_state(bs, bloch_to_density({0.0, 0.0, 1.0}));
    CHECK(max_abs_diff(rho_x, bloch_to_density({1.0, 0.0, 0.0})) < 1e-15);

    // phase shifter precesses e_x about e_z
    const double phi = 1.3;
    const Unitary2 ps = rotation_unitary(UnitAxis::ez(), phi);
    const DensityMatrix rotated = conjugate_state(ps, bloch_to_density({1.0, 0.0, 0.0}));
    CHECK(max_abs_diff(rotated, bloch_to_density({std::cos(phi), std::sin(phi), 0.0})) < 1e-15);
}

TEST_CASE("conjugate_state preserves density-matrix invariants") {
    SplitMix64 g(43);
    for (int k = 0; k < 1000; ++k) {
        const Unitary2 u = rotation_unitary(random_axis(g), random_angle(g));
        const DensityMatrix rho = conjugate_state(u, bloch_to_density(random_ball(g)));
        CHECK(is_density_matrix(rho));
    }
}

TEST_CASE("pauli matrices square to the identity") {
    for (const Mat2& s : {sigma_x, sigma_y, sigma_z}) {
        CHECK(max_abs_diff(s * s, Mat2::identity()) == 0.0);
        CHECK(is_hermitian(s));
        CHECK(is_unitary(s));
    }
    CHECK(max_abs_diff(sigma_x * sigma_y, i_unit * sigma_z) == 0.0);
}

TEST_CASE("unit axis construction") {
    CHECK_THROWS_AS(UnitAxis(0.5, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(UnitAxis::normalized({0.0, 0.0, 0.0}), std::invalid_argument);
    const UnitAxis a = UnitAxis::normalized({3.0, 0.0, 4.0});
    CHECK(a.x() == doctest::Approx(0.6));
    CHECK(a.z() == doctest::Approx(0.8));
}
