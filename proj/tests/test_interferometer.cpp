#include <doctest.h>

#include "duality/interferometer.hpp"
#include "test_helpers.hpp"

using namespace duality;
using test_helpers::random_axis;
using test_helpers::random_ball;
using test_helpers::random_angle;

namespace {

InterferometerConfig balanced(const UnitAxis& axis, const BlochVector& s) {
    return {pi / 2.0, axis, s};
}

} // namespace

TEST_CASE("config validates the input state") {
    CHECK_THROWS_AS(InterferometerConfig(pi / 2.0, UnitAxis::ez(), {1.1, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("t_vector permutes the axis components") {
    CHECK(norm(t_vector(UnitAxis::ez()).vec() - Vec3{-1.0, 0.0, 0.0}) == 0.0);
    CHECK(norm(t_vector(UnitAxis::ey()).vec() - Vec3{0.0, 1.0, 0.0}) == 0.0);
    CHECK(norm(t_vector(UnitAxis::ex()).vec() - Vec3{0.0, 0.0, 1.0}) == 0.0);

    SplitMix64 g(7);
    for (int k = 0; k < 200; ++k) {
        const UnitAxis m = random_axis(g);
        const UnitAxis twice = t_vector(t_vector(m));
        CHECK(norm(twice.vec() - Vec3{-m.x(), m.y(), -m.z()}) < 1e-15);
        CHECK(std::abs(norm(t_vector(m).vec()) - 1.0) < 1e-15);
    }
}

TEST_CASE("conjugated_axis reduces to t_vector at the balanced splitter") {
    SplitMix64 g(9);
    for (int k = 0; k < 200; ++k) {
        const UnitAxis m = random_axis(g);
        CHECK(norm(conjugated_axis(m, pi / 2.0).vec() - t_vector(m).vec()) < 1e-15);
        CHECK(norm(conjugated_axis(m, 0.0).vec() - m.vec()) < 1e-15);
    }
}

TEST_CASE("overall_unitary at phi = 0 is the identity") {
    SplitMix64 g(13);
    for (int k = 0; k < 100; ++k) {
        const InterferometerConfig cfg{random_angle(g), random_axis(g), random_ball(g)};
        CHECK(max_abs_diff(overall_unitary(cfg, 0.0), Mat2::identity()) < 1e-12);
    }
}

TEST_CASE("overall_unitary equals the single rotation about t at omega = pi/2") {
    SplitMix64 g(19);
    for (int k = 0; k < 1000; ++k) {
        const UnitAxis m = random_axis(g);
        const double phi = random_angle(g);
        const InterferometerConfig cfg = balanced(m, {0.0, 0.0, 0.0});
        const Unitary2 direct = rotation_unitary(t_vector(m), phi);
        CHECK(max_abs_diff(overall_unitary(cfg, phi), direct) < 1e-12);
        CHECK(is_unitary(overall_unitary(cfg, phi)));
    }
}

TEST_CASE("axis along e_y commutes with the splitter: V = U") {
    const double phi = 1.1;
    const InterferometerConfig cfg = balanced(UnitAxis::ey(), {0.0, 0.0, 0.0});
    CHECK(max_abs_diff(overall_unitary(cfg, phi),
                       rotation_unitary(UnitAxis::ey(), phi)) < 1e-12);
}

TEST_CASE("axis along e_z conjugates to a rotation about -e_x") {
    const double phi = 0.7;
    const InterferometerConfig cfg = balanced(UnitAxis::ez(), {0.0, 0.0, 0.0});
    // e^{+i sigma_x phi/2}
    const Unitary2 expected = rotation_unitary(UnitAxis::ex(), -phi);
    CHECK(max_abs_diff(overall_unitary(cfg, phi), expected) < 1e-12);
}

TEST_CASE("predictability closed form") {
    SplitMix64 g(21);
    for (int k = 0; k < 200; ++k) {
        const BlochVector s = random_ball(g);
        CHECK(predictability(balanced(random_axis(g), s)) == doctest::Approx(std::abs(s.x)).epsilon(1e-14));
    }
    CHECK(predictability(balanced(UnitAxis::ez(), {0.0, 0.0, 1.0})) < 1e-12);
    // no splitter at all: the path eigenstate stays put
    CHECK(predictability({0.0, UnitAxis::ez(), {0.0, 0.0, 1.0}}) == 1.0);
}

TEST_CASE("predictability agrees with the matrix route") {
    SplitMix64 g(27);
    for (int k = 0; k < 2000; ++k) {
        const InterferometerConfig cfg{random_angle(g), random_axis(g), random_ball(g)};
        CHECK(std::abs(predictability(cfg) - predictability_oracle(cfg)) < 1e-12);
    }
}

TEST_CASE("detection probability landmark values") {
    SplitMix64 g(33);
    // depolarized input: flat fringe at 1/2
    for (int k = 0; k < 50; ++k) {
        const InterferometerConfig cfg{random_angle(g), random_axis(g), {0.0, 0.0, 0.0}};
        CHECK(detection_probability(cfg, random_angle(g)) == 0.5);
    }
    // phi = 0 keeps |0> out of the -1 port
    for (int k = 0; k < 50; ++k) {
        const InterferometerConfig cfg = balanced(random_axis(g), {0.0, 0.0, 1.0});
        CHECK(detection_probability(cfg, 0.0) == 0.0);
    }
    // the standard fringe p = (1 - cos phi)/2 for the phase shifter on e_z input
    const InterferometerConfig mz = balanced(UnitAxis::ez(), {0.0, 0.0, 1.0});
    CHECK(detection_probability(mz, pi) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(detection_probability(mz, pi / 2.0) == doctest::Approx(0.5).epsilon(1e-14));
    // e_x input is a fixed point of the conjugated rotation: flat at 1/2
    const InterferometerConfig fixed_pt = balanced(UnitAxis::ez(), {1.0, 0.0, 0.0});
    CHECK(detection_probability(fixed_pt, pi) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("closed-form probability equals the matrix oracle") {
    SplitMix64 g(39);
    for (int k = 0; k < 10000; ++k) {
        const UnitAxis axis = random_axis(g);
        const BlochVector s = random_ball(g);
        const double phi = random_angle(g);
        const InterferometerConfig cfg_balanced = balanced(axis, s);
        CHECK(std::abs(detection_probability(cfg_balanced, phi) -
                       detection_probability_oracle(cfg_balanced, phi)) < 1e-12);
        const InterferometerConfig cfg_general{random_angle(g), axis, s};
        CHECK(std::abs(detection_probability(cfg_general, phi) -
                       detection_probability_oracle(cfg_general, phi)) < 1e-12);
    }
}

TEST_CASE("probability stays in [0,1] and is 2pi-periodic") {
    SplitMix64 g(47);
    for (int k = 0; k < 10000; ++k) {
        const InterferometerConfig cfg{random_angle(g), random_axis(g), random_ball(g)};
        const double phi = random_angle(g);
        const double p = detection_probability(cfg, phi);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(std::abs(p - detection_probability(cfg, phi + 2.0 * pi)) < 1e-12);
    }
}

TEST_CASE("final_state matches the density-matrix evolution") {
    SplitMix64 g(49);
    for (int k = 0; k < 1000; ++k) {
        const InterferometerConfig cfg{random_angle(g), random_axis(g), random_ball(g)};
        const double phi = random_angle(g);
        const BlochVector direct = final_state(cfg, phi);
        const BlochVector via_matrix = density_to_bloch(
            conjugate_state(overall_unitary(cfg, phi), bloch_to_density(cfg.input)));
        CHECK(norm(direct - via_matrix) < 1e-12);
    }
}

TEST_CASE("closed-form visibility landmark values") {
    SplitMix64 g(51);
    // e_z input: full fringe whenever |t_z| < 1
    for (int k = 0; k < 200; ++k) {
        const UnitAxis m = random_axis(g);
        if (std::abs(t_vector(m).z()) > 0.999) continue;
        CHECK(visibility_closed_form(balanced(m, {0.0, 0.0, 1.0})) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // a second beam splitter in the middle kills the fringe for every input
    for (int k = 0; k < 200; ++k) {
        CHECK(visibility_closed_form(balanced(UnitAxis::ex(), random_ball(g))) < 1e-12);
    }
    // no fringe from the depolarized state
    CHECK(visibility_closed_form(balanced(random_axis(g), {0.0, 0.0, 0.0})) == 0.0);
}

TEST_CASE("degenerate denominator returns zero visibility") {
    // s = e_z with t = e_z (axis e_x): p(phi) vanishes identically
    const InterferometerConfig cfg = balanced(UnitAxis::ex(), {0.0, 0.0, 1.0});
    CHECK(visibility_closed_form(cfg) == 0.0);
    CHECK(visibility_scan(cfg, 64) == 0.0);
}

TEST_CASE("closed-form visibility rejects unbalanced splitters") {
    CHECK_THROWS_AS(visibility_closed_form({0.3, UnitAxis::ez(), {0.0, 0.0, 0.5}}),
                    std::invalid_argument);
}

TEST_CASE("visibility scan matches the closed form at the balanced splitter") {
    SplitMix64 g(53);
    for (int k = 0; k < 1000; ++k) {
        const InterferometerConfig cfg = balanced(random_axis(g), random_ball(g));
        CHECK(std::abs(visibility_scan(cfg, 3) - visibility_closed_form(cfg)) < 1e-9);
    }
}

TEST_CASE("visibility scan landmark values") {
    CHECK(visibility_scan(balanced(UnitAxis::ey(), {1.0, 0.0, 0.0}), 3) == doctest::Approx(1.0).epsilon(1e-12));
    SplitMix64 g(57);
    CHECK(visibility_scan({random_angle(g), random_axis(g), {0.0, 0.0, 0.0}}, 3) < 1e-12);
    CHECK_THROWS_AS(visibility_scan(balanced(UnitAxis::ey(), {1.0, 0.0, 0.0}), 2),
                    std::invalid_argument);
}

TEST_CASE("dense-grid validation path agrees with the 3-point recovery") {
    SplitMix64 g(59);
    for (int k = 0; k < 5; ++k) {
        const InterferometerConfig cfg{random_angle(g), random_axis(g), random_ball(g)};
        CHECK_NOTHROW(visibility_scan(cfg, 10000));
    }
}

TEST_CASE("visibility is bounded by 1 and predictability by |s|") {
    SplitMix64 g(61);
    for (int k = 0; k < 10000; ++k) {
        const BlochVector s = random_ball(g);
        const InterferometerConfig cfg{random_angle(g), random_axis(g), s};
        const double v = visibility_scan(cfg, 3);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        const double p = predictability(cfg);
        CHECK(p >= 0.0);
        CHECK(p <= norm(s) + 1e-12);
    }
}

TEST_CASE("standard interferometer identity P^2 + V^2 = |s|^2") {
    SplitMix64 g(63);
    for (int k = 0; k < 10000; ++k) {
        const BlochVector s = random_ball(g);
        const InterferometerConfig cfg = balanced(UnitAxis::ez(), s);
        const double p = predictability(cfg);
        const double v = visibility_closed_form(cfg);
        CHECK(std::abs(p * p + v * v - dot(s, s)) < 1e-9);
    }
}

TEST_CASE("fringe_curve produces a well-formed grid") {
    const InterferometerConfig cfg = balanced(UnitAxis::ey(), {0.6, 0.0, 0.0});
    const FringeCurve curve = fringe_curve(cfg);
    REQUIRE(curve.phis.size() == 256);
    REQUIRE(curve.probs.size() == 256);
    for (std::size_t k = 0; k < curve.phis.size(); ++k) {
        CHECK(curve.probs[k] >= 0.0);
        CHECK(curve.probs[k] <= 1.0);
        if (k > 0) CHECK(curve.phis[k] > curve.phis[k - 1]);
    }
}
