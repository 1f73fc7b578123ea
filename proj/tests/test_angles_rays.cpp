#include <doctest.h>

#include <cmath>

#include "mandel/angle.hpp"
#include "mandel/rays.hpp"

using namespace mandel;

TEST_CASE("rational angle arithmetic and formatting") {
    RationalAngle third(1, 3);
    CHECK(third.str() == "1/3");
    CHECK(third.doubled() == RationalAngle(2, 3));
    CHECK(third.doubled().doubled() == third);
    CHECK(third.halved() == RationalAngle(1, 6));
    CHECK(third.half_plus() == RationalAngle(2, 3));
    CHECK(RationalAngle::parse("5/6") == RationalAngle(5, 6));
    CHECK(RationalAngle::parse("0") == RationalAngle());
    CHECK(RationalAngle(4, 6) == RationalAngle(2, 3));  // reduction
}

TEST_CASE("doubling cycle of 1/7 has period 3") {
    DoublingCycle cyc = doubling_cycle(RationalAngle(1, 7));
    CHECK(cyc.preperiod == 0);
    CHECK(cyc.period == 3);
    CHECK(cyc.cycle.size() == 3);
}

TEST_CASE("binary tuning with trivial blocks is the identity") {
    for (auto [p, q] : {std::pair{1, 3}, {1, 6}, {3, 7}, {5, 12}}) {
        RationalAngle a(p, q);
        CHECK(tune_angle(a, "0", "1") == a);
    }
}

TEST_CASE("binary tuning with the period-3 wake blocks") {
    // 1/3 = .(01) -> .(011 100) = 28/63 = 4/9
    CHECK(tune_angle(RationalAngle(1, 3), "011", "100") == RationalAngle(4, 9));
    CHECK(tune_angle(RationalAngle(2, 3), "011", "100") == RationalAngle(5, 9));
}

TEST_CASE("ray landings at c=-2 match the Joukowski closed form 2cos(2 pi theta)") {
    const Cplx c{-2.0, 0.0};
    for (auto [p, q] : {std::pair{0, 1}, {1, 6}, {1, 3}, {2, 3}}) {
        RationalAngle theta(p, q);
        RayPolyline ray = trace_dynamical_ray(c, theta, 1e-9);
        double expected = 2.0 * std::cos(2.0 * M_PI * theta.to_double());
        CHECK(std::abs(ray.points.back() - Cplx(expected, 0.0)) < 1e-4);
    }
}

TEST_CASE("ray points sit at their nominal potential") {
    const Cplx c{-0.4, 0.3};
    RationalAngle theta(1, 5);
    for (double g : {1.0, 0.25, 0.01}) {
        Cplx z = dynamical_ray_point(c, theta, g);
        CHECK(std::abs(green_potential(c, z) - g) < 1e-9);
    }
}

TEST_CASE("Boettcher coordinate inverts the potential and angle") {
    const Cplx c{-2.0, 0.0};
    Cplx z = dynamical_ray_point(c, RationalAngle(1, 3), 0.5);
    Cplx phi = boettcher(c, z);
    CHECK(std::abs(std::log(std::abs(phi)) - 0.5) < 1e-10);
    double arg = std::arg(phi) / (2.0 * M_PI);
    if (arg < 0) arg += 1.0;
    CHECK(std::abs(arg - 1.0 / 3.0) < 1e-10);
}

TEST_CASE("equipotential curve stays on its level") {
    const Cplx c{0.25, 0.1};
    ClosedCurve curve = equipotential_curve(c, 0.8, 64);
    REQUIRE(curve.closed());
    for (size_t i = 0; i + 1 < curve.points.size(); i += 7)
        CHECK(std::abs(green_potential(c, curve.points[i]) - 0.8) < 1e-9);
}

TEST_CASE("parameter ray at angle 0 runs along the positive real axis") {
    Cplx c = parameter_ray_point(RationalAngle(0, 1), 0.05);
    CHECK(std::abs(c.imag()) < 1e-9);
    CHECK(c.real() > 0.25);
}
