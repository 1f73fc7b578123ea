#include <doctest.h>

#include <cmath>
#include <random>

#include "mandel/dynamics.hpp"

using namespace mandel;

TEST_CASE("fixed points satisfy Vieta identities over random parameters") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 10000; ++i) {
        Cplx c{dist(rng), dist(rng)};
        FixedPointPair fp = fixed_points(c);
        CHECK(std::abs(fp.alpha + fp.beta - 1.0) < 1e-12);
        CHECK(std::abs(fp.alpha * fp.beta - c) < 1e-12);
        CHECK(std::abs(fp.multiplier_alpha - 2.0 * fp.alpha) < 1e-12);
        CHECK(std::abs(fp.multiplier_beta - 2.0 * fp.beta) < 1e-12);
    }
}

TEST_CASE("anchor parameter -2: fixed points and orbit classification") {
    FixedPointPair fp = fixed_points({-2.0, 0.0});
    CHECK(std::abs(fp.alpha - Cplx(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(fp.beta - Cplx(2.0, 0.0)) < 1e-12);

    CriticalOrbitTag tag = classify_critical_orbit({-2.0, 0.0});
    CHECK(tag.kind == CriticalOrbitTag::Kind::PreperiodicRepelling);
    CHECK(tag.preperiod == 2);
    CHECK(tag.period == 1);
    CHECK(std::abs(tag.multiplier - Cplx(4.0, 0.0)) < 1e-9);
}

TEST_CASE("superstable and escaping orbit classification") {
    CriticalOrbitTag basilica = classify_critical_orbit({-1.0, 0.0});
    CHECK(basilica.kind == CriticalOrbitTag::Kind::SuperstablePeriod);
    CHECK(basilica.period == 2);

    CriticalOrbitTag outside = classify_critical_orbit({0.3, 0.0});
    CHECK(outside.kind == CriticalOrbitTag::Kind::Escaped);
}

TEST_CASE("Green potential functional equation G(P(z)) = 2 G(z)") {
    const Cplx cs[] = {{-2.0, 0.0}, {0.3, 0.2}, {-0.7, 0.4}};
    const Cplx zs[] = {{3.0, 0.0}, {2.5, 1.0}, {-2.2, 0.7}, {0.4, 2.3}};
    for (Cplx c : cs)
        for (Cplx z : zs) {
            double g = green_potential(c, z);
            double g2 = green_potential(c, z * z + c);
            REQUIRE(g > 0.0);
            CHECK(std::abs(g2 - 2.0 * g) < 1e-9);
        }
}

TEST_CASE("Green potential at c=-2 matches the closed form on the real axis") {
    // G_{-2}(x) = log((x + sqrt(x^2-4))/2) for x > 2.
    double expected = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    CHECK(std::abs(green_potential({-2.0, 0.0}, {3.0, 0.0}) - expected) < 1e-6);
}

TEST_CASE("critical orbit derivative agrees with finite differences up to m = 20") {
    // Parameters with bounded critical orbit, so the jet stays finite at m = 20.
    const Cplx cs[] = {{-1.0, 0.0}, {0.2, 0.1}, {0.0, 1.0}};
    for (Cplx c : cs)
        for (int m = 1; m <= 20; ++m) {
            CriticalOrbitJet jet = critical_orbit_jet(c, m);
            // The m-th orbit derivative grows roughly like 4^m near a
            // repelling landing orbit; keep the probe displacement small
            // relative to it so the difference quotient stays in regime.
            const double h = 1e-7 / (1.0 + std::sqrt(std::abs(jet.derivative)));
            Cplx fd = (critical_orbit_jet(c + h, m).value -
                       critical_orbit_jet(c - h, m).value) /
                      (2.0 * h);
            double scale = std::max(1.0, std::abs(jet.derivative));
            CHECK(std::abs(jet.derivative - fd) / scale < 1e-5);
        }
}

TEST_CASE("orbit iteration truncates instead of overflowing") {
    Orbit orb = iterate_orbit({10.0, 0.0}, {0.0, 0.0}, 100);
    CHECK(orb.truncated);
    for (Cplx z : orb.points) CHECK(std::abs(z) < 1e200);
}
