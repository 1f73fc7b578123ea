#include <doctest.h>

#include <cmath>

#include "mandel/curve.hpp"
#include "mandel/dynamics.hpp"
#include "mandel/renorm.hpp"

using namespace mandel;

TEST_CASE("inverse branches invert P and separate by fixed point side") {
    const Cplx c{-1.9, 0.05};
    BranchSystem sys = BranchSystem::make(c);
    for (Cplx z : {Cplx(0.3, 0.4), Cplx(-0.8, 0.2), Cplx(1.1, -0.6)}) {
        Cplx w0 = inverse_branch(sys, 0, z);
        Cplx w1 = inverse_branch(sys, 1, z);
        CHECK(std::abs(w0 * w0 + c - z) < 1e-12);
        CHECK(std::abs(w1 * w1 + c - z) < 1e-12);
        CHECK(std::abs(w0 + w1) < 1e-12);  // the two square roots
        CHECK(std::abs(w0 - sys.beta_bar) < std::abs(w0 - sys.beta));
        CHECK(std::abs(w1 - sys.beta) < std::abs(w1 - sys.beta_bar));
    }
    CHECK(std::abs(inverse_branch(sys, 1, sys.beta) - sys.beta) < 1e-10);
}

TEST_CASE("D0 recipe at c=-2 encloses the critical point and both corners") {
    D0Spec spec = make_d0_spec_minus2();
    const Cplx c{-2.0, 0.0};
    ClosedCurve d0 = spec.curve_at(c);
    REQUIRE(d0.closed());
    CHECK(winding_number(d0, Cplx(0.0, 0.0)) != 0);
    // alpha = -1 and -alpha = 1 for z^2 - 2 lie on the boundary (corners).
    CHECK(min_distance(d0.points, Cplx(-1.0, 0.0)) < 1e-6);
    CHECK(min_distance(d0.points, Cplx(1.0, 0.0)) < 1e-6);
}

TEST_CASE("domain chain at c=-2: B_n shrink geometrically toward beta_bar = -2") {
    const Cplx c{-2.0, 0.0};
    D0Spec spec = make_d0_spec_minus2();
    DomainChain chain = build_domain_chain(c, spec.curve_at(c), 10);
    REQUIRE(chain.B_diameters.size() == 10);
    for (int n = 5; n < 10; ++n) {
        double ratio = chain.B_diameters[size_t(n)] / chain.B_diameters[size_t(n) - 1];
        CHECK(ratio > 0.20);
        CHECK(ratio < 0.30);
    }
    CHECK(min_distance(chain.B(10).points, Cplx(-2.0, 0.0)) < 0.01);
    // B_n = G_0(D_{n-1}) contains beta_bar's forward landing region: its
    // centroid drifts monotonically toward -2.
    double prev = std::abs(centroid(chain.B(1).points) - Cplx(-2.0, 0.0));
    for (int n = 2; n <= 10; ++n) {
        double cur = std::abs(centroid(chain.B(n).points) - Cplx(-2.0, 0.0));
        CHECK(cur < prev);
        prev = cur;
    }
}

// Restrictions need the critical value inside B_n; that holds for
// parameters in the corresponding window, not at c = -2 itself. This is
// the tip parameter of the second window.
constexpr Cplx kW2Tip{-1.790327491999, 0.0};

TEST_CASE("restriction of P^(n+1) to the critical pullback is quadratic-like") {
    const Cplx c = kW2Tip;
    D0Spec spec = make_d0_spec_minus2();
    DomainChain chain = build_domain_chain(c, spec.curve_at(c), 5);
    QuadraticLikeRestriction F = build_restriction(c, chain, 2);
    CHECK(F.iterate == 3);
    QuadraticLikeReport report = verify_quadratic_like(F);
    CHECK(report.degree == 2);
    CHECK(report.margin > 0.0);
}

TEST_CASE("fixed point classification of a restriction") {
    const Cplx c = kW2Tip;
    D0Spec spec = make_d0_spec_minus2();
    DomainChain chain = build_domain_chain(c, spec.curve_at(c), 5);
    QuadraticLikeRestriction F = build_restriction(c, chain, 2);
    RenormFixedPoints rf = classify_renorm_fixed_points(F);
    // Both are genuine fixed points of P^4 and both are repelling.
    for (Cplx z : {rf.beta, rf.alpha}) {
        Cplx w = z;
        for (int i = 0; i < F.iterate; ++i) w = w * w + c;
        CHECK(std::abs(w - z) < 1e-9);
    }
    CHECK(std::abs(rf.beta_multiplier) > 1.0);
    CHECK(std::abs(rf.alpha_multiplier) > 1.0);
    CHECK(std::abs(rf.beta - rf.alpha) > 1e-6);
}

TEST_CASE("iterate helpers agree with direct evaluation") {
    const Cplx c{-1.8, 0.1};
    // solve_iterate_preimage inverts P^3 near a chosen seed.
    Cplx z0{0.4, 0.3};
    Cplx t = z0;
    for (int i = 0; i < 3; ++i) t = t * t + c;
    Cplx back = solve_iterate_preimage(c, 3, t, z0 + Cplx(1e-3, -1e-3));
    CHECK(std::abs(back - z0) < 1e-9);
    // iterate_multiplier is the chain-rule product 2^J z_0 z_1 ... z_{J-1}.
    Cplx prod{1.0, 0.0};
    Cplx z = z0;
    for (int i = 0; i < 3; ++i) {
        prod *= 2.0 * z;
        z = z * z + c;
    }
    CHECK(std::abs(iterate_multiplier(c, 3, z0) - prod) < 1e-10);
}
