#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mandel/errors.hpp"

namespace mandel {

using Cplx = std::complex<double>;

// Orbit overflow guard: iteration truncates instead of producing infinities.
inline constexpr double kOverflowGuard = 1e150;

// Escape radius used when the potential must have converged; membership
// tests may still use radius 2.
inline constexpr double kEscapeRadius = 100.0;

struct Orbit {
    Cplx parameter;
    Cplx start;
    std::vector<Cplx> points;  // length n+1 unless truncated
    bool truncated = false;
};

struct FixedPointPair {
    Cplx alpha;
    Cplx beta;
    Cplx multiplier_alpha;
    Cplx multiplier_beta;
};

struct EscapeResult {
    bool escaped = false;
    int n = 0;  // first n with |P_c^n(0)| > radius, valid when escaped
};

struct CriticalOrbitTag {
    enum class Kind { Escaped, SuperstablePeriod, PreperiodicRepelling, BoundedUndetermined };
    Kind kind = Kind::BoundedUndetermined;
    int n = 0;  // escape time
    int period = 0;
    int preperiod = 0;
    Cplx multiplier;           // cycle multiplier for PreperiodicRepelling
    std::vector<Cplx> witnesses;
};

Orbit iterate_orbit(Cplx c, Cplx z0, int n);

EscapeResult escape_classify(Cplx c, int max_iter, double radius = 2.0);

// Green's function G_c(z); 0 when no escape within max_iter.
double green_potential(Cplx c, Cplx z, int max_iter = 2048);

// G and its complex derivative h'(z) where G = Re h, h = 2^{-n} Log z_n.
// ok=false when the point did not escape.
struct GreenValue {
    double g = 0.0;
    Cplx dh;
    bool ok = false;
};
GreenValue green_with_derivative(Cplx c, Cplx z, int max_iter = 2048);

// Parameter-plane potential G_M(c) = G_c(c) and its c-derivative.
GreenValue param_green_with_derivative(Cplx c, int max_iter = 2048);

FixedPointPair fixed_points(Cplx c);

Cplx multiplier(Cplx c, Cplx p, int period);

// d/dc P_c^{om}(0) via z'_{n+1} = 2 z_n z'_n + 1, z'_1 = 1.
Cplx critical_orbit_c_derivative(Cplx c, int m);

// Value and c-derivative of P_c^{om}(0) in one pass.
struct CriticalOrbitJet {
    Cplx value;
    Cplx derivative;
};
CriticalOrbitJet critical_orbit_jet(Cplx c, int m);

CriticalOrbitTag classify_critical_orbit(Cplx c, int max_iter = 1000, double tol = 1e-9);

}  // namespace mandel
