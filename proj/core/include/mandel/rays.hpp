#pragma once

#include "mandel/angle.hpp"
#include "mandel/curve.hpp"
#include "mandel/dynamics.hpp"

namespace mandel {

// Böttcher coordinate of z, computed by the product formula with branch
// tracking along the orbit. Requires G_c(z) >= 1e-3.
Cplx boettcher(Cplx c, Cplx z);

struct RayOptions {
    double g_start = 8.0;
    int substeps = 4;        // trace points per potential halving
    int newton_cap = 64;     // Newton iterations per trace point
    double newton_tol = 1e-13;
};

// External ray of angle theta in the dynamical plane of c, traced from
// potential g_start down to g_end by potential-halving continuation.
RayPolyline trace_dynamical_ray(Cplx c, const RationalAngle& theta, double g_end,
                                const RayOptions& opt = {});

// Parameter-plane external ray of the Mandelbrot set.
RayPolyline trace_parameter_ray(const RationalAngle& theta, double g_end,
                                const RayOptions& opt = {});

// Single point of the dynamical ray at the given potential.
Cplx dynamical_ray_point(Cplx c, const RationalAngle& theta, double potential,
                         const RayOptions& opt = {});

Cplx parameter_ray_point(const RationalAngle& theta, double potential,
                         const RayOptions& opt = {});

// Level set {G = level}, sampled at `samples` equally spaced external angles.
ClosedCurve equipotential_curve(Cplx c, double level, int samples);
ClosedCurve parameter_equipotential_curve(double level, int samples);

// Default equipotential level for gamma; the construction leaves it free.
inline constexpr double kDefaultGamma = 0.6931471805599453;  // log 2

}  // namespace mandel
