#include "mandel/rays.hpp"

#include <cmath>

namespace mandel {

namespace {

// Iterate counts are chosen so the pulled-up potential 2^n g lies in
// [kGTop, 2 kGTop); there the Boettcher chart is the identity to ~1e-13
// and all intermediate values stay far below overflow.
constexpr double kGTop = 30.0;

int level_iterates(double g) {
    int n = 0;
    double gg = g;
    while (gg < kGTop && n < 1022) {
        gg *= 2.0;
        ++n;
    }
    return n;
}

struct NewtonResult {
    Cplx z;
    bool ok = false;
};

// Solve P_c^{on}(z) = w by Newton from `seed`.
NewtonResult newton_dynamical(Cplx c, int n, Cplx w, Cplx seed, const RayOptions& opt) {
    Cplx z = seed;
    for (int it = 0; it < opt.newton_cap; ++it) {
        Cplx f = z;
        Cplx df = 1.0;
        bool blown = false;
        for (int k = 0; k < n; ++k) {
            df = 2.0 * f * df;
            f = f * f + c;
            if (std::norm(f) > 1e120 || std::norm(df) > 1e280) {
                blown = true;
                break;
            }
        }
        if (blown || df == Cplx(0.0)) return {z, false};
        Cplx step = (f - w) / df;
        z -= step;
        if (std::abs(step) <= opt.newton_tol * std::max(1.0, std::abs(z))) return {z, true};
    }
    return {z, false};
}

// Solve P_c^{on}(c) = w for c (orbit of the critical value).
NewtonResult newton_parameter(int n, Cplx w, Cplx seed, const RayOptions& opt) {
    Cplx c = seed;
    for (int it = 0; it < opt.newton_cap; ++it) {
        Cplx f = c;
        Cplx df = 1.0;
        bool blown = false;
        for (int k = 0; k < n; ++k) {
            df = 2.0 * f * df + 1.0;
            f = f * f + c;
            if (std::norm(f) > 1e120 || std::norm(df) > 1e280) {
                blown = true;
                break;
            }
        }
        if (blown || df == Cplx(0.0)) return {c, false};
        Cplx step = (f - w) / df;
        c -= step;
        if (std::abs(step) <= opt.newton_tol * std::max(1.0, std::abs(c))) return {c, true};
    }
    return {c, false};
}

std::vector<double> potential_schedule(double g_start, double g_end, int substeps) {
    std::vector<double> gs;
    const double factor = std::pow(2.0, -1.0 / std::max(1, substeps));
    double g = g_start;
    while (g > g_end * (1.0 + 1e-12)) {
        gs.push_back(g);
        g *= factor;
    }
    gs.push_back(g_end);
    return gs;
}

RayPolyline trace_ray_impl(RayPlane plane, Cplx c, const RationalAngle& theta, double g_end,
                           const RayOptions& opt) {
    if (!(g_end > 0.0)) throw UsageError("ray trace: g_end must be positive");
    RayPolyline ray;
    ray.angle = theta;
    ray.plane = plane;
    ray.parameter = c;

    const auto gs = potential_schedule(opt.g_start, g_end, opt.substeps);
    RationalAngle ang = theta;  // 2^n theta, advanced lazily
    int ang_level = 0;
    Cplx z = std::exp(Cplx(gs.front(), 2.0 * M_PI * theta.to_double()));
    for (double g : gs) {
        const int n = level_iterates(g);
        while (ang_level < n) {
            ang = ang.doubled();
            ++ang_level;
        }
        const double gp = std::ldexp(g, n);  // 2^n g
        const Cplx w = std::exp(Cplx(gp, 2.0 * M_PI * ang.to_double()));
        NewtonResult res = (plane == RayPlane::Dynamical)
                               ? newton_dynamical(c, n, w, z, opt)
                               : newton_parameter(n, w, z, opt);
        if (!res.ok) {
            ray.landed_cleanly = false;
            if (ray.points.empty())
                throw NewtonDivergence("ray trace failed at the starting potential");
            break;
        }
        z = res.z;
        ray.points.push_back(z);
        ray.potentials.push_back(g);
    }
    ray.terminal_potential = ray.potentials.empty() ? opt.g_start : ray.potentials.back();
    return ray;
}

}  // namespace

RayPolyline trace_dynamical_ray(Cplx c, const RationalAngle& theta, double g_end,
                                const RayOptions& opt) {
    return trace_ray_impl(RayPlane::Dynamical, c, theta, g_end, opt);
}

RayPolyline trace_parameter_ray(const RationalAngle& theta, double g_end, const RayOptions& opt) {
    return trace_ray_impl(RayPlane::Parameter, Cplx(0.0), theta, g_end, opt);
}

Cplx dynamical_ray_point(Cplx c, const RationalAngle& theta, double potential,
                         const RayOptions& opt) {
    RayPolyline ray = trace_ray_impl(RayPlane::Dynamical, c, theta, potential, opt);
    if (!ray.landed_cleanly && std::abs(ray.terminal_potential - potential) > 1e-12)
        throw NewtonDivergence("dynamical_ray_point: trace stalled above requested potential");
    return ray.points.back();
}

Cplx parameter_ray_point(const RationalAngle& theta, double potential, const RayOptions& opt) {
    RayPolyline ray = trace_ray_impl(RayPlane::Parameter, Cplx(0.0), theta, potential, opt);
    if (!ray.landed_cleanly && std::abs(ray.terminal_potential - potential) > 1e-12)
        throw NewtonDivergence("parameter_ray_point: trace stalled above requested potential");
    return ray.points.back();
}

Cplx boettcher(Cplx c, Cplx z) {
    GreenValue g = green_with_derivative(c, z);
    if (!g.ok || g.g < 1e-3)
        throw TooCloseToJulia("boettcher: G_c(z) < 1e-3");
    // phi(z) = z * prod (1 + c/z_k^2)^{1/2^{k+1}}, factors taken with the
    // principal log; once |z_k| is large the remaining factors are 1 to
    // double precision.
    Cplx acc = std::log(z);
    Cplx zk = z;
    double scale = 0.5;
    for (int k = 0; k < 2048; ++k) {
        if (std::abs(zk) > 1e8) break;
        Cplx t = 1.0 + c / (zk * zk);
        acc += scale * std::log(t);
        zk = zk * zk + c;
        scale *= 0.5;
    }
    return std::exp(acc);
}

namespace {
ClosedCurve equipotential_impl(RayPlane plane, Cplx c, double level, int samples) {
    if (!(level > 0.0)) throw UsageError("equipotential: level must be positive");
    if (samples < 64) throw UsageError("equipotential: samples must be >= 64");
    ClosedCurve curve;
    curve.level_tag = level;
    curve.points.reserve(static_cast<size_t>(samples) + 1);
    for (int j = 0; j < samples; ++j) {
        RationalAngle theta(j, samples);
        Cplx p = (plane == RayPlane::Dynamical) ? dynamical_ray_point(c, theta, level)
                                                : parameter_ray_point(theta, level);
        curve.points.push_back(p);
    }
    curve.points.push_back(curve.points.front());
    return curve;
}
}  // namespace

ClosedCurve equipotential_curve(Cplx c, double level, int samples) {
    return equipotential_impl(RayPlane::Dynamical, c, level, samples);
}

ClosedCurve parameter_equipotential_curve(double level, int samples) {
    return equipotential_impl(RayPlane::Parameter, Cplx(0.0), level, samples);
}

}  // namespace mandel
