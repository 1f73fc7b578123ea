#include "mandel/dynamics.hpp"

#include <cmath>
#include <limits>

namespace mandel {

Orbit iterate_orbit(Cplx c, Cplx z0, int n) {
    Orbit orbit;
    orbit.parameter = c;
    orbit.start = z0;
    orbit.points.reserve(static_cast<size_t>(n) + 1);
    Cplx z = z0;
    orbit.points.push_back(z);
    for (int i = 0; i < n; ++i) {
        z = z * z + c;
        if (std::abs(z) > kOverflowGuard) {
            orbit.truncated = true;
            break;
        }
        orbit.points.push_back(z);
    }
    return orbit;
}

EscapeResult escape_classify(Cplx c, int max_iter, double radius) {
    const double r2 = radius * radius;
    Cplx z = 0.0;
    for (int n = 1; n <= max_iter; ++n) {
        z = z * z + c;
        if (std::norm(z) > r2) return {true, n};
    }
    return {false, 0};
}

// Iterate until |z| exceeds `big`; the tail correction to the potential is
// then below 2^{-n} |c| / |z_n|^2.
GreenValue green_with_derivative(Cplx c, Cplx z, int max_iter) {
    // z-derivative: w' recurrence w'_{n+1} = 2 z_n w'_n.
    Cplx zn = z;
    Cplx dz = 1.0;
    double scale = 1.0;
    const double big = 1e8;
    for (int n = 0; n <= max_iter; ++n) {
        const double a = std::abs(zn);
        if (a > big) {
            GreenValue out;
            out.g = scale * std::log(a);
            out.dh = scale * dz / zn;
            out.ok = true;
            return out;
        }
        dz = 2.0 * zn * dz;
        zn = zn * zn + c;
        scale *= 0.5;
    }
    return {};
}

GreenValue param_green_with_derivative(Cplx c, int max_iter) {
    // Orbit of the critical value with z_0 = c; derivative in c.
    Cplx zn = c;
    Cplx dz = 1.0;
    double scale = 1.0;
    const double big = 1e8;
    for (int n = 0; n <= max_iter; ++n) {
        const double a = std::abs(zn);
        if (a > big) {
            GreenValue out;
            out.g = scale * std::log(a);
            out.dh = scale * dz / zn;
            out.ok = true;
            return out;
        }
        dz = 2.0 * zn * dz + 1.0;
        zn = zn * zn + c;
        scale *= 0.5;
    }
    return {};
}

double green_potential(Cplx c, Cplx z, int max_iter) {
    GreenValue v = green_with_derivative(c, z, max_iter);
    return v.ok ? v.g : 0.0;
}

FixedPointPair fixed_points(Cplx c) {
    const Cplx disc = 1.0 - 4.0 * c;
    if (std::abs(disc) < 1e-14)
        throw DegenerateFixedPoint("fixed_points: |1-4c| < 1e-14");
    Cplx root = std::sqrt(disc);  // principal branch, Re >= 0
    FixedPointPair fp;
    fp.beta = 0.5 * (1.0 + root);
    fp.alpha = 0.5 * (1.0 - root);
    fp.multiplier_alpha = 2.0 * fp.alpha;
    fp.multiplier_beta = 2.0 * fp.beta;
    return fp;
}

Cplx multiplier(Cplx c, Cplx p, int period) {
    Cplx z = p;
    Cplx lambda = 1.0;
    for (int i = 0; i < period; ++i) {
        lambda *= 2.0 * z;
        z = z * z + c;
    }
    if (std::abs(z - p) > 1e-9)
        throw NotPeriodic("multiplier: point is not periodic with the given period");
    return lambda;
}

CriticalOrbitJet critical_orbit_jet(Cplx c, int m) {
    Cplx z = c;    // P_c(0)
    Cplx dz = 1.0; // z'_1
    for (int n = 1; n < m; ++n) {
        dz = 2.0 * z * dz + 1.0;
        z = z * z + c;
    }
    return {z, dz};
}

Cplx critical_orbit_c_derivative(Cplx c, int m) {
    return critical_orbit_jet(c, m).derivative;
}

CriticalOrbitTag classify_critical_orbit(Cplx c, int max_iter, double tol) {
    CriticalOrbitTag tag;
    Orbit orbit = iterate_orbit(c, 0.0, max_iter);
    const auto& z = orbit.points;
    const int last = static_cast<int>(z.size()) - 1;

    // Escape first (radius 2 decides membership).
    for (int n = 1; n <= last; ++n) {
        if (std::abs(z[n]) > 2.0) {
            tag.kind = CriticalOrbitTag::Kind::Escaped;
            tag.n = n;
            tag.witnesses.assign(z.begin(), z.begin() + n + 1);
            return tag;
        }
    }
    if (orbit.truncated) {
        tag.kind = CriticalOrbitTag::Kind::Escaped;
        tag.n = last + 1;
        return tag;
    }

    // Superstable: smallest p >= 1 with |P^p(0)| <= tol.
    for (int p = 1; p <= last; ++p) {
        if (std::abs(z[p]) <= tol) {
            tag.kind = CriticalOrbitTag::Kind::SuperstablePeriod;
            tag.period = p;
            tag.witnesses.assign(z.begin(), z.begin() + p + 1);
            return tag;
        }
    }

    // Preperiodic: minimal m+k, then minimal m, with m >= 1 and a repelling
    // cycle multiplier.
    const int scan = std::min(last, 200);
    for (int total = 2; total <= scan; ++total) {
        for (int m = 1; m < total; ++m) {
            const int k = total - m;
            if (m + k > last) continue;
            if (std::abs(z[m] - z[m + k]) <= tol) {
                Cplx lambda = 1.0;
                for (int i = 0; i < k; ++i) lambda *= 2.0 * z[m + i];
                if (std::abs(lambda) > 1.0 + tol) {
                    tag.kind = CriticalOrbitTag::Kind::PreperiodicRepelling;
                    tag.preperiod = m;
                    tag.period = k;
                    tag.multiplier = lambda;
                    tag.witnesses.assign(z.begin(), z.begin() + m + k + 1);
                    return tag;
                }
            }
        }
    }

    tag.kind = CriticalOrbitTag::Kind::BoundedUndetermined;
    return tag;
}

}  // namespace mandel
