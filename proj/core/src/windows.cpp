#include <cstdio>
#include <cstdlib>
#include "mandel/windows.hpp"

#include <algorithm>
#include <cmath>

#include "mandel/dynamics.hpp"

namespace mandel {

namespace {

struct EqValue {
    Cplx f;
    Cplx df;
};

EqValue eval_equation(const ParameterEquation& eq, Cplx c) {
    switch (eq.kind) {
        case EquationKind::Superstable: {
            CriticalOrbitJet jet = critical_orbit_jet(c, eq.p);
            return {jet.value, jet.derivative};
        }
        case EquationKind::MisiurewiczEq: {
            Cplx z = 0.0, dz = 0.0, zm, dzm;
            for (int j = 0; j < eq.m + eq.k; ++j) {
                dz = 2.0 * z * dz + 1.0;
                z = z * z + c;
                if (j + 1 == eq.m) {
                    zm = z;
                    dzm = dz;
                }
            }
            return {z - zm, dz - dzm};
        }
        case EquationKind::CenterHit:
        case EquationKind::OrbitHit:
        default: {
            constexpr double h = 1e-7;
            Cplx f = eq.residual(c);
            Cplx df = (eq.residual(c + h) - f) / h;
            return {f, df};
        }
    }
}

std::vector<Cplx> orbit_of(Cplx c, Cplx x, int J) {
    std::vector<Cplx> orbit(static_cast<size_t>(J) + 1);
    orbit[0] = x;
    for (int j = 1; j <= J; ++j)
        orbit[static_cast<size_t>(j)] =
            orbit[static_cast<size_t>(j - 1)] * orbit[static_cast<size_t>(j - 1)] + c;
    return orbit;
}

// G_{w0}(G_{w1}^{n-1}(z)) for F = P^J: at the base level the principal
// branches (right/left of the slit through beta_bar), deeper the anchored
// pullbacks along the beta_w orbit.
Cplx branch_chain(const RenormContext& ctx, Cplx c, Cplx beta_w, int n, Cplx z) {
    if (ctx.J == 1) {
        BranchSystem sys = BranchSystem::make(c);
        for (int j = 0; j < n - 1; ++j) z = inverse_branch(sys, 1, z);
        return inverse_branch(sys, 0, z);
    }
    BranchMap g1{c, ctx.J, orbit_of(c, beta_w, ctx.J)};
    BranchMap g0{c, ctx.J, orbit_of(c, -beta_w, ctx.J)};
    for (int j = 0; j < n - 1; ++j) z = g1.map_point(z);
    return g0.map_point(z);
}

std::string substitute_blocks(const std::string& pattern, const std::string& b0,
                              const std::string& b1) {
    std::string out;
    for (char d : pattern) out += (d == '0') ? b0 : b1;
    return out;
}

}  // namespace

// The fixed point moves at d(beta)/dc of order 4^J, far faster than the
// fixed-point separation, so plain re-Newtoning across a macroscopic step
// lands on the wrong root; a tangent predictor with step control follows
// the right branch.
Cplx continue_fixed_point(Cplx c_from, Cplx c_to, int J, Cplx z, double fp_separation) {
    auto velocity = [&](Cplx c, Cplx zz) {
        Cplx v = zz, dvdc = 0.0, dvdz = 1.0;
        for (int j = 0; j < J; ++j) {
            dvdc = 2.0 * v * dvdc + 1.0;
            dvdz = 2.0 * v * dvdz;
            v = v * v + c;
        }
        return -dvdc / (dvdz - 1.0);
    };
    // The corrector must stay well clear of the neighboring fixed point,
    // otherwise it silently changes branch; the caller's separation
    // estimate sets that scale.
    const double tol = fp_separation > 0.0 ? std::max(0.2 * fp_separation, 1e-12) : 1e-9;
    double t = 0.0, h = 1.0;
    Cplx c_cur = c_from;
    long budget = 2'000'000;
    while (t < 1.0) {
        if (--budget < 0)
            throw NoConvergence("continue_fixed_point: step budget exhausted");
        double t_next = std::min(1.0, t + h);
        Cplx c_next = c_from + (c_to - c_from) * t_next;
        Cplx z_pred = z + velocity(c_cur, z) * (c_next - c_cur);
        bool ok = true;
        Cplx z_corr;
        try {
            z_corr = track_iterate_fixed_point(c_next, J, z_pred);
        } catch (const DomainError&) {
            ok = false;
        }
        if (ok && std::abs(z_corr - z_pred) > tol) ok = false;
        if (!ok) {
            h *= 0.5;
            if (h < 1e-11)
                throw NoConvergence("continue_fixed_point: step control collapsed");
            continue;
        }
        z = z_corr;
        c_cur = c_next;
        t = t_next;
        h = std::min(1.0, h * 1.7);
    }
    return z;
}

ParameterEquation superstable_eq(int p) {
    ParameterEquation eq;
    eq.kind = EquationKind::Superstable;
    eq.p = p;
    return eq;
}

ParameterEquation misiurewicz_eq(int m, int k) {
    ParameterEquation eq;
    eq.kind = EquationKind::MisiurewiczEq;
    eq.m = m;
    eq.k = k;
    return eq;
}

ParameterEquation center_hit_eq(std::function<Cplx(Cplx)> residual) {
    ParameterEquation eq;
    eq.kind = EquationKind::CenterHit;
    eq.residual = std::move(residual);
    return eq;
}

ParameterEquation orbit_hit_eq(int m, std::function<Cplx(Cplx)> target) {
    ParameterEquation eq;
    eq.kind = EquationKind::OrbitHit;
    eq.m = m;
    eq.residual = [m, target = std::move(target)](Cplx c) {
        return critical_orbit_jet(c, m).value - target(c);
    };
    return eq;
}

Cplx solve_parameter(const ParameterEquation& eq, Cplx guess, double tol,
                     const std::function<bool(Cplx)>& accept) {
    Cplx c = guess;
    for (int it = 0; it < 100; ++it) {
        EqValue v = eval_equation(eq, c);
        if (std::abs(v.f) <= tol) break;
        if (v.df == Cplx(0.0)) throw NoConvergence("solve_parameter: vanishing derivative");
        Cplx step = v.f / v.df;
        c -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(c))) break;
        if (it == 99) throw NoConvergence("solve_parameter: no convergence in 100 steps");
    }
    EqValue v = eval_equation(eq, c);
    // Double precision cannot push the residual below the derivative's
    // rounding floor for steep equations.
    double floor_ = std::abs(v.df) * std::abs(c) * 1e-15;
    if (std::abs(v.f) > std::max(tol, floor_))
        throw NoConvergence("solve_parameter: residual above tolerance");
    if (accept && !accept(c)) throw WrongBasin("solve_parameter: root rejected by caller");
    return c;
}

std::vector<MisiurewiczPoint> misiurewicz_enumerate(int m, int k) {
    if (m + k > 8) throw UsageError("misiurewicz_enumerate: m + k budget is 8");
    if (m < 1 || k < 1) throw UsageError("misiurewicz_enumerate: need m, k >= 1");

    auto sweep = [&](int grid) {
        std::vector<Cplx> roots;
        ParameterEquation eq = misiurewicz_eq(m, k);
        for (int gy = 0; gy < grid; ++gy) {
            for (int gx = 0; gx < grid; ++gx) {
                Cplx seed(-2.2 + 3.0 * (gx + 0.5) / grid, -1.4 + 2.8 * (gy + 0.5) / grid);
                Cplx c = seed;
                bool ok = false;
                for (int it = 0; it < 60; ++it) {
                    EqValue v = eval_equation(eq, c);
                    if (std::norm(v.df) < 1e-30 || std::norm(c) > 1e6) break;
                    Cplx step = v.f / v.df;
                    c -= step;
                    if (std::abs(step) < 1e-13) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) continue;
                bool dup = false;
                for (Cplx r : roots)
                    if (std::abs(r - c) < 1e-7) dup = true;
                if (!dup) roots.push_back(c);
            }
        }
        return roots;
    };

    // Orbit classification is bit-sensitive at a repelling preperiodic
    // parameter (one ulp of error escapes), so minimality is checked
    // algebraically: no equation with smaller preperiod or divisor period
    // is satisfied, and the cycle is repelling.
    auto classify_set = [&](const std::vector<Cplx>& roots) {
        std::vector<MisiurewiczPoint> out;
        for (Cplx c : roots) {
            bool minimal = true;
            for (int mm = 0; mm <= m && minimal; ++mm)
                for (int kk = 1; kk <= k && minimal; ++kk) {
                    if (mm == m && kk == k) continue;
                    // mm = 0 degenerates to the superstable equation
                    // P^{kk}(0) = 0, which the recurrence handles as written.
                    if (std::abs(eval_equation(misiurewicz_eq(mm, kk), c).f) < 1e-6)
                        minimal = false;
                }
            if (!minimal) continue;
            Cplx z = 0.0;
            for (int j = 0; j < m; ++j) z = z * z + c;
            Cplx lambda = 1.0;
            for (int j = 0; j < k; ++j) {
                lambda *= 2.0 * z;
                z = z * z + c;
            }
            if (std::abs(lambda) <= 1.0) continue;
            MisiurewiczPoint pt;
            pt.value = c;
            pt.m = m;
            pt.k = k;
            pt.orbit_multiplier = lambda;
            EqValue v = eval_equation(misiurewicz_eq(m, k), c);
            pt.residual = std::abs(v.f);
            out.push_back(pt);
        }
        std::sort(out.begin(), out.end(), [](const MisiurewiczPoint& a, const MisiurewiczPoint& b) {
            if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
            return a.value.imag() < b.value.imag();
        });
        return out;
    };

    std::vector<MisiurewiczPoint> coarse = classify_set(sweep(40));
    std::vector<MisiurewiczPoint> fine = classify_set(sweep(56));
    const size_t degree_cap = size_t(1) << (m + k - 1);
    bool stable = coarse.size() == fine.size();
    for (size_t i = 0; stable && i < fine.size(); ++i) {
        bool matched = false;
        for (size_t j = 0; j < coarse.size(); ++j)
            if (std::abs(coarse[j].value - fine[i].value) < 1e-9) matched = true;
        stable = matched;
    }
    if (!stable || fine.size() > degree_cap)
        throw IncompleteRootSet("misiurewicz_enumerate: root set unstable across start grids (" +
                                std::to_string(coarse.size()) + " vs " +
                                std::to_string(fine.size()) + ")");
    return fine;
}

RenormContext make_level1_context() {
    RenormContext ctx;
    ctx.base_c = Cplx(-2.0, 0.0);
    ctx.J = 1;
    ctx.level_k = 1;
    ctx.d0 = make_d0_spec_minus2(kDefaultGamma, 2, 10, 1e-5);
    ctx.beta_seed = fixed_points(ctx.base_c).beta;
    return ctx;
}

RenormContext tune_context(const RenormContext& parent, int n, Cplx tip, Cplx beta_next) {
    const int p = n + 1;  // period of the copy in parent renormalization units
    RenormContext ctx;
    ctx.base_c = tip;
    ctx.J = parent.J * p;
    ctx.level_k = parent.level_k + 1;
    ctx.word = parent.word;
    ctx.word.push_back(n);
    ctx.beta_seed = beta_next;
    // The copy nearest the tip has wake blocks 0 1^{p-1} / 1 0^{p-1}
    // (in parent digits); compose with the parent substitution.
    std::string pat0 = "0" + std::string(static_cast<size_t>(p - 1), '1');
    std::string pat1 = "1" + std::string(static_cast<size_t>(p - 1), '0');
    ctx.block0 = substitute_blocks(pat0, parent.block0, parent.block1);
    ctx.block1 = substitute_blocks(pat1, parent.block0, parent.block1);

    // Tuned level-0 domain: rays at the tuned images of 1/6, 1/3, 2/3, 5/6
    // joined by equipotential arcs; corners replaced by deep ray points
    // (the corner fixed points of the copy are not in closed form).
    const double level_w = kDefaultGamma / std::pow(2.0, ctx.J - 1);
    const double g_land = std::max(level_w * 1e-3, 1e-11);
    if (level_w < 1e-10)
        throw ResolutionLoss("tune_context: tuned potentials below double-precision floor");
    ctx.d0.level = level_w;
    ctx.d0.ray_opts.substeps = 2;
    using V = D0Spec::Vertex;
    // The tuned images of 1/3 and 2/3 land at the alpha point of the piece
    // around the critical value; their four halves land at the two alpha
    // preimages bounding the piece around the critical point, which is the
    // region the next-level domain must enclose.  (In the untuned base case
    // this reproduces {1/6, 1/3, 2/3, 5/6}.)
    const RationalAngle A13 = tune_angle(RationalAngle(1, 3), ctx.block0, ctx.block1);
    const RationalAngle A23 = tune_angle(RationalAngle(2, 3), ctx.block0, ctx.block1);
    std::array<RationalAngle, 4> s{A13.halved(), A13.half_plus(), A23.halved(),
                                   A23.half_plus()};
    std::sort(s.begin(), s.end(), [](const RationalAngle& a, const RationalAngle& b) {
        return a.to_double() < b.to_double();
    });
    auto add_ray = [&](const RationalAngle& ang, bool ascending) {
        std::vector<double> gs;
        const double factor = std::pow(2.0, 1.0 / ctx.d0.ray_opts.substeps);
        for (double g = g_land; g < level_w * 0.999; g *= factor) gs.push_back(g);
        if (!ascending) std::reverse(gs.begin(), gs.end());
        for (double g : gs) ctx.d0.vertices.push_back(V{V::Kind::RayPoint, ang, g});
    };
    auto add_arc = [&](const RationalAngle& from, const RationalAngle& to) {
        const int samples = 10;
        BigInt fn = from.numerator() * to.denominator();
        BigInt tn = to.numerator() * from.denominator();
        BigInt den = from.denominator() * to.denominator();
        if (tn < fn) tn += den;  // arc crossing angle 0
        for (int j = 0; j <= samples; ++j) {
            BigInt num = fn * (samples - j) + tn * j;
            ctx.d0.vertices.push_back(V{V::Kind::RayPoint, RationalAngle(num, den * samples),
                                        level_w});
        }
    };
    // The four rays land pairwise at the two alpha preimages; rays landing
    // together form the corners and the other adjacent pairs carry the
    // equipotential arcs.  Decide which cyclic pairing holds by comparing
    // landing points.
    const Cplx z0 = dynamical_ray_point(tip, s[0], g_land);
    const Cplx z1 = dynamical_ray_point(tip, s[1], g_land);
    const Cplx z2 = dynamical_ray_point(tip, s[2], g_land);
    if (std::abs(z1 - z2) > std::abs(z0 - z1))
        std::rotate(s.begin(), s.begin() + 1, s.end());
    auto add_corner = [&](const RationalAngle& ang) {
        V v;
        v.kind = V::Kind::CornerPullback;
        v.angle = ang;
        v.potential = g_land;
        v.corner_iterate = ctx.J;
        ctx.d0.vertices.push_back(v);
    };
    add_ray(s[0], true);
    add_arc(s[0], s[1]);
    add_ray(s[1], false);
    add_corner(s[1]);
    add_ray(s[2], true);
    add_arc(s[2], s[3]);
    add_ray(s[3], false);
    add_corner(s[3]);

    if (winding_number(ctx.d0.curve_at(tip).points, Cplx(0.0)) == 0)
        throw DegenerateDomain("tune_context: tuned domain does not enclose the critical point");
    return ctx;
}

Cplx track_iterate_fixed_point(Cplx c, int J, Cplx seed) {
    Cplx z = seed;
    Cplx best = seed;
    double best_res = 1e300;
    for (int it = 0; it < 60; ++it) {
        Cplx f = z, df = 1.0;
        for (int j = 0; j < J; ++j) {
            df = 2.0 * f * df;
            f = f * f + c;
        }
        if (std::norm(f) > 1e60) break;
        double res = std::abs(f - z);
        if (res < best_res) {
            best_res = res;
            best = z;
        }
        Cplx step = (f - z) / (df - 1.0);
        z -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) return z;
    }
    // Cancellation in P^J(z) - z floors the achievable step size; accept
    // the best iterate if its residual is at that floor.
    if (best_res <= 1e-10 * (1.0 + std::abs(c))) return best;
    throw NoConvergence("track_iterate_fixed_point: Newton failed");
}

Cplx window_locus_point(const RenormContext& ctx, Cplx c, Cplx beta_w, int n, size_t t) {
    return branch_chain(ctx, c, beta_w, n, ctx.d0.vertex_at(c, t));
}

namespace {

// Superstable-like center of W_{ctx,n}: fixed point of c -> G_{w0}(G_{w1}^{n-1}(0)).
// beta_state must hold beta_w at ctx.base_c on entry; on exit it holds
// beta_w at the returned parameter.
Cplx superstable_like_center(const RenormContext& ctx, int n, Cplx& beta_state) {
    Cplx c = ctx.base_c;
    const double fd = std::max(1e-12, 1e-6 * ctx.scale_hint);
    for (int it = 0; it < 100; ++it) {
        Cplx f = branch_chain(ctx, c, beta_state, n, Cplx(0.0)) -
                 critical_orbit_jet(c, ctx.J).value;
        Cplx beta_fd =
            ctx.J == 1 ? Cplx(0.0)
                       : continue_fixed_point(c, c + fd, ctx.J, beta_state, ctx.fp_sep_hint);
        Cplx f2 = branch_chain(ctx, c + fd, beta_fd, n, Cplx(0.0)) -
                  critical_orbit_jet(c + fd, ctx.J).value;
        Cplx step = f / ((f2 - f) / fd);
        Cplx c_next = c - step;
        if (ctx.J > 1)
            beta_state = continue_fixed_point(c, c_next, ctx.J, beta_state, ctx.fp_sep_hint);
        c = c_next;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(c))) return c;
    }
    throw NoConvergence("superstable-like center solve failed");
}

ParamWindow build_window_impl(const RenormContext& ctx, int n, bool with_center_hit,
                              WindowBuildOutputs* out) {
    if (n < 1) throw UsageError("build_window: need n >= 1");
    ParamWindow win;
    win.word = ctx.word;
    win.word.push_back(n);
    win.n = n;
    win.level_k = ctx.level_k;
    win.defining_kind = WindowKind::CriticalValueInB;

    Cplx beta_state = ctx.beta_seed;
    const Cplx c_sup = superstable_like_center(ctx, n, beta_state);
    if (out) out->center_guess = c_sup;

    // Boundary locus: for each recipe vertex t solve F_c(0) = v_t(c).
    Cplx beta_trace = beta_state;
    Cplx c = c_sup;
    std::vector<double> steps;
    size_t failures = 0;
    const size_t T = ctx.d0.size();
    const double fd = std::max(1e-12, 1e-6 * ctx.scale_hint);
    for (size_t t = 0; t < T; ++t) {
        try {
            Cplx c_t = c;          // iterate for this vertex, seeded at the last solution
            Cplx beta_t = beta_trace;  // beta_w at c_t
            for (int it = 0; it < 60; ++it) {
                auto h_of = [&](Cplx cc, Cplx beta) {
                    return critical_orbit_jet(cc, ctx.J).value -
                           window_locus_point(ctx, cc, beta, n, t);
                };
                Cplx f = h_of(c_t, beta_t);
                Cplx beta_fd =
                    ctx.J == 1 ? Cplx(0.0)
                               : continue_fixed_point(c_t, c_t + fd, ctx.J, beta_t, ctx.fp_sep_hint);
                Cplx df = (h_of(c_t + fd, beta_fd) - f) / fd;
                Cplx step = f / df;
                Cplx c_next = c_t - step;
                if (ctx.J > 1)
                    beta_t = continue_fixed_point(c_t, c_next, ctx.J, beta_t, ctx.fp_sep_hint);
                c_t = c_next;
                if (std::abs(step) < 1e-13 * (1.0 + std::abs(c_t))) break;
                if (it == 59) throw NoConvergence("window boundary Newton stalled");
            }
            c = c_t;
            beta_trace = beta_t;
            if (!win.boundary.points.empty())
                steps.push_back(std::abs(c - win.boundary.points.back()));
            win.boundary.points.push_back(c);
        } catch (const DomainError&) {
            ++failures;
            if (failures * 5 > T)
                throw ContinuationBreakdown("build_window: too many boundary solves failed");
        }
    }
    if (win.boundary.points.size() < 8)
        throw ContinuationBreakdown("build_window: boundary trace too sparse");
    win.boundary.points.push_back(win.boundary.points.front());
    orient_ccw(win.boundary);
    win.diameter = curve_diameter(win.boundary.points);
    double worst = 0.0;
    for (double s : steps) worst = std::max(worst, s);
    worst = std::max(worst,
                     std::abs(win.boundary.points.front() -
                              win.boundary.points[win.boundary.points.size() - 2]));
    if (worst > 0.5 * win.diameter) {
        if (std::getenv("MANDEL_DUMP_BOUNDARY")) {
            for (size_t i = 0; i < win.boundary.points.size(); ++i)
                std::fprintf(stderr, "b[%zu] %.9f %+.9f\n", i, win.boundary.points[i].real(),
                             win.boundary.points[i].imag());
        }
        throw ContinuationBreakdown("build_window: boundary trace jumped between sheets (step " +
                                    std::to_string(worst) + " vs diameter " +
                                    std::to_string(win.diameter) + ")");
    }

    if (!with_center_hit) {
        win.center = c_sup;
        Cplx beta = ctx.J == 1 ? Cplx(0.0) : beta_state;
        win.center_residual = std::abs(branch_chain(ctx, c_sup, beta, n, Cplx(0.0)) -
                                       critical_orbit_jet(c_sup, ctx.J).value);
        return win;
    }

    // Tip of the copy: F_{next,c}(0) = -beta_next(c) with beta_next the
    // (non-separate) fixed point of F_next = P^{J(n+1)} near the center.
    const int J_next = ctx.J * (n + 1);
    ClosedCurve D0c = ctx.d0.curve_at(c_sup);
    DomainChain chain;
    if (ctx.J == 1) {
        chain = build_domain_chain(c_sup, D0c, n);
    } else {
        BranchMap g1{c_sup, ctx.J, orbit_of(c_sup, beta_state, ctx.J)};
        BranchMap g0{c_sup, ctx.J, orbit_of(c_sup, -beta_state, ctx.J)};
        chain = build_domain_chain(g1, g0, D0c, n);
    }
    QuadraticLikeRestriction F;
    F.parameter = c_sup;
    F.iterate = J_next;
    F.codomain = D0c;
    F.word = win.word;
    F.domain.points = pull_back_critical(c_sup, chain.B(n).points, ctx.J);
    RenormFixedPoints rf = classify_renorm_fixed_points(F);
    const double fp_sep = std::abs(rf.beta - rf.alpha);
    if (out) out->alpha_next = rf.alpha;

    Cplx beta_next = rf.beta;
    // Damped Newton: keep iterates inside the traced window, otherwise the
    // fixed-point continuation can latch onto the wrong branch and the
    // solve runs off to a root of a different equation. The invariant is
    // that beta_next is the continued fixed point at the current tip.
    auto in_window = [&](Cplx cc) {
        return winding_number(win.boundary, cc) != 0 ||
               min_distance(win.boundary.points, cc) <= 0.05 * win.diameter;
    };
    auto try_track = [&](Cplx from, Cplx to, Cplx beta_from) -> std::optional<Cplx> {
        if (!in_window(to)) return std::nullopt;
        try {
            return continue_fixed_point(from, to, J_next, beta_from, fp_sep);
        } catch (const DomainError&) {
            return std::nullopt;
        }
    };
    Cplx tip = c_sup;
    const double step_cap = 0.45 * win.diameter;
    const double fd_tip = std::max(1e-12, 1e-6 * win.diameter);
    for (int it = 0; it < 100; ++it) {
        Cplx f = critical_orbit_jet(tip, J_next).value + beta_next;
        Cplx beta_fd = continue_fixed_point(tip, tip + fd_tip, J_next, beta_next, fp_sep);
        Cplx f2 = critical_orbit_jet(tip + fd_tip, J_next).value + beta_fd;
        Cplx step = f / ((f2 - f) / fd_tip);
        if (std::abs(step) > step_cap) step *= step_cap / std::abs(step);
        std::optional<Cplx> tracked;
        for (int halvings = 0; halvings < 24; ++halvings) {
            tracked = try_track(tip, tip - step, beta_next);
            if (tracked) break;
            step *= 0.5;
        }
        if (!tracked) throw CenterEscaped("build_window: tip solve left the window");
        beta_next = *tracked;
        tip -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(tip))) break;
        if (it == 99) throw NoConvergence("build_window: tip equation did not converge");
    }
    win.center = tip;
    win.center_residual = std::abs(critical_orbit_jet(tip, J_next).value + beta_next);
    // Independent branch check. The chain degenerates exactly at the tip
    // (the critical value meets the corner of the B_n boundary there), so
    // re-derive the fixed points from a fresh restriction slightly inside
    // the window and continue them over the short remaining gap.
    {
        Cplx c_ver = tip + 0.01 * (c_sup - tip);
        ClosedCurve D0_ver = ctx.d0.curve_at(c_ver);
        DomainChain chain_ver;
        if (ctx.J == 1) {
            chain_ver = build_domain_chain(c_ver, D0_ver, n);
        } else {
            Cplx beta_w_ver = continue_fixed_point(ctx.base_c, c_ver, ctx.J, ctx.beta_seed,
                                                   ctx.fp_sep_hint);
            BranchMap g1{c_ver, ctx.J, orbit_of(c_ver, beta_w_ver, ctx.J)};
            BranchMap g0{c_ver, ctx.J, orbit_of(c_ver, -beta_w_ver, ctx.J)};
            chain_ver = build_domain_chain(g1, g0, D0_ver, n);
        }
        QuadraticLikeRestriction F_ver;
        F_ver.parameter = c_ver;
        F_ver.iterate = J_next;
        F_ver.codomain = D0_ver;
        F_ver.domain.points = pull_back_critical(c_ver, chain_ver.B(n).points, ctx.J);
        RenormFixedPoints rf_ver = classify_renorm_fixed_points(F_ver);
        double sep_ver = std::abs(rf_ver.beta - rf_ver.alpha);
        Cplx beta_fresh = continue_fixed_point(c_ver, tip, J_next, rf_ver.beta, sep_ver);
        if (std::abs(beta_fresh - beta_next) > 0.3 * sep_ver)
            throw WrongBasin("build_window: tip solve converged on the wrong branch");
        beta_next = beta_fresh;
        if (out) out->alpha_next = continue_fixed_point(c_ver, tip, J_next, rf_ver.alpha, sep_ver);
        win.center_residual = std::abs(critical_orbit_jet(tip, J_next).value + beta_next);
    }
    // The tip is the pinch point of the window boundary (the corner-vertex
    // locus), so it sits on the traced curve rather than strictly inside.
    if (winding_number(win.boundary, c_sup) == 0)
        throw CenterEscaped("build_window: superstable-like center outside the traced boundary");
    if (winding_number(win.boundary, tip) == 0 &&
        min_distance(win.boundary.points, tip) > 0.05 * win.diameter)
        throw CenterEscaped("build_window: tip fell outside the traced boundary");
    if (out) out->beta_next = beta_next;
    return win;
}

}  // namespace

ParamWindow build_window(const RenormContext& ctx, int n, WindowBuildOutputs* out) {
    return build_window_impl(ctx, n, true, out);
}

int count_equation_roots(const ParamWindow& win, const ParameterEquation& eq, int grid) {
    BoundingBox bb = bounding_box(win.boundary.points);
    std::vector<Cplx> roots;
    for (int gy = 0; gy < grid; ++gy) {
        for (int gx = 0; gx < grid; ++gx) {
            Cplx seed(bb.xmin + (gx + 0.5) * (bb.xmax - bb.xmin) / grid,
                      bb.ymin + (gy + 0.5) * (bb.ymax - bb.ymin) / grid);
            Cplx c = seed;
            bool ok = false;
            for (int it = 0; it < 80; ++it) {
                EqValue v = eval_equation(eq, c);
                if (std::norm(v.df) < 1e-30 || std::norm(c) > 1e6) break;
                Cplx step = v.f / v.df;
                c -= step;
                if (std::abs(step) < 1e-13 * (1.0 + std::abs(c))) {
                    ok = true;
                    break;
                }
            }
            if (!ok || winding_number(win.boundary, c) == 0) continue;
            bool dup = false;
            for (Cplx r : roots)
                if (std::abs(r - c) < 1e-9) dup = true;
            if (!dup) roots.push_back(c);
        }
    }
    return static_cast<int>(roots.size());
}

int containment_floor(const RenormContext& ctx, double cap, int n_max) {
    if (cap <= 0.0) throw FloorNotFound("containment_floor: impossible cap");
    // n = 1 is excluded: B_1 = G_0(D_0) has a corner at the alpha fixed
    // point, so the pulled-back restriction domain touches the codomain
    // along the alpha rays and carries no annulus.
    for (int n = 2; n <= n_max; ++n) {
        ParamWindow win;
        try {
            win = build_window_impl(ctx, n, false, nullptr);
        } catch (const DomainError&) {
            continue;
        }
        if (win.diameter > cap) continue;
        double worst = 0.0;
        for (Cplx b : win.boundary.points) worst = std::max(worst, std::abs(b - win.center));
        if (worst <= cap) return n;
    }
    throw FloorNotFound("containment_floor: no admissible n within budget");
}

// ---------------------------------------------------------------------------
// Misiurewicz route
// ---------------------------------------------------------------------------

MisiurewiczContext make_misiurewicz_context(const MisiurewiczPoint& base, int q_max, int depth,
                                            int terms) {
    MisiurewiczContext ctx;
    ctx.base = base;
    ctx.level = kDefaultGamma;
    ctx.cycle = alpha_landing_angles(base.value, q_max);
    std::vector<PuzzleLevel> puzzle = build_puzzle(base.value, ctx.cycle, ctx.level, depth);
    ctx.row = repelling_orbit_window(base.value, base.m, base.k, puzzle, terms);
    return ctx;
}

namespace {

struct RayTag {
    RationalAngle angle;
    double potential = 0.0;
};

// Recovers the exact (angle, potential) description of a puzzle-boundary
// point: walk the forward orbit onto the depth-0 cut system, read the
// angle there, then halve back choosing the preimage closest to the
// observed orbit point.
std::optional<RayTag> measure_tag(Cplx c0, Cplx v, int depth, double level,
                                  const std::vector<RationalAngle>& cycle) {
    std::vector<Cplx> y(static_cast<size_t>(depth) + 1);
    y[0] = v;
    for (int j = 1; j <= depth; ++j)
        y[static_cast<size_t>(j)] = y[static_cast<size_t>(j - 1)] * y[static_cast<size_t>(j - 1)] + c0;
    double g_top = green_potential(c0, y.back());
    if (g_top < 1e-9) return std::nullopt;  // landing-point corner; skip

    RationalAngle theta;
    if (g_top >= level * 0.99) {
        // Equipotential point: dyadic angle from the Boettcher argument.
        double frac = std::arg(boettcher(c0, y.back())) / (2.0 * M_PI);
        frac -= std::floor(frac);
        BigInt den = BigInt(1) << 53;
        BigInt num = static_cast<long long>(std::llround(frac * 9007199254740992.0));
        theta = RationalAngle(num, den);
    } else {
        double best = 1e300;
        for (const RationalAngle& a : cycle) {
            double d = std::abs(dynamical_ray_point(c0, a, g_top) - y.back());
            if (d < best) {
                best = d;
                theta = a;
            }
        }
    }
    double g = g_top;
    for (int j = depth - 1; j >= 0; --j) {
        g /= 2.0;
        RationalAngle h1 = theta.halved();
        RationalAngle h2 = theta.half_plus();
        double d1 = std::abs(dynamical_ray_point(c0, h1, g) - y[static_cast<size_t>(j)]);
        double d2 = std::abs(dynamical_ray_point(c0, h2, g) - y[static_cast<size_t>(j)]);
        theta = d1 <= d2 ? h1 : h2;
    }
    if (g < 1e-9) g = 1e-9;
    return RayTag{theta, g};
}

// Pullback of a single point along q + nk inverse steps: first the orbit
// p -> P^q(p), then n trips around the repelling cycle.
Cplx pull_point_to_chain(const MisiurewiczContext& ctx, int n, Cplx z) {
    Cplx c0 = ctx.base.value;
    std::vector<Cplx> orbit = orbit_of(c0, ctx.row.p, ctx.row.q);
    Cplx cur = z;
    for (int j = ctx.row.q - 1; j >= 0; --j)
        cur = branch_point(c0, cur, orbit[static_cast<size_t>(j) + 1],
                           orbit[static_cast<size_t>(j)]);
    std::vector<Cplx> cyc = orbit_of(c0, ctx.row.p, ctx.row.k);
    for (int trip = 0; trip < n; ++trip)
        for (int j = ctx.row.k - 1; j >= 0; --j)
            cur = branch_point(c0, cur, cyc[static_cast<size_t>(j) + 1],
                               cyc[static_cast<size_t>(j)]);
    return cur;
}

}  // namespace

ParamWindow build_window(const MisiurewiczContext& ctx, int n) {
    if (n < 1 || n >= static_cast<int>(ctx.row.B_chain.size()))
        throw UsageError("build_window: n outside the constructed chain");
    const Cplx c0 = ctx.base.value;
    const int m = ctx.base.m;
    const PuzzlePiece& B = ctx.row.B_chain[static_cast<size_t>(n)];

    ParamWindow win;
    win.word = {n};
    win.n = n;
    win.level_k = 1;
    win.defining_kind = WindowKind::OrbitPointInB;

    // Center: the superstable parameter with P^{m+q+nk}(0) = 0 hiding in
    // the window (the copy's main center), seeded via the fixed-target
    // orbit equation P_c^m(0) = zeta with zeta the pullback of 0 into B_n.
    const int s = m + ctx.row.q + n * ctx.row.k;
    Cplx zeta = pull_point_to_chain(ctx, n, Cplx(0.0));
    Cplx seed = solve_parameter(orbit_hit_eq(m, [zeta](Cplx) { return zeta; }), c0, 1e-9);
    win.center = solve_parameter(superstable_eq(s), seed, 1e-10);
    win.center_residual = std::abs(critical_orbit_jet(win.center, s).value);

    // Boundary: tag a subsample of the B_n boundary and continue the locus
    // P_c^m(0) = ray-point(c, tag).
    const std::vector<Cplx>& pts = B.boundary.points;
    const size_t target_count = 96;
    const size_t stride = std::max<size_t>(1, (pts.size() - 1) / target_count);
    Cplx c = win.center;
    size_t failures = 0, total = 0;
    std::vector<double> steps;
    for (size_t i = 0; i + 1 < pts.size(); i += stride) {
        ++total;
        std::optional<RayTag> tag = measure_tag(c0, pts[i], B.depth, ctx.level, ctx.cycle);
        if (!tag) continue;
        try {
            for (int it = 0; it < 60; ++it) {
                auto h_of = [&](Cplx cc) {
                    return critical_orbit_jet(cc, m).value -
                           dynamical_ray_point(cc, tag->angle, tag->potential);
                };
                constexpr double fd = 1e-9;
                Cplx f = h_of(c);
                Cplx df = (h_of(c + fd) - f) / fd;
                Cplx step = f / df;
                c -= step;
                if (std::abs(step) < 1e-13 * (1.0 + std::abs(c))) break;
                if (it == 59) throw NoConvergence("window boundary Newton stalled");
            }
            if (!win.boundary.points.empty())
                steps.push_back(std::abs(c - win.boundary.points.back()));
            win.boundary.points.push_back(c);
        } catch (const DomainError&) {
            ++failures;
            if (failures * 5 > std::max<size_t>(total, 10))
                throw ContinuationBreakdown("build_window: too many boundary solves failed");
        }
    }
    if (win.boundary.points.size() < 8)
        throw ContinuationBreakdown("build_window: boundary trace too sparse");
    win.boundary.points.push_back(win.boundary.points.front());
    orient_ccw(win.boundary);
    win.diameter = curve_diameter(win.boundary.points);
    if (winding_number(win.boundary, win.center) == 0)
        throw CenterEscaped("build_window: center fell outside the traced boundary");
    return win;
}

int containment_floor(const MisiurewiczContext& ctx, double cap) {
    if (cap <= 0.0) throw FloorNotFound("containment_floor: impossible cap");
    for (int n = 1; n < static_cast<int>(ctx.row.B_chain.size()); ++n) {
        ParamWindow win;
        try {
            win = build_window(ctx, n);
        } catch (const DomainError&) {
            continue;
        }
        if (win.diameter > cap) continue;
        double worst = 0.0;
        for (Cplx b : win.boundary.points) worst = std::max(worst, std::abs(b - win.center));
        if (worst <= cap) return n;
    }
    throw FloorNotFound("containment_floor: no admissible n within the chain");
}

// ---------------------------------------------------------------------------
// Towers
// ---------------------------------------------------------------------------

WindowTower build_tower(Cplx base, std::vector<int> word, std::vector<double> caps) {
    if (std::abs(base - Cplx(-2.0, 0.0)) > 1e-9)
        throw UsageError("build_tower: the chain construction is anchored at -2");
    if (word.empty() || word.size() > 4) throw UsageError("build_tower: word length must be 1..4");
    while (caps.size() < word.size())
        caps.push_back(std::pow(0.5, static_cast<double>(caps.size())));

    WindowTower tower;
    tower.base_point = base;
    tower.caps = caps;
    RenormContext ctx = make_level1_context();
    for (size_t k = 0; k < word.size(); ++k) {
        int floor_n = containment_floor(ctx, caps[k]);
        int n = std::max(word[k], floor_n);
        WindowBuildOutputs out;
        ParamWindow win = build_window(ctx, n, &out);
        tower.word.push_back(n);
        tower.floors.push_back(floor_n);
        tower.windows.push_back(win);
        tower.centers.push_back(win.center);
        tower.contexts.push_back(ctx);
        if (k + 1 < word.size()) {
            ctx = tune_context(ctx, n, win.center, out.beta_next);
            ctx.scale_hint = win.diameter * 0.05;
            ctx.fp_sep_hint = std::abs(out.beta_next - out.alpha_next);
        }
    }
    return tower;
}

WindowTower build_tower(const MisiurewiczPoint& base, std::vector<int> word,
                        std::vector<double> caps) {
    if (word.size() != 1)
        throw UsageError(
            "build_tower: Misiurewicz towers support depth 1 (deeper levels would need the "
            "copy's ray cycle, which is not re-derived)");
    while (caps.size() < word.size()) caps.push_back(1.0);

    WindowTower tower;
    tower.base_point = base.value;
    tower.caps = caps;
    tower.misiurewicz = make_misiurewicz_context(base);
    int floor_n = containment_floor(*tower.misiurewicz, caps[0]);
    int n = std::max(word[0], floor_n);
    ParamWindow win = build_window(*tower.misiurewicz, n);
    tower.word.push_back(n);
    tower.floors.push_back(floor_n);
    tower.windows.push_back(win);
    tower.centers.push_back(win.center);
    return tower;
}


QuadraticLikeRestriction restriction_at_center(const WindowTower& tower, size_t k) {
    const ParamWindow& win = tower.windows[k];
    QuadraticLikeRestriction F;
    if (!tower.misiurewicz) {
        const RenormContext& ctx = tower.contexts.at(k);
        Cplx c = win.center;
        Cplx beta =
            ctx.J == 1 ? Cplx(0.0)
                       : continue_fixed_point(ctx.base_c, c, ctx.J, ctx.beta_seed, ctx.fp_sep_hint);
        ClosedCurve D0c = ctx.d0.curve_at(c);
        DomainChain chain;
        if (ctx.J == 1) {
            chain = build_domain_chain(c, D0c, win.n);
        } else {
            BranchMap g1{c, ctx.J, orbit_of(c, beta, ctx.J)};
            BranchMap g0{c, ctx.J, orbit_of(c, -beta, ctx.J)};
            chain = build_domain_chain(g1, g0, D0c, win.n);
        }
        F.parameter = c;
        F.iterate = ctx.J * (win.n + 1);
        F.word = win.word;
        F.codomain = D0c;
        F.domain.points = pull_back_critical(c, chain.B(win.n).points, ctx.J);
        return F;
    }
    const MisiurewiczContext& ctx = *tower.misiurewicz;
    Cplx c = win.center;
    // Continue a puzzle piece from c0 to c through its boundary ray tags.
    auto continue_piece = [&](const PuzzlePiece& piece) {
        ClosedCurve curve;
        const std::vector<Cplx>& pts = piece.boundary.points;
        size_t stride = std::max<size_t>(1, (pts.size() - 1) / 96);
        for (size_t i = 0; i + 1 < pts.size(); i += stride) {
            std::optional<RayTag> tag =
                measure_tag(ctx.base.value, pts[i], piece.depth, ctx.level, ctx.cycle);
            if (!tag) continue;
            curve.points.push_back(dynamical_ray_point(c, tag->angle, tag->potential));
        }
        if (curve.points.size() < 8)
            throw ContinuationBreakdown("restriction_at_center: piece continuation too sparse");
        curve.points.push_back(curve.points.front());
        return curve;
    };
    F.parameter = c;
    F.iterate = ctx.base.m + ctx.row.q + win.n * ctx.row.k;
    F.word = win.word;
    ClosedCurve Bn_c = continue_piece(ctx.row.B_chain[static_cast<size_t>(win.n)]);
    F.domain.points = pull_back_critical(c, Bn_c.points, ctx.base.m);
    F.codomain = continue_piece(ctx.row.B_chain.front());  // the critical piece C_r
    return F;
}


TowerReport verify_tower(const WindowTower& tower) {
    TowerReport rep;
    const size_t K = tower.windows.size();
    for (size_t k = 0; k < K; ++k) {
        const ParamWindow& win = tower.windows[k];
        bool nested = true;
        if (k > 0) {
            for (Cplx b : win.boundary.points)
                if (winding_number(tower.windows[k - 1].boundary, b) == 0) nested = false;
        }
        rep.nested.push_back(nested);
        rep.diameters.push_back(win.diameter);
        rep.cap_ok.push_back(k < tower.caps.size() ? win.diameter <= tower.caps[k] : true);
        rep.center_residuals.push_back(win.center_residual);

        int degree = 0;
        double margin = 0.0;
        try {
            QuadraticLikeReport q = verify_quadratic_like(restriction_at_center(tower, k));
            degree = q.degree;
            margin = q.margin;
        } catch (const DomainError&) {
            degree = 0;
        }
        rep.ql_degrees.push_back(degree);
        rep.ql_margins.push_back(margin);

        BoundingBox bb = bounding_box(win.boundary.points);
        int hits = 0;
        const int grid = 48;
        for (int gy = 0; gy < grid; ++gy) {
            for (int gx = 0; gx < grid; ++gx) {
                Cplx cc(bb.xmin + (gx + 0.5) * (bb.xmax - bb.xmin) / grid,
                        bb.ymin + (gy + 0.5) * (bb.ymax - bb.ymin) / grid);
                if (winding_number(win.boundary, cc) == 0) continue;
                Cplx z = 0.0;
                bool bounded = true;
                for (int it = 0; it < 1000 && bounded; ++it) {
                    z = z * z + cc;
                    if (std::norm(z) > 4.0) bounded = false;
                }
                if (bounded) ++hits;
            }
        }
        rep.mandel_samples.push_back(hits);
    }
    bool pass = true;
    for (size_t k = 0; k < K; ++k) {
        if (!rep.nested[k] || !rep.cap_ok[k]) pass = false;
        if (k > 0 && rep.diameters[k] >= rep.diameters[k - 1]) pass = false;
        if (rep.center_residuals[k] > 1e-9) pass = false;
        if (rep.ql_degrees[k] != 2 || rep.ql_margins[k] <= 0.0) pass = false;
        if (rep.mandel_samples[k] <= 0) pass = false;
    }
    rep.all_pass = pass;
    return rep;
}

}  // namespace mandel
