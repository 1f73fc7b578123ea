#include "mandel/renorm.hpp"

#include <algorithm>
#include <cmath>

#include "mandel/raster.hpp"

namespace mandel {

BranchSystem BranchSystem::make(Cplx c) {
    FixedPointPair fp = fixed_points(c);
    return {c, fp.beta, -fp.beta};
}

Cplx inverse_branch(const BranchSystem& system, int branch, Cplx z) {
    const Cplx d = z - system.parameter;
    if (d.real() < 0.0 && std::abs(d.imag()) < 1e-12 && std::abs(d) > 1e-12)
        throw OnCut("inverse_branch: input on the branch cut");
    Cplx root = std::sqrt(d);  // principal: Re >= 0, the G_1 range
    return branch == 1 ? root : -root;
}

namespace {
ClosedCurve to_curve(std::vector<Cplx> pts, std::optional<double> tag = std::nullopt) {
    ClosedCurve c;
    c.points = std::move(pts);
    c.level_tag = tag;
    return c;
}
}  // namespace

DomainChain build_domain_chain(const BranchMap& g1, const BranchMap& g0, const ClosedCurve& D0,
                               int N) {
    DomainChain chain;
    chain.parameter = g1.c;
    chain.beta_bar = g0.orbit.front();
    chain.D_curves.push_back(D0);
    for (int n = 1; n <= N; ++n) {
        const ClosedCurve& prev = chain.D_curves.back();
        chain.B_curves.push_back(to_curve(g0.map_loop(prev.points)));
        chain.B_diameters.push_back(curve_diameter(chain.B_curves.back().points));
        chain.D_curves.push_back(to_curve(g1.map_loop(prev.points)));
    }
    return chain;
}

DomainChain build_domain_chain(Cplx c, const ClosedCurve& D0, int N) {
    BranchSystem sys = BranchSystem::make(c);
    BranchMap g1{c, 1, {sys.beta, sys.beta}};
    BranchMap g0{c, 1, {sys.beta_bar, sys.beta}};
    return build_domain_chain(g1, g0, D0, N);
}

QuadraticLikeRestriction build_restriction(Cplx c, int J, const ClosedCurve& B,
                                           const ClosedCurve& codomain,
                                           const std::vector<int>& word) {
    // The critical value of F = P^J must lie inside B for the pulled-back
    // domain to be a single Jordan curve around 0.
    Cplx v = 0.0;
    for (int k = 0; k < J; ++k) v = v * v + c;
    if (winding_number(B, v) % 2 == 0)
        throw DegenerateDomain(
            "build_restriction: critical value outside B; the preimage is not a single Jordan "
            "curve");
    QuadraticLikeRestriction F;
    F.parameter = c;
    F.iterate = J;
    F.codomain = codomain;
    F.word = word;
    F.domain = to_curve(pull_back_critical(c, B.points, J));
    if (winding_number(F.domain, Cplx(0.0)) == 0)
        throw DegenerateDomain("build_restriction: 0 not enclosed by the pulled-back domain");
    return F;
}

QuadraticLikeRestriction build_restriction(Cplx c, const DomainChain& chain, int n) {
    if (n < 1 || n > static_cast<int>(chain.B_curves.size()))
        throw UsageError("build_restriction: n outside chain range");
    // B_n is already an n-fold pullback of D_0, so the critical domain is a
    // single further preimage; the return map is P^{o(n+1)}.
    QuadraticLikeRestriction F = build_restriction(c, 1, chain.B(n), chain.D_curves.front(), {});
    F.iterate = n + 1;
    return F;
}

QuadraticLikeReport verify_quadratic_like(const QuadraticLikeRestriction& F, int samples) {
    QuadraticLikeReport rep;
    rep.margin = polyline_gap(F.domain.points, F.codomain.points);

    // Degree = winding of the image of the domain boundary about an interior
    // point of the codomain.
    std::vector<Cplx> boundary = resample_loop(F.domain.points, static_cast<size_t>(samples));
    std::vector<Cplx> image;
    image.reserve(boundary.size());
    for (Cplx z : boundary) {
        for (int k = 0; k < F.iterate; ++k) z = z * z + F.parameter;
        image.push_back(z);
    }
    Cplx inner = interior_point(F.codomain.points);
    rep.degree = std::abs(winding_number(image, inner));

    // Renormalized critical orbit containment.
    Cplx z = 0.0;
    rep.julia_connected_hint = true;
    for (int n = 0; n < 200; ++n) {
        for (int k = 0; k < F.iterate; ++k) z = z * z + F.parameter;
        if (std::abs(z) > 1e100 || winding_number(F.codomain, z) == 0) {
            rep.julia_connected_hint = false;
            break;
        }
    }
    return rep;
}

Cplx D0Spec::vertex_at(Cplx c, size_t t) const {
    const Vertex& v = vertices.at(t);
    switch (v.kind) {
        case Vertex::Kind::CornerAlpha:
            return fixed_points(c).alpha;
        case Vertex::Kind::CornerMinusAlpha:
            return -fixed_points(c).alpha;
        case Vertex::Kind::CornerPullback: {
            Cplx z = dynamical_ray_point(c, v.angle, v.potential, ray_opts);
            for (int it = 0; it < 80; ++it) {
                Cplx zn = solve_iterate_preimage(c, v.corner_iterate, z, z);
                if (std::abs(zn - z) < 1e-13 * (1.0 + std::abs(zn))) return zn;
                z = zn;
            }
            return z;
        }
        case Vertex::Kind::RayPoint:
        default:
            return dynamical_ray_point(c, v.angle, v.potential, ray_opts);
    }
}

ClosedCurve D0Spec::curve_at(Cplx c) const {
    ClosedCurve curve;
    curve.level_tag = level;
    curve.points.reserve(vertices.size() + 1);
    // Trace each boundary ray once and reuse its points.
    for (size_t t = 0; t < vertices.size(); ++t) curve.points.push_back(vertex_at(c, t));
    curve.points.push_back(curve.points.front());
    return curve;
}

D0Spec make_d0_spec_minus2(double level, int ray_substeps, int arc_samples, double g_land) {
    D0Spec spec;
    spec.level = level;
    spec.ray_opts.substeps = ray_substeps;
    using V = D0Spec::Vertex;

    auto add_ray = [&](const RationalAngle& ang, bool ascending) {
        // potentials from g_land up to level (exclusive of the exact level,
        // which belongs to the arc samples)
        std::vector<double> gs;
        const double factor = std::pow(2.0, 1.0 / ray_substeps);
        for (double g = g_land; g < level * 0.999; g *= factor) gs.push_back(g);
        if (!ascending) std::reverse(gs.begin(), gs.end());
        for (double g : gs) spec.vertices.push_back(V{V::Kind::RayPoint, ang, g});
    };
    auto add_arc = [&](const RationalAngle& from, const RationalAngle& to) {
        // equally spaced exact angles from..to at the gamma level, endpoints
        // included
        BigInt fn = from.numerator() * to.denominator();
        BigInt tn = to.numerator() * from.denominator();
        BigInt den = from.denominator() * to.denominator();
        for (int j = 0; j <= arc_samples; ++j) {
            BigInt num = fn * (arc_samples - j) + tn * j;
            spec.vertices.push_back(V{V::Kind::RayPoint, RationalAngle(num, den * arc_samples),
                                      level});
        }
    };
    const RationalAngle a16(1, 6), a13(1, 3), a23(2, 3), a56(5, 6);
    spec.vertices.push_back(V{V::Kind::CornerMinusAlpha, a16, 0.0});
    add_ray(a16, true);
    add_arc(a16, a13);
    add_ray(a13, false);
    spec.vertices.push_back(V{V::Kind::CornerAlpha, a13, 0.0});
    add_ray(a23, true);
    add_arc(a23, a56);
    add_ray(a56, false);
    return spec;
}

Cplx iterate_multiplier(Cplx c, int J, Cplx z) {
    Cplx lambda = 1.0;
    for (int k = 0; k < J; ++k) {
        lambda *= 2.0 * z;
        z = z * z + c;
    }
    return lambda;
}

Cplx solve_iterate_preimage(Cplx c, int J, Cplx target, Cplx seed, double tol) {
    Cplx z = seed;
    for (int it = 0; it < 100; ++it) {
        Cplx f = z;
        Cplx df = 1.0;
        for (int k = 0; k < J; ++k) {
            df = 2.0 * f * df;
            f = f * f + c;
        }
        if (df == Cplx(0.0)) break;
        Cplx step = (f - target) / df;
        z -= step;
        if (std::abs(step) <= tol * std::max(1.0, std::abs(z))) return z;
    }
    throw NoConvergence("solve_iterate_preimage: Newton failed");
}

std::vector<Cplx> iterate_fixed_points_inside(Cplx c, int J, const ClosedCurve& domain,
                                              int seeds) {
    std::vector<Cplx> roots;
    BoundingBox bb = bounding_box(domain.points);
    const int grid = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(seeds))));
    for (int gy = 0; gy < grid; ++gy) {
        for (int gx = 0; gx < grid; ++gx) {
            Cplx seed(bb.xmin + (gx + 0.5) * (bb.xmax - bb.xmin) / grid,
                      bb.ymin + (gy + 0.5) * (bb.ymax - bb.ymin) / grid);
            // Newton on P^J(z) - z.
            Cplx z = seed;
            bool ok = false;
            for (int it = 0; it < 80; ++it) {
                Cplx f = z;
                Cplx df = 1.0;
                for (int k = 0; k < J; ++k) {
                    df = 2.0 * f * df;
                    f = f * f + c;
                }
                if (std::norm(f) > 1e60) break;
                Cplx step = (f - z) / (df - 1.0);
                z -= step;
                if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(z))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) continue;
            if (winding_number(domain, z) == 0) continue;
            bool dup = false;
            for (Cplx r : roots)
                if (std::abs(r - z) < 1e-8) dup = true;
            if (!dup) roots.push_back(z);
        }
    }
    return roots;
}

RenormFixedPoints classify_renorm_fixed_points(const QuadraticLikeRestriction& F) {
    std::vector<Cplx> fps = iterate_fixed_points_inside(F.parameter, F.iterate, F.domain, 32);
    if (fps.size() != 2)
        throw DomainError("classify_renorm_fixed_points: expected two fixed points inside the "
                          "domain, found " + std::to_string(fps.size()));
    RenormFixedPoints out;
    Cplx m0 = iterate_multiplier(F.parameter, F.iterate, fps[0]);
    Cplx m1 = iterate_multiplier(F.parameter, F.iterate, fps[1]);

    // Raster route: beta is the fixed point whose removal keeps the filled
    // set connected.
    const int res = 512;
    Raster k = filled_julia_raster(F.parameter, F.iterate, F.domain, F.codomain, res, 60);
    auto components_without = [&](Cplx p) {
        Raster copy = k;
        const double dx = (k.box.xmax - k.box.xmin) / k.width;
        int px = static_cast<int>((p.real() - k.box.xmin) / (k.box.xmax - k.box.xmin) * k.width);
        int py = static_cast<int>((k.box.ymax - p.imag()) / (k.box.ymax - k.box.ymin) * k.height);
        const int rad = 2;
        for (int y = py - rad; y <= py + rad; ++y)
            for (int x = px - rad; x <= px + rad; ++x)
                if (x >= 0 && y >= 0 && x < k.width && y < k.height)
                    copy.data[static_cast<size_t>(y) * k.width + x] = 0;
        (void)dx;
        return count_components(copy);
    };
    int base = count_components(k);
    int c0 = components_without(fps[0]);
    int c1 = components_without(fps[1]);
    bool raster_ok = base == 1 && ((c0 <= 1) != (c1 <= 1));
    int beta_idx;
    if (raster_ok) {
        beta_idx = (c0 <= 1) ? 0 : 1;
        out.classified_by_raster = true;
    } else if ((std::abs(m0) <= 1.0) != (std::abs(m1) <= 1.0)) {
        // A non-repelling fixed point is always the separate (alpha) one.
        beta_idx = std::abs(m0) > 1.0 ? 0 : 1;
    } else {
        // Fallback: beta has multiplier argument closest to 0.
        beta_idx = std::abs(std::arg(m0)) <= std::abs(std::arg(m1)) ? 0 : 1;
    }
    out.beta = fps[static_cast<size_t>(beta_idx)];
    out.alpha = fps[static_cast<size_t>(1 - beta_idx)];
    out.beta_multiplier = beta_idx == 0 ? m0 : m1;
    out.alpha_multiplier = beta_idx == 0 ? m1 : m0;
    return out;
}

}  // namespace mandel
