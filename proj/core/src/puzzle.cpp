#include "mandel/puzzle.hpp"

#include <algorithm>
#include <cmath>

#include "mandel/dynamics.hpp"

namespace mandel {

namespace {

constexpr double kLandPotential = 1e-6;
// Landing estimates approach repelling points slowly in the potential, so
// the angle search probes deeper than the boundary assembly needs.
constexpr double kLandingTestPotential = 1e-8;
constexpr size_t kBoundaryCap = 8192;

Cplx pow_iter(Cplx c, Cplx z, int n) {
    for (int j = 0; j < n; ++j) z = z * z + c;
    return z;
}

const PuzzlePiece& piece_at(const std::vector<PuzzleLevel>& puzzle, int depth, Cplx x) {
    for (const PuzzlePiece& piece : puzzle.at(static_cast<size_t>(depth)).pieces)
        if (winding_number(piece.boundary, x) % 2 != 0) return piece;
    throw NotInPuzzle("no depth-" + std::to_string(depth) + " piece contains the point");
}

}  // namespace

std::vector<RationalAngle> alpha_landing_angles(Cplx c, int q_max) {
    FixedPointPair fp = fixed_points(c);
    if (std::abs(2.0 * fp.alpha) <= 1.0)
        throw NotRepelling("alpha_landing_angles: alpha is not repelling");

    std::vector<RationalAngle> found;
    auto known = [&](const RationalAngle& a) {
        return std::find(found.begin(), found.end(), a) != found.end();
    };
    for (int q = 1; q <= q_max; ++q) {
        const BigInt den = (BigInt(1) << q) - 1;
        for (BigInt p = 1; p < den; ++p) {
            RationalAngle a(p, den);
            if (known(a)) continue;
            Cplx z;
            try {
                z = dynamical_ray_point(c, a, kLandingTestPotential);
            } catch (const DomainError&) {
                continue;
            }
            if (std::abs(z - fp.alpha) < 1e-3) found.push_back(a);
        }
    }
    if (found.empty()) throw NoCycleFound("alpha_landing_angles: no landing angle found");
    // Close under doubling (the landing set is forward invariant).
    for (size_t i = 0; i < found.size(); ++i) {
        RationalAngle d = found[i].doubled();
        if (!known(d)) found.push_back(d);
    }
    std::sort(found.begin(), found.end(),
              [](const RationalAngle& a, const RationalAngle& b) {
                  return a.numerator() * b.denominator() < b.numerator() * a.denominator();
              });
    return found;
}

std::vector<PuzzleLevel> build_puzzle(Cplx c, const std::vector<RationalAngle>& angles,
                                      double level, int depth) {
    if (angles.size() < 2) throw UsageError("build_puzzle: need at least two cut angles");
    if (depth > 12) throw UsageError("build_puzzle: depth budget is 12");

    std::vector<RationalAngle> cuts = angles;
    std::sort(cuts.begin(), cuts.end(), [](const RationalAngle& a, const RationalAngle& b) {
        return a.numerator() * b.denominator() < b.numerator() * a.denominator();
    });

    const Cplx alpha = fixed_points(c).alpha;
    RayOptions opts;
    opts.substeps = 3;

    // Sector piece between consecutive cut rays: corner alpha, ray up, arc
    // along the equipotential, ray down.
    auto sector = [&](const RationalAngle& from, RationalAngle to) {
        bool wrap = !(from.numerator() * to.denominator() <
                      to.numerator() * from.denominator());
        ClosedCurve curve;
        curve.level_tag = level;
        curve.points.push_back(alpha);
        std::vector<double> gs;
        const double factor = std::pow(2.0, 1.0 / opts.substeps);
        for (double g = kLandPotential; g < level * 0.999; g *= factor) gs.push_back(g);
        for (double g : gs) curve.points.push_back(dynamical_ray_point(c, from, g, opts));
        // Equipotential arc: exact rational angles from..to (to lifted by 1
        // when the sector wraps through angle 0).
        BigInt fn = from.numerator() * to.denominator();
        BigInt tn = to.numerator() * from.denominator();
        BigInt den = from.denominator() * to.denominator();
        if (wrap) tn += den;
        double span = static_cast<double>(tn - fn) / static_cast<double>(den);
        int arc_samples = std::max(8, static_cast<int>(std::ceil(span * 96)));
        for (int j = 0; j <= arc_samples; ++j) {
            BigInt num = fn * (arc_samples - j) + tn * j;
            curve.points.push_back(
                dynamical_ray_point(c, RationalAngle(num, den * arc_samples), level, opts));
        }
        for (size_t j = gs.size(); j-- > 0;)
            curve.points.push_back(dynamical_ray_point(c, to, gs[j], opts));
        curve.points.push_back(alpha);
        return curve;
    };

    std::vector<PuzzleLevel> levels;
    PuzzleLevel eta0;
    eta0.depth = 0;
    for (size_t i = 0; i < cuts.size(); ++i) {
        PuzzlePiece piece;
        piece.depth = 0;
        piece.boundary = sector(cuts[i], cuts[(i + 1) % cuts.size()]);
        orient_ccw(piece.boundary);
        piece.sample_interior = interior_point(piece.boundary.points);
        piece.contains_critical = winding_number(piece.boundary, Cplx(0.0)) != 0;
        eta0.pieces.push_back(std::move(piece));
    }
    levels.push_back(std::move(eta0));

    for (int d = 1; d <= depth; ++d) {
        PuzzleLevel lvl;
        lvl.depth = d;
        for (const PuzzlePiece& parent : levels.back().pieces) {
            auto finish = [&](std::vector<Cplx> pts, Cplx sample) {
                if (pts.size() > kBoundaryCap) pts = resample_loop(pts, kBoundaryCap);
                PuzzlePiece piece;
                piece.depth = d;
                piece.boundary.points = std::move(pts);
                piece.boundary.level_tag = level / std::pow(2.0, d);
                orient_ccw(piece.boundary);
                piece.sample_interior = sample;
                piece.contains_critical = winding_number(piece.boundary, Cplx(0.0)) != 0;
                lvl.pieces.push_back(std::move(piece));
            };
            if (winding_number(parent.boundary, c) % 2 != 0) {
                // The parent holds the critical value: one symmetric
                // preimage piece around 0.
                finish(pull_back_loop(c, parent.boundary.points, c, Cplx(0.0)), Cplx(0.0));
            } else {
                Cplx root = std::sqrt(parent.sample_interior - c);
                for (Cplx pre : {root, -root})
                    finish(pull_back_loop(c, parent.boundary.points, parent.sample_interior, pre),
                           pre);
            }
        }
        levels.push_back(std::move(lvl));
    }
    return levels;
}

EndChain end_chain(const std::vector<PuzzleLevel>& puzzle, Cplx anchor) {
    EndChain chain;
    chain.anchor = anchor;
    for (const PuzzleLevel& lvl : puzzle) {
        const PuzzlePiece* home = nullptr;
        for (const PuzzlePiece& piece : lvl.pieces) {
            if (min_distance(piece.boundary.points, anchor) < 1e-9)
                throw OnBoundary("end_chain: anchor lies on a cut curve at depth " +
                                 std::to_string(lvl.depth));
            if (winding_number(piece.boundary, anchor) % 2 != 0) {
                home = &piece;
                break;
            }
        }
        if (!home)
            throw NotInPuzzle("end_chain: no depth-" + std::to_string(lvl.depth) +
                              " piece contains the anchor");
        chain.pieces.push_back(*home);
    }
    return chain;
}

RepellingOrbitWindow repelling_orbit_window(Cplx c0, int m, int k,
                                            const std::vector<PuzzleLevel>& puzzle, int terms) {
    RepellingOrbitWindow win;
    win.k = k;
    win.p = pow_iter(c0, Cplx(0.0), m);
    if (std::abs(pow_iter(c0, win.p, k) - win.p) > 1e-8)
        throw NotPeriodic("repelling_orbit_window: P^m(0) is not k-periodic");

    EndChain p_end = end_chain(puzzle, win.p);
    const int max_depth = static_cast<int>(p_end.pieces.size()) - 1;

    // Depth l must give expansion |(P^k)'| >= 1.05 on D_l(p) and admit
    // the homeomorphic return P^q : D_l(p) -> C_{l-q} (so q <= l); deepen
    // l until both hold.
    constexpr double kLambda = 1.05;
    auto min_expansion = [&](const PuzzlePiece& piece) {
        BoundingBox bb = bounding_box(piece.boundary.points);
        double worst = 1e300;
        bool any = false;
        for (int gy = 0; gy < 32; ++gy) {
            for (int gx = 0; gx < 32; ++gx) {
                Cplx x(bb.xmin + (gx + 0.5) * (bb.xmax - bb.xmin) / 32,
                       bb.ymin + (gy + 0.5) * (bb.ymax - bb.ymin) / 32);
                if (winding_number(piece.boundary, x) % 2 == 0) continue;
                any = true;
                Cplx deriv = 1.0;
                Cplx z = x;
                for (int j = 0; j < k; ++j) {
                    deriv *= 2.0 * z;
                    z = z * z + c0;
                }
                worst = std::min(worst, std::abs(deriv));
            }
        }
        return any ? worst : 0.0;
    };
    bool saw_expansion = false;
    int l = -1;
    for (int cand = m; cand <= max_depth; ++cand) {
        double worst = min_expansion(p_end.pieces[static_cast<size_t>(cand)]);
        if (worst < kLambda) continue;
        saw_expansion = true;
        // Walk the orbit of p forward until its piece is critical,
        // dropping one depth per step.
        int d = cand;
        Cplx x = win.p;
        while (d > 0 && winding_number(piece_at(puzzle, d, x).boundary, Cplx(0.0)) == 0) {
            x = x * x + c0;
            --d;
        }
        if (winding_number(piece_at(puzzle, d, x).boundary, Cplx(0.0)) == 0) continue;
        l = cand;
        win.expansion = worst;
        win.q = cand - d;
        win.r0 = d;
        break;
    }
    if (l < 0) {
        if (!saw_expansion)
            throw ExpansionNotFound(
                "repelling_orbit_window: no expanding depth within the puzzle");
        throw NotInPuzzle(
            "repelling_orbit_window: the orbit of p never returns to a critical piece");
    }
    win.l = l;

    // Smallest r > r0 with r + q > l whose pullback avoids p.
    auto critical_piece = [&](int depth_) -> const PuzzlePiece& {
        for (const PuzzlePiece& piece : puzzle.at(static_cast<size_t>(depth_)).pieces)
            if (piece.contains_critical) return piece;
        throw NotInPuzzle("repelling_orbit_window: missing critical piece");
    };
    for (int r = std::max(win.r0 + 1, l - win.q + 1); r <= max_depth; ++r) {
        // Pull C_r back along the orbit p -> P(p) -> ... -> P^q(p).
        std::vector<Cplx> orbit(static_cast<size_t>(win.q) + 1);
        orbit[0] = win.p;
        for (int j = 1; j <= win.q; ++j) orbit[static_cast<size_t>(j)] =
            orbit[static_cast<size_t>(j - 1)] * orbit[static_cast<size_t>(j - 1)] + c0;
        std::vector<Cplx> cur = critical_piece(r).boundary.points;
        for (int j = win.q - 1; j >= 0; --j)
            cur = pull_back_loop(c0, cur, orbit[static_cast<size_t>(j) + 1],
                                 orbit[static_cast<size_t>(j)]);
        if (winding_number(cur, win.p) % 2 != 0) continue;  // must avoid p
        win.r = r;
        PuzzlePiece b0;
        b0.depth = r + win.q;
        b0.boundary.points = std::move(cur);
        orient_ccw(b0.boundary);
        b0.sample_interior = interior_point(b0.boundary.points);
        win.B_chain.push_back(std::move(b0));
        break;
    }
    if (win.B_chain.empty())
        throw NotInPuzzle("repelling_orbit_window: no valid depth r for the base piece");
    win.diameters.push_back(curve_diameter(win.B_chain.front().boundary.points));

    // B_n: nk inverse steps along the repelling cycle.
    std::vector<Cplx> cycle(static_cast<size_t>(k) + 1);
    cycle[0] = win.p;
    for (int j = 1; j <= k; ++j)
        cycle[static_cast<size_t>(j)] =
            cycle[static_cast<size_t>(j - 1)] * cycle[static_cast<size_t>(j - 1)] + c0;
    std::vector<Cplx> cur = win.B_chain.front().boundary.points;
    for (int n = 1; n <= terms; ++n) {
        for (int j = k - 1; j >= 0; --j)
            cur = pull_back_loop(c0, cur, cycle[static_cast<size_t>(j) + 1],
                                 cycle[static_cast<size_t>(j)]);
        PuzzlePiece bn;
        bn.depth = win.r + win.q + n * k;
        bn.boundary.points = cur;
        orient_ccw(bn.boundary);
        bn.sample_interior = interior_point(bn.boundary.points);
        win.diameters.push_back(curve_diameter(bn.boundary.points));
        win.B_chain.push_back(std::move(bn));
    }
    return win;
}

}  // namespace mandel
