#pragma once

#include "mandel/curve.hpp"
#include "mandel/pullback.hpp"
#include "mandel/rays.hpp"

namespace mandel {

// The two inverse branches of P_c off the cut through beta_bar. For real c
// near -2 the cut is the slit (-infty, c]; G_0 maps into the left half
// plane (toward beta_bar), G_1 into the right (toward beta).
struct BranchSystem {
    Cplx parameter;
    Cplx beta;
    Cplx beta_bar;  // = -beta

    static BranchSystem make(Cplx c);
};

// branch 0 -> G_0 (beta_bar side), branch 1 -> G_1 (beta side).
Cplx inverse_branch(const BranchSystem& system, int branch, Cplx z);

struct DomainChain {
    Cplx parameter;
    std::vector<ClosedCurve> D_curves;  // D_0 .. D_N
    std::vector<ClosedCurve> B_curves;  // B_1 .. B_N (index n-1)
    std::vector<double> B_diameters;    // matching B_curves
    Cplx beta_bar;

    const ClosedCurve& B(int n) const { return B_curves.at(static_cast<size_t>(n) - 1); }
};

// D_n = G_1^{on}(D_0), B_n = G_0(D_{n-1}). The branch maps default to the
// classical J=1 branches of `c`; towers pass renormalized branch maps.
DomainChain build_domain_chain(Cplx c, const ClosedCurve& D0, int N);
DomainChain build_domain_chain(const BranchMap& g1, const BranchMap& g0, const ClosedCurve& D0,
                               int N);

struct QuadraticLikeRestriction {
    Cplx parameter;
    int iterate = 1;            // F = P_c^{o iterate}
    ClosedCurve domain;         // boundary of C
    ClosedCurve codomain;       // boundary of D
    std::vector<int> word;      // renormalization address (empty at level 1)
};

// C_n = full P-preimage of B_n; F = P^{o(n+1)}: C_n -> D_0.
QuadraticLikeRestriction build_restriction(Cplx c, const DomainChain& chain, int n);

// Renormalized variant: C = F_w^{-1}(B) for F_w = P^{oJ}; D = codomain.
QuadraticLikeRestriction build_restriction(Cplx c, int J, const ClosedCurve& B,
                                           const ClosedCurve& codomain,
                                           const std::vector<int>& word);

struct QuadraticLikeReport {
    int degree = 0;
    double margin = 0.0;
    bool julia_connected_hint = false;
};

QuadraticLikeReport verify_quadratic_like(const QuadraticLikeRestriction& F, int samples = 256);

// The vertex recipe of the domain D_0 of the -2 construction: the region
// containing 0 bounded by the equipotential gamma and the four rays landing
// at alpha and -alpha. Vertices are (angle, potential) ray points plus the
// two corners, in ccw order; every vertex is computable pointwise at any
// nearby parameter.
struct D0Spec {
    struct Vertex {
        // CornerPullback: the landing point of the ray (angle, potential)
        // refined to the nearby periodic point of P^{corner_iterate} by
        // repeated branch-stable inverse steps; used where the corner fixed
        // point has no closed form.
        enum class Kind { RayPoint, CornerAlpha, CornerMinusAlpha, CornerPullback };
        Kind kind = Kind::RayPoint;
        RationalAngle angle;
        double potential = 0.0;
        int corner_iterate = 0;
    };
    std::vector<Vertex> vertices;  // open ccw loop
    double level = kDefaultGamma;
    RayOptions ray_opts;

    Cplx vertex_at(Cplx c, size_t t) const;
    ClosedCurve curve_at(Cplx c) const;
    size_t size() const { return vertices.size(); }
};

// Builds the recipe with the {1/3, 2/3} cycle combinatorics of z^2 - 2.
D0Spec make_d0_spec_minus2(double level = kDefaultGamma, int ray_substeps = 3,
                           int arc_samples = 16, double g_land = 1e-6);

// Fixed points of F = P^{oJ} inside the given domain curve, deduplicated.
std::vector<Cplx> iterate_fixed_points_inside(Cplx c, int J, const ClosedCurve& domain,
                                              int seeds = 32);

// Multiplier of P^{oJ} at z.
Cplx iterate_multiplier(Cplx c, int J, Cplx z);

// Newton for P_c^{oJ}(z) = target from a seed; throws NoConvergence.
Cplx solve_iterate_preimage(Cplx c, int J, Cplx target, Cplx seed, double tol = 1e-13);

// Classification of the two fixed points of a restriction into the
// non-separate (beta-like) and separate (alpha-like) one. Primary route:
// removing beta keeps the filled-set raster connected. Fallback: beta is
// the fixed point with multiplier argument closest to 0.
struct RenormFixedPoints {
    Cplx beta;
    Cplx alpha;
    Cplx beta_multiplier;
    Cplx alpha_multiplier;
    bool classified_by_raster = false;
};
RenormFixedPoints classify_renorm_fixed_points(const QuadraticLikeRestriction& F);

}  // namespace mandel
