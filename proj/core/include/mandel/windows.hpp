#pragma once

#include <functional>
#include <optional>

#include "mandel/puzzle.hpp"
#include "mandel/renorm.hpp"

namespace mandel {

struct MisiurewiczPoint {
    Cplx value;
    int m = 0;  // preperiod (minimal)
    int k = 0;  // period (minimal)
    Cplx orbit_multiplier;
    double residual = 0.0;
};

enum class EquationKind { Superstable, MisiurewiczEq, CenterHit, OrbitHit };

// A parameter-plane equation for Newton. Superstable/MisiurewiczEq carry
// exact critical-orbit derivatives; CenterHit/OrbitHit wrap an arbitrary
// residual c -> f(c) differentiated by finite differences (step 1e-7).
struct ParameterEquation {
    EquationKind kind = EquationKind::Superstable;
    int p = 0;                             // Superstable period
    int m = 0, k = 0;                      // MisiurewiczEq / OrbitHit data
    std::function<Cplx(Cplx)> residual;    // CenterHit / OrbitHit
};

ParameterEquation superstable_eq(int p);
ParameterEquation misiurewicz_eq(int m, int k);
ParameterEquation center_hit_eq(std::function<Cplx(Cplx)> residual);
ParameterEquation orbit_hit_eq(int m, std::function<Cplx(Cplx)> target);

// Newton on the equation. `accept` (optional) rejects converged roots the
// caller considers out of basin (throws WrongBasin).
Cplx solve_parameter(const ParameterEquation& eq, Cplx guess, double tol = 1e-12,
                     const std::function<bool(Cplx)>& accept = nullptr);

// All parameters with critical orbit strictly preperiodic (m) onto a
// repelling cycle (k), both minimal; multi-start Newton on the preperiodic
// polynomial with stability check across start densities.
std::vector<MisiurewiczPoint> misiurewicz_enumerate(int m, int k);

enum class WindowKind { CriticalValueInB, OrbitPointInB };

struct ParamWindow {
    std::vector<int> word;  // indices chosen so far, last entry = n
    int n = 0;
    Cplx center;
    ClosedCurve boundary;
    double diameter = 0.0;
    WindowKind defining_kind = WindowKind::CriticalValueInB;
    int level_k = 1;
    double center_residual = 0.0;
};

// State of the tip construction at one tower level: F = P^J is the current
// renormalization, d0 the pointwise recipe of its level-0 domain (tuned
// external angles at deeper levels), block0/block1 the accumulated binary
// tuning substitution, beta_seed the F-fixed point beta_w at base_c.
struct RenormContext {
    Cplx base_c;
    int J = 1;
    int level_k = 1;
    std::vector<int> word;
    std::string block0 = "0";
    std::string block1 = "1";
    D0Spec d0;
    Cplx beta_seed;
    double scale_hint = 1.0;   // parameter-plane scale for finite differences
    double fp_sep_hint = 0.0;  // distance between the F-fixed points, for tracking
};

// Fixed point of P^J continued from c_from (where z is the fixed point)
// to c_to by adaptive tangent-predictor steps. fp_separation, when
// positive, is the caller's estimate of the distance to the nearest other
// fixed point; it bounds the accepted corrector deviation.
Cplx continue_fixed_point(Cplx c_from, Cplx c_to, int J, Cplx z, double fp_separation = 0.0);

RenormContext make_level1_context();
// Context of the period-(n+1) copy at the tip parameter of the level-k
// window (its CenterHit solution); beta_next is the new F-fixed point there.
RenormContext tune_context(const RenormContext& parent, int n, Cplx tip, Cplx beta_next);

// Fixed point of P^J near `seed` by Newton (the continued beta_w(c)).
Cplx track_iterate_fixed_point(Cplx c, int J, Cplx seed);

// v_t(c): vertex t of the pointwise boundary of B_n(c) in the context,
// i.e. G_{w0}(G_{w1}^{n-1}(d0.vertex_at(c,t))) with branches of F = P^J
// anchored along the orbit of beta_w.
Cplx window_locus_point(const RenormContext& ctx, Cplx c, Cplx beta_w, int n, size_t t);

struct WindowBuildOutputs {
    Cplx beta_next;      // F^{(n+1)}-fixed point at the tip (for tune_context)
    Cplx alpha_next;     // the other fixed point at the superstable-like center
    Cplx center_guess;   // superstable-like center used for seeding
};

ParamWindow build_window(const RenormContext& ctx, int n, WindowBuildOutputs* out = nullptr);
// Number of distinct roots of `eq` found strictly inside the window
// boundary by a multi-start Newton grid over its bounding box.
int count_equation_roots(const ParamWindow& win, const ParameterEquation& eq, int grid = 16);
// Least n with diam(W_n) <= cap and all boundary samples within the
// cap-ball about the (cheap) center; throws FloorNotFound past n_max.
int containment_floor(const RenormContext& ctx, double cap, int n_max = 40);

// Misiurewicz base: the puzzle-derived chain B_n around p = P^m(0) at c0,
// continued in c via exact (angle, potential) tags on its boundary.
struct MisiurewiczContext {
    MisiurewiczPoint base;
    double level = kDefaultGamma;
    std::vector<RationalAngle> cycle;
    RepellingOrbitWindow row;
};

MisiurewiczContext make_misiurewicz_context(const MisiurewiczPoint& base, int q_max = 4,
                                            int depth = 6, int terms = 10);
ParamWindow build_window(const MisiurewiczContext& ctx, int n);
int containment_floor(const MisiurewiczContext& ctx, double cap);

struct WindowTower {
    Cplx base_point;
    std::vector<int> word;                // final indices per level
    std::vector<ParamWindow> windows;     // one per level
    std::vector<Cplx> centers;            // tip (CenterHit) per level
    std::vector<int> floors;              // computed containment floors
    std::vector<double> caps;
    std::vector<RenormContext> contexts;  // context used at each level
    std::optional<MisiurewiczContext> misiurewicz;
};

// word entries of 0 mean "auto": use the containment floor; entries below
// the floor are raised to it. caps default to 1, 1/2, 1/4, ...
WindowTower build_tower(Cplx base, std::vector<int> word, std::vector<double> caps = {});
WindowTower build_tower(const MisiurewiczPoint& base, std::vector<int> word,
                        std::vector<double> caps = {});

struct TowerReport {
    std::vector<bool> nested;             // windows[k] inside windows[k-1]
    std::vector<double> diameters;
    std::vector<bool> cap_ok;             // diameter <= cap per level
    std::vector<double> center_residuals;
    std::vector<int> ql_degrees;          // quadratic-like degree at each center
    std::vector<double> ql_margins;
    std::vector<int> mandel_samples;      // bounded-orbit samples inside the window
    bool all_pass = false;
};

TowerReport verify_tower(const WindowTower& tower);

// The quadratic-like restriction realized at the center of tower level k.
QuadraticLikeRestriction restriction_at_center(const WindowTower& tower, size_t k);

}  // namespace mandel
