// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries a wall-clock budget checked alongside
// the numerical tolerances.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mandel/cli.hpp"
#include "mandel/dynamics.hpp"
#include "mandel/io.hpp"
#include "mandel/puzzle.hpp"
#include "mandel/raster.hpp"
#include "mandel/rays.hpp"
#include "mandel/renorm.hpp"
#include "mandel/windows.hpp"

using namespace mandel;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    const char* name;
    double budget_s;
    bool (*body)(std::string& detail);
};

void run(const Criterion& crit) {
    std::string detail;
    bool ok = false;
    auto t0 = Clock::now();
    try {
        ok = crit.body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > crit.budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] %-34s (%.2fs / %.0fs budget)%s%s\n", ok ? "PASS" : "FAIL", crit.name, secs,
                crit.budget_s, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool expect(bool cond, std::string& detail, const std::string& msg) {
    if (!cond && detail.empty()) detail = msg;
    return cond;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// 1. Critical-orbit classification and fixed points at c = -2.
bool crit_classification(std::string& d) {
    bool ok = true;
    CriticalOrbitTag tag = classify_critical_orbit(Cplx(-2.0, 0.0));
    ok &= expect(tag.kind == CriticalOrbitTag::Kind::PreperiodicRepelling, d, "kind");
    ok &= expect(tag.preperiod == 2, d, "preperiod");
    ok &= expect(tag.period == 1, d, "period");
    ok &= expect(std::abs(tag.multiplier - Cplx(4.0, 0.0)) < 1e-9, d, "multiplier");
    FixedPointPair fp = fixed_points(Cplx(-2.0, 0.0));
    ok &= expect(std::abs(fp.alpha - Cplx(-1.0, 0.0)) < 1e-12, d, "alpha");
    ok &= expect(std::abs(fp.beta - Cplx(2.0, 0.0)) < 1e-12, d, "beta");
    return ok;
}

// 2. External rays and potentials against closed forms at c = -2.
bool crit_rays(std::string& d) {
    bool ok = true;
    const Cplx c{-2.0, 0.0};
    const std::pair<int, int> angles[] = {{0, 1}, {1, 6}, {1, 3}, {2, 3}};
    for (auto [p, q] : angles) {
        RationalAngle theta(p, q);
        RayPolyline ray = trace_dynamical_ray(c, theta, 1e-9);
        double want = 2.0 * std::cos(2.0 * M_PI * theta.to_double());
        ok &= expect(std::abs(ray.points.back() - Cplx(want, 0.0)) < 1e-4, d,
                     "landing at " + theta.str());
    }
    double g = green_potential(c, Cplx(3.0, 0.0));
    double want = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    ok &= expect(std::abs(g - want) < 1e-6, d, "potential at z=3");
    return ok;
}

// 3. Parameter solvers and Misiurewicz enumeration.
bool crit_solvers(std::string& d) {
    bool ok = true;
    Cplx c2 = solve_parameter(superstable_eq(2), Cplx(-1.1, 0.1));
    ok &= expect(std::abs(c2 - Cplx(-1.0, 0.0)) < 1e-12, d, "superstable 2");
    Cplx c3 = solve_parameter(superstable_eq(3), Cplx(-1.8, 0.01));
    ok &= expect(std::abs(c3 - Cplx(-1.7548776662, 0.0)) < 1e-8, d, "superstable 3");
    Cplx mz = solve_parameter(misiurewicz_eq(2, 1), Cplx(-1.9, 0.05));
    ok &= expect(std::abs(mz - Cplx(-2.0, 0.0)) < 1e-10, d, "preperiodic (2,1)");
    auto pts = misiurewicz_enumerate(2, 2);
    bool plus = false;
    bool minus = false;
    for (const auto& p : pts) {
        if (std::abs(p.value - Cplx(0.0, 1.0)) < 1e-10) plus = true;
        if (std::abs(p.value - Cplx(0.0, -1.0)) < 1e-10) minus = true;
        ok &= expect(p.residual <= 1e-10, d, "enumeration residual");
    }
    ok &= expect(plus && minus, d, "enumeration misses +-i");
    return ok;
}

// 4. Geometric decay of the contracting domains at c = -2.
bool crit_domain_chain(std::string& d) {
    const Cplx c{-2.0, 0.0};
    D0Spec spec = make_d0_spec_minus2();
    DomainChain chain = build_domain_chain(c, spec.curve_at(c), 10);
    bool ok = true;
    for (int n = 5; n < 10; ++n) {
        double ratio = chain.B_diameters[size_t(n)] / chain.B_diameters[size_t(n) - 1];
        ok &= expect(ratio >= 0.20 && ratio <= 0.30, d,
                     "ratio at n=" + std::to_string(n + 1) + " is " + std::to_string(ratio));
    }
    ok &= expect(min_distance(chain.B(10).points, Cplx(-2.0, 0.0)) < 0.01, d, "B_10 location");
    return ok;
}

// 5. Quadratic-like restrictions across a parameter window.
bool crit_window_samples(std::string& d) {
    RenormContext ctx = make_level1_context();
    int floor = containment_floor(ctx, 1.0);
    int n = floor;
    ParamWindow win = build_window(ctx, n);
    Cplx inside = interior_point(win.boundary.points);
    std::vector<Cplx> samples{inside};
    for (size_t i = 0; i < win.boundary.points.size() && samples.size() < 5;
         i += win.boundary.points.size() / 7 + 1) {
        Cplx cand = inside + 0.5 * (win.boundary.points[i] - inside);
        if (winding_number(win.boundary, cand) != 0) samples.push_back(cand);
    }
    bool ok = expect(samples.size() == 5, d, "could not place 5 samples");
    for (Cplx c : samples) {
        DomainChain chain = build_domain_chain(c, ctx.d0.curve_at(c), n);
        QuadraticLikeRestriction F = build_restriction(c, chain, n);
        QuadraticLikeReport rep = verify_quadratic_like(F);
        ok &= expect(rep.degree == 2, d, "degree at a sample");
        ok &= expect(rep.margin > 0.0, d, "margin at a sample");
    }
    return ok;
}

// 6. Two-level nested tower at c = -2 with automatic floors.
bool crit_tower(std::string& d) {
    WindowTower tower = build_tower(Cplx(-2.0, 0.0), {0, 0});
    TowerReport rep = verify_tower(tower);
    bool ok = expect(tower.windows.size() == 2, d, "levels");
    ok &= expect(rep.nested.size() == 2 && rep.nested[1], d, "nesting");
    ok &= expect(rep.diameters[0] <= 1.0, d, "level-1 diameter");
    ok &= expect(rep.diameters[1] <= 0.5, d, "level-2 diameter");
    for (double r : rep.center_residuals) ok &= expect(r <= 1e-9, d, "center residual");
    ok &= expect(rep.all_pass, d, "verify flags");
    return ok;
}

// 7. Misiurewicz route at c0 = i: contraction rate and window root count.
bool crit_misiurewicz_route(std::string& d) {
    auto pts = misiurewicz_enumerate(2, 2);
    const MisiurewiczPoint* base = nullptr;
    for (const auto& p : pts)
        if (p.value.imag() > 0) base = &p;
    bool ok = expect(base != nullptr, d, "base i not found");
    if (!ok) return false;
    MisiurewiczContext ctx = make_misiurewicz_context(*base);
    const double target = 1.0 / (4.0 * std::sqrt(2.0));
    size_t last = ctx.row.diameters.size() - 1;
    double ratio = ctx.row.diameters[last] / ctx.row.diameters[last - 1];
    ok &= expect(std::abs(ratio - target) < 0.1, d, "contraction ratio " + std::to_string(ratio));
    ParamWindow w1 = build_window(ctx, 1);
    int period = base->m + ctx.row.q + ctx.row.k;
    int roots = count_equation_roots(w1, superstable_eq(period), 16);
    ok &= expect(roots == 1, d, "root count " + std::to_string(roots));
    return ok;
}

// 8. Algebraic identities and puzzle refinement.
bool crit_identities(std::string& d) {
    bool ok = true;
    std::mt19937 rng(94321u);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < 10000; ++i) {
        Cplx c(U(rng), U(rng));
        FixedPointPair fp = fixed_points(c);
        if (std::abs(fp.alpha + fp.beta - 1.0) > 1e-12 ||
            std::abs(fp.alpha * fp.beta - c) > 1e-12) {
            ok &= expect(false, d, "Vieta");
            break;
        }
    }
    for (Cplx c : {Cplx(-2.0, 0.0), Cplx(0.3, 0.4), Cplx(-1.2, 0.5)}) {
        for (Cplx z : {Cplx(3.0, 0.0), Cplx(2.0, 2.0), Cplx(-2.5, 1.0)}) {
            double lhs = green_potential(c, z * z + c);
            double rhs = 2.0 * green_potential(c, z);
            ok &= expect(std::abs(lhs - rhs) < 1e-9, d, "functional equation");
        }
    }
    for (Cplx c : {Cplx(-1.0, 0.0), Cplx(0.2, 0.1), Cplx(0.0, 1.0)}) {
        for (int m = 2; m <= 20; m += 6) {
            CriticalOrbitJet jet = critical_orbit_jet(c, m);
            // Keep the probe displacement small relative to the growing
            // orbit derivative so the quotient stays in regime.
            const double h = 1e-7 / (1.0 + std::sqrt(std::abs(jet.derivative)));
            Cplx fd = (critical_orbit_jet(c + Cplx(h, 0.0), m).value -
                       critical_orbit_jet(c - Cplx(h, 0.0), m).value) /
                      (2.0 * h);
            double rel = std::abs(jet.derivative - fd) / (1.0 + std::abs(jet.derivative));
            ok &= expect(rel < 1e-5, d, "derivative jet vs finite differences");
        }
    }
    const Cplx c{-2.0, 0.0};
    auto angles = alpha_landing_angles(c, 6);
    auto puzzle = build_puzzle(c, angles, 1.0, 6);
    for (size_t depth = 0; depth + 1 < puzzle.size(); ++depth) {
        const PuzzlePiece* outer = nullptr;
        const PuzzlePiece* inner = nullptr;
        for (const auto& p : puzzle[depth].pieces)
            if (p.contains_critical) outer = &p;
        for (const auto& p : puzzle[depth + 1].pieces)
            if (p.contains_critical) inner = &p;
        ok &= expect(outer && inner, d, "critical pieces");
        if (outer && inner)
            ok &= expect(winding_number(outer->boundary, inner->sample_interior) != 0, d,
                         "refinement containment");
    }
    return ok;
}

// 9. Deterministic artifacts across repeated runs and thread budgets.
bool crit_determinism(std::string& d) {
    bool ok = true;
    auto run_cfg = [&](RunConfig cfg) {
        int rc = run_command(cfg);
        ok &= expect(rc == 0, d, "command failed: " + cfg.command);
    };
    RunConfig ppm;
    ppm.command = "render-julia";
    ppm.c = Cplx(-1.0, 0.0);
    ppm.have_c = true;
    ppm.resolution = 160;
    ppm.iters = 300;
    ppm.threads = 1;
    ppm.out = "/tmp/acc_a.ppm";
    run_cfg(ppm);
    ppm.threads = 8;
    ppm.out = "/tmp/acc_b.ppm";
    run_cfg(ppm);
    ok &= expect(slurp("/tmp/acc_a.ppm") == slurp("/tmp/acc_b.ppm"), d, "PPM differs");

    RunConfig svg;
    svg.command = "ray";
    svg.c = Cplx(-2.0, 0.0);
    svg.have_c = true;
    svg.theta = "1/3";
    svg.out = "/tmp/acc_a.svg";
    svg.report = "/tmp/acc_a.json";
    run_cfg(svg);
    svg.out = "/tmp/acc_b.svg";
    svg.report = "/tmp/acc_b.json";
    svg.threads = 8;
    run_cfg(svg);
    ok &= expect(slurp("/tmp/acc_a.svg") == slurp("/tmp/acc_b.svg"), d, "SVG differs");
    // Timings live in a quarantined section; the comparable document is the
    // JSON with that section removed.
    auto stripped = [](const std::string& path) {
        ReportDocument doc = parse_json_report(slurp(path));
        doc.timings = nlohmann::json::object();
        return json_report_text(doc);
    };
    ok &= expect(stripped("/tmp/acc_a.json") == stripped("/tmp/acc_b.json"), d, "JSON differs");
    for (const char* p : {"/tmp/acc_a.ppm", "/tmp/acc_b.ppm", "/tmp/acc_a.svg", "/tmp/acc_b.svg",
                          "/tmp/acc_a.json", "/tmp/acc_b.json"})
        std::remove(p);
    return ok;
}

// 10. Raster throughput: megapixel escape render inside the budget.
bool crit_render_speed(std::string& d) {
    BoundingBox box{-2.5, 1.5, -2.0, 2.0};
    Raster r = render_escape_mandelbrot(box, 1024, 1000, 4);
    return expect(r.width == 1024 && r.height == 1024 && !r.data.empty(), d, "raster shape");
}

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"critical-orbit classification", 1, crit_classification},
        {"ray landings and potentials", 5, crit_rays},
        {"parameter solvers + enumeration", 10, crit_solvers},
        {"contracting domain chain", 10, crit_domain_chain},
        {"window-wide quadratic-likeness", 30, crit_window_samples},
        {"nested tower with auto floors", 300, crit_tower},
        {"repelling-orbit route at i", 120, crit_misiurewicz_route},
        {"algebraic identities + puzzles", 60, crit_identities},
        {"deterministic artifacts", 60, crit_determinism},
        {"megapixel escape render", 5, crit_render_speed},
    };
    for (const Criterion& crit : criteria) run(crit);
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures ? 1 : 0;
}
