#include "mandel/cli.hpp"

#include <chrono>
#include <cstdio>

#include "mandel/errors.hpp"
#include "mandel/io.hpp"
#include "mandel/puzzle.hpp"
#include "mandel/raster.hpp"
#include "mandel/rays.hpp"
#include "mandel/renorm.hpp"
#include "mandel/windows.hpp"

namespace mandel {

namespace {

nlohmann::json json_complex(Cplx z) {
    return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

std::string default_out(const RunConfig& cfg) {
    if (!cfg.out.empty()) return cfg.out;
    if (cfg.command == "render-mandel" || cfg.command == "render-julia")
        return cfg.command + ".ppm";
    if (cfg.command == "ray" || cfg.command == "equipotential" || cfg.command == "puzzle")
        return cfg.command + ".svg";
    return cfg.command + ".json";
}

// Timings live in their own section so artifact hashes can skip them.
void stamp_timing(ReportDocument& rep, std::chrono::steady_clock::time_point t0) {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    rep.timings["wall_ms"] = ms;
}

void validate(const RunConfig& cfg) {
    if (cfg.resolution < 1 || cfg.resolution > 4096)
        throw UsageError("resolution must be in [1, 4096]");
    if (cfg.iters < 1) throw UsageError("iters must be positive");
    if (cfg.tol <= 0.0) throw UsageError("tol must be positive");
    if (cfg.threads < 1) throw UsageError("threads must be positive");
    for (int w : cfg.word)
        if (w < 0) throw UsageError("word entries must be >= 0");
    if (cfg.plane != "dyn" && cfg.plane != "param")
        throw UsageError("plane must be 'dyn' or 'param'");
}

int cmd_render(const RunConfig& cfg) {
    Raster raster;
    if (cfg.command == "render-mandel") {
        BoundingBox box{-2.5, 1.5, -2.0, 2.0};
        raster = render_escape_mandelbrot(box, cfg.resolution, cfg.iters, cfg.threads);
    } else {
        if (!cfg.have_c) throw UsageError("render-julia requires --c");
        BoundingBox box{-2.0, 2.0, -2.0, 2.0};
        raster = render_escape_julia(cfg.c, box, cfg.resolution, cfg.iters, cfg.threads);
    }
    write_ppm(raster, default_out(cfg));
    return 0;
}

int cmd_ray(const RunConfig& cfg) {
    if (cfg.theta.empty()) throw UsageError("ray requires --theta=p/q");
    const RationalAngle theta = RationalAngle::parse(cfg.theta);
    const auto t0 = std::chrono::steady_clock::now();
    RayPolyline ray;
    if (cfg.plane == "dyn") {
        if (!cfg.have_c) throw UsageError("dynamical ray requires --c");
        ray = trace_dynamical_ray(cfg.c, theta, cfg.g_end);
    } else {
        ray = trace_parameter_ray(theta, cfg.g_end);
    }
    write_svg({}, {ray}, {}, default_out(cfg));
    if (!cfg.report.empty()) {
        ReportDocument rep;
        rep.command = cfg.command;
        rep.results["angle"] = theta.str();
        rep.results["plane"] = cfg.plane;
        rep.results["terminal_point"] = json_complex(ray.points.back());
        rep.results["terminal_potential"] = ray.terminal_potential;
        rep.results["landed_cleanly"] = ray.landed_cleanly;
        rep.residuals["terminal_potential"] = ray.terminal_potential;
        stamp_timing(rep, t0);
        write_json_report(rep, cfg.report);
    }
    return 0;
}

int cmd_equipotential(const RunConfig& cfg) {
    const double level = cfg.level > 0.0 ? cfg.level : kDefaultGamma;
    ClosedCurve curve;
    if (cfg.plane == "dyn") {
        if (!cfg.have_c) throw UsageError("dynamical equipotential requires --c");
        curve = equipotential_curve(cfg.c, level, cfg.samples);
    } else {
        curve = parameter_equipotential_curve(level, cfg.samples);
    }
    write_svg({SvgCurve{curve, ""}}, {}, {}, default_out(cfg));
    return 0;
}

int cmd_puzzle(const RunConfig& cfg) {
    if (!cfg.have_c) throw UsageError("puzzle requires --c");
    const auto t0 = std::chrono::steady_clock::now();
    const double level = cfg.level > 0.0 ? cfg.level : kDefaultGamma;
    std::vector<RationalAngle> angles = alpha_landing_angles(cfg.c, cfg.q_max);
    std::vector<PuzzleLevel> puzzle = build_puzzle(cfg.c, angles, level, cfg.depth);
    std::vector<SvgCurve> curves;
    for (const PuzzleLevel& lvl : puzzle)
        for (const PuzzlePiece& piece : lvl.pieces)
            curves.push_back(SvgCurve{piece.boundary, "depth-" + std::to_string(lvl.depth)});
    write_svg(curves, {}, {}, default_out(cfg));
    if (!cfg.report.empty()) {
        ReportDocument rep;
        rep.command = cfg.command;
        rep.results["c"] = json_complex(cfg.c);
        nlohmann::json angle_list = nlohmann::json::array();
        for (const RationalAngle& a : angles) angle_list.push_back(a.str());
        rep.results["cycle_angles"] = angle_list;
        nlohmann::json counts = nlohmann::json::array();
        for (const PuzzleLevel& lvl : puzzle) counts.push_back(lvl.pieces.size());
        rep.results["piece_counts"] = counts;
        rep.residuals["level"] = level;
        stamp_timing(rep, t0);
        write_json_report(rep, cfg.report);
    }
    return 0;
}

int cmd_misiurewicz(const RunConfig& cfg) {
    if (cfg.m < 1 || cfg.k < 1) throw UsageError("misiurewicz requires --m >= 1 and --k >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<MisiurewiczPoint> points = misiurewicz_enumerate(cfg.m, cfg.k);
    ReportDocument rep;
    rep.command = cfg.command;
    rep.results["m"] = cfg.m;
    rep.results["k"] = cfg.k;
    nlohmann::json list = nlohmann::json::array();
    nlohmann::json residuals = nlohmann::json::array();
    for (const MisiurewiczPoint& p : points) {
        list.push_back({{"value", json_complex(p.value)},
                        {"preperiod", p.m},
                        {"period", p.k},
                        {"multiplier", json_complex(p.orbit_multiplier)},
                        {"residual", p.residual}});
        residuals.push_back(p.residual);
    }
    rep.results["points"] = list;
    rep.residuals["points"] = residuals;
    stamp_timing(rep, t0);
    write_json_report(rep, default_out(cfg));
    return 0;
}

nlohmann::json json_window(const ParamWindow& win) {
    return nlohmann::json{{"word", win.word},
                          {"n", win.n},
                          {"center", json_complex(win.center)},
                          {"diameter", win.diameter},
                          {"center_residual", win.center_residual},
                          {"level", win.level_k},
                          {"boundary_points", win.boundary.points.size()}};
}

int cmd_window(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ParamWindow win;
    if (cfg.m > 0 && cfg.k > 0) {
        std::vector<MisiurewiczPoint> points = misiurewicz_enumerate(cfg.m, cfg.k);
        if (!cfg.have_c) throw UsageError("Misiurewicz window requires --c to pick the base");
        const MisiurewiczPoint* base = nullptr;
        for (const MisiurewiczPoint& p : points)
            if (std::abs(p.value - cfg.c) < 1e-6) base = &p;
        if (!base) throw UsageError("no Misiurewicz(m,k) point within 1e-6 of --c");
        MisiurewiczContext ctx = make_misiurewicz_context(*base);
        win = build_window(ctx, cfg.n);
    } else {
        win = build_window(make_level1_context(), cfg.n);
    }
    ReportDocument rep;
    rep.command = cfg.command;
    rep.results["window"] = json_window(win);
    rep.residuals["center"] = win.center_residual;
    stamp_timing(rep, t0);
    write_json_report(rep, default_out(cfg));
    if (!cfg.report.empty())
        write_svg({SvgCurve{win.boundary, ""}}, {}, {}, cfg.report);
    return 0;
}

WindowTower build_tower_from(const RunConfig& cfg) {
    std::vector<int> word = cfg.word;
    if (word.empty()) word.assign(static_cast<size_t>(cfg.levels), 0);
    if (cfg.m > 0 && cfg.k > 0) {
        if (!cfg.have_c) throw UsageError("Misiurewicz tower requires --c to pick the base");
        std::vector<MisiurewiczPoint> points = misiurewicz_enumerate(cfg.m, cfg.k);
        for (const MisiurewiczPoint& p : points)
            if (std::abs(p.value - cfg.c) < 1e-6) return build_tower(p, word, cfg.caps);
        throw UsageError("no Misiurewicz(m,k) point within 1e-6 of --c");
    }
    Cplx base = cfg.have_c ? cfg.c : Cplx(-2.0, 0.0);
    return build_tower(base, word, cfg.caps);
}

nlohmann::json json_tower(const WindowTower& tower, const TowerReport& report) {
    nlohmann::json doc;
    doc["base"] = json_complex(tower.base_point);
    doc["word"] = tower.word;
    doc["floors"] = tower.floors;
    doc["caps"] = tower.caps;
    nlohmann::json wins = nlohmann::json::array();
    for (const ParamWindow& w : tower.windows) wins.push_back(json_window(w));
    doc["windows"] = wins;
    bool nesting = true;
    for (bool b : report.nested) nesting = nesting && b;
    doc["nesting"] = nesting;
    doc["diameters"] = report.diameters;
    doc["cap_ok"] = report.cap_ok;
    doc["center_residuals"] = report.center_residuals;
    doc["ql_degrees"] = report.ql_degrees;
    doc["ql_margins"] = report.ql_margins;
    doc["mandel_samples"] = report.mandel_samples;
    doc["all_pass"] = report.all_pass;
    return doc;
}

int cmd_tower(const RunConfig& cfg, bool verify_gate) {
    const auto t0 = std::chrono::steady_clock::now();
    WindowTower tower = build_tower_from(cfg);
    TowerReport report = verify_tower(tower);
    ReportDocument rep;
    rep.command = cfg.command;
    rep.results["tower"] = json_tower(tower, report);
    nlohmann::json res = nlohmann::json::array();
    for (double r : report.center_residuals) res.push_back(r);
    rep.residuals["centers"] = res;
    if (!report.all_pass) rep.warnings.push_back("tower verification failed");
    stamp_timing(rep, t0);
    write_json_report(rep, default_out(cfg));
    if (!cfg.report.empty()) {
        std::vector<SvgCurve> curves;
        for (size_t k = 0; k < tower.windows.size(); ++k)
            curves.push_back(
                SvgCurve{tower.windows[k].boundary, "level-" + std::to_string(k + 1)});
        write_svg(curves, {}, {}, cfg.report);
    }
    if (verify_gate && !report.all_pass)
        throw DomainError("verify-tower: verification flags failed");
    return 0;
}

void emit_error(const std::string& kind, const std::string& what) {
    nlohmann::json err{{"error", {{"kind", kind}, {"what", what}}}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
}

}  // namespace

int run_command(const RunConfig& cfg) {
    try {
        validate(cfg);
        if (cfg.command == "render-mandel" || cfg.command == "render-julia")
            return cmd_render(cfg);
        if (cfg.command == "ray") return cmd_ray(cfg);
        if (cfg.command == "equipotential") return cmd_equipotential(cfg);
        if (cfg.command == "puzzle") return cmd_puzzle(cfg);
        if (cfg.command == "misiurewicz") return cmd_misiurewicz(cfg);
        if (cfg.command == "window") return cmd_window(cfg);
        if (cfg.command == "tower") return cmd_tower(cfg, false);
        if (cfg.command == "verify-tower") return cmd_tower(cfg, true);
        throw UsageError("unknown command: " + cfg.command);
    } catch (const UsageError& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const DomainError& e) {
        emit_error("domain", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
}

}  // namespace mandel
