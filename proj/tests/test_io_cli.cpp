#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mandel/cli.hpp"
#include "mandel/errors.hpp"
#include "mandel/io.hpp"

using namespace mandel;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string tmp_path(const char* name) { return std::string("/tmp/mandel_test_") + name; }

}  // namespace

TEST_CASE("PPM bytes follow the P6 contract") {
    Raster r;
    r.width = 2;
    r.height = 1;
    r.data = {0x00, 0xFF};
    std::string bytes = ppm_bytes(r);
    std::string expected = "P6\n2 1\n255\n";
    expected += std::string(3, '\0');
    expected += std::string(3, '\xFF');
    CHECK(bytes == expected);

    Raster empty;
    CHECK_THROWS_AS(ppm_bytes(empty), UsageError);
}

TEST_CASE("SVG viewBox fits the drawing with a 5% margin and flips y") {
    ClosedCurve circle;
    for (int i = 0; i <= 64; ++i) {
        double t = 2.0 * M_PI * i / 64.0;
        circle.points.emplace_back(std::cos(t), std::sin(t));
    }
    std::string svg = svg_text({{circle, ""}}, {}, {});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox=\"-1.1") != std::string::npos);
    CHECK(svg.find(" 2.2") != std::string::npos);
    CHECK(svg.find("<path") != std::string::npos);

    CHECK_THROWS_AS(svg_text({}, {}, {}), UsageError);
}

TEST_CASE("JSON reports: sorted keys, full precision, round trip") {
    ReportDocument doc;
    doc.command = "probe";
    doc.results["zeta"] = 1.0;
    doc.results["alpha"] = 0.1;  // no exact double; must print 17 digits
    doc.results["angle"] = "2/3";
    doc.residuals["center"] = 2.220446049250313e-16;
    doc.timings["total_ms"] = 12.5;
    doc.warnings.push_back("sample warning");

    std::string text = json_report_text(doc);
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(text.find("\"2/3\"") != std::string::npos);
    // Lexicographic key order within each object.
    CHECK(text.find("\"alpha\"") < text.find("\"angle\""));
    CHECK(text.find("\"angle\"") < text.find("\"zeta\""));
    CHECK(text.find("\"residuals\"") < text.find("\"results\""));

    ReportDocument back = parse_json_report(text);
    CHECK(back.command == "probe");
    CHECK(back.results["alpha"].get<double>() == 0.1);
    CHECK(back.residuals["center"].get<double>() == 2.220446049250313e-16);
    CHECK(back.warnings.size() == 1);
    CHECK(json_report_text(back) == text);
}

TEST_CASE("run_command rejects bad configurations with exit code 2") {
    RunConfig cfg;
    cfg.command = "render-mandel";
    cfg.resolution = 5000;  // above the 4096 cap
    cfg.out = tmp_path("reject.ppm");
    CHECK(run_command(cfg) == 2);

    RunConfig unknown;
    unknown.command = "no-such-command";
    CHECK(run_command(unknown) == 2);
}

TEST_CASE("render artifacts are byte-identical across runs and thread budgets") {
    RunConfig cfg;
    cfg.command = "render-mandel";
    cfg.resolution = 128;
    cfg.iters = 200;
    cfg.out = tmp_path("mandel_a.ppm");
    cfg.threads = 1;
    REQUIRE(run_command(cfg) == 0);
    cfg.out = tmp_path("mandel_b.ppm");
    cfg.threads = 8;
    REQUIRE(run_command(cfg) == 0);
    CHECK(slurp(tmp_path("mandel_a.ppm")) == slurp(tmp_path("mandel_b.ppm")));
    std::remove(tmp_path("mandel_a.ppm").c_str());
    std::remove(tmp_path("mandel_b.ppm").c_str());
}

TEST_CASE("ray command writes an SVG and a report with the landing point") {
    RunConfig cfg;
    cfg.command = "ray";
    cfg.c = Cplx(-2.0, 0.0);
    cfg.have_c = true;
    cfg.theta = "1/3";
    cfg.out = tmp_path("ray.svg");
    cfg.report = tmp_path("ray.json");
    REQUIRE(run_command(cfg) == 0);
    std::string svg = slurp(tmp_path("ray.svg"));
    CHECK(svg.find("data-angle=\"1/3\"") != std::string::npos);
    ReportDocument rep = parse_json_report(slurp(tmp_path("ray.json")));
    CHECK(rep.command == "ray");
    // 2 cos(2 pi / 3) = -1.
    CHECK(std::abs(rep.results["terminal_point"]["re"].get<double>() - (-1.0)) < 1e-3);
    std::remove(tmp_path("ray.svg").c_str());
    std::remove(tmp_path("ray.json").c_str());
}

TEST_CASE("misiurewicz command reports the catalog deterministically") {
    RunConfig cfg;
    cfg.command = "misiurewicz";
    cfg.m = 2;
    cfg.k = 2;
    cfg.out = tmp_path("mis_a.json");
    REQUIRE(run_command(cfg) == 0);
    std::string a = slurp(tmp_path("mis_a.json"));
    cfg.out = tmp_path("mis_b.json");
    REQUIRE(run_command(cfg) == 0);
    // Wall-clock timings live in their own quarantined section; everything
    // else must agree byte for byte.
    auto stripped = [](const std::string& text) {
        ReportDocument doc = parse_json_report(text);
        doc.timings = nlohmann::json::object();
        return json_report_text(doc);
    };
    CHECK(stripped(a) == stripped(slurp(tmp_path("mis_b.json"))));
    ReportDocument rep = parse_json_report(a);
    CHECK(rep.results["points"].size() == 2);
    std::remove(tmp_path("mis_a.json").c_str());
    std::remove(tmp_path("mis_b.json").c_str());
}

TEST_CASE("domain failures exit with code 1") {
    RunConfig cfg;
    cfg.command = "puzzle";
    cfg.c = Cplx(0.25, 0.0);  // parabolic alpha: the cut rays cannot land
    cfg.have_c = true;
    cfg.depth = 2;
    cfg.out = tmp_path("bad.svg");
    CHECK(run_command(cfg) == 1);
    std::remove(tmp_path("bad.svg").c_str());
}
