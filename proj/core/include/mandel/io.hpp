#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mandel/curve.hpp"
#include "mandel/raster.hpp"

namespace mandel {

// Binary P6 image: "P6\n<w> <h>\n255\n" followed by 3 bytes per pixel,
// row-major, top row first. Each raster byte v becomes the gray pixel
// (v, v, v). Bit-exact for identical rasters.
void write_ppm(const Raster& raster, const std::string& path);
std::string ppm_bytes(const Raster& raster);

// A text label anchored at a point of the complex plane.
struct SvgLabel {
    Cplx at;
    std::string text;
};

// SVG 1.1 document with one path element per curve and per ray. The
// y-axis is flipped so the complex plane reads mathematically; the
// viewBox fits every element with a 5% margin. Throws UsageError when
// there is nothing to draw. Curves may carry a group label so related
// elements (e.g. puzzle depths) land in one <g> layer.
struct SvgCurve {
    ClosedCurve curve;
    std::string group;  // empty = top level
};
void write_svg(const std::vector<SvgCurve>& curves, const std::vector<RayPolyline>& rays,
               const std::vector<SvgLabel>& labels, const std::string& path);
std::string svg_text(const std::vector<SvgCurve>& curves, const std::vector<RayPolyline>& rays,
                     const std::vector<SvgLabel>& labels);

// Typed command report. `results` and `residuals` are deterministic;
// `timings` is quarantined so artifact hashes ignore it.
struct ReportDocument {
    std::string command;
    nlohmann::json results = nlohmann::json::object();
    nlohmann::json residuals = nlohmann::json::object();
    nlohmann::json timings = nlohmann::json::object();
    std::vector<std::string> warnings;
};

// Serialization contract: lexicographic key order, every number printed
// with 17 significant digits, exact angles carried as "p/q" strings by
// the report builders.
std::string json_report_text(const ReportDocument& report);
void write_json_report(const ReportDocument& report, const std::string& path);

// Parses a document produced by write_json_report (round-trip checks).
ReportDocument parse_json_report(const std::string& text);

}  // namespace mandel
