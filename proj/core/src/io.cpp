#include "mandel/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mandel/errors.hpp"

namespace mandel {

namespace {

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open for writing: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DomainError("write failed: " + path);
}

std::string fmt_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string ppm_bytes(const Raster& raster) {
    if (raster.width <= 0 || raster.height <= 0 || raster.data.empty())
        throw UsageError("write_ppm: empty raster");
    std::string out = "P6\n" + std::to_string(raster.width) + " " +
                      std::to_string(raster.height) + "\n255\n";
    out.reserve(out.size() + raster.data.size() * 3);
    for (uint8_t v : raster.data) {
        out.push_back(static_cast<char>(v));
        out.push_back(static_cast<char>(v));
        out.push_back(static_cast<char>(v));
    }
    return out;
}

void write_ppm(const Raster& raster, const std::string& path) {
    write_file(path, ppm_bytes(raster));
}

namespace {

void expand_box(BoundingBox& box, Cplx z) {
    box.xmin = std::min(box.xmin, z.real());
    box.xmax = std::max(box.xmax, z.real());
    box.ymin = std::min(box.ymin, z.imag());
    box.ymax = std::max(box.ymax, z.imag());
}

std::string path_data(const std::vector<Cplx>& pts, bool close) {
    std::string d;
    for (size_t i = 0; i < pts.size(); ++i) {
        d += i == 0 ? "M " : "L ";
        d += fmt_number(pts[i].real());
        d += " ";
        d += fmt_number(-pts[i].imag());  // mathematical orientation
        d += " ";
    }
    if (close) d += "Z";
    else if (!d.empty()) d.pop_back();
    return d;
}

}  // namespace

std::string svg_text(const std::vector<SvgCurve>& curves, const std::vector<RayPolyline>& rays,
                     const std::vector<SvgLabel>& labels) {
    if (curves.empty() && rays.empty() && labels.empty())
        throw UsageError("write_svg: nothing to draw");

    BoundingBox box{1e300, -1e300, 1e300, -1e300};
    for (const SvgCurve& sc : curves)
        for (Cplx z : sc.curve.points) expand_box(box, z);
    for (const RayPolyline& r : rays)
        for (Cplx z : r.points) expand_box(box, z);
    for (const SvgLabel& l : labels) expand_box(box, l.at);
    if (box.xmin > box.xmax) box = BoundingBox{0, 1, 0, 1};
    double w = std::max(box.xmax - box.xmin, 1e-12);
    double h = std::max(box.ymax - box.ymin, 1e-12);
    const double mx = 0.05 * w, my = 0.05 * h;
    // The y-axis flip negates and swaps the vertical extent.
    const double vx = box.xmin - mx, vy = -box.ymax - my;
    const double vw = w + 2 * mx, vh = h + 2 * my;
    const double stroke = 0.002 * std::max(vw, vh);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
        << fmt_number(vx) << " " << fmt_number(vy) << " " << fmt_number(vw) << " "
        << fmt_number(vh) << "\">\n";

    std::string open_group;
    auto set_group = [&](const std::string& g) {
        if (g == open_group) return;
        if (!open_group.empty()) out << "</g>\n";
        if (!g.empty()) out << "<g id=\"" << g << "\">\n";
        open_group = g;
    };
    for (const SvgCurve& sc : curves) {
        set_group(sc.group);
        out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt_number(stroke)
            << "\" d=\"" << path_data(sc.curve.points, sc.curve.closed()) << "\"/>\n";
    }
    set_group("");
    for (const RayPolyline& r : rays) {
        out << "<path fill=\"none\" stroke=\"crimson\" stroke-width=\"" << fmt_number(stroke)
            << "\" data-angle=\"" << r.angle.str() << "\" d=\"" << path_data(r.points, false)
            << "\"/>\n";
    }
    for (const SvgLabel& l : labels) {
        out << "<text x=\"" << fmt_number(l.at.real()) << "\" y=\"" << fmt_number(-l.at.imag())
            << "\" font-size=\"" << fmt_number(8 * stroke) << "\">" << l.text << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_svg(const std::vector<SvgCurve>& curves, const std::vector<RayPolyline>& rays,
               const std::vector<SvgLabel>& labels, const std::string& path) {
    write_file(path, svg_text(curves, rays, labels));
}

namespace {

// nlohmann::json keeps object keys sorted (std::map); this emitter adds
// the fixed 17-significant-digit number format the artifact contract
// requires, which the stock serializer does not offer.
void emit(const nlohmann::json& j, std::string& out) {
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            out += "{";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",";
                first = false;
                out += nlohmann::json(it.key()).dump();
                out += ":";
                emit(it.value(), out);
            }
            out += "}";
            break;
        }
        case nlohmann::json::value_t::array: {
            out += "[";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",";
                emit(j[i], out);
            }
            out += "]";
            break;
        }
        case nlohmann::json::value_t::number_float:
            out += fmt_number(j.get<double>());
            break;
        default:
            out += j.dump();
            break;
    }
}

}  // namespace

std::string json_report_text(const ReportDocument& report) {
    nlohmann::json doc;
    doc["schema_version"] = "1";
    doc["command"] = report.command;
    doc["results"] = report.results;
    doc["residuals"] = report.residuals;
    doc["timings"] = report.timings;
    doc["warnings"] = report.warnings;
    std::string out;
    emit(doc, out);
    out += "\n";
    return out;
}

void write_json_report(const ReportDocument& report, const std::string& path) {
    write_file(path, json_report_text(report));
}

ReportDocument parse_json_report(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    ReportDocument rep;
    rep.command = doc.at("command").get<std::string>();
    rep.results = doc.at("results");
    rep.residuals = doc.at("residuals");
    rep.timings = doc.at("timings");
    rep.warnings = doc.at("warnings").get<std::vector<std::string>>();
    return rep;
}

}  // namespace mandel
