#include "mandel/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mandel {

int winding_number(const std::vector<Cplx>& loop, Cplx z) {
    double total = 0.0;
    const size_t n = loop.size();
    if (n < 2) return 0;
    for (size_t i = 0; i + 1 < n; ++i) {
        Cplx a = loop[i] - z;
        Cplx b = loop[i + 1] - z;
        double cross = a.real() * b.imag() - a.imag() * b.real();
        double dot = a.real() * b.real() + a.imag() * b.imag();
        total += std::atan2(cross, dot);
    }
    // Close the loop if the input is not explicitly closed.
    if (std::abs(loop.front() - loop.back()) > 1e-15) {
        Cplx a = loop.back() - z;
        Cplx b = loop.front() - z;
        total += std::atan2(a.real() * b.imag() - a.imag() * b.real(),
                            a.real() * b.real() + a.imag() * b.imag());
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

double signed_area(const std::vector<Cplx>& loop) {
    double area = 0.0;
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
        area += loop[i].real() * loop[i + 1].imag() - loop[i + 1].real() * loop[i].imag();
    }
    return 0.5 * area;
}

double curve_diameter(const std::vector<Cplx>& loop) {
    // Subsample to keep the pairwise scan cheap.
    std::vector<Cplx> pts;
    const size_t cap = 512;
    if (loop.size() <= cap) {
        pts = loop;
    } else {
        const size_t stride = loop.size() / cap + 1;
        for (size_t i = 0; i < loop.size(); i += stride) pts.push_back(loop[i]);
    }
    double best = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, std::abs(pts[i] - pts[j]));
    return best;
}

namespace {
double point_segment_distance(Cplx p, Cplx a, Cplx b) {
    Cplx ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}
}  // namespace

double min_distance(const std::vector<Cplx>& polyline, Cplx z) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < polyline.size(); ++i)
        best = std::min(best, point_segment_distance(z, polyline[i], polyline[i + 1]));
    if (polyline.size() == 1) best = std::abs(z - polyline[0]);
    return best;
}

double polyline_gap(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const Cplx& p : a) best = std::min(best, min_distance(b, p));
    for (const Cplx& p : b) best = std::min(best, min_distance(a, p));
    return best;
}

BoundingBox bounding_box(const std::vector<Cplx>& pts) {
    BoundingBox bb;
    if (pts.empty()) return bb;
    bb.xmin = bb.xmax = pts[0].real();
    bb.ymin = bb.ymax = pts[0].imag();
    for (const Cplx& p : pts) {
        bb.xmin = std::min(bb.xmin, p.real());
        bb.xmax = std::max(bb.xmax, p.real());
        bb.ymin = std::min(bb.ymin, p.imag());
        bb.ymax = std::max(bb.ymax, p.imag());
    }
    return bb;
}

Cplx centroid(const std::vector<Cplx>& pts) {
    Cplx sum = 0.0;
    for (const Cplx& p : pts) sum += p;
    return pts.empty() ? Cplx(0.0) : sum / static_cast<double>(pts.size());
}

Cplx interior_point(const std::vector<Cplx>& loop) {
    // Scanline through the vertical midline of the bounding box; the segment
    // between the first crossing pair is interior. Several scanlines are
    // tried in case one clips a vertex.
    BoundingBox bb = bounding_box(loop);
    for (int attempt = 1; attempt <= 9; ++attempt) {
        double y = bb.ymin + (bb.ymax - bb.ymin) * attempt / 10.0;
        std::vector<double> xs;
        for (size_t i = 0; i + 1 < loop.size(); ++i) {
            double y0 = loop[i].imag(), y1 = loop[i + 1].imag();
            if ((y0 <= y && y1 > y) || (y1 <= y && y0 > y)) {
                double u = (y - y0) / (y1 - y0);
                xs.push_back(loop[i].real() + u * (loop[i + 1].real() - loop[i].real()));
            }
        }
        std::sort(xs.begin(), xs.end());
        for (size_t i = 0; i + 1 < xs.size(); i += 2) {
            Cplx cand(0.5 * (xs[i] + xs[i + 1]), y);
            if (std::abs(winding_number(loop, cand)) == 1) return cand;
        }
    }
    // Centroid fallback.
    Cplx c = centroid(loop);
    if (std::abs(winding_number(loop, c)) == 1) return c;
    throw DomainError("interior_point: no interior sample found");
}

std::vector<SegmentHit> segment_polyline_hits(Cplx a, Cplx b, const std::vector<Cplx>& poly) {
    std::vector<SegmentHit> hits;
    Cplx d = b - a;
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        Cplx p = poly[i], q = poly[i + 1];
        Cplx e = q - p;
        double denom = d.real() * e.imag() - d.imag() * e.real();
        if (std::abs(denom) < 1e-300) continue;
        Cplx ap = p - a;
        double t = (ap.real() * e.imag() - ap.imag() * e.real()) / denom;
        double u = (ap.real() * d.imag() - ap.imag() * d.real()) / denom;
        if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) {
            hits.push_back({t, i, u, a + t * d});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const SegmentHit& x, const SegmentHit& y) {
        return x.t < y.t;
    });
    return hits;
}

std::optional<SegmentHit> first_crossing(const std::vector<Cplx>& path,
                                         const ClosedCurve& curve, size_t* path_seg) {
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        auto hits = segment_polyline_hits(path[i], path[i + 1], curve.points);
        if (!hits.empty()) {
            if (path_seg) *path_seg = i;
            return hits.front();
        }
    }
    return std::nullopt;
}

void orient_ccw(ClosedCurve& c) {
    if (signed_area(c.points) < 0.0) std::reverse(c.points.begin(), c.points.end());
}

std::vector<Cplx> resample_loop(const std::vector<Cplx>& loop, size_t n) {
    if (loop.size() < 3 || n < 3) return loop;
    double total = 0.0;
    for (size_t i = 0; i + 1 < loop.size(); ++i) total += std::abs(loop[i + 1] - loop[i]);
    std::vector<Cplx> out;
    out.reserve(n + 1);
    double step = total / static_cast<double>(n);
    double acc = 0.0;
    double next = 0.0;
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
        double seg = std::abs(loop[i + 1] - loop[i]);
        while (next <= acc + seg && out.size() < n) {
            double u = seg > 0 ? (next - acc) / seg : 0.0;
            out.push_back(loop[i] + u * (loop[i + 1] - loop[i]));
            next += step;
        }
        acc += seg;
    }
    out.push_back(out.front());
    return out;
}

}  // namespace mandel
