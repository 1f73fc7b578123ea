#pragma once

#include <optional>
#include <vector>

#include "mandel/angle.hpp"
#include "mandel/dynamics.hpp"

namespace mandel {

// Oriented closed polyline; first point equals last point.
struct ClosedCurve {
    std::vector<Cplx> points;
    std::optional<double> level_tag;

    bool closed() const {
        return points.size() >= 4 && std::abs(points.front() - points.back()) < 1e-12;
    }
    size_t segments() const { return points.empty() ? 0 : points.size() - 1; }
};

enum class RayPlane { Dynamical, Parameter };

// External ray polyline, ordered by decreasing potential.
struct RayPolyline {
    RationalAngle angle;
    RayPlane plane = RayPlane::Dynamical;
    Cplx parameter;  // c for dynamical rays
    std::vector<Cplx> points;
    std::vector<double> potentials;  // matching points
    double terminal_potential = 0.0;
    bool landed_cleanly = true;  // false when Newton gave up near the Julia set
};

// Winding number of the closed polyline about z (integer for z off the curve).
int winding_number(const std::vector<Cplx>& loop, Cplx z);
inline int winding_number(const ClosedCurve& c, Cplx z) { return winding_number(c.points, z); }

double signed_area(const std::vector<Cplx>& loop);

// Max pairwise distance over (subsampled) boundary points.
double curve_diameter(const std::vector<Cplx>& loop);

double min_distance(const std::vector<Cplx>& polyline, Cplx z);

// Min distance between two polylines, vertex-sampled.
double polyline_gap(const std::vector<Cplx>& a, const std::vector<Cplx>& b);

// A point with winding number 1 inside the loop (scanline construction).
Cplx interior_point(const std::vector<Cplx>& loop);

struct BoundingBox {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};
BoundingBox bounding_box(const std::vector<Cplx>& pts);

Cplx centroid(const std::vector<Cplx>& pts);

// Intersections of the segment [a,b] with the polyline; returns parameters
// t in [0,1] along [a,b] together with polyline segment indices.
struct SegmentHit {
    double t;       // along the query segment
    size_t index;   // polyline segment index
    double u;       // parameter along that polyline segment
    Cplx point;
};
std::vector<SegmentHit> segment_polyline_hits(Cplx a, Cplx b, const std::vector<Cplx>& poly);

// First crossing of an open polyline path with a closed curve, walking the
// path from its start; nullopt when they do not cross.
std::optional<SegmentHit> first_crossing(const std::vector<Cplx>& path,
                                         const ClosedCurve& curve, size_t* path_seg);

// Ensures counterclockwise orientation (signed area > 0).
void orient_ccw(ClosedCurve& c);

// Resamples a closed loop to roughly n points, preserving shape.
std::vector<Cplx> resample_loop(const std::vector<Cplx>& loop, size_t n);

}  // namespace mandel
