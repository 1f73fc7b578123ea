#pragma once

#include <cstdint>
#include <vector>

#include "mandel/curve.hpp"
#include "mandel/dynamics.hpp"

namespace mandel {

struct Raster {
    int width = 0;
    int height = 0;
    BoundingBox box;
    std::vector<uint8_t> data;  // row-major, top row first

    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    Cplx pixel_center(int x, int y) const;
    size_t count_nonzero() const;
};

// Escape-time render over `box`: 0 for points that stay within `radius`
// for max_iter steps, otherwise 1 + (escape iteration modulo 254).
Raster render_escape_mandelbrot(BoundingBox box, int resolution, int max_iter, int threads = 1,
                                double radius = 2.0);
Raster render_escape_julia(Cplx c, BoundingBox box, int resolution, int max_iter, int threads = 1,
                           double radius = 2.0);

// Membership raster of the filled Julia set (1 = bounded within max_iter).
Raster filled_julia_raster(Cplx c, int resolution, int iters, int threads = 1);

// Membership raster for a quadratic-like restriction: escape means leaving
// the codomain.
Raster filled_julia_raster(Cplx c, int iterate, const ClosedCurve& domain,
                           const ClosedCurve& codomain, int resolution, int iters);

// 1-bit polygon mask over `box` (winding-number fill).
Raster polygon_mask(const ClosedCurve& curve, BoundingBox box, int resolution);

// 4-connected component count of the nonzero pixels.
int count_components(const Raster& r);

// Area represented by the nonzero pixels.
double raster_area(const Raster& r);

}  // namespace mandel
