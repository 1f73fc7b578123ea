#include "mandel/raster.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace mandel {

Cplx Raster::pixel_center(int x, int y) const {
    const double dx = (box.xmax - box.xmin) / width;
    const double dy = (box.ymax - box.ymin) / height;
    // top row = ymax side so images read mathematically after the PPM flip
    return {box.xmin + (x + 0.5) * dx, box.ymax - (y + 0.5) * dy};
}

size_t Raster::count_nonzero() const {
    size_t n = 0;
    for (uint8_t v : data) n += (v != 0);
    return n;
}

namespace {

template <typename PixelFn>
Raster render_parallel(BoundingBox box, int resolution, int threads, PixelFn fn) {
    Raster r;
    r.width = resolution;
    r.height = resolution;
    r.box = box;
    r.data.assign(static_cast<size_t>(resolution) * resolution, 0);
    const int nthreads = std::max(1, threads);
    std::vector<std::thread> pool;
    std::atomic<int> next_row{0};
    auto worker = [&]() {
        for (;;) {
            int y = next_row.fetch_add(1);
            if (y >= resolution) break;
            for (int x = 0; x < resolution; ++x) {
                r.data[static_cast<size_t>(y) * resolution + x] = fn(r.pixel_center(x, y));
            }
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        pool.reserve(static_cast<size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return r;
}

uint8_t escape_pixel(Cplx c, Cplx z0, int max_iter, double r2) {
    Cplx z = z0;
    for (int n = 1; n <= max_iter; ++n) {
        z = z * z + c;
        if (std::norm(z) > r2) return static_cast<uint8_t>(1 + (n % 254));
    }
    return 0;
}

}  // namespace

Raster render_escape_mandelbrot(BoundingBox box, int resolution, int max_iter, int threads,
                                double radius) {
    const double r2 = radius * radius;
    return render_parallel(box, resolution, threads, [&](Cplx p) {
        return escape_pixel(p, Cplx(0.0), max_iter, r2);
    });
}

Raster render_escape_julia(Cplx c, BoundingBox box, int resolution, int max_iter, int threads,
                           double radius) {
    const double r2 = radius * radius;
    return render_parallel(box, resolution, threads, [&](Cplx p) {
        return escape_pixel(c, p, max_iter, r2);
    });
}

Raster filled_julia_raster(Cplx c, int resolution, int iters, int threads) {
    // |z| <= R_K bounds the filled set; pad slightly.
    const double rk = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * std::abs(c)));
    BoundingBox box{-rk - 0.1, rk + 0.1, -rk - 0.1, rk + 0.1};
    const double r2 = rk * rk;
    return render_parallel(box, resolution, threads, [&](Cplx p) -> uint8_t {
        Cplx z = p;
        for (int n = 0; n < iters; ++n) {
            if (std::norm(z) > r2) return 0;
            z = z * z + c;
        }
        return std::norm(z) > r2 ? 0 : 1;
    });
}

Raster polygon_mask(const ClosedCurve& curve, BoundingBox box, int resolution) {
    Raster r;
    r.width = resolution;
    r.height = resolution;
    r.box = box;
    r.data.assign(static_cast<size_t>(resolution) * resolution, 0);
    // Scanline parity fill per row.
    const double dy = (box.ymax - box.ymin) / resolution;
    const double dx = (box.xmax - box.xmin) / resolution;
    for (int y = 0; y < resolution; ++y) {
        const double py = box.ymax - (y + 0.5) * dy;
        std::vector<double> xs;
        const auto& pts = curve.points;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            double y0 = pts[i].imag(), y1 = pts[i + 1].imag();
            if ((y0 <= py && y1 > py) || (y1 <= py && y0 > py)) {
                double u = (py - y0) / (y1 - y0);
                xs.push_back(pts[i].real() + u * (pts[i + 1].real() - pts[i].real()));
            }
        }
        std::sort(xs.begin(), xs.end());
        for (size_t i = 0; i + 1 < xs.size(); i += 2) {
            int x0 = static_cast<int>(std::ceil((xs[i] - box.xmin) / dx - 0.5));
            int x1 = static_cast<int>(std::floor((xs[i + 1] - box.xmin) / dx - 0.5));
            x0 = std::max(x0, 0);
            x1 = std::min(x1, resolution - 1);
            for (int x = x0; x <= x1; ++x) r.data[static_cast<size_t>(y) * resolution + x] = 1;
        }
    }
    return r;
}

Raster filled_julia_raster(Cplx c, int iterate, const ClosedCurve& domain,
                           const ClosedCurve& codomain, int resolution, int iters) {
    BoundingBox bb = bounding_box(codomain.points);
    const double padx = 0.05 * (bb.xmax - bb.xmin), pady = 0.05 * (bb.ymax - bb.ymin);
    BoundingBox box{bb.xmin - padx, bb.xmax + padx, bb.ymin - pady, bb.ymax + pady};
    Raster codomask = polygon_mask(codomain, box, resolution);
    Raster dommask = polygon_mask(domain, box, resolution);
    auto inside = [&](const Raster& mask, Cplx z) -> bool {
        int x = static_cast<int>((z.real() - box.xmin) / (box.xmax - box.xmin) * resolution);
        int y = static_cast<int>((box.ymax - z.imag()) / (box.ymax - box.ymin) * resolution);
        if (x < 0 || y < 0 || x >= resolution || y >= resolution) return false;
        return mask.at(x, y) != 0;
    };
    Raster r;
    r.width = resolution;
    r.height = resolution;
    r.box = box;
    r.data.assign(static_cast<size_t>(resolution) * resolution, 0);
    for (int y = 0; y < resolution; ++y) {
        for (int x = 0; x < resolution; ++x) {
            if (!dommask.at(x, y)) continue;
            Cplx z = r.pixel_center(x, y);
            bool bounded = true;
            for (int n = 0; n < iters && bounded; ++n) {
                for (int k = 0; k < iterate; ++k) z = z * z + c;
                bounded = inside(codomask, z);
            }
            if (bounded) r.data[static_cast<size_t>(y) * resolution + x] = 1;
        }
    }
    return r;
}

int count_components(const Raster& r) {
    std::vector<uint8_t> seen(r.data.size(), 0);
    std::vector<int> stack;
    int components = 0;
    const int w = r.width, h = r.height;
    for (int i = 0; i < w * h; ++i) {
        if (!r.data[static_cast<size_t>(i)] || seen[static_cast<size_t>(i)]) continue;
        ++components;
        stack.push_back(i);
        seen[static_cast<size_t>(i)] = 1;
        while (!stack.empty()) {
            int j = stack.back();
            stack.pop_back();
            int x = j % w, y = j / w;
            const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (auto& d : nb) {
                int nx = x + d[0], ny = y + d[1];
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                int k = ny * w + nx;
                if (r.data[static_cast<size_t>(k)] && !seen[static_cast<size_t>(k)]) {
                    seen[static_cast<size_t>(k)] = 1;
                    stack.push_back(k);
                }
            }
        }
    }
    return components;
}

double raster_area(const Raster& r) {
    const double dx = (r.box.xmax - r.box.xmin) / r.width;
    const double dy = (r.box.ymax - r.box.ymin) / r.height;
    return static_cast<double>(r.count_nonzero()) * dx * dy;
}

}  // namespace mandel
