#include "mandel/pullback.hpp"

#include <cmath>

namespace mandel {

Cplx sqrt_step(Cplx prev, Cplx z, Cplx c) {
    Cplx y = std::sqrt(z - c);
    return (std::norm(y - prev) <= std::norm(y + prev)) ? y : -y;
}

namespace {

// A continuity step is safe when the jump is small against the separation
// of the two roots (which is 2|y|).
bool safe_jump(Cplx ya, Cplx yb) {
    return std::abs(yb - ya) <= 0.5 * (std::abs(ya) + std::abs(yb));
}

Cplx transport_recurse(Cplx c, Cplx a, Cplx ya, Cplx b, int depth) {
    Cplx yb = sqrt_step(ya, b, c);
    if (safe_jump(ya, yb)) return yb;
    if (depth <= 0)
        throw InverseBranchAmbiguity("pullback: branch tracking ambiguous near the critical value");
    Cplx mid = 0.5 * (a + b);
    Cplx ym = transport_recurse(c, a, ya, mid, depth - 1);
    return transport_recurse(c, mid, ym, b, depth - 1);
}

}  // namespace

Cplx transport_segment(Cplx c, Cplx a, Cplx ya, Cplx b) {
    return transport_recurse(c, a, ya, b, 48);
}

Cplx branch_point(Cplx c, Cplx z, Cplx anchor, Cplx anchor_pre) {
    return transport_segment(c, anchor, anchor_pre, z);
}

std::vector<Cplx> pull_back_loop(Cplx c, const std::vector<Cplx>& loop, Cplx anchor,
                                 Cplx anchor_pre) {
    if (loop.size() < 3) throw DomainError("pull_back_loop: degenerate loop");
    const bool critical = (winding_number(loop, c) % 2) != 0;
    const int rounds = critical ? 2 : 1;

    // Open vertex list (drop the duplicate closing vertex if present).
    std::vector<Cplx> verts(loop.begin(), loop.end());
    if (std::abs(verts.front() - verts.back()) < 1e-14) verts.pop_back();
    const size_t m = verts.size();

    Cplx prev_z = verts.front();
    Cplx prev_y;
    if (critical) {
        // Any starting sign works; the doubled traversal covers both sheets.
        prev_y = std::sqrt(prev_z - c);
    } else {
        prev_y = branch_point(c, prev_z, anchor, anchor_pre);
    }
    std::vector<Cplx> out;
    out.reserve(m * rounds + 1);
    out.push_back(prev_y);
    for (int r = 0; r < rounds; ++r) {
        for (size_t i = 1; i <= m; ++i) {
            const Cplx target = verts[i % m];
            Cplx y = transport_segment(c, prev_z, prev_y, target);
            prev_z = target;
            prev_y = y;
            const bool at_end = (r == rounds - 1) && (i == m);
            if (!at_end) out.push_back(y);
        }
    }
    out.push_back(out.front());  // exact closure
    return out;
}

Cplx BranchMap::map_point(Cplx z) const {
    Cplx cur = z;
    for (int j = J - 1; j >= 0; --j) {
        cur = branch_point(c, cur, orbit[static_cast<size_t>(j) + 1], orbit[static_cast<size_t>(j)]);
    }
    return cur;
}

std::vector<Cplx> BranchMap::map_loop(const std::vector<Cplx>& loop) const {
    std::vector<Cplx> cur = loop;
    for (int j = J - 1; j >= 0; --j) {
        cur = pull_back_loop(c, cur, orbit[static_cast<size_t>(j) + 1],
                             orbit[static_cast<size_t>(j)]);
    }
    return cur;
}

std::vector<Cplx> pull_back_critical(Cplx c, const std::vector<Cplx>& loop, int J) {
    std::vector<Cplx> refs;
    refs.reserve(static_cast<size_t>(J) + 1);
    Cplx z = 0.0;
    refs.push_back(z);
    for (int j = 0; j < J; ++j) {
        z = z * z + c;
        refs.push_back(z);
    }
    std::vector<Cplx> cur = loop;
    for (int j = J - 1; j >= 0; --j) {
        cur = pull_back_loop(c, cur, refs[static_cast<size_t>(j) + 1], refs[static_cast<size_t>(j)]);
    }
    return cur;
}

}  // namespace mandel
