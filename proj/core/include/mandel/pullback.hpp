#pragma once

#include "mandel/curve.hpp"
#include "mandel/dynamics.hpp"

namespace mandel {

// One inverse-branch step of P_c: the square root of z - c on the branch
// continuing `prev` (the root closer to prev).
Cplx sqrt_step(Cplx prev, Cplx z, Cplx c);

// Transport a branch value along the segment a -> b, subdividing where the
// two roots become hard to tell apart. `ya` is the branch value at a.
Cplx transport_segment(Cplx c, Cplx a, Cplx ya, Cplx b);

// Pointwise inverse branch of P_c anchored by an exact preimage pair
// (P(anchor_pre) = anchor). Returns the preimage of z on anchor_pre's branch.
Cplx branch_point(Cplx c, Cplx z, Cplx anchor, Cplx anchor_pre);

// Pull a closed loop back through P_c.
//  - if the loop does not enclose the critical value c, the preimage has two
//    components; the one on the branch of (anchor, anchor_pre) is returned;
//  - if it encloses c with odd winding, the preimage is a single loop traced
//    by following the branch around the input twice.
std::vector<Cplx> pull_back_loop(Cplx c, const std::vector<Cplx>& loop, Cplx anchor,
                                 Cplx anchor_pre);

// Inverse branches of F = P_c^{oJ} anchored by reference backward orbits.
// orbit[j] = P^j(x) for the branch's base point x; orbit[J] lies on the
// target side. For J=1 with x = beta / beta_bar these are the classical
// branches G_1 / G_0 of the z^2 - 2 construction.
struct BranchMap {
    Cplx c;
    int J = 1;
    std::vector<Cplx> orbit;  // length J+1

    Cplx map_point(Cplx z) const;
    std::vector<Cplx> map_loop(const std::vector<Cplx>& loop) const;
};

// Pull a loop back through P_c^{oJ} along the backward orbit of the critical
// point (refs[j] = P^j(0)). The final step doubles around 0 when the loop
// encloses the critical value, producing the full preimage.
std::vector<Cplx> pull_back_critical(Cplx c, const std::vector<Cplx>& loop, int J);

}  // namespace mandel
