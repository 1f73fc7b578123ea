#pragma once

#include "mandel/curve.hpp"
#include "mandel/pullback.hpp"
#include "mandel/rays.hpp"

namespace mandel {

// One member of the partition eta_n: a closed region bounded by ray arcs
// and equipotential arcs, stored as a polyline loop.
struct PuzzlePiece {
    int depth = 0;
    ClosedCurve boundary;
    bool contains_critical = false;
    Cplx sample_interior;
};

struct PuzzleLevel {
    int depth = 0;
    std::vector<PuzzlePiece> pieces;
};

// The nested pieces containing a fixed anchor, one per depth (a "p-end").
struct EndChain {
    Cplx anchor;
    std::vector<PuzzlePiece> pieces;
};

// Periodic external angles (denominator 2^q - 1, q <= q_max) whose rays
// land within 1e-3 of the separate fixed point alpha. Closed under
// doubling. Throws NotRepelling if |2 alpha| <= 1, NoCycleFound if no
// angle lands.
std::vector<RationalAngle> alpha_landing_angles(Cplx c, int q_max);

// eta_0 .. eta_depth: eta_0 is the region inside the equipotential at
// `level` cut by the rays at `angles` (all landing at alpha); eta_{n+1}
// consists of the P-preimage components of the eta_n pieces.
std::vector<PuzzleLevel> build_puzzle(Cplx c, const std::vector<RationalAngle>& angles,
                                      double level, int depth);

// The unique piece containing `anchor` at each depth. Throws OnBoundary
// when the anchor is within 1e-9 of a cut curve, NotInPuzzle when no
// depth-0 piece contains it.
EndChain end_chain(const std::vector<PuzzleLevel>& puzzle, Cplx anchor);

struct RepellingOrbitWindow {
    Cplx p;                            // the repelling periodic point P^m(0)
    int k = 1;                         // its period
    int l = 0;                         // expansion depth: |(P^k)'| >= lambda on D_l(p)
    int q = 0;                         // P^q : D_l(p) -> C_{r0} homeomorphically
    int r0 = 0;                        // depth of the critical target piece
    int r = 0;                         // B_0 = (P^q|D_l)^{-1}(C_r), r > r0, r + q > l
    double expansion = 0.0;            // min |(P^k)'| observed on D_l(p)
    std::vector<PuzzlePiece> B_chain;  // B_0, B_1, ... (depth r+q+nk)
    std::vector<double> diameters;     // matching B_chain
};

// The contracting chain B_n around the repelling orbit of p = P^m(0):
// finds l with |(P^k)'| >= 1.05 on D_l(p), the homeomorphic return P^q to
// the critical piece, B_0 avoiding p, and B_n by nk inverse steps along
// the cycle. `terms` is the number of B_n beyond B_0.
RepellingOrbitWindow repelling_orbit_window(Cplx c0, int m, int k,
                                            const std::vector<PuzzleLevel>& puzzle,
                                            int terms = 10);

}  // namespace mandel
