#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mandel/curve.hpp"
#include "mandel/puzzle.hpp"

using namespace mandel;

TEST_CASE("angles landing at alpha: c=-2 gives the 2-cycle 1/3, 2/3") {
    auto angles = alpha_landing_angles(Cplx(-2.0, 0.0), 6);
    std::sort(angles.begin(), angles.end());
    REQUIRE(angles.size() == 2);
    CHECK(angles[0] == RationalAngle(1, 3));
    CHECK(angles[1] == RationalAngle(2, 3));
}

TEST_CASE("angles landing at alpha: c=i gives the 3-cycle 1/7, 2/7, 4/7") {
    auto angles = alpha_landing_angles(Cplx(0.0, 1.0), 7);
    std::sort(angles.begin(), angles.end());
    REQUIRE(angles.size() == 3);
    CHECK(angles[0] == RationalAngle(1, 7));
    CHECK(angles[1] == RationalAngle(2, 7));
    CHECK(angles[2] == RationalAngle(4, 7));
}

TEST_CASE("puzzle at c=-2: piece counts follow 2^n + 1 and refinement nests") {
    const Cplx c{-2.0, 0.0};
    auto angles = alpha_landing_angles(c, 6);
    auto puzzle = build_puzzle(c, angles, 1.0, 6);
    REQUIRE(puzzle.size() == 7);  // depths 0..6
    for (size_t d = 0; d < puzzle.size(); ++d) {
        CHECK(puzzle[d].pieces.size() == (size_t(1) << d) + 1);
        size_t critical = 0;
        for (const auto& piece : puzzle[d].pieces) {
            CHECK(piece.depth == int(d));
            CHECK(piece.boundary.closed());
            if (piece.contains_critical) ++critical;
        }
        CHECK(critical == 1);  // the critical point lies in exactly one piece
    }
    // The critical piece at depth d+1 sits inside the critical piece at depth d.
    for (size_t d = 0; d + 1 < puzzle.size(); ++d) {
        const PuzzlePiece* outer = nullptr;
        const PuzzlePiece* inner = nullptr;
        for (const auto& p : puzzle[d].pieces)
            if (p.contains_critical) outer = &p;
        for (const auto& p : puzzle[d + 1].pieces)
            if (p.contains_critical) inner = &p;
        REQUIRE(outer);
        REQUIRE(inner);
        CHECK(winding_number(outer->boundary, inner->sample_interior) != 0);
        CHECK(curve_diameter(inner->boundary.points) <=
              curve_diameter(outer->boundary.points) + 1e-12);
    }
}

TEST_CASE("repelling-orbit shrinking neighborhoods at c=i contract like 1/(4 sqrt 2)") {
    const Cplx c0{0.0, 1.0};
    auto angles = alpha_landing_angles(c0, 7);
    auto puzzle = build_puzzle(c0, angles, 1.0, 4);
    RepellingOrbitWindow row = repelling_orbit_window(c0, 2, 2, puzzle, 10);
    CHECK(row.l == 3);
    CHECK(row.q == 3);
    CHECK(row.r == 1);
    REQUIRE(row.diameters.size() >= 8);
    const double target = 1.0 / (4.0 * std::sqrt(2.0));
    double ratio = row.diameters[7] / row.diameters[6];
    CHECK(std::abs(ratio - target) < 0.05);
}

TEST_CASE("repelling-orbit neighborhoods at c=-2 contract like 1/4") {
    const Cplx c0{-2.0, 0.0};
    auto angles = alpha_landing_angles(c0, 6);
    auto puzzle = build_puzzle(c0, angles, 1.0, 4);
    RepellingOrbitWindow row = repelling_orbit_window(c0, 2, 1, puzzle, 10);
    REQUIRE(row.diameters.size() >= 8);
    double ratio = row.diameters[7] / row.diameters[6];
    CHECK(std::abs(ratio - 0.25) < 0.05);
}
