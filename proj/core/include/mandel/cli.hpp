#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mandel/dynamics.hpp"

namespace mandel {

// Validated invocation of one CLI command. Parsing (flags, config file)
// lives in the tool front end; this struct is the full program input, so
// identical configs produce byte-identical artifacts.
struct RunConfig {
    std::string command;

    Cplx c{0.0, 0.0};
    bool have_c = false;
    std::string theta;          // exact angle "p/q"
    std::string plane = "dyn";  // "dyn" | "param"

    int m = 0;
    int k = 0;
    int depth = 2;
    int q_max = 6;
    int n = 2;                   // window index within a level
    std::vector<int> word;       // empty = auto (floors decide)
    int levels = 2;              // tower depth when word is auto
    std::vector<double> caps;    // per-level diameter caps; empty = 2^-k

    int resolution = 512;
    int iters = 256;
    double level = 0.0;          // equipotential level; 0 = default gamma
    double g_end = 1e-6;         // ray trace terminal potential
    int samples = 512;
    double tol = 1e-12;

    int threads = 1;

    std::string out;     // primary artifact path; empty = command default
    std::string report;  // optional JSON report path for SVG/PPM commands
};

// Dispatches to render-mandel, render-julia, ray, equipotential, puzzle,
// misiurewicz, window, tower, verify-tower. Writes the declared outputs.
// Returns 0 on success, 1 on domain errors, 2 on usage errors; failures
// also write a machine-readable error object to stderr.
int run_command(const RunConfig& config);

}  // namespace mandel
