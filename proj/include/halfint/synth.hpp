// Reproducible synthetic eigen-systems and squarefree seeds for tests and
// the CLI synth subcommand.
#pragma once

#include "halfint/shimura.hpp"
#include "halfint/util.hpp"

namespace halfint {

struct SynthConfig {
    std::uint64_t rng_seed = 1;
    Int bound{1000};
    std::vector<int> weight_m;   // defaults to parallel weight 2
    int weight_delta = 1;
    double seed_lo = 0.5;        // squarefree seed values drawn uniformly here
    double seed_hi = 1.0;
};

struct SynthResult {
    EigenSystem eigen;
    CoeffTable seed;     // lambda-normalized, squarefree support
    CoeffTable table;    // lift-reconstructed to bound
};

// Eigen values lambda(p) = 2 cos(theta_p) with theta_p uniform on (0, pi);
// honors the Ramanujan bound. Deterministic in the rng seed.
SynthResult synth_eigenform(FieldPtr field, const SynthConfig& cfg);

}  // namespace halfint
