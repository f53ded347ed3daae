#include "halfint/synth.hpp"

#include <cmath>

namespace halfint {

SynthResult synth_eigenform(FieldPtr field, const SynthConfig& cfg) {
    const FieldContext& F = *field;
    Rng rng(cfg.rng_seed);

    WeightVector w;
    w.m = cfg.weight_m.empty() ? std::vector<int>(F.degree, 2) : cfg.weight_m;
    w.delta = cfg.weight_delta;

    // primes of norm <= bound, by rational prime then index
    EigenSystem sys(field);
    long long pmax = to_ll(cfg.bound);
    for (long long p = 2; p <= pmax; ++p) {
        bool prime = true;
        for (long long q = 2; q * q <= p; ++q)
            if (p % q == 0) prime = false;
        if (!prime) continue;
        for (const auto& pr : F.primes_above(p)) {
            if (pr.norm() > cfg.bound) continue;
            double theta = rng.uniform(0.0, M_PI);
            sys.set_prime(pr, 2.0 * std::cos(theta));
        }
    }

    CoeffTable seed(field, w, FieldInt(4), Normalization::lambda, Provenance::synthetic);
    seed.set_growth_class(GrowthClass::ramanujan);
    for (const auto& rep : enumerate_reps(F, cfg.bound)) {
        if (!is_squarefree(F, rep.value)) continue;
        seed.set(rep.value, Complex(rng.uniform(cfg.seed_lo, cfg.seed_hi), 0.0));
    }
    seed.finalize(cfg.bound);

    CoeffTable table = lift_reconstruct(seed, sys, cfg.bound);
    table.set_growth_class(GrowthClass::ramanujan);
    return {std::move(sys), std::move(seed), std::move(table)};
}

}  // namespace halfint
