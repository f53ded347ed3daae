#include "halfint/shimura.hpp"
#include "halfint/synth.hpp"
#include "halfint/util.hpp"

#include <doctest.h>

#include "rational_oracle.hpp"

#include <cmath>

using namespace halfint;

TEST_CASE("eigen_from_omega") {
    auto Q = make_field("Q");
    auto p3 = Q->primes_above(3)[0];
    auto p5 = Q->primes_above(5)[0];
    auto sys = eigen_from_omega(Q, {{p3, 0.0}, {p5, 2.0 * std::sqrt(5.0)}});
    CHECK(sys.at_prime(p3) == 0.0);
    CHECK(sys.at_prime(p5) == doctest::Approx(2.0).epsilon(1e-14));  // Ramanujan edge
    // omega = p^{1/2}(alpha + 1/alpha) with |alpha| = 1 stays within [-2, 2]
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        double theta = rng.uniform(0, 2 * M_PI);
        double omega = std::sqrt(7.0) * 2.0 * std::cos(theta);
        auto s = eigen_from_omega(Q, {{Q->primes_above(7)[0], omega}});
        CHECK(std::abs(s.at_prime(Q->primes_above(7)[0])) <= 2.0 + 1e-12);
    }
}

TEST_CASE("eigen extension recursion and multiplicativity") {
    auto Q = make_field("Q");
    EigenSystem sys(Q);
    auto p2 = Q->primes_above(2)[0];
    auto p3 = Q->primes_above(3)[0];
    sys.set_prime(p2, 1.3);
    sys.set_prime(p3, -0.7);
    CHECK(sys.at_element(FieldInt(1)) == 1.0);
    CHECK(sys.at_prime_power(p2, 2) == doctest::Approx(1.3 * 1.3 - 1.0).epsilon(1e-15));
    CHECK(sys.at_element(FieldInt(6)) ==
          doctest::Approx(1.3 * -0.7).epsilon(1e-15));
    CHECK_THROWS_AS(sys.at_element(FieldInt(5)), OutOfBound);

    // Euler factor cross-check: coefficients of (1 - lam x + x^2)^{-1} by
    // direct power-series division
    double lam = 1.3;
    std::vector<double> series(12, 0.0);
    series[0] = 1.0;
    for (int j = 1; j < 12; ++j) {
        series[j] = lam * series[j - 1] - (j >= 2 ? series[j - 2] : 0.0);
    }
    for (int j = 0; j < 12; ++j)
        CHECK(sys.at_prime_power(p2, j) == doctest::Approx(series[j]).epsilon(1e-13));
}

TEST_CASE("Chebyshev bound |lambda(p^j)| <= j+1") {
    auto Q = make_field("Q");
    auto p2 = Q->primes_above(2)[0];
    Rng rng(6);
    for (int i = 0; i < 100; ++i) {
        EigenSystem sys(Q);
        sys.set_prime(p2, 2.0 * std::cos(rng.uniform(0, M_PI)));
        for (int j = 0; j <= 20; ++j)
            CHECK(std::abs(sys.at_prime_power(p2, j)) <= j + 1.0 + 1e-9);
    }
}

TEST_CASE("eigen file round trip") {
    auto F = make_field("Q(sqrt{17})");  // 2 splits here
    SynthConfig cfg;
    cfg.rng_seed = 4;
    cfg.bound = 120;
    auto synth = synth_eigenform(F, cfg);
    write_eigen_file("/tmp/halfint_test.eigen", synth.eigen);
    auto back = read_eigen_file("/tmp/halfint_test.eigen", F);
    CHECK(back.primes() == synth.eigen.primes());
}

TEST_CASE("lift examples: prime and prime-square shells") {
    auto Q = make_field("Q");
    WeightVector w{{2}, 1};
    Int B(2000);

    EigenSystem sys(Q);
    Rng rng(12);
    for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}) {
        sys.set_prime(Q->primes_above(p)[0], 2.0 * std::cos(rng.uniform(0, M_PI)));
    }
    CoeffTable seed(Q, w, FieldInt(4), Normalization::lambda);
    seed.set_growth_class(GrowthClass::ramanujan);
    for (const auto& r : enumerate_reps(*Q, B)) {
        if (!is_squarefree(*Q, r.value)) continue;
        seed.set(r.value, Complex(rng.uniform(0.5, 1.0), 0.0));
    }
    seed.finalize(B);
    auto table = lift_reconstruct(seed, sys, B);

    // xi = 1 passes the seed through untouched (exact)
    for (const auto& r : enumerate_reps(*Q, B)) {
        if (!is_squarefree(*Q, r.value)) continue;
        CHECK(table.lambda_at(r.value) == seed.lambda_at(r.value));
    }

    // two-term Moebius sum: lambda(tau p^2) = lambda(tau) (lambda_ff(p)
    // - chi_tau(p) p^{-1/2}); the weight N^{-1/2} is the one consistent with
    // L(2s, ff)/L(2s+1/2, chi_tau)
    for (long long tau : {1, 5, 13, 21}) {
        for (long long p : {2, 3, 5, 7}) {
            if (tau * p * p > 2000) continue;
            auto pr = Q->primes_above(p)[0];
            double lam_p = sys.at_prime(pr);
            int c = chi(*Q, FieldInt(tau), pr);
            Complex expect = seed.lambda_at(FieldInt(tau)) *
                             (lam_p - c / std::sqrt(static_cast<double>(p)));
            Complex got = table.lambda_at(FieldInt(tau * p * p));
            CHECK(std::abs(got - expect) < 1e-13 * std::max(1.0, std::abs(expect)));

            // mu(p^2) = 0 kills the third term
            if (tau * p * p * p * p <= 2000) {
                Complex expect4 =
                    seed.lambda_at(FieldInt(tau)) *
                    (sys.at_prime_power(pr, 2) -
                     c * lam_p / std::sqrt(static_cast<double>(p)));
                Complex got4 = table.lambda_at(FieldInt(tau * p * p * p * p));
                CHECK(std::abs(got4 - expect4) < 1e-13 * std::max(1.0, std::abs(expect4)));
            }
        }
    }
}

TEST_CASE("reconstruction is linear in the seed and idempotent") {
    auto F = make_field("Q(sqrt{5})");
    SynthConfig cfg;
    cfg.rng_seed = 21;
    cfg.bound = 400;
    auto a = synth_eigenform(F, cfg);

    // scaling the seed scales every reconstructed value; exact for a
    // power-of-two factor, 1 ulp otherwise
    CoeffTable scaled_seed = a.seed.scaled(Complex(-4.0, 0.0));
    auto scaled_table = lift_reconstruct(scaled_seed, a.eigen, cfg.bound);
    REQUIRE(scaled_table.entries().size() == a.table.entries().size());
    for (std::size_t i = 0; i < a.table.entries().size(); ++i) {
        CHECK(scaled_table.entries()[i].value ==
              a.table.entries()[i].value * Complex(-4.0, 0.0));
    }
    CoeffTable scaled_seed2 = a.seed.scaled(Complex(2.7, 0.0));
    auto scaled_table2 = lift_reconstruct(scaled_seed2, a.eigen, cfg.bound);
    for (std::size_t i = 0; i < a.table.entries().size(); ++i) {
        Complex want = a.table.entries()[i].value * 2.7;
        CHECK(std::abs(scaled_table2.entries()[i].value - want) <=
              4e-16 * std::abs(want));
    }

    // extracting the squarefree restriction and reconstructing again is a
    // fixed point
    CoeffTable seed2(F, a.table.weight(), a.table.level(), Normalization::lambda);
    seed2.set_growth_class(a.table.growth_class());
    for (const auto& e : a.table.entries()) {
        if (!is_squarefree(*F, e.rep)) continue;
        seed2.set(e.rep, e.value);
    }
    seed2.finalize(cfg.bound);
    auto again = lift_reconstruct(seed2, a.eigen, cfg.bound);
    REQUIRE(again.entries().size() == a.table.entries().size());
    for (std::size_t i = 0; i < a.table.entries().size(); ++i)
        CHECK(again.entries()[i].value == a.table.entries()[i].value);
}

TEST_CASE("rational Moebius-inversion identity (exact oracle)") {
    Rng rng(33);
    for (const char* desc : {"Q", "Q(sqrt{5})"}) {
        auto F = make_field(desc);
        Int B(300);
        std::map<std::pair<long long, int>, Rational> omegas;
        for (long long p = 2; p <= 300; ++p) {
            bool prime = true;
            for (long long q = 2; q * q <= p; ++q)
                if (p % q == 0) prime = false;
            if (!prime) continue;
            for (const auto& pr : F->primes_above(p)) {
                long long num = (long long)rng.below(9) - 4;
                long long den = 1 + (long long)rng.below(3);
                omegas[{pr.p, pr.index}] = Rational(num) / den;
            }
        }
        // tau = 1 (trivial character) and a nontrivial squarefree tau
        std::vector<FieldInt> taus = {FieldInt(1)};
        for (const auto& r : enumerate_reps(*F, 30)) {
            if (F->is_unit(r.value) || !is_squarefree(*F, r.value)) continue;
            taus.push_back(r.value);
            if (taus.size() >= 3) break;
        }
        for (const auto& tau : taus) {
            auto data = testutil::build_rational_identity(F, tau, omegas, B);
            CHECK(testutil::rational_identity_holds(F, tau, data, B));
        }
    }
}

TEST_CASE("identity_check: clean pass and fault detection") {
    auto F = make_field("Q(sqrt{5})");
    SynthConfig cfg;
    cfg.rng_seed = 8;
    cfg.bound = 2000;
    auto synth = synth_eigenform(F, cfg);

    auto rep = identity_check(synth.seed, synth.eigen, FieldInt(1), Complex(2.0, 0.0),
                              cfg.bound, &synth.table);
    CHECK(rep.pass());
    CHECK(rep.residual < rep.tail_bound);

    // perturb one eigenvalue: the detector must fire
    EigenSystem bad = synth.eigen;
    auto p2 = F->primes_above(2)[0];
    bad.set_prime(p2, synth.eigen.at_prime(p2) + 0.1);
    auto rep2 = identity_check(synth.seed, bad, FieldInt(1), Complex(2.0, 0.0),
                               cfg.bound, &synth.table);
    CHECK(!rep2.pass());
    CHECK(rep2.residual > rep.residual * 10.0);
}

TEST_CASE("global identity check") {
    auto F = make_field("Q(sqrt{5})");
    SynthConfig cfg;
    cfg.rng_seed = 15;
    cfg.bound = 1200;
    auto synth = synth_eigenform(F, cfg);

    auto rep = global_identity_check(synth.table, synth.eigen, Complex(2.0, 0.0),
                                     cfg.bound);
    CHECK(rep.pass());

    // non-multiplicative noise at small non-squarefree reps pushes the
    // residual above the bound
    CoeffTable noisy(F, synth.table.weight(), synth.table.level(),
                     Normalization::lambda);
    noisy.set_growth_class(GrowthClass::ramanujan);
    int bumped = 0;
    for (const auto& e : synth.table.entries()) {
        Complex bump(0.0, 0.0);
        if (bumped < 12 && !is_squarefree(*F, e.rep)) {
            bump = Complex(4.0, 0.0);
            ++bumped;
        }
        noisy.set(e.rep, e.value + bump);
    }
    noisy.finalize(cfg.bound);
    auto rep2 = global_identity_check(noisy, synth.eigen, Complex(2.5, 0.0), cfg.bound);
    CHECK(!rep2.pass());
    CHECK(rep2.residual > 10.0 * rep2.tail_bound);
}

TEST_CASE("lift requires a lambda-normalized complete seed") {
    auto Q = make_field("Q");
    WeightVector w{{2}, 1};
    CoeffTable raw(Q, w, FieldInt(4), Normalization::fourier_a);
    raw.finalize(100);
    EigenSystem sys(Q);
    CHECK_THROWS_AS(lift_reconstruct(raw, sys, Int(100)), DomainError);

    CoeffTable shortseed(Q, w, FieldInt(4), Normalization::lambda);
    shortseed.finalize(10);
    CHECK_THROWS_AS(lift_reconstruct(shortseed, sys, Int(100)), IncompleteSeed);
}
