#include "halfint/arith.hpp"
#include "halfint/util.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace halfint;

TEST_CASE("canonical_rep examples") {
    auto Q = make_field("Q");
    CHECK(canonical_rep(*Q, FieldInt(12)).value == FieldInt(12));

    auto F = make_field("Q(sqrt{5})");
    // 2 * eps+ reduces to 2
    FieldInt x = F->mul(FieldInt(2), F->eps_plus);
    CHECK(canonical_rep(*F, x).value == FieldInt(2));
    CHECK(!in_fundamental_domain(*F, x));
    CHECK(in_fundamental_domain(*F, FieldInt(2)));

    CHECK_THROWS_AS(canonical_rep(*F, FieldInt(-3)), NotTotallyPositive);
}

TEST_CASE("canonical_rep is idempotent on random orbits") {
    auto F = make_field("Q(sqrt{13})");
    Rng rng(3);
    int tested = 0;
    for (int i = 0; tested < 1000 && i < 20000; ++i) {
        FieldInt x{(long long)rng.below(500) + 1, (long long)rng.below(100)};
        if (!F->is_totally_positive(x)) continue;
        ++tested;
        // shift by a random unit-square power
        long long j = (long long)rng.below(9) - 4;
        FieldInt shifted = x;
        for (long long k = 0; k < std::llabs(j); ++k)
            shifted = F->mul(shifted, j > 0 ? F->eps_plus : F->eps_plus_inv);
        auto r1 = canonical_rep(*F, x);
        auto r2 = canonical_rep(*F, shifted);
        CHECK(r1.value == r2.value);
        CHECK(canonical_rep(*F, r1.value).value == r1.value);
    }
    CHECK(tested == 1000);
}

TEST_CASE("enumerate_reps examples") {
    auto Q = make_field("Q");
    auto reps = enumerate_reps(*Q, 5);
    REQUIRE(reps.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(reps[i].norm == i + 1);

    auto F = make_field("Q(sqrt{5})");
    auto one = enumerate_reps(*F, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].value == FieldInt(1));

    // count orbits of norm <= 30 against the ideal-count oracle
    auto r30 = enumerate_reps(*F, 30);
    long long expect = 0;
    for (long long n = 1; n <= 30; ++n) expect += testutil::ideal_count_oracle(5, n);
    CHECK((long long)r30.size() == expect);
}

TEST_CASE("orbit/ideal bijection up to 10^4 in all supported fields") {
    for (auto [desc, D] : std::vector<std::pair<const char*, long long>>{
             {"Q(sqrt{2})", 8}, {"Q(sqrt{5})", 5}, {"Q(sqrt{13})", 13},
             {"Q(sqrt{17})", 17}, {"Q(sqrt{29})", 29}}) {
        auto F = make_field(desc);
        auto reps = enumerate_reps(*F, 10000);
        // per-norm histogram must match the oracle exactly
        std::map<long long, long long> hist;
        for (const auto& r : reps) hist[to_ll(r.norm)]++;
        long long total = 0;
        for (long long n = 1; n <= 10000; ++n) {
            long long expect = testutil::ideal_count_oracle(D, n);
            total += expect;
            long long got = hist.count(n) ? hist[n] : 0;
            REQUIRE_MESSAGE(got == expect,
                            desc << " norm " << n << ": " << got << " != " << expect);
        }
        CHECK((long long)reps.size() == total);
    }
}

TEST_CASE("enumerate_reps is sorted with the documented tie-break") {
    auto F = make_field("Q(sqrt{17})");
    auto reps = enumerate_reps(*F, 2000);
    for (std::size_t i = 1; i < reps.size(); ++i) {
        const auto& x = reps[i - 1];
        const auto& y = reps[i];
        bool ordered =
            x.norm < y.norm ||
            (x.norm == y.norm &&
             (F->trace(x.value) < F->trace(y.value) ||
              (F->trace(x.value) == F->trace(y.value) &&
               (x.value.a < y.value.a ||
                (x.value.a == y.value.a && x.value.b < y.value.b)))));
        CHECK(ordered);
    }
    // range enumeration partitions the stream
    auto lo = enumerate_reps(*F, 700);
    auto hi = enumerate_reps_range(*F, 700, 2000);
    CHECK(lo.size() + hi.size() == reps.size());
}

TEST_CASE("factor examples") {
    auto Q = make_field("Q");
    auto f12 = factor(*Q, FieldInt(12));
    REQUIRE(f12.factors.size() == 2);
    CHECK(f12.factors[0].prime.p == 2);
    CHECK(f12.factors[0].exponent == 2);
    CHECK(f12.factors[1].prime.p == 3);
    CHECK(f12.factors[1].exponent == 1);

    auto F = make_field("Q(sqrt{5})");
    auto f2 = factor(*F, FieldInt(2));
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0].prime.f == 2);  // 2 inert: 5 mod 8 not in {1,7}
    CHECK(f2.factors[0].exponent == 1);

    FieldInt sqrt5{Int(-1), Int(2)};
    auto f5 = factor(*F, sqrt5);
    REQUIRE(f5.factors.size() == 1);
    CHECK(f5.factors[0].prime.p == 5);
    CHECK(f5.factors[0].prime.e == 2);
    CHECK(f5.factors[0].exponent == 1);
    CHECK(F->is_totally_positive(f5.factors[0].prime.gen));
}

TEST_CASE("factorization is multiplicative on coprime pairs") {
    auto F = make_field("Q(sqrt{5})");
    auto reps = enumerate_reps(*F, 300);
    Rng rng(17);
    int done = 0;
    for (int i = 0; done < 500 && i < 20000; ++i) {
        const auto& x = reps[rng.below(reps.size())];
        const auto& y = reps[rng.below(reps.size())];
        Int g = boost::multiprecision::gcd(x.norm, y.norm);
        if (g != 1) continue;  // coprime norms force coprime elements
        ++done;
        auto fx = factor(*F, x.value);
        auto fy = factor(*F, y.value);
        auto fxy = factor(*F, F->mul(x.value, y.value));
        std::map<std::pair<long long, int>, int> merged, got;
        for (const auto& f : fx.factors) merged[{f.prime.p, f.prime.index}] += f.exponent;
        for (const auto& f : fy.factors) merged[{f.prime.p, f.prime.index}] += f.exponent;
        for (const auto& f : fxy.factors) got[{f.prime.p, f.prime.index}] += f.exponent;
        CHECK(merged == got);
    }
    CHECK(done == 500);
}

TEST_CASE("factorization reconstructs the element up to a unit") {
    auto F = make_field("Q(sqrt{29})");
    auto reps = enumerate_reps(*F, 500);
    for (const auto& r : reps) {
        auto fact = factor(*F, r.value);
        FieldInt prod(1);
        Int norm_prod(1);
        for (const auto& f : fact.factors) {
            for (int k = 0; k < f.exponent; ++k) prod = F->mul(prod, f.prime.gen);
            for (int k = 0; k < f.exponent; ++k) norm_prod *= f.prime.norm();
        }
        CHECK(norm_prod == r.norm);
        CHECK(canonical_rep(*F, prod).value == r.value);
    }
}

TEST_CASE("is_squarefree examples") {
    auto Q = make_field("Q");
    CHECK(is_squarefree(*Q, FieldInt(30)));
    CHECK(!is_squarefree(*Q, FieldInt(12)));

    auto F = make_field("Q(sqrt{5})");
    CHECK(!is_squarefree(*F, FieldInt(5)));             // ramified square
    CHECK(is_squarefree(*F, FieldInt{Int(-1), Int(2)}));  // sqrt5 itself
}

TEST_CASE("mobius examples and divisor-sum identity") {
    auto Q = make_field("Q");
    CHECK(mobius(*Q, FieldInt(1)) == 1);
    CHECK(mobius(*Q, FieldInt(4)) == 0);
    auto F = make_field("Q(sqrt{5})");
    CHECK(mobius(*F, FieldInt(2)) == -1);  // 2 inert, one prime

    // sum_{d | x} mu(d) = [x is a unit orbit] for all reps of norm <= 10^3
    for (const auto& r : enumerate_reps(*F, 1000)) {
        int sum = 0;
        for (const auto& [d1, d2] : divisor_pairs(*F, r.value)) {
            (void)d2;
            sum += mobius(*F, d1);
        }
        CHECK(sum == (F->is_unit(r.value) ? 1 : 0));
    }
}

TEST_CASE("divisor_pairs examples") {
    auto Q = make_field("Q");
    auto p6 = divisor_pairs(*Q, FieldInt(6));
    REQUIRE(p6.size() == 4);
    CHECK(p6[0].first == FieldInt(1));
    CHECK(p6[0].second == FieldInt(6));
    CHECK(p6[1].first == FieldInt(2));
    CHECK(p6[1].second == FieldInt(3));
    CHECK(p6[2].first == FieldInt(3));
    CHECK(p6[2].second == FieldInt(2));
    CHECK(p6[3].first == FieldInt(6));
    CHECK(p6[3].second == FieldInt(1));

    auto p7 = divisor_pairs(*Q, FieldInt(7));
    REQUIRE(p7.size() == 2);

    auto F = make_field("Q(sqrt{5})");
    auto p4 = divisor_pairs(*F, FieldInt(4));  // 4 = 2^2, 2 inert
    REQUIRE(p4.size() == 3);
    CHECK(p4[0].first == FieldInt(1));
    CHECK(p4[1].first == FieldInt(2));
    CHECK(p4[2].first == FieldInt(4));
}

TEST_CASE("squarefree decomposition") {
    auto F = make_field("Q(sqrt{5})");
    for (const auto& r : enumerate_reps(*F, 400)) {
        auto [tau, xi] = squarefree_decompose(*F, r.value);
        CHECK(is_squarefree(*F, tau));
        FieldInt back = F->mul(tau, F->mul(xi, xi));
        CHECK(canonical_rep(*F, back).value == r.value);
    }
}
