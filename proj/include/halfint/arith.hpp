// Enumeration of totally positive integers modulo totally positive units,
// ideal factorization, squarefree tests, and the Moebius function.
#pragma once

#include "halfint/field.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace halfint {

// Totally positive element in the fundamental domain of the eps_plus action.
struct CanonicalRep {
    FieldInt value;
    Int norm;
};

struct IdealFactor {
    PrimeIdeal prime;
    int exponent = 0;
};

// Complete prime-ideal factorization of a principal ideal (x).
struct IdealFactorization {
    std::vector<IdealFactor> factors;

    bool is_squarefree() const {
        for (const auto& f : factors)
            if (f.exponent > 1) return false;
        return true;
    }
    int mobius() const {
        if (!is_squarefree()) return 0;
        return factors.size() % 2 == 0 ? 1 : -1;
    }
};

// Exact membership test for the fundamental domain:
//   sigma1(x)/sigma2(x) in [1, sigma1(eps+)/sigma2(eps+)).
bool in_fundamental_domain(const FieldContext& F, const FieldInt& x);

// Unique U+-orbit representative; throws NotTotallyPositive.
CanonicalRep canonical_rep(const FieldContext& F, const FieldInt& x);

// rep and the exponent j with x = rep * eps_plus^j.
std::pair<CanonicalRep, long long> canonical_decompose(const FieldContext& F,
                                                       const FieldInt& x);

// One representative per orbit with norm <= bound, sorted by
// (norm, trace, a, b). Exact, no duplicates, no omissions.
std::vector<CanonicalRep> enumerate_reps(const FieldContext& F, const Int& bound);

// Representatives with norm in (lo, hi]; same order. Supports partitioned
// consumption of the stream.
std::vector<CanonicalRep> enumerate_reps_range(const FieldContext& F, const Int& lo,
                                               const Int& hi);

// Complete factorization of (x); trial division of the norm. x != 0.
IdealFactorization factor(const FieldContext& F, const FieldInt& x);

bool is_squarefree(const FieldContext& F, const FieldInt& x);
int mobius(const FieldContext& F, const FieldInt& x);

// valuation of x at a prime ideal
int valuation(const FieldContext& F, FieldInt x, const PrimeIdeal& p);

// Ordered pairs (eta1, eta2) with eta1*eta2 = x modulo units, both canonical,
// sorted by (norm, trace, a, b) of eta1. x totally positive.
std::vector<std::pair<FieldInt, FieldInt>> divisor_pairs(const FieldContext& F,
                                                         const FieldInt& x);
std::vector<std::pair<FieldInt, FieldInt>> divisor_pairs(
    const FieldContext& F, const IdealFactorization& fact);

// x = tau * xi^2 modulo units with tau the canonical squarefree part and xi
// canonical. Returns (tau, xi).
std::pair<FieldInt, FieldInt> squarefree_decompose(const FieldContext& F,
                                                   const FieldInt& x);
std::pair<FieldInt, FieldInt> squarefree_decompose(const FieldContext& F,
                                                   const IdealFactorization& fact);

// Product of gens^exponents, canonicalized.
FieldInt canonical_product(const FieldContext& F,
                           const std::vector<std::pair<FieldInt, int>>& powers);

}  // namespace halfint
