// Exact arithmetic in Q and in real quadratic fields Q(sqrt{d}) of narrow
// class number 1: integral basis, embeddings, units, different, discriminant.
#pragma once

#include "halfint/errors.hpp"
#include "halfint/numbers.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace halfint {

// Element of the ring of integers, a + b*omega in exact coordinates.
// For degree 1 fields b is identically 0.
struct FieldInt {
    Int a{0};
    Int b{0};

    FieldInt() = default;
    FieldInt(Int a_, Int b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit FieldInt(long long n) : a(n), b(0) {}

    bool operator==(const FieldInt& o) const { return a == o.a && b == o.b; }
    bool operator!=(const FieldInt& o) const { return !(*this == o); }
    bool is_zero() const { return a == 0 && b == 0; }
};

struct PrimeIdeal {
    long long p = 0;   // rational prime below
    int f = 1;         // residue degree
    int e = 1;         // ramification index
    FieldInt gen;      // totally positive canonical generator
    int index = 0;     // 0, or 0/1 distinguishing the two primes over a split p

    Int norm() const {
        Int n(p);
        for (int i = 1; i < f; ++i) n *= p;
        return n;
    }
};

class FieldContext;
using FieldPtr = std::shared_ptr<const FieldContext>;

// A totally real field of degree 1 or 2 with narrow class number 1.
// Immutable after construction; safe to share across threads.
class FieldContext : public std::enable_shared_from_this<FieldContext> {
  public:
    int degree = 1;
    long long d = 0;        // squarefree radicand (degree 2 only)
    int omega_t = 0;        // omega^2 = omega_t * omega + omega_n
    long long omega_n = 0;
    Int disc{1};            // D_F
    FieldInt delta{1, 0};   // totally positive generator of the different
    FieldInt eps{1, 0};     // fundamental unit (1 for Q)
    FieldInt eps_plus{1, 0};        // totally positive fundamental unit
    FieldInt eps_plus_inv{1, 0};    // its inverse (= conjugate, N(eps_plus)=1)
    int precision = 64;     // binary digits guaranteed for embeddings

    // cached embedding data
    BigFloat sqrt_d_bf, omega1_bf, omega2_bf;
    double omega1_d = 0.0, omega2_d = 0.0;
    double eps1_d = 1.0, eps2_d = 1.0;          // embeddings of eps
    double log_eps_ratio = 0.0;                 // log(eps_plus_1/eps_plus_2)

    // ---- ring operations (exact) ----
    FieldInt add(const FieldInt& x, const FieldInt& y) const { return {x.a + y.a, x.b + y.b}; }
    FieldInt sub(const FieldInt& x, const FieldInt& y) const { return {x.a - y.a, x.b - y.b}; }
    FieldInt neg(const FieldInt& x) const { return {-x.a, -x.b}; }
    FieldInt mul(const FieldInt& x, const FieldInt& y) const;
    FieldInt conj(const FieldInt& x) const;             // Galois conjugate
    FieldInt pow(FieldInt x, unsigned e) const;
    FieldInt mul_int(const FieldInt& x, const Int& c) const { return {x.a * c, x.b * c}; }
    // exact division by a rational integer; throws DomainError if not integral
    FieldInt div_int(const FieldInt& x, const Int& c) const;
    // exact division x / y in O_F; throws DomainError if not divisible
    FieldInt div_exact(const FieldInt& x, const FieldInt& y) const;
    bool divides(const FieldInt& y, const FieldInt& x) const;  // y | x

    Int norm(const FieldInt& x) const;
    Int trace(const FieldInt& x) const;

    std::array<BigFloat, 2> embed(const FieldInt& x) const;
    std::array<double, 2> embed_d(const FieldInt& x) const;

    bool is_totally_positive(const FieldInt& x) const;  // exact sign tests
    bool is_unit(const FieldInt& x) const;

    // prod_i sigma_i(x)^{t_i} with principal real powers. Integral exponents
    // are allowed at negative embeddings; otherwise DomainError.
    double multi_power(const FieldInt& x, const std::vector<double>& t) const;
    double multi_power_embedded(const std::array<double, 2>& sigma,
                                const std::vector<double>& t) const;

    // ---- prime splitting (memoized) ----
    // All prime ideals above rational p, ordered by (a, b) of the generator.
    const std::vector<PrimeIdeal>& primes_above(long long p) const;

    // Number of integral ideals of norm exactly n (Dedekind zeta coefficient).
    long long ideal_count(long long n) const;

    // Sieved table of ideal counts for n <= cap (index 0 unused). Cached;
    // grows on demand.
    std::shared_ptr<const std::vector<int>> ideal_count_table(long long cap) const;

    // ---- text forms ----
    std::string descriptor() const;                 // "Q" or "Q(sqrt{d})"
    std::string format_element(const FieldInt& x) const;   // "a+b*w"
    FieldInt parse_element(const std::string& text) const;

    static FieldPtr make(const std::string& descriptor, int precision = 0);

  private:
    friend FieldPtr make_field(const std::string&, int);
    FieldContext() = default;

    mutable std::mutex cache_mu_;
    mutable std::map<long long, std::vector<PrimeIdeal>> prime_cache_;
    mutable std::shared_ptr<const std::vector<int>> count_cache_;
};

// Builds the context for "Q" or "Q(sqrt{d})" with d in the supported
// allow-list {2, 5, 13, 17, 29}. The fundamental unit comes from the
// continued fraction of sqrt(d), refined to the maximal order.
// precision <= 0 picks the default (64) or the HALFINT_PRECISION override.
FieldPtr make_field(const std::string& descriptor, int precision = 0);

}  // namespace halfint
