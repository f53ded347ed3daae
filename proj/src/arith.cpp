#include "halfint/arith.hpp"

#include <algorithm>
#include <cmath>

namespace halfint {

bool in_fundamental_domain(const FieldContext& F, const FieldInt& x) {
    if (F.degree == 1) return x.a > 0;
    if (!F.is_totally_positive(x)) return false;
    if (x.b < 0) return false;  // sigma1 >= sigma2
    FieldInt up = F.mul(x, F.eps_plus_inv);
    return up.b < 0;  // sigma1/sigma2 < eps ratio
}

std::pair<CanonicalRep, long long> canonical_decompose(const FieldContext& F,
                                                       const FieldInt& x) {
    if (!F.is_totally_positive(x)) throw NotTotallyPositive(
        "canonical representatives exist for totally positive elements only");
    if (F.degree == 1) return {{x, x.a}, 0};

    long long j = 0;
    FieldInt y = x;
    // floating guess, exact walk to finish
    auto s = F.embed_d(x);
    if (std::isfinite(s[0]) && std::isfinite(s[1]) && s[0] > 0 && s[1] > 0) {
        double g = std::log(s[0] / s[1]) / F.log_eps_ratio;
        long long guess = static_cast<long long>(std::floor(g));
        if (std::abs(guess) < (1 << 28)) {
            j = guess;
            FieldInt u = guess >= 0 ? F.eps_plus_inv : F.eps_plus;
            for (long long k = 0; k < std::llabs(guess); ++k) y = F.mul(y, u);
        }
    } else {
        // huge coordinates: BigFloat guess
        auto sb = F.embed(x);
        BigFloat g = log(sb[0] / sb[1]) / BigFloat(F.log_eps_ratio);
        j = g.convert_to<long long>();
        FieldInt u = j >= 0 ? F.eps_plus_inv : F.eps_plus;
        for (long long k = 0; k < std::llabs(j); ++k) y = F.mul(y, u);
    }
    while (y.b < 0) {
        y = F.mul(y, F.eps_plus);
        --j;
    }
    while (!(F.mul(y, F.eps_plus_inv).b < 0)) {
        y = F.mul(y, F.eps_plus_inv);
        ++j;
    }
    return {{y, F.norm(y)}, j};
}

CanonicalRep canonical_rep(const FieldContext& F, const FieldInt& x) {
    return canonical_decompose(F, x).first;
}

namespace {

void sort_reps(const FieldContext& F, std::vector<CanonicalRep>& v) {
    std::sort(v.begin(), v.end(), [&](const CanonicalRep& x, const CanonicalRep& y) {
        if (x.norm != y.norm) return x.norm < y.norm;
        Int tx = F.trace(x.value), ty = F.trace(y.value);
        if (tx != ty) return tx < ty;
        if (x.value.a != y.value.a) return x.value.a < y.value.a;
        return x.value.b < y.value.b;
    });
}

}  // namespace

std::vector<CanonicalRep> enumerate_reps_range(const FieldContext& F, const Int& lo,
                                               const Int& hi) {
    std::vector<CanonicalRep> out;
    if (hi < 1) return out;
    if (F.degree == 1) {
        for (Int n = lo < 0 ? Int(1) : lo + 1; n <= hi; ++n)
            out.push_back({FieldInt{n, 0}, n});
        return out;
    }
    // Lattice scan of the cone sector: sigma1 in [sqrt(N), sqrt(N * epsr)),
    // sigma2 = N/sigma1, N <= hi.
    double T = to_double(hi);
    double epsr = std::exp(F.log_eps_ratio);
    double sq = to_double(F.sqrt_d_bf);
    double s1max = std::sqrt(T * epsr);
    long long bmax = static_cast<long long>(s1max / sq) + 2;
    double w1 = F.omega1_d, w2 = F.omega2_d;
    for (long long b = 0; b <= bmax; ++b) {
        // sigma2 > 0  =>  a > -b w2 ;  sigma1 < s1max  =>  a < s1max - b w1
        long long alo = static_cast<long long>(std::floor(-b * w2)) - 1;
        long long ahi = static_cast<long long>(std::ceil(s1max - b * w1)) + 1;
        for (long long a = alo; a <= ahi; ++a) {
            FieldInt x{a, b};
            Int n = F.norm(x);
            if (n < 1 || n > hi || n <= lo) continue;
            if (!F.is_totally_positive(x)) continue;
            if (!in_fundamental_domain(F, x)) continue;
            out.push_back({x, n});
        }
    }
    sort_reps(F, out);
    return out;
}

std::vector<CanonicalRep> enumerate_reps(const FieldContext& F, const Int& bound) {
    return enumerate_reps_range(F, 0, bound);
}

int valuation(const FieldContext& F, FieldInt x, const PrimeIdeal& p) {
    if (x.is_zero()) throw DomainError("valuation of zero");
    int v = 0;
    while (F.divides(p.gen, x)) {
        x = F.div_exact(x, p.gen);
        ++v;
    }
    return v;
}

IdealFactorization factor(const FieldContext& F, const FieldInt& x) {
    if (x.is_zero()) throw DomainError("factor(0)");
    IdealFactorization out;
    Int n = F.norm(x);
    if (n < 0) n = -n;
    if (n == 1) return out;  // unit

    // trial division of the norm
    std::vector<std::pair<long long, int>> rational;
    Int m = n;
    for (long long p = 2; Int(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        rational.push_back({p, e});
    }
    if (m > 1) {
        if (m > Int(std::numeric_limits<long long>::max()))
            throw OutOfBound("norm too large for desk-scale factorization");
        rational.push_back({to_ll(m), 1});
    }

    for (auto [p, e] : rational) {
        const auto& above = F.primes_above(p);
        if (F.degree == 1) {
            out.factors.push_back({above[0], e});
        } else if (above.size() == 1 && above[0].f == 2) {
            out.factors.push_back({above[0], e / 2});  // inert; e is even
        } else if (above.size() == 1) {
            out.factors.push_back({above[0], e});  // ramified, N(p)=p
        } else {
            int e1 = valuation(F, x, above[0]);
            int e2 = e - e1;
            if (e1 > 0) out.factors.push_back({above[0], e1});
            if (e2 > 0) out.factors.push_back({above[1], e2});
        }
    }
    return out;
}

bool is_squarefree(const FieldContext& F, const FieldInt& x) {
    return factor(F, x).is_squarefree();
}

int mobius(const FieldContext& F, const FieldInt& x) {
    return factor(F, x).mobius();
}

FieldInt canonical_product(const FieldContext& F,
                           const std::vector<std::pair<FieldInt, int>>& powers) {
    FieldInt prod(1);
    for (const auto& [g, e] : powers)
        for (int i = 0; i < e; ++i) prod = F.mul(prod, g);
    return canonical_rep(F, prod).value;
}

std::vector<std::pair<FieldInt, FieldInt>> divisor_pairs(
    const FieldContext& F, const IdealFactorization& fact) {
    const auto& fs = fact.factors;
    std::vector<int> exps(fs.size(), 0);
    std::vector<std::pair<FieldInt, FieldInt>> out;
    for (;;) {
        FieldInt d1(1), d2(1);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (int k = 0; k < exps[i]; ++k) d1 = F.mul(d1, fs[i].prime.gen);
            for (int k = exps[i]; k < fs[i].exponent; ++k) d2 = F.mul(d2, fs[i].prime.gen);
        }
        out.push_back({canonical_rep(F, d1).value, canonical_rep(F, d2).value});
        std::size_t i = 0;
        while (i < fs.size() && exps[i] == fs[i].exponent) exps[i++] = 0;
        if (i == fs.size()) break;
        ++exps[i];
    }
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        Int nx = F.norm(x.first), ny = F.norm(y.first);
        if (nx != ny) return nx < ny;
        Int tx = F.trace(x.first), ty = F.trace(y.first);
        if (tx != ty) return tx < ty;
        if (x.first.a != y.first.a) return x.first.a < y.first.a;
        return x.first.b < y.first.b;
    });
    return out;
}

std::vector<std::pair<FieldInt, FieldInt>> divisor_pairs(const FieldContext& F,
                                                         const FieldInt& x) {
    if (!F.is_totally_positive(x)) throw NotTotallyPositive("divisor_pairs");
    return divisor_pairs(F, factor(F, x));
}

std::pair<FieldInt, FieldInt> squarefree_decompose(const FieldContext& F,
                                                   const IdealFactorization& fact) {
    FieldInt tau(1), xi(1);
    for (const auto& f : fact.factors) {
        if (f.exponent % 2) tau = F.mul(tau, f.prime.gen);
        for (int k = 0; k < f.exponent / 2; ++k) xi = F.mul(xi, f.prime.gen);
    }
    return {canonical_rep(F, tau).value, canonical_rep(F, xi).value};
}

std::pair<FieldInt, FieldInt> squarefree_decompose(const FieldContext& F,
                                                   const FieldInt& x) {
    return squarefree_decompose(F, factor(F, x));
}

}  // namespace halfint
