#include "halfint/chars.hpp"

namespace halfint {

namespace {

// x^e mod m for Int
Int powmod(Int x, Int e, const Int& m) {
    Int r = 1;
    x %= m;
    if (x < 0) x += m;
    while (e > 0) {
        if (e % 2 == 1) r = r * x % m;
        x = x * x % m;
        e /= 2;
    }
    return r;
}

// Legendre symbol (a/p) for odd prime p
int legendre(Int a, const Int& p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    Int r = powmod(a, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

// reduction of tau into the residue field of a degree-1 prime: omega maps to
// -a_gen / b_gen mod p
Int residue_mod_deg1(const FieldContext& F, const FieldInt& tau, const PrimeIdeal& pr) {
    Int p(pr.p);
    if (F.degree == 1) {
        Int r = tau.a % p;
        if (r < 0) r += p;
        return r;
    }
    Int bg = pr.gen.b % p;
    if (bg < 0) bg += p;
    if (bg == 0) {
        // ramified prime with rational-looking generator cannot occur here:
        // gen has norm p so p | a would force p | gen
        throw Error("degenerate prime generator");
    }
    Int w = (p - pr.gen.a % p) % p;
    w = w * powmod(bg, p - 2, p) % p;
    Int r = (tau.a + tau.b * w) % p;
    if (r < 0) r += p;
    return r;
}

// tau = square mod p^m in O_F, decided by enumerating residues; p^m stays
// tiny (only used for primes above 2).
bool is_square_mod_power(const FieldContext& F, const FieldInt& tau, const PrimeIdeal& pr,
                         int m) {
    // representatives a + b*omega with 0 <= a, b < p^m surject onto O/pr^m
    long long pm = 1;
    for (int i = 0; i < m; ++i) pm *= pr.p;
    auto val_at_least = [&](const FieldInt& z, int k) {
        if (z.is_zero()) return true;
        FieldInt y = z;
        for (int i = 0; i < k; ++i) {
            if (!F.divides(pr.gen, y)) return false;
            y = F.div_exact(y, pr.gen);
        }
        return true;
    };
    long long brange = (F.degree == 2) ? pm : 1;
    for (long long a = 0; a < pm; ++a) {
        for (long long b = 0; b < brange; ++b) {
            FieldInt x{a, b};
            FieldInt diff = F.sub(F.mul(x, x), tau);
            if (val_at_least(diff, m)) return true;
        }
    }
    return false;
}

}  // namespace

QuadChar::QuadChar(FieldPtr field, const FieldInt& tau) : fld_(std::move(field)) {
    if (!fld_->is_totally_positive(tau))
        throw InvalidTau("tau must be totally positive");
    auto [sqfree, xi] = squarefree_decompose(*fld_, tau);
    (void)xi;
    tau_ = sqfree;
    trivial_ = fld_->is_unit(tau_);
    if (trivial_) tau_ = FieldInt(1);
}

int QuadChar::at_prime(const PrimeIdeal& p) const {
    if (trivial_) return 1;
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(p.p, p.index);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int v = compute_at_prime(p);
    memo_[key] = v;
    return v;
}

int QuadChar::compute_at_prime(const PrimeIdeal& p) const {
    const FieldContext& F = *fld_;
    if (p.p != 2) {
        if (valuation(F, tau_, p) > 0) return 0;  // ramified in F(sqrt tau)
        if (p.f == 1) {
            return legendre(residue_mod_deg1(F, tau_, p), Int(p.p));
        }
        // inert prime, residue field F_{p^2}: tau is a square there iff its
        // relative norm N(tau) is a square mod p
        return legendre(F.norm(tau_), Int(p.p));
    }
    // primes above 2: Hensel criterion. e = valuation of 2 at p.
    if (valuation(F, tau_, p) > 0) return 0;
    FieldInt two(2);
    int e = valuation(F, two, p);
    if (is_square_mod_power(F, tau_, p, 2 * e + 1)) return 1;
    if (is_square_mod_power(F, tau_, p, 2 * e)) return -1;
    return 0;
}

int QuadChar::at(const IdealFactorization& fact) const {
    int v = 1;
    for (const auto& f : fact.factors) {
        int c = at_prime(f.prime);
        if (c == 0) return 0;
        if (f.exponent % 2) v *= c;
    }
    return v;
}

int QuadChar::at(const FieldInt& eta) const {
    if (trivial_) return 1;
    return at(factor(*fld_, eta));
}

namespace {
void validate_tau(const FieldContext& F, const FieldInt& tau) {
    if (!F.is_totally_positive(tau)) throw InvalidTau("tau must be totally positive");
    auto [sq, xi] = squarefree_decompose(F, tau);
    bool squarefree = F.is_unit(xi);
    bool perfect_square = F.is_unit(sq);
    if (!squarefree && !perfect_square)
        throw InvalidTau("tau must be squarefree or a perfect square");
}
}  // namespace

int chi(const FieldContext& F, const FieldInt& tau, const PrimeIdeal& p) {
    validate_tau(F, tau);
    QuadChar c(F.shared_from_this(), tau);
    return c.at_prime(p);
}

int chi_eval(const FieldContext& F, const FieldInt& tau, const FieldInt& eta) {
    validate_tau(F, tau);
    QuadChar c(F.shared_from_this(), tau);
    return c.at(eta);
}

}  // namespace halfint
