#include "halfint/shimura.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace halfint {

void EigenSystem::set_prime(const PrimeIdeal& p, double lam) {
    lam_[{p.p, p.index}] = lam;
}

bool EigenSystem::has_prime(const PrimeIdeal& p) const {
    return lam_.count({p.p, p.index}) > 0;
}

double EigenSystem::at_prime(const PrimeIdeal& p) const {
    auto it = lam_.find({p.p, p.index});
    if (it == lam_.end())
        throw OutOfBound("eigen-system has no value at the prime over " +
                         std::to_string(p.p));
    return it->second;
}

double EigenSystem::at_prime_power(const PrimeIdeal& p, int e) const {
    // Chebyshev-style recursion from the Euler factor (1 - lam x + x^2)^{-1}
    double lam = at_prime(p);
    double prev = 1.0, cur = lam;
    if (e == 0) return 1.0;
    for (int j = 1; j < e; ++j) {
        double next = lam * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double EigenSystem::at_ideal(const IdealFactorization& fact) const {
    double v = 1.0;
    for (const auto& f : fact.factors) v *= at_prime_power(f.prime, f.exponent);
    return v;
}

double EigenSystem::at_element(const FieldInt& x) const {
    return at_ideal(factor(*fld_, x));
}

EigenSystem eigen_from_omega(FieldPtr field,
                             const std::vector<std::pair<PrimeIdeal, double>>& omegas) {
    EigenSystem sys(field);
    for (const auto& [p, omega] : omegas)
        sys.set_prime(p, omega / std::sqrt(to_double(p.norm())));
    return sys;
}

namespace {

const char* splitting_tag(const FieldContext& F, const PrimeIdeal& p) {
    const auto& above = F.primes_above(p.p);
    if (above.size() == 2) return p.index == 0 ? "split1" : "split2";
    if (above[0].e == 2) return "ramified";
    return above[0].f == 2 ? "inert" : "rational";
}

}  // namespace

void write_eigen_file(const std::string& path, const EigenSystem& sys) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    os << "field " << sys.field().descriptor() << "\n";
    for (const auto& [key, lam] : sys.primes()) {
        PrimeIdeal p = sys.field().primes_above(key.first)[key.second];
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", lam);
        os << "p " << key.first << " " << splitting_tag(sys.field(), p) << " " << buf
           << "\n";
    }
}

EigenSystem read_eigen_file(const std::string& path, FieldPtr field) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open '" + path + "'");
    EigenSystem sys(field);
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::stringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "field") {
            std::string desc;
            ss >> desc;
            if (desc != field->descriptor())
                throw ParseError("eigen file field " + desc + " != " +
                                 field->descriptor());
            continue;
        }
        if (first != "p") throw ParseError("bad eigen line '" + line + "'");
        long long p;
        std::string tag;
        double lam;
        if (!(ss >> p >> tag >> lam)) throw ParseError("bad eigen line '" + line + "'");
        const auto& above = field->primes_above(p);
        int idx = 0;
        if (tag == "split2") idx = 1;
        if (idx >= static_cast<int>(above.size()))
            throw ParseError("tag '" + tag + "' does not match the splitting of " +
                             std::to_string(p));
        sys.set_prime(above[idx], lam);
    }
    return sys;
}

CoeffTable lift_reconstruct(const CoeffTable& seed, const EigenSystem& sys, const Int& B) {
    const FieldContext& F = seed.field();
    if (seed.normalization() != Normalization::lambda)
        throw DomainError("lift_reconstruct expects a lambda-normalized seed");
    if (seed.bound() < B)
        throw IncompleteSeed("seed complete to " + seed.bound().str() +
                             " < requested bound " + B.str());

    CoeffTable out(seed.field_ptr(), seed.weight(), seed.level(), Normalization::lambda,
                   Provenance::lift_reconstructed);
    out.set_growth_class(seed.growth_class());

    std::map<std::pair<Int, Int>, std::shared_ptr<QuadChar>> char_cache;
    for (const auto& rep : enumerate_reps(F, B)) {
        auto fact = factor(F, rep.value);
        auto [tau, xi] = squarefree_decompose(F, fact);
        Complex seed_val = seed.lambda_at(tau);
        if (seed_val == Complex(0.0, 0.0)) continue;
        Complex total;
        if (F.is_unit(xi)) {
            total = seed_val;  // xi = 1: the seed value passes through
        } else {
            auto key = std::make_pair(tau.a, tau.b);
            auto it = char_cache.find(key);
            if (it == char_cache.end())
                it = char_cache
                         .emplace(key, std::make_shared<QuadChar>(seed.field_ptr(), tau))
                         .first;
            const QuadChar& chi_tau = *it->second;
            // lambda(tau xi^2) = lambda(tau) sum over eta1 eta2 = xi of
            //   mu(eta1) chi_tau(eta1) N(eta1)^{-1/2} lambda_ff(eta2),
            // the weight that matches L(2s, ff)/L(2s+1/2, chi_tau)
            double sum = 0.0;
            for (const auto& [eta1, eta2] : divisor_pairs(F, xi)) {
                auto f1 = factor(F, eta1);
                int mu = f1.mobius();
                if (mu == 0) continue;
                int c = chi_tau.at(f1);
                if (c == 0) continue;
                double term =
                    static_cast<double>(mu * c) / std::sqrt(to_double(F.norm(eta1)));
                term *= sys.at_ideal(factor(F, eta2));
                sum += term;
            }
            total = seed_val * sum;
        }
        out.set(rep.value, total);
    }
    out.finalize(B);
    return out;
}

double divisor_bound_constant(const FieldContext& F, double theta) {
    // K = prod over primes of sup_e (e+1) N(p)^{-e theta}; only small primes
    // contribute factors above 1
    double K = 1.0;
    for (long long p = 2; p < 200; ++p) {
        bool prime = p >= 2;
        for (long long q = 2; q * q <= p; ++q)
            if (p % q == 0) prime = false;
        if (!prime) continue;
        for (const auto& pr : F.primes_above(p)) {
            double np = to_double(pr.norm());
            double sup = 1.0;
            for (int e = 1; e <= 60; ++e)
                sup = std::max(sup, (e + 1) * std::pow(np, -e * theta));
            K *= sup;
        }
    }
    return K;
}

double zeta_tail_bound(const FieldContext& F, const Int& B, double sigma) {
    // exact sum of a_F(n) n^{-sigma} out to a sieved cap, then the divisor
    // bound a_F(n) <= K n^{1/4} beyond
    if (sigma <= 1.3) throw ConvergenceDomain("tail bound needs sigma > 1.3");
    long long b = std::max(1ll, to_ll(B));
    long long cap = std::min<long long>(2000000, 64 * b);
    auto table = F.ideal_count_table(cap);
    double exact = 0.0;
    for (long long n = b + 1; n <= cap; ++n)
        exact += (*table)[n] * std::pow(static_cast<double>(n), -sigma);
    double theta = F.degree == 1 ? 0.0 : 0.25;
    double K = F.degree == 1 ? 1.0 : divisor_bound_constant(F, 0.25);
    double tail =
        K * std::pow(static_cast<double>(cap), 1.0 + theta - sigma) / (sigma - theta - 1.0);
    return exact + tail;
}

ZetaTailer::ZetaTailer(const FieldContext& F, const Int& cap, double w) {
    if (w <= 1.3) throw ConvergenceDomain("tail table needs w > 1.3");
    long long c = std::min<long long>(2000000, 64 * std::max(4ll, to_ll(cap)));
    auto table = F.ideal_count_table(c);
    prefix_.assign(c + 1, 0.0);
    for (long long n = 1; n <= c; ++n)
        prefix_[n] =
            prefix_[n - 1] + (*table)[n] * std::pow(static_cast<double>(n), -w);
    double theta = F.degree == 1 ? 0.0 : 0.25;
    double K = F.degree == 1 ? 1.0 : divisor_bound_constant(F, 0.25);
    far_ = K * std::pow(static_cast<double>(c), 1.0 + theta - w) / (w - theta - 1.0);
}

double ZetaTailer::tail_beyond(const Int& M) const {
    long long m = to_ll(M);
    long long c = static_cast<long long>(prefix_.size()) - 1;
    if (m >= c) return far_;
    if (m < 0) m = 0;
    return (prefix_[c] - prefix_[m]) + far_;
}

Complex eigen_dirichlet_sum(const EigenSystem& sys, Complex s2, const Int& B) {
    const FieldContext& F = sys.field();
    Complex sum(0.0, 0.0);
    for (const auto& rep : enumerate_reps(F, B)) {
        double lam = sys.at_element(rep.value);
        if (lam == 0.0) continue;
        sum += lam * std::exp(-s2 * std::log(to_double(rep.norm)));
    }
    return sum;
}

namespace {

// truncated L(w, chi_tau) = sum chi(n) N(n)^{-w}
Complex char_dirichlet_sum(const FieldContext& F, const QuadChar& chi_tau, Complex w,
                           const Int& B) {
    Complex sum(0.0, 0.0);
    for (const auto& rep : enumerate_reps(F, B)) {
        int c = F.is_unit(rep.value) ? 1 : chi_tau.at(rep.value);
        if (c == 0) continue;
        sum += static_cast<double>(c) * std::exp(-w * std::log(to_double(rep.norm)));
    }
    return sum;
}

}  // namespace

IdentityReport identity_check(const CoeffTable& seed, const EigenSystem& sys,
                              const FieldInt& tau, Complex s, const Int& B,
                              const CoeffTable* reconstructed) {
    const FieldContext& F = seed.field();
    if (s.real() < 1.5) throw ConvergenceDomain("identity check needs Re(s) >= 3/2");
    double ntau = to_double(F.norm(tau));
    QuadChar chi_tau(seed.field_ptr(), tau);

    Complex lam_tau = seed.lambda_at(tau);
    Complex Lff = eigen_dirichlet_sum(sys, 2.0 * s, B);
    Complex Lchi = char_dirichlet_sum(F, chi_tau, 2.0 * s + 0.5, B);
    Complex lhs = lam_tau * std::exp(-s * std::log(ntau)) * Lff / Lchi;

    // rhs: sum over xi with N(tau xi^2) <= B of lambda(tau xi^2) N(tau xi^2)^{-s}
    CoeffTable local = reconstructed ? CoeffTable(*reconstructed)
                                     : lift_reconstruct(seed, sys, B);
    Complex rhs(0.0, 0.0);
    Int xi_bound = boost::multiprecision::sqrt(Int(B / F.norm(tau)));
    for (const auto& xi : enumerate_reps(F, xi_bound)) {
        FieldInt arg = F.mul(tau, F.mul(xi.value, xi.value));
        Int n = F.norm(arg);
        if (n > B) continue;
        Complex lam = local.lambda_at(arg);
        rhs += lam * std::exp(-s * std::log(to_double(n)));
    }

    IdentityReport report;
    report.residual = std::abs(lhs - rhs);

    // tail bounds: K-divisor bound for lambda_ff, |chi| <= 1,
    // |lambda(tau xi^2)| <= |lambda(tau)| K3 N(xi)^{1/2}
    double sigma = s.real();
    double Kf = divisor_bound_constant(F, 0.25);
    double tailf = Kf * zeta_tail_bound(F, B, 2.0 * sigma - 0.25);
    double tailchi = zeta_tail_bound(F, B, 2.0 * sigma + 0.5);
    double K3 = 0.0;
    {
        // sup_e (e+1)(e+2)/2 * N^{-e/2} over primes; crude but computable
        K3 = 1.0;
        for (long long p : {2ll, 3ll, 5ll, 7ll, 11ll, 13ll}) {
            for (const auto& pr : F.primes_above(p)) {
                double np = to_double(pr.norm());
                double sup = 1.0;
                for (int e = 1; e <= 40; ++e)
                    sup = std::max(sup, 0.5 * (e + 1) * (e + 2) * std::pow(np, -0.5 * e));
                K3 *= sup;
            }
        }
    }
    // sum over N(xi) > xi_bound of N(xi)^{1/2 - 2 sigma}, via the zeta tail
    Int xib = xi_bound < 1 ? Int(1) : xi_bound;
    double tail_xi = std::abs(lam_tau) * std::pow(ntau, -sigma) * K3 *
                     zeta_tail_bound(F, xib, 2.0 * sigma - 0.5);

    double lf = std::abs(Lff), lc = std::abs(Lchi);
    double lam_abs = std::abs(lam_tau) * std::pow(ntau, -sigma);
    double lhs_err = lam_abs * (tailf / lc + lf * tailchi / (lc * lc));
    report.tail_bound = lhs_err + tail_xi + 1e-13 * (1.0 + std::abs(lhs) + std::abs(rhs));
    return report;
}

IdentityReport global_identity_check(const CoeffTable& table, const EigenSystem& sys,
                                     Complex s, const Int& B) {
    const FieldContext& F = table.field();
    if (s.real() < 1.5) throw ConvergenceDomain("identity check needs Re(s) >= 3/2");
    double sigma = s.real();

    double lam_sup = 0.0;
    Complex lhs(0.0, 0.0);
    for (const auto& rep : enumerate_reps(F, B)) {
        Complex lam = table.lambda_at(rep.value);
        lam_sup = std::max(lam_sup, std::abs(lam));
        if (lam == Complex(0.0, 0.0)) continue;
        lhs += lam * std::exp(-s * std::log(to_double(rep.norm)));
    }

    Complex Lff = eigen_dirichlet_sum(sys, 2.0 * s, B);
    ZetaTailer mu_tail(F, B, 2.0 * sigma + 0.5);
    Complex sum_tau(0.0, 0.0);
    double inner_trunc = 0.0;  // accumulated per-tau Moebius truncation bounds
    for (const auto& rep : enumerate_reps(F, B)) {
        if (!factor(F, rep.value).is_squarefree()) continue;
        Complex lam = table.lambda_at(rep.value);
        if (lam == Complex(0.0, 0.0)) continue;
        QuadChar chi_tau(table.field_ptr(), rep.value);
        // 1/L(2s+1/2, chi) = sum mu(n) chi(n) N(n)^{-(2s+1/2)}
        Complex inv(0.0, 0.0);
        Int inner = B / rep.norm;
        if (inner < 1) inner = 1;
        for (const auto& n : enumerate_reps(F, inner)) {
            auto fn = factor(F, n.value);
            int mu = fn.mobius();
            if (mu == 0) continue;
            int c = F.is_unit(n.value) ? 1 : chi_tau.at(fn);
            if (c == 0) continue;
            inv += static_cast<double>(mu * c) *
                   std::exp(-(2.0 * s + 0.5) * std::log(to_double(n.norm)));
        }
        double nts = std::pow(to_double(rep.norm), -sigma);
        sum_tau += lam * std::exp(-s * std::log(to_double(rep.norm))) * inv;
        inner_trunc += std::abs(lam) * nts * mu_tail.tail_beyond(inner);
    }
    Complex rhs = Lff * sum_tau;

    IdentityReport report;
    report.residual = std::abs(lhs - rhs);
    double Kf = divisor_bound_constant(F, 0.25);
    double tailf = Kf * zeta_tail_bound(F, B, 2.0 * sigma - 0.25);
    // |1/L(2s+1/2, chi)| <= zeta_F(2 sigma + 1/2) uniformly in chi
    double inv_cap = 1.0;
    for (long long n = 2; n <= 400; ++n)
        inv_cap += F.ideal_count(n) * std::pow((double)n, -(2.0 * sigma + 0.5));
    inv_cap += zeta_tail_bound(F, Int(400), 2.0 * sigma + 0.5);
    double tail_lhs = lam_sup * zeta_tail_bound(F, B, sigma);
    double tail_tau = std::abs(Lff) * lam_sup * inv_cap * zeta_tail_bound(F, B, sigma);
    report.tail_bound = tail_lhs + tail_tau + std::abs(Lff) * inner_trunc +
                        tailf * std::abs(sum_tau) +
                        1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs));
    return report;
}

}  // namespace halfint
