// Coefficient-level Shimura correspondence: eigen-system extension, lift
// reconstruction from squarefree seeds, and Euler-product identity checks.
#pragma once

#include "halfint/chars.hpp"
#include "halfint/forms.hpp"

#include <map>
#include <string>

namespace halfint {

// Normalized Hecke eigenvalues lambda(p) per prime ideal, extended to all
// ideals by the recursion lambda(p^{j+1}) = lambda(p) lambda(p^j) -
// lambda(p^{j-1}) and multiplicativity. lambda(O_F) = 1.
class EigenSystem {
  public:
    explicit EigenSystem(FieldPtr field) : fld_(std::move(field)) {}

    const FieldContext& field() const { return *fld_; }
    FieldPtr field_ptr() const { return fld_; }

    void set_prime(const PrimeIdeal& p, double lam);
    bool has_prime(const PrimeIdeal& p) const;
    double at_prime(const PrimeIdeal& p) const;         // OutOfBound if absent
    double at_prime_power(const PrimeIdeal& p, int e) const;
    double at_ideal(const IdealFactorization& fact) const;
    double at_element(const FieldInt& x) const;

    const std::map<std::pair<long long, int>, double>& primes() const { return lam_; }

  private:
    FieldPtr fld_;
    std::map<std::pair<long long, int>, double> lam_;
};

// lambda(p) = omega_p * N(p)^{-1/2}
EigenSystem eigen_from_omega(FieldPtr field,
                             const std::vector<std::pair<PrimeIdeal, double>>& omegas);

// eigen-system file format: lines `p <prime> <inert|ramified|split1|split2> <value>`
void write_eigen_file(const std::string& path, const EigenSystem& sys);
EigenSystem read_eigen_file(const std::string& path, FieldPtr field);

// lambda_f on every representative of norm <= B from squarefree seed values:
//   lambda_f(tau xi^2) = lambda_f(tau) *
//       sum_{eta1 eta2 = xi mod U} mu(eta1) chi_tau(eta1)/N(eta1) lambda_ff(eta2)
// The result is lambda-normalized. IncompleteSeed / OutOfBound on short data.
CoeffTable lift_reconstruct(const CoeffTable& seed, const EigenSystem& sys, const Int& B);

struct IdentityReport {
    double residual = 0.0;
    double tail_bound = 0.0;
    bool pass() const { return residual <= tail_bound; }
};

// Residual of lambda_f(tau) N(tau)^{-s} L(2s, ff) / L(2s+1/2, chi_tau)
//   = sum_xi lambda_f(tau xi^2) / N(tau xi^2)^s, all series truncated at B.
IdentityReport identity_check(const CoeffTable& seed, const EigenSystem& sys,
                              const FieldInt& tau, Complex s, const Int& B,
                              const CoeffTable* reconstructed = nullptr);

// Residual of L(s, f) = L(2s, ff) * sum over squarefree tau of
// lambda_f(tau) N(tau)^{-s} L(2s+1/2, chi_tau)^{-1}.
IdentityReport global_identity_check(const CoeffTable& table, const EigenSystem& sys,
                                     Complex s, const Int& B);

// Truncated L(2s, ff) as a Dirichlet sum over ideals.
Complex eigen_dirichlet_sum(const EigenSystem& sys, Complex s2, const Int& B);

// numeric constant K with |lambda_ff(n)| <= K * N(n)^theta for the divisor
// bound (Ramanujan eigen-systems); used in tail bounds
double divisor_bound_constant(const FieldContext& F, double theta);

// sum_{n > B} a_F(n) n^{-sigma} upper bound (a_F = ideal counts)
double zeta_tail_bound(const FieldContext& F, const Int& B, double sigma);

// Prefix table for repeated tail bounds sum_{n > M} a_F(n) n^{-w}: exact up
// to the cap, divisor-bound closed form beyond.
class ZetaTailer {
  public:
    ZetaTailer(const FieldContext& F, const Int& cap, double w);
    double tail_beyond(const Int& M) const;

  private:
    double far_ = 0.0;
    std::vector<double> prefix_;
};

}  // namespace halfint
