// Quadratic Hecke characters chi_tau attached to F(sqrt{tau})/F.
#pragma once

#include "halfint/arith.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace halfint {

// Completely multiplicative; value 0 exactly at primes ramified in
// F(sqrt{tau}). Depends only on the square class of tau: any totally
// positive tau is canonicalized to its squarefree part at construction.
class QuadChar {
  public:
    QuadChar(FieldPtr field, const FieldInt& tau);

    // 1 split, -1 inert, 0 ramified
    int at_prime(const PrimeIdeal& p) const;

    // product over the factorization of eta
    int at(const FieldInt& eta) const;
    int at(const IdealFactorization& fact) const;

    bool trivial() const { return trivial_; }
    const FieldInt& tau() const { return tau_; }

  private:
    int compute_at_prime(const PrimeIdeal& p) const;

    FieldPtr fld_;
    FieldInt tau_;       // canonical squarefree part
    bool trivial_ = false;
    mutable std::mutex mu_;
    mutable std::map<std::pair<long long, int>, int> memo_;
};

// chi_tau(p). tau must be totally positive and squarefree or a perfect
// square (trivial character); otherwise InvalidTau.
int chi(const FieldContext& F, const FieldInt& tau, const PrimeIdeal& p);

// Multiplicative extension chi_tau(eta).
int chi_eval(const FieldContext& F, const FieldInt& tau, const FieldInt& eta);

}  // namespace halfint
