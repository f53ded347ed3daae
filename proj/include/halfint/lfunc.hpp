// Truncated Dirichlet series, completed L-functions via the split integral
// representation, functional-equation residuals, C(s) constancy diagnostics,
// and coefficient-level determination.
#pragma once

#include "halfint/forms.hpp"
#include "halfint/shimura.hpp"
#include "halfint/specfun.hpp"

#include <optional>
#include <vector>

namespace halfint {

struct DirichletResult {
    Complex value{0.0, 0.0};
    double tail_bound = 0.0;
};

// sum_{N(xi) <= B} lambda(xi) N(xi)^{-s} plus a tail bound from the table's
// growth class. ConvergenceDomain below the class abscissa.
DirichletResult dirichlet_sum(const CoeffTable& table, Complex s, const Int& B);

// Completed L-function data. The mirror is the coefficient table of f|W'(n);
// theta is its own mirror. Gamma shifts come from the table weight, beta from
// the level norm.
class CompletedL {
  public:
    CompletedL(const CoeffTable* table, const CoeffTable* mirror);

    const CoeffTable& table() const { return *table_; }
    const CoeffTable& mirror() const { return *mirror_; }
    double beta() const;
    // Lambda(s, f) = 2^K D^s (sqrt(N(n))/2^r)^s I(s) with I = I1 + I2 and
    // explicit polar corrections for nonzero constant terms.
    Complex value(Complex s) const;
    // series route: prefactor * Gamma-product * truncated Dirichlet sum;
    // valid in the absolutely convergent region only.
    Complex value_series(Complex s, const Int& B) const;

  private:
    Complex half_integral_piece(const CoeffTable& tab, Complex exponent_s,
                                bool mirror_side) const;
    Complex quadrature_piece(const CoeffTable& tab, const std::vector<Complex>& exps) const;

    const CoeffTable* table_;
    const CoeffTable* mirror_;
};

// |Lambda(s, f) - Lambda(1-s, f_mirror)|
double functional_eq_residual(const CompletedL& f, const CompletedL& f_mirror, Complex s);

struct CRatioPoint {
    Complex s;
    Complex value{0.0, 0.0};
    bool zero_denominator = false;
};

struct CRatioReport {
    std::vector<CRatioPoint> points;
    Complex mean{0.0, 0.0};
    double max_deviation = 0.0;  // max |C(s) - mean|
    bool constant_verdict = false;
    double tolerance = 1e-8;
};

// C(s) = Lambda(s, f)/Lambda(s, g) on a grid with Re(s) >= 3/2, evaluated by
// the gamma-prefactor * Dirichlet-sum pathway.
CRatioReport c_ratio(const CoeffTable& f, const CoeffTable& g,
                     const std::vector<Complex>& grid, const Int& B);

// eigen-data pathway: C(s) = (N(n_f)/N(n_g))^{s/2} L(2s, ff)/L(2s, gg)
CRatioReport c_ratio_eigen(const EigenSystem& f, const EigenSystem& g, double level_f,
                           double level_g, const std::vector<Complex>& grid, const Int& B);

struct DuplicationReport {
    double max_residual = 0.0;
    std::vector<Complex> excluded;  // grid points at Gamma poles
};

// Legendre-duplication rewrite of the Gamma-ratio product:
//   prod Gamma((2s+m_i-1/2)/2)/Gamma((2s+n_i-1/2)/2)
//     = 2^{sum(n-m)} prod Gamma((2s+n_i+1/2)/2)/Gamma((2s+m_i+1/2)/2)
//           * Gamma(2s+m_i-1/2)/Gamma(2s+n_i-1/2)
DuplicationReport gamma_duplication_check(const std::vector<int>& m,
                                          const std::vector<int>& n,
                                          const std::vector<Complex>& grid);

enum class DetermineVerdict {
    equal,                        // kappa found, full tables agree
    sqfree_agree_full_disagree,   // hypothesis holds at B, conclusion fails
    disagree                      // squarefree values already disagree
};

struct DetermineReport {
    Complex kappa{0.0, 0.0};      // orientation f = kappa * g
    DetermineVerdict verdict = DetermineVerdict::disagree;
    double max_sqfree_violation = 0.0;
    double max_full_violation = 0.0;
    std::optional<FieldInt> witness;  // first rep violating full agreement
};

// Finds kappa from the first squarefree rep where both are nonzero, verifies
// lambda_f = kappa lambda_g on squarefree reps <= B (restricted to
// fundamental discriminants in plus-space mode), then checks the full tables.
DetermineReport determine(const CoeffTable& f, const CoeffTable& g, const Int& B,
                          bool plus_space = false, double rel_tol = 1e-9);

}  // namespace halfint
