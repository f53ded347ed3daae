// Coefficient tables for (half-)integral-weight forms, the lambda
// normalization, well-definedness and growth checks, plus-space and
// fundamental-discriminant tests, and the table file format.
#pragma once

#include "halfint/arith.hpp"

#include <complex>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace halfint {

// k = m + delta_k * (1/2, ..., 1/2)
struct WeightVector {
    std::vector<int> m;
    int delta = 0;  // 1 marks half-integral weight

    int degree() const { return static_cast<int>(m.size()); }
    double k(int j) const { return m[j] + 0.5 * delta; }
    // exponents (k_j - 1)/2
    std::vector<double> half_shifts() const {
        std::vector<double> v(m.size());
        for (std::size_t j = 0; j < m.size(); ++j) v[j] = (m[j] + 0.5 * delta - 1.0) / 2.0;
        return v;
    }
    int sum_m() const {
        int s = 0;
        for (int x : m) s += x;
        return s;
    }
    bool operator==(const WeightVector& o) const { return m == o.m && delta == o.delta; }
};

enum class Provenance { theta_derived, file, synthetic, lift_reconstructed };
enum class Normalization { fourier_a, lambda };
enum class GrowthClass { hecke, ramanujan };

struct TableEntry {
    FieldInt rep;
    Int norm;
    Complex value;
};

// Fourier coefficients keyed by canonical totally-positive representatives.
// Zero entries inside the completeness bound are stored implicitly. Immutable
// after finalize(); reads are thread-safe afterwards.
class CoeffTable {
  public:
    CoeffTable(FieldPtr field, WeightVector weight, FieldInt level,
               Normalization norm = Normalization::fourier_a,
               Provenance prov = Provenance::synthetic);

    const FieldContext& field() const { return *fld_; }
    FieldPtr field_ptr() const { return fld_; }
    const WeightVector& weight() const { return weight_; }
    const FieldInt& level() const { return level_; }
    Int level_norm() const { return fld_->norm(level_); }
    const Int& bound() const { return bound_; }
    Normalization normalization() const { return norm_; }
    Provenance provenance() const { return prov_; }
    GrowthClass growth_class() const { return growth_; }
    void set_growth_class(GrowthClass g) { growth_ = g; }
    Complex constant_term() const { return constant_; }
    void set_constant_term(Complex c) { constant_ = c; }

    // build phase
    void set(const FieldInt& x, Complex value);  // x canonicalized on insert
    void finalize(Int complete_up_to);
    bool finalized() const { return finalized_; }

    const std::vector<TableEntry>& entries() const { return entries_; }

    // reads with unit transport; MissingEntry past the completeness bound
    Complex lambda_at(const FieldInt& x) const;
    Complex a_at(const FieldInt& x) const;
    // value stored at a canonical rep (no transport); zero if absent
    Complex raw_at_rep(const FieldInt& rep) const;
    bool has_rep(const FieldInt& rep) const;

    CoeffTable scaled(Complex factor) const;

  private:
    Complex transported(const FieldInt& x, bool want_lambda) const;

    FieldPtr fld_;
    WeightVector weight_;
    FieldInt level_;
    Normalization norm_;
    Provenance prov_;
    GrowthClass growth_ = GrowthClass::hecke;
    Complex constant_{0.0, 0.0};
    Int bound_{0};
    bool finalized_ = false;
    std::vector<TableEntry> entries_;
    std::map<std::pair<Int, Int>, std::size_t> index_;
};

// lambda(x) = a(x) * x^{-(k-1)/2}; MissingEntry past the table bound.
Complex lambda(const CoeffTable& table, const FieldInt& x);

struct WelldefinedReport {
    double max_violation = 0.0;
    std::optional<FieldInt> worst_rep;
    int pairs_tested = 0;
};

// Checks a_f(xi u^2) = u^m a_f(xi) through the transported read path. When a
// reference evaluator is given (an independent route to a_f at arbitrary
// totally positive xi), entries are checked against it at unit translates,
// which localizes corrupted reps.
WelldefinedReport check_welldefined(
    const CoeffTable& table, int unit_powers,
    const std::function<Complex(const FieldInt&)>& reference = nullptr,
    std::size_t max_reps = 0);

struct GrowthReport {
    double sup = 0.0;
    std::optional<FieldInt> argmax;
    bool trend_flag = false;        // dyadic-block sups grow monotonically
    std::vector<double> block_sups;
};

GrowthReport growth_check(const CoeffTable& table, double exponent);

struct PlusSpaceReport {
    std::vector<FieldInt> violations;  // reps with nonzero lambda off square classes
    FieldInt unit_u;                   // the resolved u_m
    bool pass() const { return violations.empty(); }
};

// delta_k = 1 required. NoNegativeNormUnit when (-1)^m = -1 but no unit of
// norm -1 exists.
PlusSpaceReport plus_space_test(const CoeffTable& table, double tol = 1e-12);

// squares modulo 4 O_F, as residue pairs (a mod 4, b mod 4)
const std::vector<std::pair<int, int>>& squares_mod4(const FieldContext& F);
bool is_square_mod4(const FieldContext& F, const FieldInt& x);

enum class DiscStatus { fundamental, non_fundamental, out_of_scope };

struct DiscriminantCert {
    FieldInt xi;
    DiscStatus status;
};

// Restricted criterion: fundamental iff squarefree, coprime to 2 and a
// square mod 4. SquareInput if xi is a perfect square.
DiscriminantCert is_fundamental_discriminant(const FieldContext& F, const FieldInt& xi);

// ---- file format ----
// header lines:  field Q(sqrt{5}) / weight m=(2,2) delta=1 / level 4*(1)
//                complete-up-to 10000 / normalization lambda (optional)
//                constant <re> <im>   (optional)
// entry lines:   <a> <b> <re> <im>
void write_table(std::ostream& os, const CoeffTable& table);
void write_table_file(const std::string& path, const CoeffTable& table);
CoeffTable read_table(std::istream& is);
CoeffTable read_table_file(const std::string& path);

}  // namespace halfint
