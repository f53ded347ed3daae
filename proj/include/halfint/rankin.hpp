// Rankin-Selberg partial sums, the linear-growth estimate, the dyadic
// abscissa diagnostic, and the squarefree non-vanishing scan.
#pragma once

#include "halfint/forms.hpp"
#include "halfint/shimura.hpp"

#include <optional>
#include <vector>

namespace halfint {

struct PartialSumSeries {
    std::vector<Int> checkpoints;        // increasing
    std::vector<Complex> values;         // S(T_j) = sum_{N <= T_j} lam_f conj(lam_g)
    bool squarefree_restricted = false;
};

// Exact partial sums of lambda_f conj(lambda_g) at the checkpoints.
// Deterministic block-wise accumulation; IncompleteTable when a table is
// shorter than the last checkpoint.
PartialSumSeries rs_partial_sums(const CoeffTable& f, const CoeffTable& g,
                                 std::vector<Int> checkpoints,
                                 bool squarefree_restricted = false);

struct GrowthFit {
    double slope = 0.0;                 // least squares through the origin
    double max_relative_deviation = 0.0;
    bool sublinear_flag = false;        // deviations large and shrinking ratios
};

// Needs >= 4 checkpoints spanning a factor >= 8.
GrowthFit linear_growth_fit(const PartialSumSeries& series);

struct AbscissaReport {
    std::vector<double> ratios;  // per dyadic block: sum / T^{1-sigma}
    bool unbounded_flag = false;
};

// ratio of sum_{T <= N(xi) <= 2T} |lambda(xi)| / N(xi)^sigma against T^{1-sigma}
// across dyadic blocks up to tmax.
AbscissaReport abscissa_bound_check(const CoeffTable& f, double sigma, const Int& tmax);

struct ScanPoint {
    Int T;
    double sup = 0.0;       // sup |lambda(tau)| over squarefree tau in [log T, T]
    std::optional<FieldInt> argmax;
};

struct ScanReport {
    std::vector<ScanPoint> points;
    double c0 = 0.0;        // fitted floor: half the median of the sups
    bool nonvanishing_verdict = false;
    bool inconsistent_flag = false;  // vanishes on squarefree reps but not identically
};

ScanReport nonvanishing_scan(const CoeffTable& f, const std::vector<Int>& t_grid);

}  // namespace halfint
