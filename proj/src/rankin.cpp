#include "halfint/rankin.hpp"

#include <algorithm>
#include <cmath>

namespace halfint {

PartialSumSeries rs_partial_sums(const CoeffTable& f, const CoeffTable& g,
                                 std::vector<Int> checkpoints,
                                 bool squarefree_restricted) {
    std::sort(checkpoints.begin(), checkpoints.end());
    if (checkpoints.empty()) throw DomainError("no checkpoints");
    if (f.bound() < checkpoints.back() || g.bound() < checkpoints.back())
        throw IncompleteTable("tables must be complete to the last checkpoint");

    const FieldContext& F = f.field();
    PartialSumSeries out;
    out.checkpoints = checkpoints;
    out.values.assign(checkpoints.size(), Complex(0.0, 0.0));
    out.squarefree_restricted = squarefree_restricted;

    // march through f's entries in norm order and fold g in; entries absent
    // from either table contribute zero
    Complex running(0.0, 0.0);
    std::size_t ci = 0;
    for (const auto& e : f.entries()) {
        if (e.norm > checkpoints.back()) break;
        while (ci < checkpoints.size() && e.norm > checkpoints[ci]) {
            out.values[ci] = running;
            ++ci;
        }
        if (squarefree_restricted && !is_squarefree(F, e.rep)) continue;
        Complex lf = f.lambda_at(e.rep);
        if (lf == Complex(0.0, 0.0)) continue;
        Complex lg = (&f == &g) ? lf : g.lambda_at(e.rep);
        running += lf * std::conj(lg);
    }
    while (ci < checkpoints.size()) out.values[ci++] = running;
    return out;
}

GrowthFit linear_growth_fit(const PartialSumSeries& series) {
    GrowthFit fit;
    if (series.checkpoints.size() < 4)
        throw DomainError("linear growth fit needs at least 4 checkpoints");
    double first = to_double(series.checkpoints.front());
    double last = to_double(series.checkpoints.back());
    if (last < 8.0 * first)
        throw DomainError("checkpoints must span a factor of at least 8");

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
        double t = to_double(series.checkpoints[i]);
        double s = series.values[i].real();
        num += s * t;
        den += t * t;
    }
    fit.slope = num / den;
    for (std::size_t i = 0; i < series.checkpoints.size(); ++i) {
        double t = to_double(series.checkpoints[i]);
        double s = series.values[i].real();
        double pred = fit.slope * t;
        double dev = std::abs(s - pred) / std::max(1e-300, std::abs(pred));
        fit.max_relative_deviation = std::max(fit.max_relative_deviation, dev);
    }
    // sublinear data fits a through-origin line badly and its dyadic ratios
    // S(2T)/S(T) sit well below 2
    if (fit.max_relative_deviation > 0.5) {
        double r = series.values.back().real() /
                   std::max(1e-300, series.values.front().real());
        double tr = to_double(series.checkpoints.back()) /
                    to_double(series.checkpoints.front());
        fit.sublinear_flag = r < 0.5 * tr;
    }
    return fit;
}

AbscissaReport abscissa_bound_check(const CoeffTable& f, double sigma, const Int& tmax) {
    if (f.bound() < tmax) throw IncompleteTable("table shorter than tmax");
    AbscissaReport rep;
    std::vector<Int> lows;
    for (Int t = 1; 2 * t <= tmax; t *= 2) lows.push_back(t);
    if (lows.empty()) return rep;
    std::vector<double> sums(lows.size(), 0.0);
    for (const auto& e : f.entries()) {
        if (e.norm > tmax) break;
        double lam = std::abs(f.lambda_at(e.rep));
        if (lam == 0.0) continue;
        double n = to_double(e.norm);
        for (std::size_t i = 0; i < lows.size(); ++i) {
            if (e.norm >= lows[i] && e.norm <= 2 * lows[i])
                sums[i] += lam / std::pow(n, sigma);
        }
    }
    for (std::size_t i = 0; i < lows.size(); ++i)
        rep.ratios.push_back(sums[i] / std::pow(to_double(lows[i]), 1.0 - sigma));
    // flag steady growth over the last blocks
    if (rep.ratios.size() >= 4) {
        bool growing = true;
        for (std::size_t i = rep.ratios.size() - 3; i < rep.ratios.size(); ++i)
            if (rep.ratios[i] <= rep.ratios[i - 1] * 1.1) growing = false;
        rep.unbounded_flag = growing && rep.ratios.back() > 4.0 * rep.ratios.front();
    }
    return rep;
}

ScanReport nonvanishing_scan(const CoeffTable& f, const std::vector<Int>& t_grid) {
    const FieldContext& F = f.field();
    ScanReport rep;
    Int tmax(0);
    for (const auto& t : t_grid) tmax = std::max(tmax, t);
    if (f.bound() < tmax) throw IncompleteTable("table shorter than the scan grid");

    bool any_nonzero = false;
    for (const auto& e : f.entries())
        if (std::abs(e.value) > 0) any_nonzero = true;

    for (const auto& T : t_grid) {
        ScanPoint pt;
        pt.T = T;
        double lo = std::log(std::max(2.0, to_double(T)));
        for (const auto& e : f.entries()) {
            if (e.norm > T) break;
            if (to_double(e.norm) < lo) continue;
            if (!is_squarefree(F, e.rep)) continue;
            double v = std::abs(f.lambda_at(e.rep));
            if (v > pt.sup) {
                pt.sup = v;
                pt.argmax = e.rep;
            }
        }
        rep.points.push_back(pt);
    }
    std::vector<double> sups;
    for (const auto& p : rep.points) sups.push_back(p.sup);
    std::sort(sups.begin(), sups.end());
    double median = sups.empty() ? 0.0 : sups[sups.size() / 2];
    rep.c0 = 0.5 * median;
    rep.nonvanishing_verdict = rep.c0 > 0;
    for (const auto& p : rep.points)
        if (p.sup < rep.c0) rep.nonvanishing_verdict = false;
    bool all_zero = true;
    for (const auto& p : rep.points)
        if (p.sup > 0) all_zero = false;
    rep.inconsistent_flag = all_zero && any_nonzero;
    return rep;
}

}  // namespace halfint
