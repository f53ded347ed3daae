#include "halfint/lfunc.hpp"

#include "halfint/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace halfint {

namespace {

Complex cpow(double base, Complex e) {
    return std::exp(e * std::log(base));  // base > 0
}

double growth_theta(GrowthClass g) { return g == GrowthClass::hecke ? 0.5 : 0.25; }

double growth_abscissa(GrowthClass g) { return g == GrowthClass::hecke ? 1.5 : 1.0; }

}  // namespace

DirichletResult dirichlet_sum(const CoeffTable& table, Complex s, const Int& B) {
    const FieldContext& F = table.field();
    double sigma = s.real();
    if (sigma <= growth_abscissa(table.growth_class()))
        throw ConvergenceDomain("Re(s) below the abscissa of the declared growth class");
    if (B > table.bound())
        throw IncompleteTable("table complete to " + table.bound().str() +
                              " < requested " + B.str());
    DirichletResult out;
    double theta = growth_theta(table.growth_class());
    double csup = 0.0;
    for (const auto& e : table.entries()) {
        if (e.norm > B) break;
        Complex lam = table.lambda_at(e.rep);
        double n = to_double(e.norm);
        out.value += lam * cpow(n, -s);
        csup = std::max(csup, std::abs(lam) / std::pow(n, theta));
    }
    if (sigma - theta > 1.3)
        out.tail_bound = std::max(csup, 1e-30) * zeta_tail_bound(F, B, sigma - theta);
    else
        out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
}

CompletedL::CompletedL(const CoeffTable* table, const CoeffTable* mirror)
    : table_(table), mirror_(mirror) {
    if (!table_) throw DomainError("null table");
    if (!mirror_) throw MissingMirror("completed L needs the W'-image table");
    if (!(table_->weight() == mirror_->weight()))
        throw DomainError("mirror weight mismatch");
}

double CompletedL::beta() const {
    const FieldContext& F = table_->field();
    double nn = to_double(table_->level_norm());
    return std::pow(2.0, F.degree) / (to_double(F.disc) * std::sqrt(nn));
}

// One incomplete-gamma sum  sum_xi a(xi) (c pi xi)^{-e} Gamma(e, c pi xi beta)
// (degree 1 only).
Complex CompletedL::half_integral_piece(const CoeffTable& tab, Complex e,
                                        bool /*mirror_side*/) const {
    double c = 2.0 - tab.weight().delta;
    double b = beta();
    double maxa = 1.0;
    for (const auto& en : tab.entries()) maxa = std::max(maxa, std::abs(en.value));
    double cutoff = (52.0 + std::log(maxa)) / (c * M_PI * b);
    if (to_double(tab.bound()) < cutoff && !tab.entries().empty()) {
        double top = to_double(tab.entries().back().norm);
        if (top < cutoff)
            throw IncompleteTable("completed L needs coefficients up to about " +
                                  std::to_string(static_cast<long long>(cutoff)));
    }
    Complex sum(0.0, 0.0);
    for (const auto& en : tab.entries()) {
        double xi = to_double(en.norm);  // degree 1: the element equals its norm
        if (xi > cutoff) break;
        Complex a = tab.a_at(en.rep);
        if (a == Complex(0.0, 0.0)) continue;
        double x = c * M_PI * xi * b;
        sum += a * cpow(c * M_PI * xi, -e) * gamma_upper(e, x);
    }
    return sum;
}

// 2-D cone quadrature for degree 2: integral over u in [0, U0), t in
// [sqrt(beta), Tmax) of f(iy) y^exps with y = (t e^u, t e^{-u}),
// measure 2 dt/t du.
Complex CompletedL::quadrature_piece(const CoeffTable& tab,
                                     const std::vector<Complex>& exps) const {
    const FieldContext& F = tab.field();
    double c = 2.0 - tab.weight().delta;
    double b = beta();
    double sqb = std::sqrt(b);
    auto epl = F.embed_d(F.eps_plus);
    double U0 = 0.5 * std::log(epl[0] / epl[1]);

    double maxa = 1.0;
    for (const auto& en : tab.entries()) maxa = std::max(maxa, std::abs(en.value));
    double X = (52.0 + std::log(maxa)) / (c * M_PI);

    // element list with transported coefficients
    double s1max = X / sqb;
    double s2max = X * std::exp(U0) / sqb;
    double needed = (X * X / 4.0) / b;
    if (to_double(tab.bound()) < needed)
        throw IncompleteTable("completed L needs coefficients up to about " +
                              std::to_string(static_cast<long long>(needed)));
    struct Pt {
        double s1, s2;
        Complex a;
    };
    std::vector<Pt> pts;
    {
        double w1 = F.omega1_d, w2 = F.omega2_d;
        double sq = w1 - w2;
        long long bmax = static_cast<long long>((s1max + s2max) / sq) + 2;
        for (long long bb = -bmax; bb <= bmax; ++bb) {
            double lo = std::max(0.0 - bb * w1, 0.0 - bb * w2);
            double hi = std::min(s1max - bb * w1, s2max - bb * w2);
            for (long long aa = static_cast<long long>(std::floor(lo)) - 1;
                 aa <= static_cast<long long>(std::ceil(hi)) + 1; ++aa) {
                FieldInt xi{aa, bb};
                if (xi.is_zero()) continue;
                double e1 = aa + bb * w1, e2 = aa + bb * w2;
                if (e1 <= 0 || e2 <= 0 || e1 > s1max || e2 > s2max) continue;
                if (e1 * e2 > needed) continue;
                Complex a = tab.a_at(xi);
                if (a == Complex(0.0, 0.0)) continue;
                pts.push_back({e1, e2, a});
            }
        }
        std::sort(pts.begin(), pts.end(),
                  [](const Pt& x, const Pt& y) { return x.s1 + x.s2 < y.s1 + y.s2; });
    }

    double tmax = std::max(2.0 * sqb, 30.0 / (c * M_PI));
    Complex p_t = exps[0] + exps[1];        // exponent of t
    double p_u = (exps[0] - exps[1]).real();  // K1-K2, real

    auto fval = [&](double t, double u) -> Complex {
        double y1 = t * std::exp(u), y2 = t * std::exp(-u);
        Complex sum(0.0, 0.0);
        double break_at = (52.0 + std::log(maxa)) / (c * M_PI * t * std::exp(-U0));
        for (const auto& pt : pts) {
            if (pt.s1 + pt.s2 > break_at) break;
            double expo = -c * M_PI * (pt.s1 * y1 + pt.s2 * y2);
            if (expo < -746.0) continue;
            sum += pt.a * std::exp(expo);
        }
        return sum;
    };

    int un = 48;
    std::vector<Complex> uvals(un);
    const auto& unodes = gauss_legendre(un);
    parallel_for(un, [&](std::size_t i) {
        double u = 0.5 * U0 * (unodes[i].x + 1.0);
        Complex inner = integrate_tanh_sinh(
            [&](double t) { return 2.0 * fval(t, u) * std::exp((p_t - 1.0) * std::log(t)); },
            sqb, tmax, 1e-12);
        uvals[i] = inner * std::exp(p_u * u);
    });
    Complex total(0.0, 0.0);
    for (int i = 0; i < un; ++i) total += unodes[i].w * uvals[i];
    return 0.5 * U0 * total;
}

Complex CompletedL::value(Complex s) const {
    const FieldContext& F = table_->field();
    int r = F.degree;
    auto K = table_->weight().half_shifts();
    double sumK = 0.0;
    for (double k : K) sumK += k;
    double b = beta();

    // W(s) = prod_i (2/(delta_i sqrt(n_i)))^{2s-1}
    auto de = F.embed_d(F.delta);
    auto ne = F.embed_d(table_->level());
    Complex W(1.0, 0.0);
    for (int i = 0; i < r; ++i) W *= cpow(2.0 / (de[i] * std::sqrt(ne[i])), 2.0 * s - 1.0);

    Complex a0 = table_->constant_term();
    Complex a0m = mirror_->constant_term();

    Complex I;
    if (r == 1) {
        Complex e1 = s + K[0];
        Complex e2 = (table_->weight().k(0) + 1.0) / 2.0 - s;
        Complex A = half_integral_piece(*table_, e1, false);
        Complex Am = half_integral_piece(*mirror_, e2, true);
        I = A + W * Am;
        if (a0 != Complex(0.0, 0.0)) I -= a0 * cpow(b, e1) / e1;
        if (a0m != Complex(0.0, 0.0)) I += a0m * W * cpow(b, e2) / (-e2);
    } else {
        std::vector<Complex> e1 = {s + K[0], s + K[1]};
        std::vector<Complex> e2 = {(table_->weight().k(0) + 1.0) / 2.0 - s,
                                   (table_->weight().k(1) + 1.0) / 2.0 - s};
        Complex A = quadrature_piece(*table_, e1);
        Complex Am = quadrature_piece(*mirror_, e2);
        I = A + W * Am;
        auto epl = F.embed_d(F.eps_plus);
        double U0 = 0.5 * std::log(epl[0] / epl[1]);
        double dK = K[0] - K[1];
        double CU = std::abs(dK) < 1e-15 ? U0 : (std::exp(U0 * dK) - 1.0) / dK;
        if (a0 != Complex(0.0, 0.0)) {
            Complex p = e1[0] + e1[1];
            I -= a0 * CU * 2.0 * cpow(b, p / 2.0) / p;
        }
        if (a0m != Complex(0.0, 0.0)) {
            Complex p = e2[0] + e2[1];
            I += a0m * W * CU * 2.0 * cpow(b, p / 2.0) / (-p);
        }
    }

    double nn = to_double(table_->level_norm());
    Complex pref = std::pow(2.0, sumK) * cpow(to_double(F.disc), s) *
                   cpow(std::sqrt(nn) / std::pow(2.0, r), s);
    return pref * I;
}

Complex CompletedL::value_series(Complex s, const Int& B) const {
    const FieldContext& F = table_->field();
    int r = F.degree;
    auto K = table_->weight().half_shifts();
    double sumK = 0.0;
    for (double k : K) sumK += k;
    double c = 2.0 - table_->weight().delta;
    DirichletResult L = dirichlet_sum(*table_, s, B);
    Complex gam(0.0, 0.0);
    for (double k : K) gam += log_gamma(s + k);
    double nn = to_double(table_->level_norm());
    Complex pref = std::pow(2.0, sumK) * cpow(to_double(F.disc), s) *
                   cpow(std::sqrt(nn) / std::pow(2.0, r), s) *
                   cpow(c * M_PI, -static_cast<double>(r) * s - sumK);
    return pref * std::exp(gam) * L.value;
}

double functional_eq_residual(const CompletedL& f, const CompletedL& f_mirror, Complex s) {
    // In the absolutely convergent region the left side comes from the
    // series pathway, which is independent of the mirror data; outside it
    // both sides use the split integral.
    Complex lhs;
    double abscissa = growth_abscissa(f.table().growth_class());
    if (s.real() > abscissa + 0.4) {
        lhs = f.value_series(s, f.table().bound());
    } else {
        lhs = f.value(s);
    }
    return std::abs(lhs - f_mirror.value(1.0 - s));
}

namespace {

CRatioReport finish_ratio_report(CRatioReport rep) {
    Complex sum(0.0, 0.0);
    int n = 0;
    for (const auto& p : rep.points) {
        if (p.zero_denominator) continue;
        sum += p.value;
        ++n;
    }
    if (n == 0) return rep;
    rep.mean = sum / static_cast<double>(n);
    for (const auto& p : rep.points) {
        if (p.zero_denominator) continue;
        rep.max_deviation = std::max(rep.max_deviation, std::abs(p.value - rep.mean));
    }
    rep.constant_verdict =
        rep.max_deviation <= rep.tolerance * std::max(1e-300, std::abs(rep.mean));
    return rep;
}

}  // namespace

CRatioReport c_ratio(const CoeffTable& f, const CoeffTable& g,
                     const std::vector<Complex>& grid, const Int& B) {
    CRatioReport rep;
    CompletedL cf(&f, &f), cg(&g, &g);  // series pathway only; mirror unused
    for (Complex s : grid) {
        if (s.real() < 1.5) throw ConvergenceDomain("c_ratio grid needs Re(s) >= 3/2");
        CRatioPoint pt;
        pt.s = s;
        Complex num = cf.value_series(s, B);
        Complex den = cg.value_series(s, B);
        if (std::abs(den) < 1e-280 * (1.0 + std::abs(num))) {
            pt.zero_denominator = true;
        } else {
            pt.value = num / den;
        }
        rep.points.push_back(pt);
    }
    return finish_ratio_report(rep);
}

CRatioReport c_ratio_eigen(const EigenSystem& f, const EigenSystem& g, double level_f,
                           double level_g, const std::vector<Complex>& grid,
                           const Int& B) {
    CRatioReport rep;
    for (Complex s : grid) {
        if (s.real() < 1.5) throw ConvergenceDomain("c_ratio grid needs Re(s) >= 3/2");
        CRatioPoint pt;
        pt.s = s;
        Complex num = eigen_dirichlet_sum(f, 2.0 * s, B);
        Complex den = eigen_dirichlet_sum(g, 2.0 * s, B);
        if (std::abs(den) < 1e-280 * (1.0 + std::abs(num))) {
            pt.zero_denominator = true;
        } else {
            pt.value = cpow(level_f / level_g, s / 2.0) * num / den;
        }
        rep.points.push_back(pt);
    }
    return finish_ratio_report(rep);
}

DuplicationReport gamma_duplication_check(const std::vector<int>& m,
                                          const std::vector<int>& n,
                                          const std::vector<Complex>& grid) {
    if (m.size() != n.size()) throw DomainError("weight vectors differ in length");
    DuplicationReport rep;
    auto near_pole = [](Complex z) {
        double re = z.real();
        return std::abs(z.imag()) < 1e-9 && re <= 0.5 &&
               std::abs(re - std::round(re)) < 1e-9 && std::round(re) <= 0.0;
    };
    for (Complex s : grid) {
        bool pole = false;
        for (std::size_t i = 0; i < m.size(); ++i) {
            Complex args[] = {(2.0 * s + (m[i] - 0.5)) / 2.0,
                              (2.0 * s + (n[i] - 0.5)) / 2.0,
                              (2.0 * s + (n[i] + 0.5)) / 2.0,
                              (2.0 * s + (m[i] + 0.5)) / 2.0,
                              2.0 * s + (m[i] - 0.5),
                              2.0 * s + (n[i] - 0.5)};
            for (Complex a : args) pole = pole || near_pole(a);
        }
        if (pole) {
            rep.excluded.push_back(s);
            continue;
        }
        Complex llhs(0.0, 0.0), lrhs(0.0, 0.0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            llhs += log_gamma((2.0 * s + (m[i] - 0.5)) / 2.0) -
                    log_gamma((2.0 * s + (n[i] - 0.5)) / 2.0);
            lrhs += std::log(2.0) * static_cast<double>(n[i] - m[i]);
            lrhs += log_gamma((2.0 * s + (n[i] + 0.5)) / 2.0) -
                    log_gamma((2.0 * s + (m[i] + 0.5)) / 2.0);
            lrhs += log_gamma(2.0 * s + (m[i] - 0.5)) - log_gamma(2.0 * s + (n[i] - 0.5));
        }
        Complex lhs = std::exp(llhs), rhs = std::exp(lrhs);
        double resid = std::abs(lhs - rhs) / std::max(1e-300, std::abs(lhs));
        rep.max_residual = std::max(rep.max_residual, resid);
    }
    return rep;
}

DetermineReport determine(const CoeffTable& f, const CoeffTable& g, const Int& B,
                          bool plus_space, double rel_tol) {
    const FieldContext& F = f.field();
    if (f.bound() < B || g.bound() < B)
        throw IncompleteTable("both tables must be complete to the comparison bound");
    if (plus_space && f.weight().sum_m() % 2 != 0)
        throw DomainError("plus-space determination implemented for u_m = 1 only");

    double scale = 1e-300;
    for (const auto& e : f.entries()) scale = std::max(scale, std::abs(e.value));
    for (const auto& e : g.entries()) scale = std::max(scale, std::abs(e.value));
    double zero_tol = 1e-13 * scale;

    DetermineReport rep;
    bool have_kappa = false;
    auto reps = enumerate_reps(F, B);

    for (const auto& r : reps) {
        auto fact = factor(F, r.value);
        if (!fact.is_squarefree()) continue;
        if (plus_space) {
            auto [sq, root] = squarefree_decompose(F, fact);
            (void)root;
            if (F.is_unit(sq)) continue;  // perfect squares are not discriminants
            if (is_fundamental_discriminant(F, r.value).status != DiscStatus::fundamental)
                continue;
        }
        Complex lf = f.lambda_at(r.value), lg = g.lambda_at(r.value);
        if (!have_kappa) {
            if (std::abs(lf) > zero_tol && std::abs(lg) > zero_tol) {
                rep.kappa = lf / lg;
                have_kappa = true;
            } else if (std::abs(lf) > zero_tol || std::abs(lg) > zero_tol) {
                // one side vanishes where the other does not
                rep.max_sqfree_violation = 1.0;
                rep.witness = r.value;
                rep.verdict = DetermineVerdict::disagree;
                return rep;
            }
            continue;
        }
        double viol = std::abs(lf - rep.kappa * lg) /
                      std::max({1.0, std::abs(lf), std::abs(rep.kappa * lg)});
        if (viol > rep.max_sqfree_violation) {
            rep.max_sqfree_violation = viol;
            if (viol > rel_tol && !rep.witness) rep.witness = r.value;
        }
    }
    if (!have_kappa) throw AllZeroOnSqfree("no squarefree rep with both tables nonzero");
    if (rep.max_sqfree_violation > rel_tol) {
        rep.verdict = DetermineVerdict::disagree;
        return rep;
    }

    rep.witness.reset();
    for (const auto& r : reps) {
        Complex lf = f.lambda_at(r.value), lg = g.lambda_at(r.value);
        double viol = std::abs(lf - rep.kappa * lg) /
                      std::max({1.0, std::abs(lf), std::abs(rep.kappa * lg)});
        if (viol > rep.max_full_violation) {
            rep.max_full_violation = viol;
            if (viol > rel_tol && !rep.witness) rep.witness = r.value;
        }
    }
    rep.verdict = rep.max_full_violation <= rel_tol
                      ? DetermineVerdict::equal
                      : DetermineVerdict::sqfree_agree_full_disagree;
    return rep;
}

}  // namespace halfint
