// Test-local oracles, kept independent of the library code paths they check.
#pragma once

#include "halfint/field.hpp"
#include "halfint/specfun.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace testutil {

using halfint::Int;

// Kronecker symbol (a/n), textbook implementation.
inline int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int v2 = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v2;
    }
    if (v2 > 0) {
        if (a % 2 == 0) return 0;
        long long am8 = ((a % 8) + 8) % 8;
        if (v2 % 2 == 1 && (am8 == 3 || am8 == 5)) sign = -sign;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        int v = 0;
        while (a % 2 == 0) {
            a /= 2;
            ++v;
        }
        long long nm8 = n % 8;
        if (v % 2 == 1 && (nm8 == 3 || nm8 == 5)) sign = -sign;
        if (a % 4 == 3 && n % 4 == 3) sign = -sign;
        long long t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? sign : 0;
}

// Dedekind zeta coefficient a_F(n) for Q(sqrt d), d = 1 mod 4 or d = 2, from
// splitting rules decided by the Kronecker symbol of the field discriminant.
inline long long ideal_count_oracle(long long D_F, long long n) {
    long long count = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        int chi = kronecker(D_F, p);
        if (chi == 1)
            count *= e + 1;
        else if (chi == -1 && e % 2 == 1)
            return 0;
    }
    if (n > 1) {
        int chi = kronecker(D_F, n);
        if (chi == 1)
            count *= 2;
        else if (chi == -1)
            return 0;
    }
    return count;
}

// Riemann zeta via Borwein's alternating-series acceleration; good to
// ~1e-14 for moderate |Im s|. d_k = n sum_{i<=k} (n+i-1)! 4^i/((n-i)!(2i)!).
inline std::complex<double> zeta_alternating(std::complex<double> s) {
    const int n = 60;
    static std::vector<long double> d;
    if (d.empty()) {
        d.assign(n + 1, 0.0L);
        long double t = 1.0L / n;  // i = 0 term
        long double sum = t;
        d[0] = n * sum;
        for (int k = 1; k <= n; ++k) {
            // extend the inner sum by the i = k term
            t *= 4.0L * (n + k - 1) * (n - k + 1) / ((long double)(2 * k) * (2 * k - 1));
            sum += t;
            d[k] = n * sum;
        }
    }
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc += sign * (double)(d[n] - d[k]) * std::exp(-s * std::log(double(k + 1)));
    }
    std::complex<double> eta_factor = 1.0 - std::exp((1.0 - s) * std::log(2.0));
    return acc / ((double)d[n] * eta_factor);
}

// completed zeta xi(s) = pi^{-s/2} Gamma(s/2) zeta(s); the log-gamma is
// validated independently in the specfun tests
inline std::complex<double> xi_completed(std::complex<double> s) {
    return std::exp(-s / 2.0 * std::log(M_PI) + halfint::log_gamma(s / 2.0)) *
           zeta_alternating(s);
}

// adaptive Simpson quadrature for a real-interval complex integrand
inline std::complex<double> simpson(const std::function<std::complex<double>(double)>& f,
                                    double a, double b, int depth = 18,
                                    double tol = 1e-13) {
    std::function<std::complex<double>(double, double, std::complex<double>,
                                       std::complex<double>, std::complex<double>, int)>
        rec = [&](double lo, double hi, std::complex<double> flo,
                  std::complex<double> fhi, std::complex<double> fmid,
                  int d) -> std::complex<double> {
        double mid = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        std::complex<double> flm = f(lm), frm = f(rm);
        std::complex<double> whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        std::complex<double> left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        std::complex<double> right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) < tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, fmid, flm, d - 1) + rec(mid, hi, fmid, fhi, frm, d - 1);
    };
    double mid = 0.5 * (a + b);
    return rec(a, b, f(a), f(b), f(mid), depth);
}

}  // namespace testutil
