#include "halfint/specfun.hpp"

#include "halfint/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace halfint {

namespace {

// Lanczos g=7, n=9 coefficient set
const double kLanczos[] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

Complex log_gamma(Complex z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(M_PI) - std::log(std::sin(M_PI * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    Complex t = z + 7.5;
    return 0.5 * std::log(2 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex gamma_fn(Complex z) { return std::exp(log_gamma(z)); }

namespace {

// continued fraction for Gamma(a, x), valid when x is not much smaller than
// |a|; modified Lentz
Complex gamma_upper_cf(Complex a, double x) {
    const double tiny = 1e-300;
    Complex b = x + 1.0 - a;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i <= 400; ++i) {
        Complex an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        Complex del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

}  // namespace

Complex gamma_upper(Complex a, double x) {
    if (!(x > 0)) throw DomainError("gamma_upper needs x > 0");
    // bring Re(a) below x + 1, then recurse upward:
    //   Gamma(a+1, x) = a Gamma(a, x) + x^a e^{-x}
    int k = 0;
    Complex a0 = a;
    while (a0.real() > x + 1.0 && k < 200) {
        a0 -= 1.0;
        ++k;
    }
    Complex g = gamma_upper_cf(a0, x);
    for (int i = 0; i < k; ++i) {
        g = a0 * g + std::exp(-x + a0 * std::log(x));
        a0 += 1.0;
    }
    return g;
}

const std::vector<QuadNode>& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<QuadNode>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<QuadNode> nodes(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev estimate
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = {-x, w};
        nodes[n - 1 - i] = {x, w};
    }
    auto [pos, ok] = cache.emplace(n, std::move(nodes));
    (void)ok;
    return pos->second;
}

Complex integrate_gl(const std::function<Complex(double)>& f, double a, double b, int n) {
    const auto& nodes = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Complex sum(0.0, 0.0);
    for (const auto& nd : nodes) sum += nd.w * f(mid + half * nd.x);
    return half * sum;
}

Complex integrate_tanh_sinh(const std::function<Complex(double)>& f, double a, double b,
                            double tol, double* est_error) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double tmax = 3.6;  // abscissas collapse to the endpoints beyond this
    Complex prev(0.0, 0.0);
    Complex result(0.0, 0.0);
    double err = 0.0;
    // level 0 uses step h = tmax/4 so refinement starts dense enough
    for (int level = 0; level <= 10; ++level) {
        double h = tmax / (4 << level);
        Complex sum(0.0, 0.0);
        long long kmax = static_cast<long long>(tmax / h);
        for (long long k = -kmax; k <= kmax; ++k) {
            // on refinement only odd multiples are new, but recompute all for
            // simplicity at these sizes
            double t = k * h;
            double st = std::sinh(t);
            double x = std::tanh(0.5 * M_PI * st);
            double w = 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(0.5 * M_PI * st), 2);
            double xx = mid + half * x;
            if (xx <= a || xx >= b) continue;
            sum += w * f(xx);
        }
        result = sum * half * h;
        if (level > 1) {
            err = std::abs(result - prev);
            if (err < tol * (1.0 + std::abs(result))) break;
        }
        prev = result;
    }
    if (est_error) *est_error = err;
    return result;
}

}  // namespace halfint
