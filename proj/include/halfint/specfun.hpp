// Special functions and quadrature used by the L-function machinery.
#pragma once

#include "halfint/numbers.hpp"

#include <functional>
#include <vector>

namespace halfint {

// log Gamma(z), principal branch, Lanczos approximation (g = 7). Relative
// accuracy around 1e-14 away from the poles.
Complex log_gamma(Complex z);
Complex gamma_fn(Complex z);

// upper incomplete gamma Gamma(a, x) for complex a and real x > 0
Complex gamma_upper(Complex a, double x);

struct QuadNode {
    double x;
    double w;
};

// Gauss-Legendre nodes and weights on [-1, 1].
const std::vector<QuadNode>& gauss_legendre(int n);

// integral of f over [a, b] by fixed-order Gauss-Legendre
Complex integrate_gl(const std::function<Complex(double)>& f, double a, double b, int n);

// adaptive tanh-sinh on [a, b]; doubles the level until the change is below
// tol * (1 + |I|) or the level cap is hit. est_error reports the last change.
Complex integrate_tanh_sinh(const std::function<Complex(double)>& f, double a, double b,
                            double tol, double* est_error = nullptr);

}  // namespace halfint
