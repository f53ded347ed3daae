// The field theta series: exact Fourier coefficients, truncated pointwise
// evaluation, and numerical verification of its transformation law.
#pragma once

#include "halfint/forms.hpp"

#include <complex>
#include <vector>

namespace halfint {

struct ThetaSeries {
    CoeffTable table;   // weight m = 0, delta = 1, level 4; a(xi) in {0, 2}
    Int bound;          // complete up to this norm
};

// a(xi) = #{v in O_F : v^2 = xi} for every orbit of norm <= B; the constant
// term 1 is recorded on the table.
ThetaSeries theta_coeffs(FieldPtr field, const Int& B);

// theta_F(z) = sum over O_F of e^{pi i v^2 . z}; absolute tail error < 1e-15.
Complex theta_eval(const FieldContext& F, const std::vector<Complex>& z);

// |theta(z) - (-iz)^{-1/2} D_F^{-1/2} theta(-1/(delta^2 z))| with principal
// branches per component.
double theta_transform_check(const FieldContext& F, const std::vector<Complex>& z);

// exact square root in O_F if it exists
bool field_sqrt(const FieldContext& F, const FieldInt& x, FieldInt* root);

}  // namespace halfint
