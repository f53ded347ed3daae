#include "halfint/theta.hpp"

#include <cmath>

namespace halfint {

bool field_sqrt(const FieldContext& F, const FieldInt& x, FieldInt* root) {
    if (F.degree == 1) {
        Int r;
        if (x.a >= 0 && is_perfect_square(x.a, &r)) {
            if (root) *root = FieldInt{r, 0};
            return true;
        }
        return false;
    }
    if (!F.is_totally_positive(x)) {
        if (x.is_zero()) {
            if (root) *root = FieldInt(0);
            return true;
        }
        return false;
    }
    // candidate sigma(v) = (eps1 * sqrt(sigma1 x), eps2 * sqrt(sigma2 x)) for
    // sign pairs (+,+) and (+,-); recover integer coordinates and verify.
    auto s = F.embed(x);
    BigFloat r1 = sqrt(s[0]), r2 = sqrt(s[1]);
    BigFloat wdiff = F.omega1_bf - F.omega2_bf;  // = sqrt(disc of omega poly)
    for (int sgn = -1; sgn <= 1; sgn += 2) {
        BigFloat v1 = r1, v2 = sgn * r2;
        BigFloat bb = (v1 - v2) / wdiff;
        BigFloat aa = v1 - bb * F.omega1_bf;
        Int ai = boost::multiprecision::round(aa).convert_to<Int>();
        Int bi = boost::multiprecision::round(bb).convert_to<Int>();
        FieldInt cand{ai, bi};
        if (F.mul(cand, cand) == x) {
            if (root) *root = cand;
            return true;
        }
    }
    return false;
}

ThetaSeries theta_coeffs(FieldPtr field, const Int& B) {
    if (B < 1) throw DomainError("theta bound must be >= 1");
    const FieldContext& F = *field;
    WeightVector w;
    w.m.assign(F.degree, 0);
    w.delta = 1;
    CoeffTable table(field, w, FieldInt(4), Normalization::fourier_a,
                     Provenance::theta_derived);
    table.set_constant_term(Complex(1.0, 0.0));
    for (const auto& rep : enumerate_reps(F, B)) {
        FieldInt root;
        if (field_sqrt(F, rep.value, &root)) table.set(rep.value, Complex(2.0, 0.0));
    }
    table.finalize(B);
    return {std::move(table), B};
}

namespace {

void require_upper_half(const std::vector<Complex>& z, int degree) {
    if (static_cast<int>(z.size()) != degree)
        throw DomainError("z has wrong number of components");
    for (const auto& c : z)
        if (!(c.imag() > 0)) throw NotInUpperHalfPlane("Im(z_i) must be positive");
}

}  // namespace

Complex theta_eval(const FieldContext& F, const std::vector<Complex>& z) {
    require_upper_half(z, F.degree);
    // truncation: e^{-pi ymin R^2} (2R+1)^r < 1e-16
    double ymin = z[0].imag();
    for (const auto& c : z) ymin = std::min(ymin, c.imag());
    double R = 1.0;
    for (; R < 1e6; R += 1.0) {
        if (std::exp(-M_PI * ymin * R * R) * std::pow(2 * R + 1, F.degree) < 1e-16) break;
    }

    if (F.degree == 1) {
        Complex sum(1.0, 0.0);
        long long vmax = static_cast<long long>(R) + 1;
        for (long long v = 1; v <= vmax; ++v) {
            Complex term = std::exp(Complex(0, M_PI) * (double)(v * v) * z[0]);
            sum += 2.0 * term;
        }
        return sum;
    }
    // lattice scan: v = a + b omega with sigma1(v)^2 y1 + sigma2(v)^2 y2 small
    double y1 = z[0].imag(), y2 = z[1].imag();
    double R1 = std::sqrt((R * R * ymin) / y1) + 1;
    double R2 = std::sqrt((R * R * ymin) / y2) + 1;
    double w1 = F.omega1_d, w2 = F.omega2_d;
    double sq = w1 - w2;
    long long bmax = static_cast<long long>((R1 + R2) / sq) + 2;
    Complex sum(0.0, 0.0);
    for (long long b = -bmax; b <= bmax; ++b) {
        // |a + b w1| <= R1 and |a + b w2| <= R2
        double lo = std::max(-R1 - b * w1, -R2 - b * w2);
        double hi = std::min(R1 - b * w1, R2 - b * w2);
        for (long long a = static_cast<long long>(std::floor(lo));
             a <= static_cast<long long>(std::ceil(hi)); ++a) {
            double s1 = a + b * w1, s2 = a + b * w2;
            double decay = M_PI * (s1 * s1 * y1 + s2 * s2 * y2);
            if (decay > 45.0) continue;
            Complex expo = Complex(0, M_PI) * (s1 * s1 * z[0] + s2 * s2 * z[1]);
            sum += std::exp(expo);
        }
    }
    return sum;
}

double theta_transform_check(const FieldContext& F, const std::vector<Complex>& z) {
    require_upper_half(z, F.degree);
    Complex lhs = theta_eval(F, z);

    auto delta_emb = F.embed_d(F.delta);
    std::vector<Complex> zt(F.degree);
    Complex prefactor(1.0, 0.0);
    for (int i = 0; i < F.degree; ++i) {
        double d2 = delta_emb[i] * delta_emb[i];
        zt[i] = -1.0 / (d2 * z[i]);
        // principal branch of (-i z_i)^{-1/2}
        prefactor *= std::exp(-0.5 * std::log(Complex(0, -1) * z[i]));
    }
    prefactor /= std::sqrt(to_double(F.disc));
    Complex rhs = prefactor * theta_eval(F, zt);
    return std::abs(lhs - rhs);
}

}  // namespace halfint
