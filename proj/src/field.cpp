#include "halfint/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace halfint {

namespace {

constexpr long long kSupportedD[] = {2, 5, 13, 17, 29};

bool supported_d(long long d) {
    for (long long s : kSupportedD)
        if (s == d) return true;
    return false;
}

// Fundamental solution of x^2 - d y^2 = ±1 by the continued fraction of
// sqrt(d). Exact integer recurrence.
void pell_fundamental(long long d, Int& x, Int& y) {
    Int a0 = boost::multiprecision::sqrt(Int(d));
    Int m = 0, dd = 1, a = a0;
    Int p_prev = 1, p = a0;
    Int q_prev = 0, q = 1;
    for (int iter = 0; iter < 10000; ++iter) {
        if (p * p - d * q * q == 1 || p * p - d * q * q == -1) {
            x = p;
            y = q;
            return;
        }
        m = dd * a - m;
        dd = (d - m * m) / dd;
        a = (a0 + m) / dd;
        Int pn = a * p + p_prev;
        Int qn = a * q + q_prev;
        p_prev = p;
        p = pn;
        q_prev = q;
        q = qn;
    }
    throw Error("continued fraction of sqrt(d) did not terminate");
}

int env_precision_override() {
    if (const char* s = std::getenv("HALFINT_PRECISION")) {
        int v = std::atoi(s);
        if (v >= 16 && v <= 150) return v;
    }
    return 0;
}

}  // namespace

FieldInt FieldContext::mul(const FieldInt& x, const FieldInt& y) const {
    if (degree == 1) return {x.a * y.a, 0};
    // (a1 + b1 w)(a2 + b2 w), w^2 = t w + n
    Int bb = x.b * y.b;
    return {x.a * y.a + omega_n * bb, x.a * y.b + x.b * y.a + omega_t * bb};
}

FieldInt FieldContext::conj(const FieldInt& x) const {
    if (degree == 1) return x;
    return {x.a + omega_t * x.b, -x.b};
}

FieldInt FieldContext::pow(FieldInt x, unsigned e) const {
    FieldInt r(1);
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

FieldInt FieldContext::div_int(const FieldInt& x, const Int& c) const {
    if (c == 0) throw DomainError("division by zero");
    if (x.a % c != 0 || x.b % c != 0) throw DomainError("non-integral division");
    return {x.a / c, x.b / c};
}

bool FieldContext::divides(const FieldInt& y, const FieldInt& x) const {
    if (y.is_zero()) return x.is_zero();
    if (degree == 1) return x.a % y.a == 0;
    Int n = norm(y);
    FieldInt z = mul(x, conj(y));
    return z.a % n == 0 && z.b % n == 0;
}

FieldInt FieldContext::div_exact(const FieldInt& x, const FieldInt& y) const {
    if (y.is_zero()) throw DomainError("division by zero");
    if (degree == 1) {
        if (x.a % y.a != 0) throw DomainError("non-exact division");
        return {x.a / y.a, 0};
    }
    Int n = norm(y);
    FieldInt z = mul(x, conj(y));
    if (z.a % n != 0 || z.b % n != 0) throw DomainError("non-exact division");
    return {z.a / n, z.b / n};
}

Int FieldContext::norm(const FieldInt& x) const {
    if (degree == 1) return x.a;
    return x.a * x.a + Int(omega_t) * x.a * x.b - Int(omega_n) * x.b * x.b;
}

Int FieldContext::trace(const FieldInt& x) const {
    if (degree == 1) return x.a;
    return 2 * x.a + Int(omega_t) * x.b;
}

std::array<BigFloat, 2> FieldContext::embed(const FieldInt& x) const {
    BigFloat a = to_bigfloat(x.a);
    if (degree == 1) return {a, a};
    BigFloat b = to_bigfloat(x.b);
    return {a + b * omega1_bf, a + b * omega2_bf};
}

std::array<double, 2> FieldContext::embed_d(const FieldInt& x) const {
    double a = to_double(x.a);
    if (degree == 1) return {a, a};
    double b = to_double(x.b);
    return {a + b * omega1_d, a + b * omega2_d};
}

bool FieldContext::is_totally_positive(const FieldInt& x) const {
    if (degree == 1) return x.a > 0;
    // both conjugates positive <=> trace > 0 and norm > 0
    return trace(x) > 0 && norm(x) > 0;
}

bool FieldContext::is_unit(const FieldInt& x) const {
    Int n = norm(x);
    return n == 1 || n == -1;
}

double FieldContext::multi_power_embedded(const std::array<double, 2>& sigma,
                                          const std::vector<double>& t) const {
    double r = 1.0;
    for (int i = 0; i < degree; ++i) {
        double base = sigma[i];
        double ti = t[i];
        if (ti == 0.0) continue;
        if (base > 0.0) {
            r *= std::pow(base, ti);
        } else {
            double rounded = std::nearbyint(ti);
            if (rounded != ti)
                throw DomainError("non-integral exponent at a non-positive embedding");
            double mag = std::pow(std::abs(base), ti);
            long long ei = static_cast<long long>(rounded);
            r *= (ei % 2 == 0) ? mag : -mag;
        }
    }
    return r;
}

double FieldContext::multi_power(const FieldInt& x, const std::vector<double>& t) const {
    if (static_cast<int>(t.size()) != degree)
        throw DomainError("exponent vector length != degree");
    auto sigma = embed(x);
    BigFloat r = 1;
    for (int i = 0; i < degree; ++i) {
        BigFloat base = sigma[i];
        double ti = t[i];
        if (ti == 0.0) continue;
        if (base > 0) {
            r *= exp(BigFloat(ti) * log(base));
        } else {
            double rounded = std::nearbyint(ti);
            if (rounded != ti || base == 0)
                throw DomainError("non-integral exponent at a non-positive embedding");
            BigFloat mag = exp(BigFloat(ti) * log(-base));
            long long ei = static_cast<long long>(rounded);
            r *= (ei % 2 == 0) ? mag : -mag;
        }
    }
    return to_double(r);
}

std::string FieldContext::descriptor() const {
    if (degree == 1) return "Q";
    return "Q(sqrt{" + std::to_string(d) + "})";
}

std::string FieldContext::format_element(const FieldInt& x) const {
    std::ostringstream os;
    if (degree == 1 || x.b == 0) {
        os << x.a;
        return os.str();
    }
    os << x.a;
    if (x.b > 0)
        os << "+" << x.b << "*w";
    else
        os << "-" << -x.b << "*w";
    return os.str();
}

FieldInt FieldContext::parse_element(const std::string& text) const {
    // forms: "a", "a+b*w", "a-b*w", "b*w", "w", "-w"
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty element");
    auto wpos = s.find('w');
    try {
        if (wpos == std::string::npos) return {Int(s), 0};
        // split off the omega term
        std::string bpart = s.substr(0, wpos);
        if (!bpart.empty() && bpart.back() == '*') bpart.pop_back();
        // find the split between a and b: last +/- not at position 0
        std::size_t split = std::string::npos;
        for (std::size_t i = bpart.size(); i-- > 1;) {
            if (bpart[i] == '+' || bpart[i] == '-') {
                split = i;
                break;
            }
        }
        std::string astr, bstr;
        if (split == std::string::npos) {
            astr = "0";
            bstr = bpart;
        } else {
            astr = bpart.substr(0, split);
            bstr = bpart.substr(split);
        }
        if (!bstr.empty() && bstr.front() == '+') bstr.erase(0, 1);
        if (bstr.empty()) bstr = "1";
        if (bstr == "-") bstr = "-1";
        FieldInt r{Int(astr), Int(bstr)};
        if (degree == 1 && r.b != 0) throw ParseError("omega term in a rational field");
        return r;
    } catch (const std::runtime_error& e) {
        throw ParseError("bad element '" + text + "'");
    }
}

const std::vector<PrimeIdeal>& FieldContext::primes_above(long long p) const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = prime_cache_.find(p);
    if (it != prime_cache_.end()) return it->second;

    std::vector<PrimeIdeal> out;
    if (degree == 1) {
        out.push_back({p, 1, 1, FieldInt(p), 0});
    } else {
        // splitting decided by the quadratic character of d mod p
        // (d mod 8 rule at p = 2)
        int type;  // 0 ramified, 1 split, -1 inert
        if (disc % p == 0) {
            type = 0;
        } else if (p == 2) {
            type = (d % 8 == 1) ? 1 : -1;
        } else {
            // Euler criterion
            long long base = ((d % p) + p) % p;
            long long r = 1, b = base, e = (p - 1) / 2, mod = p;
            while (e) {
                if (e & 1) r = (__int128)r * b % mod;
                b = (__int128)b * b % mod;
                e >>= 1;
            }
            type = (r == 1) ? 1 : -1;
        }
        if (type == -1) {
            out.push_back({p, 2, 1, FieldInt(p), 0});
        } else {
            // find fundamental-domain representatives of norm p; one for a
            // ramified prime, two for a split prime
            std::vector<FieldInt> gens;
            double epsr = std::exp(log_eps_ratio);
            double sq = to_double(sqrt_d_bf);
            long long bmax = static_cast<long long>(std::sqrt((double)p * epsr) / sq) + 2;
            Int Delta = Int(omega_t) * omega_t + 4 * Int(omega_n);
            for (long long bb = 0; bb <= bmax; ++bb) {
                // a^2 + t a b - n b^2 = p  =>  a = (-t b ± sqrt(t^2 b^2 + 4 n b^2 + 4p))/2
                Int disc2 = Delta * bb * bb + 4 * Int(p);
                Int root;
                if (!is_perfect_square(disc2, &root)) continue;
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    Int num = -Int(omega_t) * bb + sgn * root;
                    if (num % 2 != 0) continue;
                    FieldInt cand{num / 2, bb};
                    if (norm(cand) != p) continue;
                    if (!is_totally_positive(cand)) continue;
                    // fundamental domain membership (exact; see arith)
                    if (cand.b < 0) continue;
                    FieldInt up = mul(cand, eps_plus_inv);
                    if (!(up.b < 0)) continue;
                    if (std::find(gens.begin(), gens.end(), cand) == gens.end())
                        gens.push_back(cand);
                }
            }
            std::sort(gens.begin(), gens.end(), [](const FieldInt& x, const FieldInt& y) {
                return x.a != y.a ? x.a < y.a : x.b < y.b;
            });
            if (type == 0) {
                if (gens.size() != 1)
                    throw Error("ramified prime generator search failed at p=" +
                                std::to_string(p));
                out.push_back({p, 1, 2, gens[0], 0});
            } else {
                if (gens.size() != 2)
                    throw Error("split prime generator search failed at p=" +
                                std::to_string(p));
                out.push_back({p, 1, 1, gens[0], 0});
                out.push_back({p, 1, 1, gens[1], 1});
            }
        }
    }
    auto [pos, inserted] = prime_cache_.emplace(p, std::move(out));
    (void)inserted;
    return pos->second;
}

long long FieldContext::ideal_count(long long n) const {
    if (n <= 0) return 0;
    if (degree == 1) return 1;
    long long count = 1;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        const auto& pr = primes_above(p);
        if (pr.size() == 2) {
            count *= e + 1;  // split
        } else if (pr[0].f == 2) {
            if (e % 2) return 0;  // inert
        }  // ramified contributes factor 1
    }
    if (m > 1) {
        const auto& pr = primes_above(m);
        if (pr.size() == 2)
            count *= 2;
        else if (pr[0].f == 2)
            return 0;
    }
    return count;
}

std::shared_ptr<const std::vector<int>> FieldContext::ideal_count_table(
    long long cap) const {
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        if (count_cache_ && static_cast<long long>(count_cache_->size()) > cap)
            return count_cache_;
    }
    auto table = std::make_shared<std::vector<int>>(cap + 1, 0);
    auto& a = *table;
    if (degree == 1) {
        for (long long n = 1; n <= cap; ++n) a[n] = 1;
    } else {
        // a_F = 1 * chi_D as a divisor convolution; chi_D computed via a
        // linear sieve of smallest prime factors
        std::vector<int32_t> spf(cap + 1, 0);
        std::vector<int8_t> chi(cap + 1, 0);
        chi[1] = 1;
        std::vector<int32_t> primes;
        for (long long n = 2; n <= cap; ++n) {
            if (spf[n] == 0) {
                spf[n] = static_cast<int32_t>(n);
                primes.push_back(static_cast<int32_t>(n));
                const auto& above = primes_above(n);
                int c = above.size() == 2 ? 1 : (above[0].f == 2 ? -1 : 0);
                chi[n] = static_cast<int8_t>(c);
            }
            for (int32_t p : primes) {
                if (p > spf[n] || p * n > cap) break;
                spf[p * n] = p;
                chi[p * n] = static_cast<int8_t>(chi[p] * chi[n]);
            }
        }
        for (long long d = 1; d <= cap; ++d) {
            if (chi[d] == 0) continue;
            for (long long m = d; m <= cap; m += d) a[m] += chi[d];
        }
    }
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (!count_cache_ || static_cast<long long>(count_cache_->size()) <= cap)
        count_cache_ = table;
    return count_cache_;
}

FieldPtr FieldContext::make(const std::string& descriptor, int precision) {
    return make_field(descriptor, precision);
}

FieldPtr make_field(const std::string& descriptor, int precision) {
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    if (precision <= 0) {
        int env = env_precision_override();
        precision = env > 0 ? env : 64;
    }
    ctx->precision = precision;

    std::string s;
    for (char c : descriptor)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;

    if (s == "Q" || s == "q") {
        ctx->degree = 1;
        ctx->disc = 1;
        ctx->delta = FieldInt(1);
        ctx->eps = FieldInt(1);
        ctx->eps_plus = FieldInt(1);
        ctx->eps_plus_inv = FieldInt(1);
        ctx->sqrt_d_bf = 0;
        ctx->omega1_bf = ctx->omega2_bf = 0;
        return ctx;
    }

    long long d = 0;
    if (s.rfind("Q(sqrt{", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(7);
        inner.pop_back();  // ')'
        if (!inner.empty() && inner.back() == '}') inner.pop_back();
        try {
            d = std::stoll(inner);
        } catch (...) {
            throw UnsupportedField("cannot parse '" + descriptor + "'");
        }
    } else {
        throw UnsupportedField("cannot parse '" + descriptor + "'");
    }
    if (!supported_d(d))
        throw UnsupportedField("d=" + std::to_string(d) +
                               " is not on the narrow-class-number-1 allow-list");

    ctx->degree = 2;
    ctx->d = d;
    if ((d - 1) % 4 == 0) {
        ctx->omega_t = 1;
        ctx->omega_n = (d - 1) / 4;
        ctx->disc = d;
    } else {
        ctx->omega_t = 0;
        ctx->omega_n = d;
        ctx->disc = 4 * d;
    }
    ctx->sqrt_d_bf = sqrt(BigFloat(d));
    if (ctx->omega_t == 1) {
        ctx->omega1_bf = (1 + ctx->sqrt_d_bf) / 2;
        ctx->omega2_bf = (1 - ctx->sqrt_d_bf) / 2;
    } else {
        ctx->omega1_bf = ctx->sqrt_d_bf;
        ctx->omega2_bf = -ctx->sqrt_d_bf;
    }
    ctx->omega1_d = to_double(ctx->omega1_bf);
    ctx->omega2_d = to_double(ctx->omega2_bf);

    // Fundamental unit: Pell solution for Z[sqrt(d)], then refine to the
    // maximal order by searching below it for a smaller unit.
    Int px, py;
    pell_fundamental(d, px, py);
    FieldInt pell = (ctx->omega_t == 0) ? FieldInt{px, py} : FieldInt{px - py, 2 * py};
    // (x + y sqrt(d) = (x - y) + 2y * omega when omega = (1+sqrt d)/2)
    FieldInt best = pell;
    BigFloat best_s1 = to_bigfloat(best.a) + to_bigfloat(best.b) * ctx->omega1_bf;
    // scan units 1 < sigma1(u) <= sigma1(pell)
    {
        BigFloat bmaxf = (best_s1 + 1 / best_s1) / ctx->sqrt_d_bf + 2;
        long long bmax = bmaxf.convert_to<long long>();
        Int Delta = Int(ctx->omega_t) * ctx->omega_t + 4 * Int(ctx->omega_n);
        for (long long bb = 1; bb <= bmax; ++bb) {
            for (int nsign = -1; nsign <= 1; nsign += 2) {
                Int disc2 = Delta * bb * bb + 4 * nsign;
                Int root;
                if (disc2 < 0 || !is_perfect_square(disc2, &root)) continue;
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    Int num = -Int(ctx->omega_t) * bb + sgn * root;
                    if (num % 2 != 0) continue;
                    FieldInt cand{num / 2, bb};
                    Int n = ctx->norm(cand);
                    if (n != 1 && n != -1) continue;
                    BigFloat s1 =
                        to_bigfloat(cand.a) + to_bigfloat(cand.b) * ctx->omega1_bf;
                    if (s1 > 1 && s1 < best_s1) {
                        best = cand;
                        best_s1 = s1;
                    }
                }
            }
        }
    }
    ctx->eps = best;
    if (ctx->norm(ctx->eps) == 1) {
        ctx->eps_plus = ctx->eps;
        if (!ctx->is_totally_positive(ctx->eps_plus)) ctx->eps_plus = ctx->neg(ctx->eps_plus);
    } else {
        ctx->eps_plus = ctx->mul(ctx->eps, ctx->eps);
    }
    ctx->eps_plus_inv = ctx->conj(ctx->eps_plus);
    if (!ctx->is_totally_positive(ctx->eps_plus) || ctx->norm(ctx->eps_plus) != 1)
        throw Error("totally positive fundamental unit construction failed");

    auto e1 = ctx->embed(ctx->eps);
    ctx->eps1_d = to_double(e1[0]);
    ctx->eps2_d = to_double(e1[1]);
    auto ep = ctx->embed(ctx->eps_plus);
    ctx->log_eps_ratio = to_double(log(ep[0] / ep[1]));

    // different: (sqrt d) for d = 1 mod 4, (2 sqrt d) otherwise. Totally
    // positive generator of minimal trace, ties broken by (a, b).
    {
        FieldInt sq = (ctx->omega_t == 1) ? FieldInt{-1, 2} : FieldInt{0, 1};
        if (ctx->omega_t == 0) sq = FieldInt{0, 2};  // 2 sqrt(d)
        // make totally positive by unit adjustment, then minimize trace over
        // the unit orbit window
        FieldInt g = sq;
        if (ctx->trace(g) < 0) g = ctx->neg(g);
        // multiply by eps until totally positive
        for (int i = 0; i < 64 && !ctx->is_totally_positive(g); ++i) {
            g = ctx->mul(g, ctx->eps);
            if (ctx->trace(g) < 0) g = ctx->neg(g);
        }
        if (!ctx->is_totally_positive(g)) throw Error("different generator search failed");
        FieldInt bestg = g;
        Int bestt = ctx->trace(g);
        for (int j = -6; j <= 6; ++j) {
            FieldInt cand = g;
            for (int k = 0; k < std::abs(j); ++k)
                cand = ctx->mul(cand, j > 0 ? ctx->eps_plus : ctx->eps_plus_inv);
            Int t = ctx->trace(cand);
            if (t < bestt || (t == bestt && (cand.a < bestg.a ||
                                             (cand.a == bestg.a && cand.b < bestg.b)))) {
                bestg = cand;
                bestt = t;
            }
        }
        ctx->delta = bestg;
        if (ctx->norm(ctx->delta) != ctx->disc)
            throw Error("different generator has wrong norm");
    }
    return ctx;
}

}  // namespace halfint
