#include "halfint/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace halfint {

CoeffTable::CoeffTable(FieldPtr field, WeightVector weight, FieldInt level,
                       Normalization norm, Provenance prov)
    : fld_(std::move(field)), weight_(std::move(weight)), level_(std::move(level)),
      norm_(norm), prov_(prov) {
    if (weight_.degree() != fld_->degree)
        throw DomainError("weight length does not match field degree");
    if (!fld_->is_totally_positive(level_))
        throw DomainError("level must be totally positive");
}

void CoeffTable::set(const FieldInt& x, Complex value) {
    if (finalized_) throw Error("table is finalized");
    auto [rep, j] = canonical_decompose(*fld_, x);
    Complex v = value;
    if (j != 0) {
        // transport back to the representative
        if (norm_ == Normalization::lambda) {
            int sign = 1;
            for (int i = 0; i < fld_->degree; ++i) {
                double s = (i == 0) ? fld_->eps1_d : fld_->eps2_d;
                if (s < 0 && ((j * weight_.m[i]) % 2 != 0)) sign = -sign;
            }
            v = value * static_cast<double>(sign);
        } else {
            std::vector<double> t(fld_->degree);
            for (int i = 0; i < fld_->degree; ++i)
                t[i] = static_cast<double>(-j) * weight_.m[i];
            v = value * fld_->multi_power(fld_->eps, t);
        }
    }
    auto key = std::make_pair(rep.value.a, rep.value.b);
    auto it = index_.find(key);
    if (it != index_.end()) {
        entries_[it->second].value = v;
    } else {
        index_[key] = entries_.size();
        entries_.push_back({rep.value, rep.norm, v});
    }
}

void CoeffTable::finalize(Int complete_up_to) {
    bound_ = std::move(complete_up_to);
    std::sort(entries_.begin(), entries_.end(), [&](const TableEntry& x, const TableEntry& y) {
        if (x.norm != y.norm) return x.norm < y.norm;
        Int tx = fld_->trace(x.rep), ty = fld_->trace(y.rep);
        if (tx != ty) return tx < ty;
        if (x.rep.a != y.rep.a) return x.rep.a < y.rep.a;
        return x.rep.b < y.rep.b;
    });
    index_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i)
        index_[{entries_[i].rep.a, entries_[i].rep.b}] = i;
    finalized_ = true;
}

Complex CoeffTable::raw_at_rep(const FieldInt& rep) const {
    auto it = index_.find({rep.a, rep.b});
    return it == index_.end() ? Complex(0.0, 0.0) : entries_[it->second].value;
}

bool CoeffTable::has_rep(const FieldInt& rep) const {
    return index_.count({rep.a, rep.b}) > 0;
}

Complex CoeffTable::transported(const FieldInt& x, bool want_lambda) const {
    auto [rep, j] = canonical_decompose(*fld_, x);
    if (rep.norm > bound_ && !has_rep(rep.value))
        throw MissingEntry("norm " + rep.norm.str() + " exceeds table bound " +
                           bound_.str());
    Complex stored = raw_at_rep(rep.value);

    if (norm_ == Normalization::lambda) {
        // lambda(rep * eps+^j) = lambda(rep) * prod_i sign(sigma_i(eps))^(j m_i)
        int sign = 1;
        if (j != 0) {
            for (int i = 0; i < fld_->degree; ++i) {
                double s = (i == 0) ? fld_->eps1_d : fld_->eps2_d;
                if (s < 0 && ((j * weight_.m[i]) % 2 != 0)) sign = -sign;
            }
        }
        Complex lam = stored * static_cast<double>(sign);
        if (want_lambda) return lam;
        auto shifts = weight_.half_shifts();
        return lam * fld_->multi_power(x, shifts);
    }

    // stored Fourier coefficients: a(x) = (eps^j)^m a(rep)
    Complex a = stored;
    if (j != 0) {
        std::vector<double> t(fld_->degree);
        for (int i = 0; i < fld_->degree; ++i)
            t[i] = static_cast<double>(j) * weight_.m[i];
        a *= fld_->multi_power(fld_->eps, t);
    }
    if (!want_lambda) return a;
    auto shifts = weight_.half_shifts();
    std::vector<double> neg(shifts.size());
    for (std::size_t i = 0; i < shifts.size(); ++i) neg[i] = -shifts[i];
    return a * fld_->multi_power(x, neg);
}

Complex CoeffTable::lambda_at(const FieldInt& x) const { return transported(x, true); }
Complex CoeffTable::a_at(const FieldInt& x) const { return transported(x, false); }

CoeffTable CoeffTable::scaled(Complex factor) const {
    CoeffTable out(fld_, weight_, level_, norm_, prov_);
    out.growth_ = growth_;
    out.constant_ = constant_ * factor;
    for (const auto& e : entries_) out.set(e.rep, e.value * factor);
    out.finalize(bound_);
    return out;
}

Complex lambda(const CoeffTable& table, const FieldInt& x) { return table.lambda_at(x); }

WelldefinedReport check_welldefined(const CoeffTable& table, int unit_powers,
                                    const std::function<Complex(const FieldInt&)>& reference,
                                    std::size_t max_reps) {
    const FieldContext& F = table.field();
    WelldefinedReport rep;
    if (F.degree == 1) return rep;  // trivial unit group

    std::size_t count = 0;
    for (const auto& e : table.entries()) {
        if (max_reps && count >= max_reps) break;
        ++count;
        FieldInt shifted = e.rep;
        for (int t = 1; t <= unit_powers; ++t) {
            shifted = F.mul(shifted, F.eps_plus);
            // u = eps^t, u^2 = eps_plus^t
            std::vector<double> tm(F.degree);
            for (int i = 0; i < F.degree; ++i)
                tm[i] = static_cast<double>(t) * table.weight().m[i];
            double um = F.multi_power(F.eps, tm);
            Complex via_transport = table.a_at(shifted);
            Complex direct = reference ? reference(shifted) : um * table.a_at(e.rep);
            Complex expect = reference ? via_transport : direct;
            Complex got = reference ? direct : via_transport;
            double scale = std::max({std::abs(expect), std::abs(got), 1.0});
            double viol = std::abs(got - expect) / scale;
            rep.pairs_tested++;
            if (viol > rep.max_violation) {
                rep.max_violation = viol;
                rep.worst_rep = e.rep;
            }
        }
    }
    return rep;
}

GrowthReport growth_check(const CoeffTable& table, double exponent) {
    GrowthReport rep;
    const auto& entries = table.entries();
    if (entries.empty()) return rep;
    double bound = to_double(table.bound());
    int blocks = std::max(1, static_cast<int>(std::log2(std::max(2.0, bound))));
    rep.block_sups.assign(blocks, 0.0);
    for (const auto& e : entries) {
        double n = to_double(e.norm);
        Complex lam = table.lambda_at(e.rep);
        double v = std::abs(lam) / std::pow(n, exponent);
        if (v > rep.sup) {
            rep.sup = v;
            rep.argmax = e.rep;
        }
        int blk = std::min(blocks - 1, static_cast<int>(std::log2(std::max(1.0, n))));
        rep.block_sups[blk] = std::max(rep.block_sups[blk], v);
    }
    // flag monotone growth across the last few populated blocks
    std::vector<double> tail;
    for (double s : rep.block_sups)
        if (s > 0) tail.push_back(s);
    if (tail.size() >= 4) {
        bool growing = true;
        for (std::size_t i = tail.size() - 3; i < tail.size(); ++i)
            if (tail[i] <= tail[i - 1] * 1.05) growing = false;
        rep.trend_flag = growing;
    }
    return rep;
}

const std::vector<std::pair<int, int>>& squares_mod4(const FieldContext& F) {
    static std::mutex mu;
    static std::map<std::string, std::vector<std::pair<int, int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& v = cache[F.descriptor()];
    if (!v.empty()) return v;
    std::vector<std::vector<bool>> seen(4, std::vector<bool>(4, false));
    int brange = F.degree == 2 ? 4 : 1;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < brange; ++b) {
            FieldInt x{a, b};
            FieldInt sq = F.mul(x, x);
            int ra = static_cast<int>(((sq.a % 4) + 4) % 4);
            int rb = static_cast<int>(((sq.b % 4) + 4) % 4);
            if (!seen[ra][rb]) {
                seen[ra][rb] = true;
                v.push_back({ra, rb});
            }
        }
    }
    std::sort(v.begin(), v.end());
    return v;
}

bool is_square_mod4(const FieldContext& F, const FieldInt& x) {
    int ra = static_cast<int>(((x.a % 4) + 4) % 4);
    int rb = static_cast<int>(((x.b % 4) + 4) % 4);
    const auto& sq = squares_mod4(F);
    return std::binary_search(sq.begin(), sq.end(), std::make_pair(ra, rb));
}

PlusSpaceReport plus_space_test(const CoeffTable& table, double tol) {
    const FieldContext& F = table.field();
    if (table.weight().delta != 1)
        throw DomainError("plus-space test applies to half-integral weight only");
    PlusSpaceReport rep;
    bool m_odd = table.weight().sum_m() % 2 != 0;
    if (!m_odd) {
        rep.unit_u = FieldInt(1);
    } else if (F.degree == 1) {
        rep.unit_u = FieldInt(-1);
    } else if (F.norm(F.eps) == -1) {
        rep.unit_u = F.eps;
    } else {
        throw NoNegativeNormUnit("(-1)^m = -1 but the field has no unit of norm -1");
    }
    for (const auto& e : table.entries()) {
        if (std::abs(table.lambda_at(e.rep)) <= tol) continue;
        FieldInt ut = F.mul(rep.unit_u, e.rep);
        if (!is_square_mod4(F, ut)) rep.violations.push_back(e.rep);
    }
    return rep;
}

DiscriminantCert is_fundamental_discriminant(const FieldContext& F, const FieldInt& xi) {
    if (!F.is_totally_positive(xi)) throw NotTotallyPositive("discriminant test");
    auto fact = factor(F, xi);
    auto [sq, root] = squarefree_decompose(F, fact);
    if (F.is_unit(sq)) throw SquareInput("xi is a perfect square");
    if (!fact.is_squarefree()) return {xi, DiscStatus::non_fundamental};
    if (F.norm(xi) % 2 == 0) return {xi, DiscStatus::out_of_scope};
    if (!is_square_mod4(F, xi)) return {xi, DiscStatus::out_of_scope};
    (void)root;
    return {xi, DiscStatus::fundamental};
}

// ---------------- file io ----------------

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_level(const FieldContext& F, const FieldInt& level) {
    if (level.a % 4 == 0 && level.b % 4 == 0)
        return "4*(" + F.format_element(F.div_int(level, 4)) + ")";
    return F.format_element(level);
}

FieldInt parse_level(const FieldContext& F, const std::string& text) {
    auto star = text.find("*(");
    if (star != std::string::npos && text.back() == ')') {
        Int mult(text.substr(0, star));
        FieldInt inner = F.parse_element(text.substr(star + 2, text.size() - star - 3));
        return F.mul_int(inner, mult);
    }
    return F.parse_element(text);
}

WeightVector parse_weight(const std::string& line, int degree) {
    // "m=(2,2) delta=1"
    WeightVector w;
    auto mpos = line.find("m=(");
    auto close = line.find(')', mpos);
    auto dpos = line.find("delta=");
    if (mpos == std::string::npos || close == std::string::npos ||
        dpos == std::string::npos)
        throw ParseError("bad weight line '" + line + "'");
    std::string nums = line.substr(mpos + 3, close - mpos - 3);
    std::stringstream ss(nums);
    std::string tok;
    while (std::getline(ss, tok, ',')) w.m.push_back(std::stoi(tok));
    w.delta = std::stoi(line.substr(dpos + 6));
    if (w.degree() != degree) throw ParseError("weight length != field degree");
    return w;
}

}  // namespace

void write_table(std::ostream& os, const CoeffTable& table) {
    const FieldContext& F = table.field();
    os << "field " << F.descriptor() << "\n";
    os << "weight m=(";
    for (int i = 0; i < table.weight().degree(); ++i)
        os << (i ? "," : "") << table.weight().m[i];
    os << ") delta=" << table.weight().delta << "\n";
    os << "level " << format_level(F, table.level()) << "\n";
    os << "complete-up-to " << table.bound() << "\n";
    if (table.normalization() == Normalization::lambda) os << "normalization lambda\n";
    if (table.constant_term() != Complex(0.0, 0.0))
        os << "constant " << fmt17(table.constant_term().real()) << " "
           << fmt17(table.constant_term().imag()) << "\n";
    for (const auto& e : table.entries()) {
        os << e.rep.a << " " << e.rep.b << " " << fmt17(e.value.real()) << " "
           << fmt17(e.value.imag()) << "\n";
    }
}

void write_table_file(const std::string& path, const CoeffTable& table) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    write_table(os, table);
}

CoeffTable read_table(std::istream& is) {
    FieldPtr fld;
    std::optional<WeightVector> weight;
    std::optional<FieldInt> level;
    Int bound{0};
    Normalization norm = Normalization::fourier_a;
    Complex constant{0.0, 0.0};
    std::vector<std::array<std::string, 4>> raw_entries;

    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::stringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "field") {
            std::string rest;
            ss >> rest;
            fld = make_field(rest);
        } else if (first == "weight") {
            std::string rest;
            std::getline(ss, rest);
            if (!fld) throw ParseError("weight line before field line");
            weight = parse_weight(rest, fld->degree);
        } else if (first == "level") {
            std::string rest;
            ss >> rest;
            if (!fld) throw ParseError("level line before field line");
            level = parse_level(*fld, rest);
        } else if (first == "complete-up-to") {
            std::string rest;
            ss >> rest;
            bound = Int(rest);
        } else if (first == "normalization") {
            std::string rest;
            ss >> rest;
            norm = rest == "lambda" ? Normalization::lambda : Normalization::fourier_a;
        } else if (first == "constant") {
            double re, im;
            ss >> re >> im;
            constant = {re, im};
        } else {
            std::array<std::string, 4> cols;
            cols[0] = first;
            if (!(ss >> cols[1] >> cols[2] >> cols[3]))
                throw ParseError("bad entry line '" + line + "'");
            raw_entries.push_back(cols);
        }
    }
    if (!fld || !weight || !level) throw ParseError("missing table header lines");
    CoeffTable table(fld, *weight, *level, norm, Provenance::file);
    table.set_constant_term(constant);
    for (const auto& c : raw_entries) {
        FieldInt x{Int(c[0]), Int(c[1])};
        table.set(x, Complex(std::stod(c[2]), std::stod(c[3])));
    }
    table.finalize(bound);
    return table;
}

CoeffTable read_table_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open '" + path + "'");
    return read_table(is);
}

}  // namespace halfint
