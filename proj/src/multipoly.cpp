#include "glider/multipoly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace glider {

bool DegLexGreater::operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da > db;
    return a > b; // lexicographic, x0 exponent most significant
}

MultiPoly::MultiPoly(FieldPtr field, std::size_t nvars)
    : field_(std::move(field)), nvars_(nvars) {}

MultiPoly MultiPoly::zero(const FieldPtr& field, std::size_t nvars) {
    return MultiPoly(field, nvars);
}

MultiPoly MultiPoly::constant(const FieldPtr& field, std::size_t nvars, const CycNumber& c) {
    MultiPoly p(field, nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(const FieldPtr& field, std::size_t nvars, std::size_t index) {
    require(index < nvars, "VariableMismatch", "variable index out of range");
    MultiPoly p(field, nvars);
    Monomial m(nvars, 0);
    m[index] = 1;
    p.add_term(m, CycNumber::one(field));
    return p;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    require(nvars_ == o.nvars_, "VariableMismatch", "polynomials have different variable counts");
    require(field_ && o.field_ && field_->order() == o.field_->order(),
            "OrderMismatch", "polynomials over different fields");
}

void MultiPoly::add_term(const Monomial& mono, const CycNumber& c) {
    require(mono.size() == nvars_, "VariableMismatch", "monomial arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(mono, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(field_, nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r(field_, nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::scaled(const CycNumber& c) const {
    MultiPoly r(field_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    check_compatible(o);
    return terms_ == o.terms_;
}

int MultiPoly::degree() const {
    if (terms_.empty()) return -1;
    // leading term has maximal total degree by the deg-lex order
    const Monomial& m = terms_.begin()->first;
    return (int)std::accumulate(m.begin(), m.end(), 0u);
}

bool MultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    const int d = degree();
    for (const auto& [m, c] : terms_) {
        if ((int)std::accumulate(m.begin(), m.end(), 0u) != d) return false;
    }
    return true;
}

const Monomial& MultiPoly::leading_monomial() const {
    require(!terms_.empty(), "ZeroVector", "zero polynomial has no leading term");
    return terms_.begin()->first;
}

const CycNumber& MultiPoly::leading_coefficient() const {
    require(!terms_.empty(), "ZeroVector", "zero polynomial has no leading term");
    return terms_.begin()->second;
}

MultiPoly MultiPoly::monic() const {
    if (terms_.empty()) return *this;
    return scaled(leading_coefficient().inverse());
}

CycNumber MultiPoly::evaluate(const std::vector<CycNumber>& values) const {
    require(values.size() == nvars_, "VariableMismatch", "evaluation arity mismatch");
    CycNumber acc = CycNumber::zero(field_);
    for (const auto& [m, c] : terms_) {
        CycNumber t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned e = 0; e < m[i]; ++e) t *= values[i];
        acc += t;
    }
    return acc;
}

std::string MultiPoly::print(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    auto var_name = [&](std::size_t i) {
        return i < names.size() ? names[i] : "x" + std::to_string(i);
    };
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        // split a leading '-' off the coefficient's canonical form
        std::string cs = c.pretty();
        bool neg = false;
        if (!cs.empty() && cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        // composite scalars (internal +/-) get parenthesized
        const bool composite = cs.find('+') != std::string::npos ||
                               cs.find('-') != std::string::npos;
        std::string mono;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(i);
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        std::string term;
        if (mono.empty()) {
            term = composite ? "(" + cs + ")" : cs;
        } else if (cs == "1") {
            term = mono;
        } else {
            term = (composite ? "(" + cs + ")" : cs) + "*" + mono;
        }
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? "-" : "+";
        }
        out += term;
    }
    return out;
}

ProjPoint ProjPoint::make(const CycNumber& a, const CycNumber& b) {
    require(!(a.is_zero() && b.is_zero()), "ZeroVector", "projective point needs a nonzero coordinate");
    ProjPoint p;
    if (!a.is_zero()) {
        p.x0 = CycNumber::one(a.field());
        p.x1 = b / a;
    } else {
        p.x0 = CycNumber::zero(b.field());
        p.x1 = CycNumber::one(b.field());
    }
    return p;
}

std::string ProjPoint::pretty() const {
    return "[" + x0.pretty() + ":" + x1.pretty() + "]";
}

SqrtResult sqrt_in_field(const CycNumber& a) {
    SqrtResult res;
    const FieldPtr F = a.field();
    if (a.is_zero()) {
        res.found = true;
        res.value = a;
        return res;
    }

    // exact integer square root test
    auto int_sqrt = [](const BigInt& v) -> std::optional<BigInt> {
        if (v < 0) return std::nullopt;
        BigInt r = boost::multiprecision::sqrt(v);
        if (r * r == v) return r;
        return std::nullopt;
    };
    // sqrt of a nonnegative rational, exactly
    auto rat_sqrt = [&](const Rational& r) -> std::optional<Rational> {
        auto sn = int_sqrt(numerator(r));
        auto sd = int_sqrt(denominator(r));
        if (sn && sd) return Rational(*sn, *sd);
        return std::nullopt;
    };

    const unsigned n = F->order();
    if (a.is_rational()) {
        const Rational r = a.rational_value();
        if (r > 0) {
            if (auto s = rat_sqrt(r)) {
                res.found = true;
                res.value = CycNumber(F, *s);
                return res;
            }
        } else if (n % 4 == 0) {
            // sqrt(r) = sqrt(-r) * i with i = zeta^{n/4}
            if (auto s = rat_sqrt(-r)) {
                CycNumber i_unit = CycNumber::root(F);
                CycNumber acc = CycNumber::one(F);
                for (unsigned k = 0; k < n / 4; ++k) acc *= i_unit;
                res.found = true;
                res.value = CycNumber(F, *s) * acc;
                return res;
            }
        }
        if (n <= 2 || n == 4) {
            // in Q and Q(i), rational square-ness settles it completely
            res.found = false;
            res.complete = true;
            res.note = rational_to_string(r) + " is not a square in K";
            return res;
        }
        // other orders: the subfield may still contain the root (e.g. sqrt 2
        // in Q(zeta_8)); fall through to the bounded search below
    }

    if (n == 4) {
        // a = p + q i; a square root x + y i exists in Q(i) iff
        // N = p^2 + q^2 is a rational square s^2 and (p + s)/2 is a rational
        // square x^2 (then y = q / (2x)).
        const Rational p = a.coefficients()[0];
        const Rational q = a.coefficients()[1];
        const Rational N = p * p + q * q;
        if (auto s = rat_sqrt(N)) {
            for (const Rational sgn : {Rational(1), Rational(-1)}) {
                const Rational cand = (p + sgn * (*s)) / 2;
                if (cand == 0) continue;
                if (auto x = rat_sqrt(cand)) {
                    const Rational y = q / (2 * (*x));
                    CycNumber out(F, *x);
                    CycNumber i_unit = CycNumber::root(F);
                    out += CycNumber(F, y) * i_unit;
                    assert(out * out == a);
                    res.found = true;
                    res.value = out;
                    return res;
                }
            }
        }
        res.found = false;
        res.complete = true;
        res.note = a.pretty() + " is not a square in Q(i)";
        return res;
    }

    // generic order: small bounded search over low-height coefficient vectors
    const std::size_t deg = F->degree();
    std::vector<Rational> grid;
    for (int num = -2; num <= 2; ++num)
        for (int den = 1; den <= 2; ++den) grid.emplace_back(Rational(num, den));
    std::vector<std::size_t> idx(deg, 0);
    const std::size_t total = [&] {
        std::size_t t = 1;
        for (std::size_t i = 0; i < deg; ++i) {
            if (t > 200000 / grid.size()) return std::size_t(0);
            t *= grid.size();
        }
        return t;
    }();
    for (std::size_t step = 0; step < total; ++step) {
        CycNumber cand = CycNumber::zero(F);
        std::size_t s = step;
        CycNumber zpow = CycNumber::one(F);
        for (std::size_t i = 0; i < deg; ++i) {
            cand += CycNumber(F, grid[s % grid.size()]) * zpow;
            s /= grid.size();
            zpow *= CycNumber::root(F);
        }
        if (cand * cand == a) {
            res.found = true;
            res.value = cand;
            return res;
        }
    }
    res.found = false;
    res.complete = false;
    res.note = "no square root found (bounded search)";
    return res;
}

RootResult homogeneous_binary_roots(const MultiPoly& p) {
    require(p.nvars() == 2, "VariableMismatch", "root search expects a binary form");
    require(!p.is_zero(), "ZeroVector", "zero polynomial has every point as root");
    require(p.is_homogeneous(), "NotHomogeneous", "polynomial is not homogeneous: " + p.print());
    const int D = p.degree();
    require(D <= 2, "UnsupportedDegree", "degree " + std::to_string(D) + " root search not supported");

    const FieldPtr F = p.field();
    // coefficient of x0^{D-k} x1^k
    std::vector<CycNumber> c((std::size_t)D + 1, CycNumber::zero(F));
    for (const auto& [m, coeff] : p.terms()) c[m[1]] = coeff;

    RootResult res;
    auto push = [&](const CycNumber& a, const CycNumber& b) {
        ProjPoint pt = ProjPoint::make(a, b);
        if (std::find(res.points.begin(), res.points.end(), pt) == res.points.end())
            res.points.push_back(pt);
    };

    const CycNumber zero = CycNumber::zero(F);
    const CycNumber one = CycNumber::one(F);

    if (D == 0) {
        res.note = "nonzero constant has no roots";
        return res;
    }
    if (D == 1) {
        // c0 x0 + c1 x1 = 0  ->  [-c1 : c0]
        push(-c[1], c[0]);
        return res;
    }

    // D == 2: c0 x0^2 + c1 x0 x1 + c2 x1^2
    if (c[0].is_zero()) {
        // p(x0, 0) = 0, so x1 divides: p = x1 * (c1 x0 + c2 x1)
        push(one, zero);
        if (!c[1].is_zero()) push(-c[2], c[1]);
    } else {
        if (c[2].is_zero()) {
            // p(0, x1) = 0, so x0 divides: p = x0 * (c0 x0 + c1 x1)
            push(zero, one);
            push(-c[1], c[0]);
        } else {
            const CycNumber disc = c[1] * c[1] - CycNumber(F, Rational(4)) * c[2] * c[0];
            SqrtResult sq = sqrt_in_field(disc);
            if (sq.found) {
                const CycNumber two_c2 = CycNumber(F, Rational(2)) * c[2];
                const CycNumber t1 = (-c[1] + sq.value) / two_c2;
                const CycNumber t2 = (-c[1] - sq.value) / two_c2;
                push(one, t1);
                push(one, t2);
            } else {
                res.complete = sq.complete;
                res.note = sq.complete
                               ? "discriminant " + disc.pretty() + " is not a square in K; no roots in K"
                               : "discriminant " + disc.pretty() + ": " + sq.note;
            }
        }
    }

    // canonical order + verification by substitution
    std::sort(res.points.begin(), res.points.end(), [](const ProjPoint& a, const ProjPoint& b) {
        const int c0 = compare_canonical(a.x0, b.x0);
        if (c0 != 0) return c0 < 0;
        return compare_canonical(a.x1, b.x1) < 0;
    });
    for (const auto& pt : res.points) {
        CycNumber v = p.evaluate({pt.x0, pt.x1});
        require(v.is_zero(), "ZeroVector", "internal: claimed root fails verification");
    }
    return res;
}

} // namespace glider
