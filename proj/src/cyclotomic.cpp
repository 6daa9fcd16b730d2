#include "glider/cyclotomic.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace glider {

namespace {

// Dense polynomial helpers over Q, low-degree-first coefficient vectors.
// Only what Phi_n construction and the extended Euclid inverse need.

void poly_trim(std::vector<Rational>& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

// Exact division: returns quotient, asserts zero remainder.
std::vector<Rational> poly_divide_exact(std::vector<Rational> num, const std::vector<Rational>& den) {
    poly_trim(num);
    assert(!den.empty() && den.back() != 0);
    std::vector<Rational> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 1, Rational(0));
    while (num.size() >= den.size() && !(num.size() == 1 && num[0] == 0)) {
        const std::size_t shift = num.size() - den.size();
        Rational f = num.back() / den.back();
        q[shift] = f;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
        poly_trim(num);
        if (num.size() < den.size()) break;
    }
    assert(num.size() == 1 && num[0] == 0 && "division was not exact");
    poly_trim(q);
    return q;
}

// General division with remainder, for the Euclidean algorithm.
void poly_divmod(std::vector<Rational> num, const std::vector<Rational>& den,
                 std::vector<Rational>& quot, std::vector<Rational>& rem) {
    poly_trim(num);
    quot.assign(std::max<std::size_t>(num.size(), 1), Rational(0));
    while (num.size() >= den.size() && !(num.size() == 1 && num[0] == 0)) {
        const std::size_t shift = num.size() - den.size();
        Rational f = num.back() / den.back();
        quot[shift] += f;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
        poly_trim(num);
    }
    poly_trim(quot);
    rem = std::move(num);
}

std::vector<Rational> cyclotomic_poly(unsigned n) {
    // x^n - 1 divided by Phi_d for all proper divisors d | n.
    std::vector<Rational> p(n + 1, Rational(0));
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) p = poly_divide_exact(std::move(p), cyclotomic_poly(d));
    }
    return p;
}

} // namespace

CycField::CycField(unsigned n) : n_(n) {
    require(n >= 1, "OrderMismatch", "cyclotomic order must be positive");
    phi_ = cyclotomic_poly(n);
}

std::shared_ptr<const CycField> CycField::make(unsigned n) {
    return std::shared_ptr<const CycField>(new CycField(n));
}

CycNumber::CycNumber(FieldPtr field) : field_(std::move(field)), c_(field_->degree(), Rational(0)) {}

CycNumber::CycNumber(FieldPtr field, const Rational& r) : CycNumber(std::move(field)) {
    c_[0] = r;
}

CycNumber CycNumber::root(const FieldPtr& field) {
    CycNumber z(field);
    if (field->degree() == 1) {
        // n in {1, 2}: zeta = 1 or -1 respectively.
        z.c_[0] = field->order() == 1 ? Rational(1) : Rational(-1);
    } else {
        z.c_[1] = 1;
    }
    return z;
}

CycNumber CycNumber::parse(const FieldPtr& field, const std::string& text) {
    std::vector<Rational> raw;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // strip spaces
        item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
        if (item.empty()) fail("ParseError", "empty coefficient in '" + text + "'");
        try {
            raw.emplace_back(Rational(item));
        } catch (const std::exception&) {
            fail("ParseError", "bad rational '" + item + "'");
        }
    }
    CycNumber x(field);
    x.reduce(raw);
    x.c_ = std::move(raw);
    return x;
}

void CycNumber::reduce(std::vector<Rational>& raw) const {
    const auto& phi = field_->minimal_polynomial();
    const std::size_t deg = field_->degree();
    while (raw.size() > deg) {
        // kill the top coefficient using the monic relation z^deg = -(lower part)
        Rational top = raw.back();
        raw.pop_back();
        if (top != 0) {
            const std::size_t shift = raw.size() - deg;
            for (std::size_t i = 0; i < deg; ++i) raw[shift + i] -= top * phi[i];
        }
    }
    raw.resize(deg, Rational(0));
}

void CycNumber::check_same_field(const CycNumber& o) const {
    require(field_ && o.field_ && field_->order() == o.field_->order(),
            "OrderMismatch", "operands live in different cyclotomic fields");
}

bool CycNumber::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool CycNumber::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational CycNumber::rational_value() const {
    require(is_rational(), "OrderMismatch", "element is not rational");
    return c_[0];
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
    check_same_field(o);
    CycNumber r(field_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

CycNumber CycNumber::operator-(const CycNumber& o) const {
    check_same_field(o);
    CycNumber r(field_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

CycNumber CycNumber::operator-() const {
    CycNumber r(field_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
    check_same_field(o);
    std::vector<Rational> raw(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) raw[i + j] += c_[i] * o.c_[j];
    }
    CycNumber r(field_);
    reduce(raw);
    r.c_ = std::move(raw);
    return r;
}

CycNumber CycNumber::inverse() const {
    require(!is_zero(), "DivisionByZero", "inverse of zero");
    // Extended Euclid on (phi, this) over Q[z]: find u with u*this ≡ gcd mod phi.
    std::vector<Rational> r0 = field_->minimal_polynomial();
    std::vector<Rational> r1 = c_;
    poly_trim(r1);
    std::vector<Rational> u0{Rational(0)}, u1{Rational(1)};
    while (!(r1.size() == 1 && r1[0] == 0)) {
        std::vector<Rational> q, rem;
        poly_divmod(r0, r1, q, rem);
        // (r0, r1) <- (r1, rem);  (u0, u1) <- (u1, u0 - q*u1)
        std::vector<Rational> qu = poly_mul(q, u1);
        std::vector<Rational> u2(std::max(u0.size(), qu.size()), Rational(0));
        for (std::size_t i = 0; i < u0.size(); ++i) u2[i] += u0[i];
        for (std::size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
        poly_trim(u2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // r0 is the gcd; it must be a nonzero constant (phi is irreducible).
    assert(r0.size() == 1 && r0[0] != 0);
    for (auto& coeff : u0) coeff /= r0[0];
    CycNumber inv(field_);
    reduce(u0);
    inv.c_ = std::move(u0);
    assert((*this * inv) == CycNumber::one(field_));
    return inv;
}

CycNumber CycNumber::operator/(const CycNumber& o) const {
    return *this * o.inverse();
}

bool CycNumber::operator==(const CycNumber& o) const {
    check_same_field(o);
    return c_ == o.c_;
}

CycNumber CycNumber::galois(unsigned k) const {
    const unsigned n = field_->order();
    require(std::gcd(k % n, n) == 1 || n == 1, "OrderMismatch",
            "galois exponent not coprime to field order");
    // substitute z -> z^k; reduce() folds the high powers back below deg Phi_n
    std::size_t max_e = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) max_e = std::max(max_e, i * (std::size_t)k);
    std::vector<Rational> raw(max_e + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) raw[i * k] += c_[i];
    CycNumber r(field_);
    reduce(raw);
    r.c_ = std::move(raw);
    return r;
}

CycNumber CycNumber::conj() const {
    const unsigned n = field_->order();
    if (n <= 2) return *this;
    return galois(n - 1);
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

std::string CycNumber::encode() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ",";
        out += rational_to_string(c_[i]);
    }
    return out;
}

namespace {

// One power-basis term "coeff * sym^e" rendered for pretty(); sign handled by caller.
std::string pretty_term(const Rational& coeff_abs, const std::string& sym, std::size_t e) {
    std::string out;
    if (e == 0) return rational_to_string(coeff_abs);
    if (coeff_abs != 1) out += rational_to_string(coeff_abs);
    out += sym;
    if (e > 1) out += "^" + std::to_string(e);
    return out;
}

} // namespace

std::string CycNumber::pretty() const {
    if (is_zero()) return "0";
    const std::string sym = field_->order() == 4 ? "i" : "z";
    std::string out;
    bool first = true;
    for (std::size_t e = 0; e < c_.size(); ++e) {
        if (c_[e] == 0) continue;
        const bool neg = c_[e] < 0;
        const Rational mag = neg ? Rational(-c_[e]) : c_[e];
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? "-" : "+";
        }
        out += pretty_term(mag, sym, e);
    }
    return out;
}

int compare_canonical(const CycNumber& a, const CycNumber& b) {
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (x[i] < y[i]) return -1;
        if (x[i] > y[i]) return 1;
    }
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    return 0;
}

} // namespace glider
