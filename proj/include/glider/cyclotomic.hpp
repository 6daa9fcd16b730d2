#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "glider/error.hpp"

namespace glider {

using Rational = boost::multiprecision::cpp_rational;
using BigInt   = boost::multiprecision::cpp_int;

/// The coefficient field K = Q(zeta_n), represented as Q[z]/(Phi_n(z)).
/// Elements are coefficient vectors of length deg(Phi_n) in the power basis
/// 1, z, ..., z^{phi(n)-1}; all arithmetic reduces eagerly mod Phi_n.
///
/// A CycField instance is created once per session and shared; numbers keep a
/// pointer to their field so mixed-order arithmetic is rejected
/// (OrderMismatch) instead of silently misinterpreted.
class CycField {
public:
    /// Build Q(zeta_n).  Phi_n is computed exactly by recursive division of
    /// x^n - 1 by the cyclotomic polynomials of the proper divisors of n.
    static std::shared_ptr<const CycField> make(unsigned n);

    unsigned order() const { return n_; }
    std::size_t degree() const { return phi_.size() - 1; }

    /// Monic minimal polynomial Phi_n, low-degree-first coefficients.
    const std::vector<Rational>& minimal_polynomial() const { return phi_; }

private:
    explicit CycField(unsigned n);
    unsigned n_;
    std::vector<Rational> phi_;
};

using FieldPtr = std::shared_ptr<const CycField>;

/// An element of Q(zeta_n).
class CycNumber {
public:
    CycNumber() = default; ///< invalid placeholder; assign before use

    /// Zero of the given field.
    explicit CycNumber(FieldPtr field);
    /// Embedded rational.
    CycNumber(FieldPtr field, const Rational& r);

    static CycNumber zero(const FieldPtr& field) { return CycNumber(field); }
    static CycNumber one(const FieldPtr& field) { return CycNumber(field, Rational(1)); }
    /// The chosen primitive root zeta_n (the class of z).
    static CycNumber root(const FieldPtr& field);
    /// Parse a comma-separated coefficient list "p/q,p/q,...": the element
    /// sum coeff[k] * z^k.  Short lists are zero-padded.
    static CycNumber parse(const FieldPtr& field, const std::string& text);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coefficients() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    /// The rational value; requires is_rational().
    Rational rational_value() const;

    CycNumber operator+(const CycNumber& o) const;
    CycNumber operator-(const CycNumber& o) const;
    CycNumber operator-() const;
    CycNumber operator*(const CycNumber& o) const;
    /// Exact division; throws DivisionByZero.
    CycNumber operator/(const CycNumber& o) const;
    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_n; throws DivisionByZero on zero.
    CycNumber inverse() const;

    CycNumber& operator+=(const CycNumber& o) { return *this = *this + o; }
    CycNumber& operator-=(const CycNumber& o) { return *this = *this - o; }
    CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }

    bool operator==(const CycNumber& o) const;
    bool operator!=(const CycNumber& o) const { return !(*this == o); }

    /// Image under the Galois map z -> z^k; requires gcd(k, n) = 1.
    CycNumber galois(unsigned k) const;
    /// Complex conjugation (z -> z^{n-1}).
    CycNumber conj() const;

    /// Machine form: comma-separated coefficients "p/q,...", full length.
    std::string encode() const;
    /// Canonical display form: "0", "1", "-2/3", and for n = 4 the a+bi
    /// style ("i", "1-i", "2/3+1/2i"); other orders use z^k power-basis
    /// terms ("1+z", "z^2-z").
    std::string pretty() const;

private:
    void reduce(std::vector<Rational>& raw) const; ///< mod Phi_n, resize to degree
    void check_same_field(const CycNumber& o) const;

    FieldPtr field_;
    std::vector<Rational> c_;
};

/// Total order used for canonical sorting of scalars (lexicographic on the
/// coefficient vector).  Not an arithmetic order.
int compare_canonical(const CycNumber& a, const CycNumber& b);

/// Formats a bare rational canonically ("p" or "p/q").
std::string rational_to_string(const Rational& r);

} // namespace glider
