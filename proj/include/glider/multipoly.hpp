#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glider/cyclotomic.hpp"

namespace glider {

/// Exponent vector of a monomial; index = variable number.
using Monomial = std::vector<unsigned>;

/// Degree-lexicographic order, greater-first (higher total degree wins,
/// ties broken lexicographically with x0 > x1 > ...).  Used as the map
/// comparator so iteration yields the canonical term order.
struct DegLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// A multivariate polynomial over Q(zeta_n) with a fixed variable count.
/// Canonical form: zero coefficients are never stored; printing walks the
/// deg-lex order with explicit '*' and '^'.
class MultiPoly {
public:
    MultiPoly() = default;
    MultiPoly(FieldPtr field, std::size_t nvars);

    static MultiPoly zero(const FieldPtr& field, std::size_t nvars);
    static MultiPoly constant(const FieldPtr& field, std::size_t nvars, const CycNumber& c);
    static MultiPoly variable(const FieldPtr& field, std::size_t nvars, std::size_t index);

    const FieldPtr& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * x^mono into the polynomial.
    void add_term(const Monomial& mono, const CycNumber& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly scaled(const CycNumber& c) const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;

    /// Leading (deg-lex greatest) term; requires nonzero.
    const Monomial& leading_monomial() const;
    const CycNumber& leading_coefficient() const;

    /// Divides by the leading coefficient so the deg-lex leading coefficient
    /// becomes 1.  Canonical representative used when deduping generators.
    MultiPoly monic() const;

    /// Exact evaluation.
    CycNumber evaluate(const std::vector<CycNumber>& values) const;

    /// Canonical string, e.g. "x0^2+x1^2", "-x0", "x0*x1", "(1+i)*x0".
    std::string print(const std::vector<std::string>& names = {}) const;

    const std::map<Monomial, CycNumber, DegLexGreater>& terms() const { return terms_; }

private:
    void check_compatible(const MultiPoly& o) const;

    FieldPtr field_;
    std::size_t nvars_ = 0;
    std::map<Monomial, CycNumber, DegLexGreater> terms_;
};

/// A point of the projective line P^1(K), stored normalized: the first
/// nonzero coordinate equals 1.
struct ProjPoint {
    CycNumber x0, x1;

    static ProjPoint make(const CycNumber& a, const CycNumber& b); ///< normalizes; throws ZeroVector on (0,0)
    bool operator==(const ProjPoint& o) const { return x0 == o.x0 && x1 == o.x1; }
    std::string pretty() const; ///< "[1:i]"
};

/// Result of the exact root search for homogeneous binary forms.
struct RootResult {
    std::vector<ProjPoint> points; ///< all K-rational roots, canonically sorted
    bool complete = true;          ///< true when the list is provably all of them
    std::string note;              ///< e.g. why the search is incomplete, or square obstructions
};

/// All projective roots over K = Q(zeta_n) of a homogeneous polynomial in
/// two variables of degree <= 2.  Degree 1 and 2 are solved exactly (for
/// n = 4 including exact square roots in Q(i)); higher degrees throw
/// UnsupportedDegree, inhomogeneous input throws NotHomogeneous.
RootResult homogeneous_binary_roots(const MultiPoly& p);

/// Exact square root in K if one exists.  Complete for rational arguments
/// (using i when 4 | n for negative rationals) and for n = 4; otherwise a
/// small bounded search, with found=false meaning "none found", not proof
/// of nonexistence (the .complete flag tells them apart).
struct SqrtResult {
    bool found = false;
    bool complete = true; ///< if !found: true means provably no square root in K
    CycNumber value;      ///< valid when found
    std::string note;
};
SqrtResult sqrt_in_field(const CycNumber& a);

} // namespace glider
