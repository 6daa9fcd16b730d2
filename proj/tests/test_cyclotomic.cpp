#include <doctest.h>

#include <random>

#include "glider/cyclotomic.hpp"

#include "fixtures.hpp"

using namespace glider;

namespace {

CycNumber rand_cyc(const FieldPtr& K, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    CycNumber out = CycNumber::zero(K);
    CycNumber zpow = CycNumber::one(K);
    const CycNumber z = CycNumber::root(K);
    for (std::size_t k = 0; k < K->degree(); ++k) {
        out += CycNumber(K, Rational(num(rng), den(rng))) * zpow;
        zpow *= z;
    }
    return out;
}

} // namespace

TEST_CASE("field construction: minimal polynomials") {
    FieldPtr K4 = CycField::make(4);
    CHECK(K4->order() == 4);
    CHECK(K4->degree() == 2);
    // Phi_4 = x^2 + 1, low-degree-first
    CHECK(K4->minimal_polynomial() == std::vector<Rational>{1, 0, 1});

    FieldPtr K3 = CycField::make(3);
    CHECK(K3->degree() == 2);
    // Phi_3 = x^2 + x + 1
    CHECK(K3->minimal_polynomial() == std::vector<Rational>{1, 1, 1});

    FieldPtr K5 = CycField::make(5);
    CHECK(K5->degree() == 4);
    CHECK(K5->minimal_polynomial() == std::vector<Rational>{1, 1, 1, 1, 1});

    FieldPtr K1 = CycField::make(1);
    CHECK(K1->degree() == 1);
}

TEST_CASE("arithmetic in Q(i)") {
    FieldPtr K = CycField::make(4);
    CycNumber i = CycNumber::root(K), one = CycNumber::one(K), zero = CycNumber::zero(K);
    CycNumber two = CycNumber(K, Rational(2));

    CHECK((one + i) * (one - i) == two);
    CHECK(one / i == -i);
    CHECK(i * i == -one);
    CHECK(i.inverse() == -i);
    CHECK(zero.is_zero());
    CHECK(two.is_rational());
    CHECK(two.rational_value() == Rational(2));
    CHECK_FALSE(i.is_rational());

    // conjugation and the Galois action z -> z^3 agree on Q(i)
    CHECK(i.conj() == -i);
    CHECK(i.galois(3) == -i);
    CHECK((one + i).conj() == one - i);
    CHECK(i.galois(1) == i);
}

TEST_CASE("arithmetic in other orders") {
    FieldPtr K3 = CycField::make(3);
    CycNumber w = CycNumber::root(K3), one = CycNumber::one(K3);
    CHECK(w * w * w == one);              // zeta_3^3 = 1
    CHECK(w * w + w + one == CycNumber::zero(K3)); // Phi_3 relation
    CHECK(w.inverse() == w * w);

    FieldPtr K5 = CycField::make(5);
    CycNumber z = CycNumber::root(K5);
    CycNumber z4 = z * z * z * z;
    CHECK(z * z4 == CycNumber::one(K5));
    CHECK(z.inverse() == z4);
}

TEST_CASE("ring axioms on deterministic random triples") {
    FieldPtr K = CycField::make(4);
    std::mt19937 rng(20260814);
    for (int trial = 0; trial < 40; ++trial) {
        CycNumber a = rand_cyc(K, rng), b = rand_cyc(K, rng), c = rand_cyc(K, rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) {
            CHECK((a * b) / a == b);      // div(mul(c, d), c) = d
            CHECK(a * a.inverse() == CycNumber::one(K));
        }
    }
}

TEST_CASE("division by zero and order mixing are rejected") {
    FieldPtr K4 = CycField::make(4);
    FieldPtr K3 = CycField::make(3);
    CycNumber one4 = CycNumber::one(K4);
    CHECK(fx::code_of([&] { (void)(one4 / CycNumber::zero(K4)); }) == "DivisionByZero");
    CHECK(fx::code_of([&] { (void)CycNumber::zero(K4).inverse(); }) == "DivisionByZero");
    CHECK(fx::code_of([&] { (void)(one4 + CycNumber::one(K3)); }) == "OrderMismatch");
    CHECK(fx::code_of([&] { (void)CycNumber::root(K4).galois(2); }) == "OrderMismatch");
    CHECK(fx::code_of([&] { (void)CycNumber::root(K4).rational_value(); }) == "OrderMismatch");
    CHECK(CycNumber(K4, Rational(1, 2)).rational_value() == Rational(1, 2));
}

TEST_CASE("text encoding round trip") {
    FieldPtr K = CycField::make(4);
    CycNumber i = CycNumber::root(K), one = CycNumber::one(K);

    CHECK(CycNumber::parse(K, "0,1") == i);
    CHECK(CycNumber::parse(K, "3") == CycNumber(K, Rational(3))); // short list padded
    CHECK(CycNumber::parse(K, "1/2,-2/3") == CycNumber(K, Rational(1, 2)) - CycNumber(K, Rational(2, 3)) * i);
    CHECK(i.encode() == "0,1");
    CHECK((one - i).encode() == "1,-1");
    CHECK(CycNumber(K, Rational(1, 2)).encode() == "1/2,0");

    // encode o parse is the identity on canonical text
    for (const char* text : {"0,0", "1,0", "0,1", "-2/3,1/2", "5,-7"})
        CHECK(CycNumber::parse(K, text).encode() == text);

    CHECK(fx::code_of([&] { CycNumber::parse(K, "1,,2"); }) == "ParseError");
    CHECK(fx::code_of([&] { CycNumber::parse(K, "x"); }) == "ParseError");
}

TEST_CASE("pretty printing in Q(i)") {
    FieldPtr K = CycField::make(4);
    CycNumber i = CycNumber::root(K), one = CycNumber::one(K);
    CHECK(CycNumber::zero(K).pretty() == "0");
    CHECK(one.pretty() == "1");
    CHECK(i.pretty() == "i");
    CHECK((-i).pretty() == "-i");
    CHECK((one - i).pretty() == "1-i");
    CHECK(CycNumber(K, Rational(-2, 3)).pretty() == "-2/3");
    CHECK((CycNumber(K, Rational(2, 3)) + CycNumber(K, Rational(1, 2)) * i).pretty() == "2/3+1/2i");
}

TEST_CASE("canonical comparison is a total order on representatives") {
    FieldPtr K = CycField::make(4);
    CycNumber i = CycNumber::root(K), one = CycNumber::one(K);
    CHECK(compare_canonical(one, one) == 0);
    CHECK(compare_canonical(CycNumber::zero(K), one) != 0);
    CHECK(compare_canonical(one, i) == -compare_canonical(i, one));
    CHECK(rational_to_string(Rational(3, 6)) == "1/2");
    CHECK(rational_to_string(Rational(-4)) == "-4");
}
