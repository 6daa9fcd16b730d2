#include <doctest.h>

#include <random>

#include "glider/matrix.hpp"

#include "fixtures.hpp"

using namespace glider;

namespace {

struct Env {
    FieldPtr K = CycField::make(4);
    CycNumber i = CycNumber::root(K);
    CycNumber one = CycNumber::one(K);
    CycNumber zero = CycNumber::zero(K);
    CycNumber num(int n) const { return CycNumber(K, Rational(n)); }
};

} // namespace

TEST_CASE("rref, rank, and pivots") {
    Env e;
    // rank collapses over K, not just over Q: row2 = i * row1
    FMatrix A = FMatrix::from_rows(e.K, {{e.one, e.i}, {e.i, -e.one}});
    std::vector<std::size_t> pivots;
    FMatrix R = A.rref(&pivots);
    CHECK(A.rank() == 1);
    CHECK(pivots == std::vector<std::size_t>{0});
    CHECK(R.at(0, 0) == e.one);
    CHECK(R.at(0, 1) == e.i);
    CHECK(R.at(1, 0) == e.zero);
    CHECK(R.at(1, 1) == e.zero);

    FMatrix B = FMatrix::from_rows(e.K, {{e.num(2), e.zero}, {e.num(1), e.one}});
    CHECK(B.rank() == 2);
    CHECK(B.rref() == FMatrix::identity(e.K, 2));
    CHECK(FMatrix(e.K, 3, 4).rank() == 0);
    CHECK(FMatrix(e.K, 3, 4).is_zero());
}

TEST_CASE("matrix arithmetic against hand values") {
    Env e;
    FMatrix A = FMatrix::from_rows(e.K, {{e.one, e.i}, {e.zero, e.one}});
    FMatrix B = FMatrix::from_rows(e.K, {{e.i, e.zero}, {e.one, -e.i}});
    FMatrix AB = FMatrix::from_rows(e.K, {{e.i + e.i, e.one}, {e.one, -e.i}});
    CHECK(A * B == AB);
    CHECK((A + B) - B == A);
    CHECK(A.scaled(e.i) == FMatrix::from_rows(e.K, {{e.i, -e.one}, {e.zero, e.i}}));
    CHECK(A.transpose() == FMatrix::from_rows(e.K, {{e.one, e.zero}, {e.i, e.one}}));
    CHECK(A.apply({e.num(2), e.i}) == Vec{e.num(2) - e.one, e.i});
    CHECK(A.row(0) == Vec{e.one, e.i});
    CHECK(A.col(1) == Vec{e.i, e.one});
    CHECK(A.pretty() == "(1 i; 0 1)");
    CHECK(FMatrix::from_rows(e.K, {{e.one, -e.i}, {e.zero, e.one + e.i}}).pretty() ==
          "(1 -i; 0 1+i)");
    CHECK(fx::code_of([&] { (void)(A * FMatrix(e.K, 3, 2)); }) == "DimensionMismatch");
    CHECK(fx::code_of([&] { (void)(A + FMatrix(e.K, 3, 2)); }) == "DimensionMismatch");
    CHECK(fx::code_of([&] { A.apply({e.one}); }) == "DimensionMismatch");
}

TEST_CASE("kernel, inverse, and solve") {
    Env e;
    FMatrix A = FMatrix::from_rows(e.K, {{e.one, e.i}, {e.i, -e.one}});
    auto ker = A.kernel();
    REQUIRE(ker.size() == 1);
    CHECK(A.apply(ker[0]) == Vec{e.zero, e.zero});
    CHECK_FALSE(A.inverse().has_value());

    FMatrix B = FMatrix::from_rows(e.K, {{e.one, e.i}, {e.zero, e.num(2)}});
    auto Binv = B.inverse();
    REQUIRE(Binv.has_value());
    CHECK(B * *Binv == FMatrix::identity(e.K, 2));
    CHECK(*Binv * B == FMatrix::identity(e.K, 2));
    CHECK(B.kernel().empty());

    // consistent and inconsistent systems
    auto x = solve_linear(A, {e.one, e.i}); // (1, i) is row 1 = col space member
    REQUIRE(x.has_value());
    CHECK(A.apply(*x) == Vec{e.one, e.i});
    CHECK_FALSE(solve_linear(A, {e.one, e.one}).has_value());

    // deterministic random round trip: inverse really inverts
    std::mt19937 rng(90401);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        FMatrix M(e.K, 3, 3);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                M.at(r, c) = e.num(coef(rng)) + e.i * e.num(coef(rng));
        auto inv = M.inverse();
        if (inv)
            CHECK(M * *inv == FMatrix::identity(e.K, 3));
        else
            CHECK(M.rank() < 3);
    }
}

TEST_CASE("subspaces are canonical") {
    Env e;
    // same plane, two spanning sets
    Subspace V = Subspace::span(e.K, 3, {{e.one, e.i, e.zero}, {e.zero, e.one, e.one}});
    Subspace W = Subspace::span(e.K, 3,
                                {{e.one, e.i + e.one, e.one},
                                 {e.zero, e.num(2), e.num(2)},
                                 {e.one, e.i, e.zero}});
    CHECK(V == W);
    CHECK(V.dim() == 2);
    CHECK(V.contains(Vec{e.one, e.i + e.one, e.one}));
    CHECK_FALSE(V.contains(Vec{e.one, e.zero, e.zero}));
    CHECK(V.contains(Subspace::span(e.K, 3, {{e.zero, e.one, e.one}})));

    Subspace zero3(e.K, 3);
    CHECK(zero3.is_zero());
    CHECK(zero3.pretty() == "0");
    CHECK(Subspace::full(e.K, 3).dim() == 3);
    CHECK(Subspace::span(e.K, 3, {{e.num(2), e.zero, -e.i - e.i}}).pretty() == "span{[1,0,-i]}");
    CHECK(vec_pretty(Vec{e.one, e.zero, -e.i}) == "[1,0,-i]");
}

TEST_CASE("subspace lattice operations") {
    Env e;
    Subspace X = Subspace::span(e.K, 3, {{e.one, e.zero, e.zero}, {e.zero, e.one, e.zero}});
    Subspace Y = Subspace::span(e.K, 3, {{e.zero, e.one, e.zero}, {e.zero, e.zero, e.one}});
    Subspace meet = X.intersect(Y);
    CHECK(meet == Subspace::span(e.K, 3, {{e.zero, e.one, e.zero}}));
    CHECK(X.sum(Y) == Subspace::full(e.K, 3));

    // dim(X) + dim(Y) = dim(X+Y) + dim(X∩Y) on random pairs
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> coef(-2, 2);
    auto rand_space = [&] {
        std::vector<Vec> gens;
        for (int g = 0; g < 2; ++g) {
            Vec v;
            for (int c = 0; c < 4; ++c) v.push_back(e.num(coef(rng)) + e.i * e.num(coef(rng)));
            gens.push_back(v);
        }
        return Subspace::span(e.K, 4, gens);
    };
    for (int trial = 0; trial < 12; ++trial) {
        Subspace A = rand_space(), B = rand_space();
        CHECK(A.dim() + B.dim() == A.sum(B).dim() + A.intersect(B).dim());
        CHECK(A.sum(B).contains(A));
        CHECK(A.contains(A.intersect(B)));
    }
}

TEST_CASE("image and coordinates") {
    Env e;
    Subspace V = Subspace::span(e.K, 2, {{e.one, e.i}});
    FMatrix rot = FMatrix::from_rows(e.K, {{e.zero, -e.one}, {e.one, e.zero}});
    Subspace img = V.image(rot);
    // rot (1, i) = (-i, 1) spans the same line as (1, i) scaled by i
    CHECK(img == Subspace::span(e.K, 2, {{-e.i, e.one}}));
    CHECK(img == V); // the line is rot-invariant

    auto coords = V.coordinates({e.i + e.i, -e.num(2)});
    REQUIRE(coords.has_value());
    REQUIRE(coords->size() == 1);
    CHECK((*coords)[0] == e.i + e.i);
    CHECK_FALSE(V.coordinates({e.one, e.zero}).has_value());
}
