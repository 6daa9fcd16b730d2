#include <doctest.h>

#include "glider/geometry.hpp"

#include "fixtures.hpp"

using namespace glider;

namespace {

// The two-stage subgroup chain through Z4^i used opposite the module chain.
SubgroupChain hchain_i(const fx::Q8& q) { return SubgroupChain{{{0}, q.Z2, q.Z4i}}; }

SubgroupChain hchain_d(const fx::D8& d) { return SubgroupChain{{{0}, d.Z2a2, d.HD}}; }

bool has_point(const std::vector<ProjPoint>& pts, const ProjPoint& p) {
    for (const auto& q : pts)
        if (q == p) return true;
    return false;
}

} // namespace

TEST_CASE("coefficient matrices list the orbit of a generic vector") {
    auto q = fx::q8();

    auto [A1, B1] = coefficient_matrices(*q.U, q.Z2, q.Z4j);
    CHECK(A1.rows == 2);
    CHECK(A1.cols == 2);
    CHECK(B1.cols == 4);
    CHECK(A1.pretty() == "(x0 -x0; x1 -x1)");
    CHECK(B1.pretty() == "(x0 -x1 -x0 x1; x1 x0 -x1 -x0)");

    auto [A2, B2] = coefficient_matrices(*q.U, q.Z4i, q.all8);
    CHECK(A2.pretty() == "(x0 i*x0 -x0 -i*x0; x1 -i*x1 -x1 i*x1)");
    CHECK(B2.cols == 8);

    // single-column trivial case and its generic rank
    SymbolicMatrix A0 = coefficient_matrix(*q.U, {0});
    CHECK(A0.pretty() == "(x0; x1)");
    CHECK(generic_rank(A0) == 1);
    CHECK(generic_rank(A1) == 1);
    CHECK(generic_rank(B1) == 2);

    // each column is literally rho(g) applied to (x0, x1): evaluating at a
    // concrete vector must reproduce the action matrices column by column
    Vec a = {q.one, q.I};
    FMatrix Bc = B1.evaluate(a);
    for (std::size_t c = 0; c < q.Z4j.size(); ++c) {
        Vec col = q.U->act(q.Z4j[c]).apply(a);
        for (std::size_t r = 0; r < 2; ++r) CHECK(Bc.at(r, c) == col[r]);
    }
}

TEST_CASE("stage-1 rank locus vanishes on x0^2 + x1^2") {
    auto q = fx::q8();
    auto [A1, B1] = coefficient_matrices(*q.U, q.Z2, q.Z4j);

    RankLocus L1 = rank_locus(A1, B1);
    CHECK(L1.rank_a == 1);
    CHECK(L1.rank_b == 2);
    CHECK(L1.semantics == RankLocus::Semantics::Vanishing);
    REQUIRE(L1.generators.size() == 1);
    CHECK(L1.generators[0].print() == "x0^2+x1^2");
    CHECK(L1.points_valid);
    REQUIRE(L1.points.size() == 2);
    CHECK(has_point(L1.points, ProjPoint::make(q.one, q.I)));
    CHECK(has_point(L1.points, ProjPoint::make(q.one, -q.I)));

    // independent re-check: the generator vanishes at each reported point,
    // and the bigger matrix really drops to rank(A1) there
    for (const auto& p : L1.points) {
        Vec v = {p.x0, p.x1};
        CHECK(L1.generators[0].evaluate(v).is_zero());
        CHECK(B1.evaluate(v).rank() == L1.rank_a);
        CHECK(A1.evaluate(v).rank() == 1);
    }

    // off the locus both matrices have full generic rank
    Vec gen = {q.num(2), q.one};
    CHECK(L1.generators[0].evaluate(gen).is_zero() == false);
    CHECK(B1.evaluate(gen).rank() == 2);
    CHECK(A1.evaluate(gen).rank() == 1);
}

TEST_CASE("stage-2 rank locus is the complement of x0*x1 = 0") {
    auto q = fx::q8();
    auto [A2, B2] = coefficient_matrices(*q.U, q.Z4i, q.all8);

    RankLocus L2 = rank_locus(A2, B2);
    CHECK(L2.rank_a == 2);
    CHECK(L2.rank_b == 2);
    CHECK(L2.semantics == RankLocus::Semantics::Nonvanishing);
    REQUIRE(L2.generators.size() == 1);
    CHECK(L2.generators[0].print() == "x0*x1");
    CHECK(L2.points_valid);
    REQUIRE(L2.points.size() == 2);
    CHECK(has_point(L2.points, ProjPoint::make(q.one, q.zero)));
    CHECK(has_point(L2.points, ProjPoint::make(q.zero, q.one)));

    // at the degenerate points the generator vanishes and the H-side matrix
    // drops rank; the full-orbit matrix keeps rank 2 there, so the ranks
    // separate exactly on the zero set of x0*x1
    for (const auto& p : L2.points) {
        Vec v = {p.x0, p.x1};
        CHECK(L2.generators[0].evaluate(v).is_zero());
        CHECK(A2.evaluate(v).rank() == 1);
        CHECK(B2.evaluate(v).rank() == 2);
    }
    Vec gen = {q.num(2), q.one};
    CHECK_FALSE(L2.generators[0].evaluate(gen).is_zero());
    CHECK(A2.evaluate(gen).rank() == 2);
    CHECK(B2.evaluate(gen).rank() == 2);
}

TEST_CASE("decomposition groups at concrete points") {
    auto q = fx::q8();
    SubgroupChain Hchain = hchain_i(q);

    PointReport P1 = evaluate_point(*q.U, {q.one, q.I}, q.chain, Hchain);
    REQUIRE(P1.stages.size() == 2);
    CHECK(P1.stages[0].data.group == q.Z4j);
    CHECK(P1.stages[0].full_stage_group);
    CHECK(P1.stages[1].data.group == q.all8);
    CHECK(P1.stages[1].full_stage_group);
    CHECK(P1.inclusions_hold);

    // the point fixed by neither chain: stage groups Z4^j then Z4^i, and the
    // first is not contained in the second
    PointReport P2 = evaluate_point(*q.U, {q.one, q.zero}, q.chain, Hchain);
    CHECK(P2.stages[0].data.group == q.Z4j);
    CHECK(P2.stages[0].full_stage_group);
    CHECK(P2.stages[1].data.group == q.Z4i);
    CHECK_FALSE(P2.stages[1].full_stage_group);
    CHECK(P2.inclusion_ok == std::vector<bool>{false});
    CHECK_FALSE(P2.inclusions_hold);

    // external re-check of the stage-2 stabilizer at (1,0): an element
    // belongs iff it maps the line K(1,0) into itself
    {
        Subspace line = Subspace::span(q.K, 2, {Vec{q.one, q.zero}});
        for (unsigned g : q.all8) {
            Subspace moved = Subspace::span(q.K, 2, {q.U->act(g).apply(Vec{q.one, q.zero})});
            bool stays = moved == line;
            bool listed = false;
            for (unsigned h : P2.stages[1].data.group) listed = listed || h == g;
            CHECK(stays == listed);
        }
    }

    // generic points: full decomposition groups at every stage
    std::vector<Vec> samples = {{q.num(2), q.one},
                                {q.one, q.num(3)},
                                {q.one + q.I, q.one - q.I - q.I},
                                {q.num(2) + q.I, -q.one},
                                {q.one, q.I + q.I + q.I}};
    for (const auto& a : samples) {
        PointReport P = evaluate_point(*q.U, a, q.chain, Hchain);
        CHECK(P.stages[0].full_stage_group);
        CHECK(P.stages[1].full_stage_group);
        CHECK(P.inclusions_hold);
    }

    CHECK(fx::code_of([&] { evaluate_point(*q.U, {q.zero, q.zero}, q.chain, Hchain); }) ==
          "ZeroVector");
}

TEST_CASE("maximality of chain stages") {
    auto q = fx::q8();
    SubgroupChain Hchain = hchain_i(q);

    MaximalityReport mr = maximal_chain_check(*q.G, q.chain, Hchain);
    CHECK(mr.maximal);
    CHECK(mr.stage_ok == std::vector<bool>{true});
    CHECK(mr.witness.empty());

    MaximalityReport mr2 = maximal_chain_check(*q.G, q.chain, q.chain); // H = G
    CHECK(mr2.maximal);

    SubgroupChain flat{{{0}, {0}, q.all8}}; // 1 inside 1 inside Q8: stage 1 cannot reach Z4^j
    MaximalityReport mr3 = maximal_chain_check(*q.G, flat, Hchain);
    CHECK_FALSE(mr3.maximal);
    CHECK(mr3.stage_ok == std::vector<bool>{false});
    CHECK(mr3.witness == "stage 1: j is not a product h*g");
}

TEST_CASE("constraint reports for declared decompositions") {
    auto q = fx::q8();

    ConstraintReport cr = constraint_check(*q.Omega, {{"U", 2}, {"T3", 1}, {"T2", 1}});
    CHECK(cr.projective_count == 1);
    CHECK(cr.nonzero_count == 2);
    CHECK(cr.variety == "P^1");
    REQUIRE(cr.constraints.size() == 3);
    CHECK(cr.constraints[0].text == "[a0:a1] in P^1");
    CHECK(cr.constraints[0].projective);
    CHECK(cr.constraints[0].first_coord == 0);
    CHECK(cr.constraints[1].text == "a2 != 0");
    CHECK(cr.constraints[2].text == "a3 != 0");
    CHECK(cr.constraints[2].first_coord == 3);

    ConstraintReport cr2 = constraint_check(*q.U, {{"T1", 1}, {"T2", 1}});
    CHECK(cr2.variety == "point");
    CHECK(cr2.nonzero_count == 2);
    CHECK(cr2.projective_count == 0);

    ConstraintReport cr3 = constraint_check(*q.Omega, {{"S", 2}, {"S", 2}});
    CHECK(cr3.variety == "P^1 x P^1");
    CHECK(cr3.projective_count == 2);

    // the declared dimensions must tile the module exactly
    CHECK(fx::code_of([&] { constraint_check(*q.U, {{"S", 3}}); }) == "NotDecomposed");
    CHECK(fx::code_of([&] { constraint_check(*q.U, {}); }) == "NotDecomposed");
}

TEST_CASE("dihedral loci and maximality") {
    auto d = fx::d8();
    SubgroupChain Hchain = hchain_d(d);

    auto [DA1, DB1] = coefficient_matrices(*d.S, Hchain.groups[1], d.chain.groups[1]);
    RankLocus DL1 = rank_locus(DA1, DB1);
    CHECK(DL1.rank_a == 1);
    CHECK(DL1.rank_b == 2);
    CHECK(DL1.semantics == RankLocus::Semantics::Vanishing);
    REQUIRE(DL1.generators.size() == 1);
    CHECK(DL1.generators[0].print() == "x0*x1");
    CHECK(DL1.points_valid);
    CHECK(DL1.points.size() == 2);
    CHECK(has_point(DL1.points, ProjPoint::make(d.one, d.zero)));
    CHECK(has_point(DL1.points, ProjPoint::make(d.zero, d.one)));

    auto [DA2, DB2] = coefficient_matrices(*d.S, Hchain.groups[2], d.chain.groups[2]);
    CHECK(DA2.pretty() == "(x0 x1 -x0 -x1; x1 x0 -x1 -x0)");
    RankLocus DL2 = rank_locus(DA2, DB2);
    CHECK(DL2.rank_a == 2);
    CHECK(DL2.rank_b == 2);
    CHECK(DL2.semantics == RankLocus::Semantics::Nonvanishing);
    REQUIRE(DL2.generators.size() == 1);
    CHECK(DL2.generators[0].print() == "x0^2-x1^2");
    REQUIRE(DL2.points.size() == 2);
    CHECK(has_point(DL2.points, ProjPoint::make(d.one, d.one)));
    CHECK(has_point(DL2.points, ProjPoint::make(d.one, -d.one)));
    for (const auto& p : DL2.points) {
        Vec v = {p.x0, p.x1};
        CHECK(DL2.generators[0].evaluate(v).is_zero());
    }

    MaximalityReport mrD = maximal_chain_check(*d.G, d.chain, Hchain);
    CHECK(mrD.maximal);
}
