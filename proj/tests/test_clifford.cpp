#include <doctest.h>

#include "glider/clifford.hpp"

#include "fixtures.hpp"

using namespace glider;

namespace {

ModulePtr uh_i(const fx::Q8& q) { // 2-dim over Z4i: i = diag(i, -i)
    FMatrix g(q.K, 2, 2);
    g.at(0, 0) = q.I;
    g.at(1, 1) = -q.I;
    return std::make_shared<GModule>(GModule::from_generators(q.G, q.K, q.Z4i, {{2u, g}}));
}

ModulePtr uh_j(const fx::Q8& q) { // 2-dim over Z4j: j = (0,-1;1,0)
    FMatrix g(q.K, 2, 2);
    g.at(0, 1) = -q.one;
    g.at(1, 0) = q.one;
    return std::make_shared<GModule>(GModule::from_generators(q.G, q.K, q.Z4j, {{4u, g}}));
}

} // namespace

TEST_CASE("going down the worked fragment along Z4i") {
    auto q = fx::q8();
    GoingDownResult gd = going_down(q.M, q.Z4i, q.cats);

    CHECK_FALSE(gd.restricted_irreducible);
    CHECK(gd.restricted_certificate.status != CertificateResult::Status::Certified);
    CHECK(check_fragment(gd.restricted).valid);

    // stage 1: seed K H_1 delta = span{e1, e3+e4} splits in two lines; the
    // j-translate of the first line completes M_1
    REQUIRE(gd.stage1.has_value());
    const BuildingBlockSet& s1 = *gd.stage1;
    Subspace C34 = Subspace::span(q.K, 4, {q.vec4(0, 0, 1, 1)});
    CHECK(s1.seed == Subspace::span(q.K, 4, {q.e1, q.vec4(0, 0, 1, 1)}));
    REQUIRE(s1.summands.size() == 3);
    CHECK(s1.seed_count == 2);
    CHECK(s1.summands[0].space == C34);
    CHECK(s1.summands[1].space == q.Ce1);
    CHECK(s1.summands[2].space == Subspace::span(q.K, 4, {q.vec4(0, 0, -1, 1)}));
    CHECK_FALSE(s1.summands[2].from_seed);
    CHECK(s1.summands[2].translate_of == 0);
    CHECK(s1.summands[2].translate_by == 4); // j
    // the completion summand really is the j-translate, and it tops up M_1
    CHECK(conjugate_submodule(*q.Omega, 4, C34) == s1.summands[2].space);
    CHECK(s1.seed.sum(s1.summands[2].space) == q.M1);
    CHECK(s1.seed.intersect(s1.summands[2].space).is_zero());
    CHECK(s1.block_indices == std::vector<std::size_t>{1, 0}); // Ce1 is a full G1-module
    CHECK(s1.block_is_full_module == std::vector<bool>{true, false});

    // the two stage-1 nodes and their trees
    REQUIRE(gd.nodes.size() == 2);
    const DecompositionNode& n0 = gd.nodes[0];
    const DecompositionNode& n1 = gd.nodes[1];
    CHECK(n0.block == q.Ce1);
    CHECK(n0.full_stage_module);
    CHECK(n0.dec_group == q.Z4j); // G1' = Z4^j
    CHECK(n1.dec_group == q.Z4j);
    CHECK(n0.chain.levels == std::vector<Subspace>{q.Uspan, q.Ce1, q.Zero4, q.Zero4});
    CHECK(n1.chain.levels == std::vector<Subspace>{q.E34, q.E34, q.Zero4, q.Zero4});
    CHECK(check_fragment(n0.chain).valid);
    CHECK(check_fragment(n1.chain).valid);

    REQUIRE(n0.inter.has_value());
    CHECK(n0.inter->next_generated == q.Uspan); // K H_2 Ce1 = U
    CHECK(n0.inter->next_stage_group == q.all8); // G2' = Q8
    CHECK(n1.inter->next_stage_group == q.all8);
    CHECK(n0.inter->stabilizer == q.Z4i);
    CHECK_FALSE(n0.inter->isotypic_simple);
    CHECK(n0.inter->refined_stabilizer == q.Z4i);
    CHECK(n0.inter->embedding_module == q.Uspan);
    CHECK_FALSE(n0.inter->embedding_simple);
    CHECK_FALSE(n0.inter->inside_single_simple);
    CHECK_FALSE(n1.inter->inside_single_simple);

    REQUIRE(n0.children.size() == 1);
    CHECK(n0.children[0].block == q.Cf1);
    CHECK(n0.children[0].stage == 2);
    CHECK(n0.children[0].chain.levels == std::vector<Subspace>{q.Uspan, q.Ce1, q.Zero4, q.Zero4});
    CHECK(n0.children[0].dec_group == q.Z4i); // G2' = Z4^i at the leaf
    REQUIRE(n1.children.size() == 2);
    CHECK(n1.children[0].block == q.Ce3);
    CHECK(n1.children[1].block == q.Ce4);
    CHECK(n1.children[0].full_stage_module);
    CHECK(n1.children[1].full_stage_module);
    CHECK(n1.children[0].chain.levels == std::vector<Subspace>{q.Ce3, q.Ce3, q.Zero4, q.Zero4});
    CHECK(n1.children[0].dec_group == q.all8);

    // reconstruction bookkeeping
    CHECK(gd.level_sum_matches == std::vector<bool>{true, true});
    CHECK(gd.level_overlaps == std::vector<std::size_t>{0, 0});
    CHECK_FALSE(gd.top_level_sum_matches); // level-2 entries of the node chains are 0
    CHECK(gd.direct_level == 1);
    // independent re-check of the level sums
    for (unsigned lvl = 0; lvl <= 1; ++lvl)
        CHECK(n0.chain.level(lvl).sum(n1.chain.level(lvl)) == gd.restricted.level(lvl));
}

TEST_CASE("classical recovery over the trivial chain") {
    auto q = fx::q8();
    SubgroupChain chainT{{{0}, q.all8}};
    verify_chain(*q.G, chainT);
    Subspace Ufull = Subspace::full(q.K, 2);
    Subspace Ca = Subspace::span(q.K, 2, {q.vec2(1, 1)});
    Fragment M9{q.U, chainT, {Ufull, Ca, q.Zero2}};
    REQUIRE(check_fragment(M9).valid);
    CHECK(irreducible_certificate(M9).status == CertificateResult::Status::Certified);

    GoingDownResult gd = going_down(M9, q.Z2, q.cats);
    CHECK_FALSE(gd.restricted_irreducible);
    REQUIRE(gd.stage1.has_value());
    CHECK(gd.stage1->block_indices.size() == 1); // one building block
    REQUIRE(gd.stage1->summands.size() == 2);
    CHECK(gd.stage1->summands[0].space == Ca);
    CHECK(gd.stage1->summands[1].translate_by == 2); // i
    CHECK(gd.stage1->summands[1].space == Subspace::span(q.K, 2, {q.vec2(1, -1)}));
    CHECK(Ca.sum(gd.stage1->summands[1].space) == Ufull);
    // both pieces are H-simple lines: M = S1 (+) g2 S1
    CHECK(gd.stage1->summands[0].space.dim() == 1);
    CHECK(gd.stage1->summands[1].space.dim() == 1);
    REQUIRE(gd.nodes.size() == 1);
    CHECK(gd.nodes[0].chain.levels == std::vector<Subspace>{Ufull, Ca, q.Zero2});
    CHECK(gd.level_sum_matches == std::vector<bool>{true});
    CHECK(gd.direct_level == 1);
}

TEST_CASE("going up splits induced fragments into certified translates") {
    auto q = fx::q8();
    ModulePtr UH = uh_i(q);
    ModulePtr UHj = uh_j(q);
    InductionContext ctxI = induction_context(*q.G, q.chain, q.Z4i);
    InductionContext ctxJ = induction_context(*q.G, q.chain, q.Z4j);
    CHECK(ctxI.Hchain.groups == std::vector<ElemList>{{0}, {0, 1}, q.Z4i});

    Subspace Ufull = Subspace::full(q.K, 2);
    Subspace Cf1u = Subspace::span(q.K, 2, {q.vec2(1, 0)});
    Subspace Cau = Subspace::span(q.K, 2, {q.vec2(1, 1)});
    Subspace Ce1u = Subspace::span(q.K, 2, {q.vec2(1, 0, 0, 1)});

    Fragment N1{UH, ctxI.Hchain, {Cf1u, Cf1u, Cf1u, q.Zero2}};
    Fragment N2{UH, ctxI.Hchain, {Ufull, Cau, Cau, q.Zero2}};
    Fragment N3{UHj, ctxJ.Hchain, {Ce1u, Ce1u, Ce1u, q.Zero2}};
    Fragment N4{UHj, ctxJ.Hchain, {Ufull, Ufull, Cf1u, q.Zero2}};

    auto check_report = [](const GoingUpReport& gu, std::size_t expected) {
        CHECK(gu.summands.size() == expected);
        CHECK(gu.summands_valid);
        for (const auto& c : gu.certificates)
            CHECK(c.status == CertificateResult::Status::Certified);
        CHECK(gu.pairwise_direct_at_top);
        CHECK(gu.all_levels_match);
        for (bool okay : gu.level_sum_matches) CHECK(okay);
    };

    for (const Fragment* N : {&N1, &N2, &N3, &N4}) {
        const InductionContext& ctx = (N == &N1 || N == &N2) ? ctxI : ctxJ;
        REQUIRE(check_fragment(*N).valid);
        REQUIRE(irreducible_certificate(*N).status == CertificateResult::Status::Certified);
        GoingUpReport gu = going_up(q.G, q.chain, ctx, *N);
        check_report(gu, 2); // [G:H] = 2
        // independent reconstruction check: summand levels sum to the induced
        // levels, and the deepest levels meet trivially
        for (unsigned lvl = 0; lvl < gu.induced.fragment.levels.size(); ++lvl)
            CHECK(gu.summands[0].level(lvl).sum(gu.summands[1].level(lvl)) ==
                  gu.induced.fragment.level(lvl));
        unsigned d = q.chain.depth();
        CHECK(gu.summands[0].level(d).intersect(gu.summands[1].level(d)).is_zero());
    }

    // [G:H] = 1: the induced fragment is its own single summand
    InductionContext ctxFull = induction_context(*q.G, q.chain, q.all8);
    Fragment MF{q.Omega, ctxFull.Hchain, q.M.levels};
    GoingUpReport guF = going_up(q.G, q.chain, ctxFull, MF);
    CHECK(guF.summands.size() == 1);
    CHECK(guF.summands[0].levels == guF.induced.fragment.levels);
    CHECK(guF.all_levels_match);
    CHECK(guF.pairwise_direct_at_top);

    // inputs must be certified irreducible
    Fragment Nfat{UH, ctxI.Hchain, {Ufull, Ufull, Ufull, q.Zero2}};
    CHECK(fx::code_of([&] { going_up(q.G, q.chain, ctxI, Nfat); }) ==
          "NotCertifiedIrreducible");
}

TEST_CASE("going up over the dihedral chain") {
    auto d = fx::d8();
    InductionContext ctxD = induction_context(*d.G, d.chain, d.HD);
    CHECK(ctxD.Hchain.groups == std::vector<ElemList>{{0}, {0, 2}, d.HD});

    Subspace Ufull = Subspace::full(d.K, 2);
    Subspace Cs = Subspace::span(d.K, 2, {d.vec2(1, 1)});
    Subspace Cf1u = Subspace::span(d.K, 2, {d.vec2(1, 0)});
    Subspace Zero2(d.K, 2);
    Fragment N5{d.SHD, ctxD.Hchain, {Cs, Cs, Cs, Zero2}};
    Fragment N6{d.SHD, ctxD.Hchain, {Ufull, Cf1u, Cf1u, Zero2}};
    for (const Fragment* N : {&N5, &N6}) {
        REQUIRE(check_fragment(*N).valid);
        GoingUpReport gu = going_up(d.G, d.chain, ctxD, *N);
        CHECK(gu.summands.size() == 2);
        CHECK(gu.summands_valid);
        CHECK(gu.pairwise_direct_at_top);
        CHECK(gu.all_levels_match);
        for (const auto& c : gu.certificates)
            CHECK(c.status == CertificateResult::Status::Certified);
    }
}

TEST_CASE("decomposition groups") {
    auto q = fx::q8();
    Subspace Ce1u = Subspace::span(q.K, 2, {q.vec2(1, 0, 0, 1)});
    Subspace Cf1u = Subspace::span(q.K, 2, {q.vec2(1, 0)});
    Subspace Ufull = Subspace::full(q.K, 2);

    DecompositionGroup dg0 = decomposition_group(*q.Omega, q.Ce1, q.Z2, q.Z4j);
    CHECK(dg0.group == q.Z4j);
    CHECK(dg0.isotypic == q.Ce1);
    CHECK(dg0.generated == q.Ce1);

    CHECK(decomposition_group(*q.U, Ce1u, q.Z2, q.Z4j).group == q.Z4j);

    // the [1:0] line inside U: stage 1 stabilizes everything (isotypic = U),
    // stage 2 only Z4^i keeps the line's class
    DecompositionGroup dgB1 = decomposition_group(*q.U, Cf1u, q.Z2, q.Z4j);
    CHECK(dgB1.group == q.Z4j);
    CHECK(dgB1.isotypic == Ufull);
    DecompositionGroup dgB2 = decomposition_group(*q.U, Cf1u, q.Z4i, q.all8);
    CHECK(dgB2.group == q.Z4i);
    CHECK(dgB2.isotypic == Cf1u);

    // the stabilizer always contains H_sub and really stabilizes R
    for (unsigned g : dgB2.group) {
        CHECK(conjugate_submodule(*q.U, g, dgB2.isotypic) == dgB2.isotypic);
    }

    auto d = fx::d8();
    Subspace Cs = Subspace::span(d.K, 2, {d.vec2(1, 1)});
    CHECK(fx::code_of([&] { decomposition_group(*d.S, Cs, {0, 4}, d.allD); }) ==
          "NotNormal");
}

TEST_CASE("building blocks per stage") {
    auto q = fx::q8();
    BuildingBlockSet bb1 = building_blocks(q.M, q.Z4i, 1, q.cats);
    CHECK(bb1.stage == 1);
    REQUIRE(bb1.block_indices.size() == 2);
    CHECK(bb1.summands[bb1.block_indices[0]].space == q.Ce1);
    CHECK(bb1.summands[bb1.block_indices[1]].space ==
          Subspace::span(q.K, 4, {q.vec4(0, 0, 1, 1)}));

    BuildingBlockSet bb2 = building_blocks(q.M, q.Z4i, 2, q.cats);
    REQUIRE(bb2.block_indices.size() == 3);
    CHECK(bb2.block_is_full_module == std::vector<bool>{true, true, false});
    // every summand is covered by a block via some translating element
    for (const StageSummand& s : bb2.summands) {
        CHECK(s.covered_by < bb2.block_indices.size());
    }

    CHECK(fx::code_of([&] { building_blocks(q.M, q.Z4i, 1, {}); }) == "CatalogMissing");
    Fragment fat{q.Omega, q.chain, {q.M0, q.M0, q.M0, q.Zero4}};
    CHECK(fx::code_of([&] { going_down(fat, q.Z4i, q.cats); }) == "NotCertifiedIrreducible");
}

TEST_CASE("factor sets of stabilized simple modules") {
    auto q = fx::q8();
    Subspace Cf1u = Subspace::span(q.K, 2, {q.vec2(1, 0)});
    Subspace Ufull = Subspace::full(q.K, 2);

    FactorSet fs = factor_set(*q.U, Cf1u, q.Z2, q.Z4i);
    CHECK(fs.reps == ElemList{0, 2});
    CHECK(fs.alpha[0][0] == q.one);
    CHECK(fs.alpha[0][1] == q.one);
    CHECK(fs.alpha[1][0] == q.one);
    CHECK(fs.alpha[1][1] == -q.one);
    CHECK(fs.identity_normalized);
    CHECK(fs.cocycle_identity);
    // each intertwiner satisfies P_t rho(h) = rho(t h t^-1) P_t
    for (std::size_t a = 0; a < fs.reps.size(); ++a)
        for (unsigned h : q.Z2)
            CHECK(fs.intertwiner[a] * q.U->act(h) ==
                  q.U->act(q.G->conj(fs.reps[a], h)) * fs.intertwiner[a]);
    // alpha is a coboundary over the 4th roots of unity: alpha(a,b) = c_a c_b / c_ab
    std::vector<CycNumber> c = {q.one, q.I};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            CHECK(fs.alpha[a][b] == c[a] * c[b] / c[(a + b) % 2]);

    FactorSet fsH = factor_set(*q.U, Cf1u, q.Z2, q.Z2);
    CHECK(fsH.reps == ElemList{0});
    CHECK(fsH.alpha[0][0] == q.one);

    CHECK(fx::code_of([&] { factor_set(*q.U, Cf1u, q.Z4i, q.all8); }) == "NotStabilized");
    CHECK(fx::code_of([&] { factor_set(*q.U, Ufull, q.Z2, q.Z4i); }) == "IntertwinerNotUnique");

    // Klein four-group inside D8: the split case, alpha identically 1
    auto d = fx::d8();
    Subspace Cf1d = Subspace::span(d.K, 2, {d.vec2(1, 0)});
    FactorSet fsD = factor_set(*d.S, Cf1d, d.Z2a2, d.HD);
    CHECK(fsD.reps == ElemList{0, 4});
    for (const auto& row : fsD.alpha)
        for (const CycNumber& v : row) CHECK(v == d.one);
    CHECK(fsD.identity_normalized);
    CHECK(fsD.cocycle_identity);
}

TEST_CASE("catalog lookup by subgroup") {
    auto q = fx::q8();
    CHECK(catalog_for(q.cats, q.Z4i).subgroup_name == "Z4i");
    CHECK(catalog_for(q.cats, ElemList{1, 0}).subgroup_name == "Z2"); // set equality
    CHECK(fx::code_of([&] { catalog_for(q.cats, q.Z4j); }) == "CatalogMissing");
}
