#include "glider/clifford.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <utility>

#include "glider/error.hpp"

namespace glider {

namespace {

std::set<unsigned> as_set(const ElemList& v) { return {v.begin(), v.end()}; }

bool member(const ElemList& v, unsigned g) {
    return std::find(v.begin(), v.end(), g) != v.end();
}

Subspace zero_space(const FieldPtr& field, std::size_t ambient) {
    return Subspace(field, ambient);
}

/// Row-major position of the first nonzero entry; the matrix must be nonzero.
std::pair<std::size_t, std::size_t> first_nonzero(const FMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) return {r, c};
    assert(false && "first_nonzero on a zero matrix");
    return {0, 0};
}

FMatrix gauge_first_one(const FMatrix& m) {
    auto [r, c] = first_nonzero(m);
    return m.scaled(m.at(r, c).inverse());
}

} // namespace

const IrrepCatalog& catalog_for(const std::vector<IrrepCatalog>& catalogs,
                                const ElemList& subgroup) {
    const auto want = as_set(subgroup);
    for (const auto& cat : catalogs)
        if (as_set(cat.support) == want) return cat;
    fail("CatalogMissing", "no irreducible catalog covers a subgroup of order " +
                               std::to_string(subgroup.size()));
}

/// --- going up -------------------------------------------------------------

GoingUpReport going_up(GroupPtr G, const SubgroupChain& Gchain, const InductionContext& ctx,
                       const Fragment& N) {
    CertificateResult cert = irreducible_certificate(N);
    require(cert.status == CertificateResult::Status::Certified, "NotCertifiedIrreducible",
            "going up needs a certified-irreducible fragment; certificate says: " +
                (cert.note.empty() ? std::string("refuted/inconclusive") : cert.note));
    const unsigned d = Gchain.depth();
    require(N.level(d).dim() == 1, "NotCertifiedIrreducible",
            "going up needs a one-dimensional deepest level, got dimension " +
                std::to_string(N.level(d).dim()));

    GoingUpReport rep{induce(G, Gchain, ctx, N), {}, {}, false, false, {}, false};
    const GModule& big = *rep.induced.fragment.ambient;
    const Vec a = N.level(d).basis().front();
    const std::size_t declared = rep.induced.fragment.levels.size() - 1;

    rep.summands_valid = true;
    for (std::size_t p = 0; p < rep.induced.mod.blocks(); ++p) {
        const Vec ta = rep.induced.mod.embed_vec(p, a);
        Fragment F;
        F.ambient = rep.induced.fragment.ambient;
        F.chain = Gchain;
        for (unsigned k = 0; k <= d; ++k)
            F.levels.push_back(module_generated(big, Gchain.at(d - k), {ta}));
        while (F.levels.size() <= declared)
            F.levels.push_back(zero_space(big.field(), big.dim()));
        rep.summands_valid = rep.summands_valid && check_fragment(F).valid;
        rep.certificates.push_back(irreducible_certificate(F));
        rep.summands.push_back(std::move(F));
    }

    rep.pairwise_direct_at_top = true;
    for (std::size_t p = 0; p < rep.summands.size(); ++p)
        for (std::size_t q = p + 1; q < rep.summands.size(); ++q) {
            DirectSumResult ds = direct_sum_check(rep.summands[p], rep.summands[q], d);
            rep.pairwise_direct_at_top = rep.pairwise_direct_at_top && ds.direct;
        }

    rep.all_levels_match = true;
    for (std::size_t j = 0; j <= declared; ++j) {
        Subspace s = zero_space(big.field(), big.dim());
        for (const Fragment& F : rep.summands) s = s.sum(F.levels[j]);
        const bool ok = s == rep.induced.fragment.levels[j];
        rep.level_sum_matches.push_back(ok);
        rep.all_levels_match = rep.all_levels_match && ok;
    }
    return rep;
}

/// --- decomposition groups ---------------------------------------------------

DecompositionGroup decomposition_group(const GModule& M, const Subspace& S,
                                       const ElemList& H_sub, const ElemList& G_sub) {
    const Group& G = *M.group();
    require(is_normal_under(G, H_sub, G_sub), "NotNormal",
            "decomposition groups need the small subgroup normal in the big one");

    DecompositionGroup out;
    out.generated = module_generated(M, H_sub, S);
    if (out.generated.is_zero()) {
        // Degenerate: every translate is 0, so the stabilizer is everything.
        out.isotypic = out.generated;
        out.group = G_sub;
        return out;
    }
    const GModule A = restricted_module(M, H_sub, out.generated);

    out.isotypic = zero_space(M.field(), M.dim());
    std::vector<Subspace> seen;
    for (unsigned t : G_sub) {
        Subspace tV = conjugate_submodule(M, t, out.generated);
        if (std::find(seen.begin(), seen.end(), tV) != seen.end()) continue;
        seen.push_back(tV);
        const GModule B = restricted_module(M, H_sub, tV);
        if (modules_isomorphic(A, B, H_sub)) out.isotypic = out.isotypic.sum(tV);
    }

    for (unsigned g : G_sub)
        if (conjugate_submodule(M, g, out.isotypic) == out.isotypic) out.group.push_back(g);

    assert(is_subgroup(G, out.group) && "stabilizer of a subspace must be a subgroup");
    for (unsigned h : H_sub)
        assert(member(out.group, h) && "the stabilizer contains the acting subgroup");
    return out;
}

/// --- building blocks --------------------------------------------------------

namespace {

/// Core stage routine: decompose V = K G_i P against W = K H_i P and pick
/// blocks.  Requires H_i normal in G_i (checked) and P nonzero.
BuildingBlockSet stage_blocks(const GModule& M, unsigned stage, const ElemList& Hi,
                              const ElemList& Gi, const Subspace& parent,
                              const IrrepCatalog& cat) {
    require(is_normal_under(*M.group(), Hi, Gi), "NotNormal",
            "stage decomposition needs H_i normal in G_i");

    BuildingBlockSet out;
    out.stage = stage;
    out.seed = module_generated(M, Hi, parent);
    out.target = module_generated(M, Gi, parent);

    for (const SimplePiece& sp : split_isotypic(M, Hi, out.seed, cat)) {
        StageSummand su;
        su.space = sp.space;
        su.isotype = sp.name;
        su.from_seed = true;
        out.summands.push_back(std::move(su));
    }
    out.seed_count = out.summands.size();

    // Fill the rest of the target with independent G_i-translates of the
    // seed simples, in declared element order.
    Subspace cur = out.seed;
    if (cur != out.target) {
        for (unsigned g : Gi) {
            for (std::size_t k = 0; k < out.seed_count && cur != out.target; ++k) {
                Subspace piece = conjugate_submodule(M, g, out.summands[k].space);
                if (!cur.intersect(piece).is_zero()) continue;
                cur = cur.sum(piece);
                StageSummand su;
                su.space = std::move(piece);
                su.isotype = cat.entries[cat.identify(M, su.space)].name;
                su.from_seed = false;
                su.translate_of = k;
                su.translate_by = g;
                out.summands.push_back(std::move(su));
            }
            if (cur == out.target) break;
        }
        require(cur == out.target, "CoverageFailure",
                "independent translates of the seed simples do not fill the stage "
                "target; the input fragment admits a proper subfragment and is not "
                "irreducible");
    }
    std::size_t dim_sum = 0;
    for (const StageSummand& su : out.summands) dim_sum += su.space.dim();
    assert(dim_sum == out.target.dim() && "stage summands are direct by construction");

    // Blocks: every full G_i-module seed first, then a representative of
    // every conjugate-equivalence class not yet covered (seed order).
    for (std::size_t k = 0; k < out.seed_count; ++k)
        if (is_invariant(M, Gi, out.summands[k].space)) {
            out.block_indices.push_back(k);
            out.block_is_full_module.push_back(true);
        }
    auto covered_by_blocks = [&](const Subspace& sp) {
        const GModule A = restricted_module(M, Hi, sp);
        for (std::size_t b = 0; b < out.block_indices.size(); ++b)
            for (unsigned g : Gi) {
                Subspace gB =
                    conjugate_submodule(M, g, out.summands[out.block_indices[b]].space);
                if (modules_isomorphic(A, restricted_module(M, Hi, gB), Hi)) return true;
            }
        return false;
    };
    for (std::size_t k = 0; k < out.seed_count; ++k) {
        if (std::find(out.block_indices.begin(), out.block_indices.end(), k) !=
            out.block_indices.end())
            continue;
        if (covered_by_blocks(out.summands[k].space)) continue;
        out.block_indices.push_back(k);
        out.block_is_full_module.push_back(false);
    }

    // Coverage witness for every summand of the target decomposition.
    for (StageSummand& su : out.summands) {
        const GModule A = restricted_module(M, Hi, su.space);
        bool found = false;
        for (std::size_t b = 0; b < out.block_indices.size() && !found; ++b)
            for (unsigned g : Gi) {
                Subspace gB =
                    conjugate_submodule(M, g, out.summands[out.block_indices[b]].space);
                if (modules_isomorphic(A, restricted_module(M, Hi, gB), Hi)) {
                    su.covered_by = b;
                    su.cover_g = g;
                    found = true;
                    break;
                }
            }
        require(found, "CoverageFailure",
                "a simple summand of isotype '" + su.isotype +
                    "' is not G_i-conjugate-equivalent to any building block; the "
                    "input fragment admits a proper subfragment and is not irreducible");
    }
    return out;
}

} // namespace

BuildingBlockSet building_blocks(const Fragment& M, const ElemList& H, unsigned stage,
                                 const std::vector<IrrepCatalog>& catalogs) {
    const unsigned d = M.chain.depth();
    require(stage >= 1 && stage <= d, "LevelOutOfRange",
            "stage must lie between 1 and the chain depth");
    CertificateResult cert = irreducible_certificate(M);
    require(cert.status == CertificateResult::Status::Certified, "NotCertifiedIrreducible",
            "building blocks need a certified-irreducible fragment");

    const SubgroupChain Hchain = intersect_chain(M.chain, H);
    const ElemList& Hi = Hchain.at(stage);
    const ElemList& Gi = M.chain.at(stage);
    const IrrepCatalog& cat = catalog_for(catalogs, Hi);

    BuildingBlockSet out =
        stage_blocks(*M.ambient, stage, Hi, Gi, M.level(d - stage + 1), cat);
    assert(out.target == M.level(d - stage) &&
           "certified fragments satisfy K G_i M_{d-i+1} = M_{d-i}");
    return out;
}

/// --- going down -------------------------------------------------------------

namespace {

struct DownContext {
    const GModule& M; ///< ambient over the full group
    const SubgroupChain& Gchain;
    const SubgroupChain& Hchain;
    const std::vector<IrrepCatalog>& catalogs;
    ModulePtr restricted_ambient;
    std::size_t declared; ///< of the input fragment
    unsigned d;
};

/// M(S) for a stage-i block S with the given ancestor blocks (ancestors[k]
/// is the stage-k block on the path; ancestors[0] spans M_d).
Fragment node_chain(const DownContext& C, unsigned i, const std::vector<Subspace>& ancestors,
                    const Subspace& S) {
    Fragment F;
    F.ambient = C.restricted_ambient;
    F.chain = C.Hchain;
    const Subspace KGiS = module_generated(C.M, C.Gchain.at(i), S);
    for (unsigned j = 0; j + i <= C.d; ++j)
        F.levels.push_back(module_generated(C.M, C.Gchain.at(C.d - j), S));
    for (unsigned m = 1; m <= i; ++m) {
        const Subspace& P = ancestors[i - m];
        F.levels.push_back(module_generated(C.M, C.Gchain.at(i - m), P).intersect(KGiS));
    }
    while (F.levels.size() <= C.declared)
        F.levels.push_back(zero_space(C.M.field(), C.M.dim()));

    FragmentReport chk = check_fragment(F);
    require(chk.valid, "PreconditionFailure",
            "a derived block chain fails the fragment axioms — the input lies outside "
            "the going-down hypotheses: " +
                (chk.violations.empty() ? std::string("unknown")
                                        : chk.violations.front().describe(*C.M.group())));
    return F;
}

DecompositionNode build_node(const DownContext& C, unsigned i,
                             std::vector<Subspace>& ancestors, const StageSummand& su,
                             bool full_module) {
    DecompositionNode node;
    node.stage = i;
    node.block = su.space;
    node.isotype = su.isotype;
    node.full_stage_module = full_module;
    node.chain = node_chain(C, i, ancestors, su.space);
    node.dec_group = decomposition_group(C.M, su.space, C.Hchain.at(i), C.Gchain.at(i)).group;

    if (i < C.d) {
        const ElemList& Hnext = C.Hchain.at(i + 1);
        InterStageData inter;
        inter.next_generated = module_generated(C.M, Hnext, su.space);
        inter.next_stage_group =
            decomposition_group(C.M, su.space, Hnext, C.Gchain.at(i + 1)).group;

        DecompositionGroup stab = decomposition_group(C.M, su.space, C.Hchain.at(i), Hnext);
        inter.stabilizer = stab.group;
        const GModule R = restricted_module(C.M, stab.group, stab.isotypic);
        inter.isotypic_simple = homdim(R, R, stab.group) == 1;
        inter.embedding_module = module_generated(C.M, stab.group, su.space);
        if (inter.isotypic_simple) {
            inter.refined_stabilizer = stab.group;
        } else {
            for (unsigned h : Hnext)
                if (conjugate_submodule(C.M, h, inter.embedding_module) ==
                    inter.embedding_module)
                    inter.refined_stabilizer.push_back(h);
        }
        const GModule V =
            restricted_module(C.M, inter.refined_stabilizer, inter.embedding_module);
        inter.embedding_simple = homdim(V, V, inter.refined_stabilizer) == 1;

        inter.inside_single_simple = false;
        for (const SimplePiece& sp : split_isotypic(C.M, Hnext, inter.next_generated,
                                                    catalog_for(C.catalogs, Hnext)))
            if (sp.space.contains(su.space)) inter.inside_single_simple = true;
        node.inter = std::move(inter);

        node.child_blocks = stage_blocks(C.M, i + 1, Hnext, C.Gchain.at(i + 1), su.space,
                                         catalog_for(C.catalogs, Hnext));
        ancestors.push_back(su.space);
        for (std::size_t b = 0; b < node.child_blocks->block_indices.size(); ++b)
            node.children.push_back(
                build_node(C, i + 1, ancestors,
                           node.child_blocks->summands[node.child_blocks->block_indices[b]],
                           node.child_blocks->block_is_full_module[b]));
        ancestors.pop_back();
    }
    return node;
}

} // namespace

GoingDownResult going_down(const Fragment& M, const ElemList& H,
                           const std::vector<IrrepCatalog>& catalogs) {
    require_valid(M, "going_down");
    CertificateResult cert = irreducible_certificate(M);
    require(cert.status == CertificateResult::Status::Certified, "NotCertifiedIrreducible",
            "going down needs a certified-irreducible fragment; certificate says: " +
                (cert.note.empty() ? std::string("refuted/inconclusive") : cert.note));
    const unsigned d = M.chain.depth();
    require(M.level(d).dim() == 1, "NotCertifiedIrreducible",
            "going down needs a one-dimensional deepest level, got dimension " +
                std::to_string(M.level(d).dim()));

    GoingDownResult out;
    out.restricted = restrict_fragment(M, H);
    const SubgroupChain& Hchain = out.restricted.chain;
    const Group& G = *M.ambient->group();
    for (unsigned i = 1; i <= d; ++i)
        require(is_normal_under(G, Hchain.at(i), M.chain.groups.back()), "NotNormal",
                "every restricted chain member must be normal in the whole group");

    out.restricted_certificate = irreducible_certificate(out.restricted);
    if (out.restricted_certificate.status == CertificateResult::Status::Certified) {
        out.restricted_irreducible = true;
        return out;
    }

    DownContext C{*M.ambient, M.chain,          Hchain, catalogs,
                  out.restricted.ambient, M.levels.size() - 1, d};
    out.stage1 = stage_blocks(C.M, 1, Hchain.at(1), M.chain.at(1), M.level(d),
                              catalog_for(catalogs, Hchain.at(1)));

    std::vector<Subspace> ancestors{M.level(d)};
    for (std::size_t b = 0; b < out.stage1->block_indices.size(); ++b)
        out.nodes.push_back(build_node(C, 1, ancestors,
                                       out.stage1->summands[out.stage1->block_indices[b]],
                                       out.stage1->block_is_full_module[b]));

    // Levelwise reconstruction of M_H from the stage-1 chains (levels 0..d-1),
    // plus the honest level-d report: the deepest level need not be rebuilt.
    for (unsigned j = 0; j < d; ++j) {
        Subspace s = zero_space(C.M.field(), C.M.dim());
        std::size_t dim_sum = 0;
        for (const DecompositionNode& n : out.nodes) {
            s = s.sum(n.chain.levels[j]);
            dim_sum += n.chain.levels[j].dim();
        }
        out.level_sum_matches.push_back(s == out.restricted.level(j));
        out.level_overlaps.push_back(dim_sum - s.dim());
    }
    {
        Subspace s = zero_space(C.M.field(), C.M.dim());
        for (const DecompositionNode& n : out.nodes) s = s.sum(n.chain.levels[d]);
        out.top_level_sum_matches = s == out.restricted.level(d);
    }

    unsigned min_el = ~0u;
    for (const DecompositionNode& n : out.nodes)
        min_el = std::min(min_el, n.chain.essential_length());
    for (int lvl = (int)min_el; lvl >= 0 && out.direct_level < 0; --lvl) {
        bool all = true;
        for (std::size_t p = 0; p < out.nodes.size() && all; ++p)
            for (std::size_t q = p + 1; q < out.nodes.size() && all; ++q)
                all = out.nodes[p]
                          .chain.levels[lvl]
                          .intersect(out.nodes[q].chain.levels[lvl])
                          .is_zero();
        if (all) out.direct_level = lvl;
    }
    return out;
}

/// --- factor sets ------------------------------------------------------------

FactorSet factor_set(const GModule& M, const Subspace& S, const ElemList& H,
                     const ElemList& Gprime, ElemList reps) {
    const Group& G = *M.group();
    require(is_subgroup(G, H), "NotSubgroup", "H must be a subgroup");
    require(is_subgroup(G, Gprime), "NotSubgroup", "G' must be a subgroup");
    const auto gset = as_set(Gprime);
    for (unsigned h : H)
        require(gset.count(h) != 0, "NotSubgroup", "H must be contained in G'");
    require(is_normal_under(G, H, Gprime), "NotNormal",
            "factor sets need H normal in G' (conjugation must act on H)");

    const GModule A = restricted_module(M, H, S);
    const auto hset = as_set(H);

    if (reps.empty()) {
        reps.push_back(G.identity());
        for (unsigned g : Gprime) {
            bool covered = false;
            for (unsigned r : reps)
                if (hset.count(G.mul(G.inverse(r), g))) { covered = true; break; }
            if (!covered) reps.push_back(g);
        }
    } else {
        require(reps.front() == G.identity(), "PreconditionFailure",
                "an explicit transversal must lead with the identity");
        for (unsigned r : reps)
            require(gset.count(r) != 0, "PreconditionFailure",
                    "transversal representatives must lie in G'");
        for (std::size_t a = 0; a < reps.size(); ++a)
            for (std::size_t b = a + 1; b < reps.size(); ++b)
                require(!hset.count(G.mul(G.inverse(reps[a]), reps[b])), "PreconditionFailure",
                        "transversal representatives must lie in distinct cosets");
    }
    require(reps.size() * H.size() == Gprime.size(), "PreconditionFailure",
            "transversal size times |H| must equal |G'|");

    auto pos_of = [&](unsigned g) -> std::size_t {
        for (std::size_t r = 0; r < reps.size(); ++r)
            if (hset.count(G.mul(G.inverse(reps[r]), g))) return r;
        assert(false && "transversal covers G'");
        return 0;
    };

    FactorSet out;
    out.subgroup = H;
    out.group = Gprime;
    out.reps = reps;

    for (unsigned t : reps) {
        std::vector<FMatrix> mats;
        mats.reserve(H.size());
        for (unsigned h : H) mats.push_back(restricted_matrix(M, G.conj(t, h), S));
        const GModule B = GModule::from_action(M.group(), M.field(), H, std::move(mats));
        const std::vector<FMatrix> space = intertwiners(A, B, H);
        require(!space.empty(), "NotStabilized",
                "the conjugate of S by '" + G.label(t) + "' is not equivalent to S");
        require(space.size() == 1, "IntertwinerNotUnique",
                "the intertwiner space for '" + G.label(t) + "' has dimension " +
                    std::to_string(space.size()) +
                    "; S must be simple over a splitting field");
        out.intertwiner.push_back(gauge_first_one(space.front()));
    }

    const std::size_t n = reps.size();
    out.alpha.assign(n, std::vector<CycNumber>(n, CycNumber::one(M.field())));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const unsigned tab = G.mul(reps[a], reps[b]);
            const std::size_t c = pos_of(tab);
            const unsigned hab = G.mul(G.inverse(reps[c]), tab);
            const FMatrix lhs = out.intertwiner[a] * out.intertwiner[b];
            const FMatrix rhs = out.intertwiner[c] * restricted_matrix(M, hab, S);
            auto [r, cc] = first_nonzero(rhs);
            const CycNumber sc = lhs.at(r, cc) / rhs.at(r, cc);
            assert(lhs == rhs.scaled(sc) && "intertwiner products are proportional");
            assert(!sc.is_zero() && "factor-set values are nonzero");
            out.alpha[a][b] = sc;
        }

    const CycNumber one = CycNumber::one(M.field());
    out.identity_normalized = true;
    for (std::size_t a = 0; a < n; ++a)
        out.identity_normalized = out.identity_normalized && out.alpha[0][a] == one &&
                                  out.alpha[a][0] == one;

    out.cocycle_identity = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const CycNumber l =
                    out.alpha[a][b] * out.alpha[pos_of(G.mul(reps[a], reps[b]))][c];
                const CycNumber r =
                    out.alpha[b][c] * out.alpha[a][pos_of(G.mul(reps[b], reps[c]))];
                out.cocycle_identity = out.cocycle_identity && l == r;
            }
    return out;
}

} // namespace glider
