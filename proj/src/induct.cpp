#include "glider/induct.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace glider {

namespace {

bool same_element_set(const ElemList& a, const ElemList& b) {
    return std::set<unsigned>(a.begin(), a.end()) == std::set<unsigned>(b.begin(), b.end());
}

} // namespace

Vec InducedModule::embed_vec(std::size_t block_pos, const Vec& v) const {
    assert(v.size() == inner_dim && block_pos < blocks());
    Vec out(blocks() * inner_dim, CycNumber::zero(module->field()));
    for (std::size_t k = 0; k < inner_dim; ++k) out[block_pos * inner_dim + k] = v[k];
    return out;
}

Subspace InducedModule::embed(std::size_t block_pos, const Subspace& W) const {
    std::vector<Vec> vecs;
    for (const Vec& b : W.basis()) vecs.push_back(embed_vec(block_pos, b));
    return Subspace::span(module->field(), blocks() * inner_dim, vecs);
}

Subspace InducedModule::spread(const Subspace& W) const {
    Subspace out(module->field(), blocks() * inner_dim);
    for (std::size_t p = 0; p < blocks(); ++p) out = out.sum(embed(p, W));
    return out;
}

InducedModule induce_module(GroupPtr G, const SubgroupChain& Gchain, const InductionContext& ctx,
                            const GModule& N) {
    require(same_element_set(N.support(), ctx.Hchain.groups.back()), "PreconditionFailure",
            "inducing module is not supported on the context's subgroup");
    const Transversal& T = ctx.cocycle.T;
    const ElemList& reps = T.top();
    const std::size_t m = reps.size(), n = N.dim();
    const FieldPtr K = N.field();
    const ElemList& top = Gchain.groups.back();

    std::vector<FMatrix> mats;
    mats.reserve(top.size());
    for (unsigned g : top) {
        FMatrix big(K, m * n, m * n);
        const unsigned t1 = T.rep_of(g);
        const unsigned h1 = G->mul(G->inverse(t1), g);
        for (std::size_t p = 0; p < m; ++p) {
            const unsigned t = reps[p];
            const unsigned gt = G->mul(g, t);
            const unsigned trep = T.rep_of(gt);
            const unsigned hh = G->mul(G->inverse(trep), gt);
            require(N.supports(hh), "PreconditionFailure",
                    "induced block action leaves the subgroup at " + G->label(hh));
            // cocycle factorization of the same element; a mismatch means
            // the transversal and cocycle tables disagree
            assert(hh == G->mul(ctx.cocycle.value(*G, t1, t),
                                G->conj(G->inverse(t), h1)) &&
                   "block action must factor through the cocycle");
            const std::size_t q = T.rep_pos(trep);
            const FMatrix& inner = N.act(hh);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) big.at(q * n + r, p * n + c) = inner.at(r, c);
        }
        mats.push_back(std::move(big));
    }
    InducedModule out;
    out.module = std::make_shared<GModule>(GModule::from_action(G, K, top, std::move(mats)));
    out.T = T;
    out.inner_dim = n;
    return out;
}

InducedFragment induce(GroupPtr G, const SubgroupChain& Gchain, const InductionContext& ctx,
                       const Fragment& N) {
    require(N.chain.groups == ctx.Hchain.groups, "PreconditionFailure",
            "fragment chain differs from the context's subgroup chain");
    require_valid(N, "induce");
    if (!ctx.cocycle.filtered) {
        std::string detail = "section cocycle is not filtered";
        if (ctx.cocycle.witness) {
            const auto& w = *ctx.cocycle.witness;
            detail += ": h(" + G->label(w.rep1) + "~, " + G->label(w.rep2) +
                      "~) escapes chain level " + std::to_string(w.level);
        }
        fail("CocycleNotFiltered", detail);
    }

    InducedFragment out;
    out.mod = induce_module(G, Gchain, ctx, *N.ambient);
    out.fragment.ambient = out.mod.module;
    out.fragment.chain = Gchain;
    for (const Subspace& lv : N.levels) out.fragment.levels.push_back(out.mod.spread(lv));

    FragmentReport rep = check_fragment(out.fragment);
    if (!rep.valid)
        fail("PreconditionFailure", "internal: induced levels fail the fragment axioms: " +
                                        rep.violations.front().describe(*G));
    assert(out.fragment.body() == out.mod.spread(N.body()) &&
           "induced body must be the spread of the inner body");
    return out;
}

StarLemmaReport star_lemma_check(const InducedFragment& ind, const Fragment& N) {
    StarLemmaReport rep;
    const unsigned d = ind.fragment.chain.depth();
    for (unsigned mu = 0; mu <= d; ++mu) {
        Subspace lhs = star(ind.fragment, mu);
        Subspace rhs = ind.mod.spread(star(N, mu));
        rep.induced_star_dims.push_back(lhs.dim());
        rep.embedded_star_dims.push_back(rhs.dim());
        rep.equal.push_back(lhs == rhs);
    }
    rep.all_equal = std::all_of(rep.equal.begin(), rep.equal.end(), [](bool b) { return b; });
    rep.natural_inner = is_natural(N);
    rep.natural_induced = is_natural(ind.fragment);
    rep.naturality_corollary = (rep.natural_inner == rep.natural_induced);
    return rep;
}

MackeyReport mackey_decompose(GroupPtr G, const SubgroupChain& Gchain, const ElemList& H,
                              const ElemList& E, const Fragment& N) {
    MackeyReport rep;
    rep.data = mackey_transversal(*G, Gchain, H, E);

    // left side: induce along the combined transversal T = S U, restrict to E
    InductionContext ctx = induction_context(*G, Gchain, H);
    require(ctx.cocycle.T.top().size() == rep.data.T.top().size(), "PreconditionFailure",
            "internal: transversal sizes disagree");
    // the combined transversal is the one the comparison map needs
    ctx.cocycle = make_cocycle(*G, Gchain, ctx.Hchain, rep.data.T);
    InducedFragment big = induce(G, Gchain, ctx, N);
    rep.left = restrict_fragment(big.fragment, E);

    // right side: for each double-coset representative u, the conjugated
    // fragment u (x) N over E n H, induced up to E
    const ElemList& U = rep.data.U_at.back();
    const ElemList& EH = rep.data.EHchain.groups.back();
    InductionContext ctxE = induction_context(*G, rep.data.Echain, EH);
    const FieldPtr K = N.ambient->field();
    const std::size_t n = N.ambient->dim();

    std::vector<InducedFragment> rights;
    for (unsigned u : U) {
        std::vector<FMatrix> mats;
        for (unsigned x : EH) {
            unsigned cx = G->mul(G->mul(G->inverse(u), x), u);
            require(N.ambient->supports(cx), "PreconditionFailure",
                    "conjugate of " + G->label(x) + " by " + G->label(u) +
                        " leaves the inducing subgroup");
            mats.push_back(N.ambient->act(cx));
        }
        auto Nu = std::make_shared<GModule>(GModule::from_action(G, K, EH, std::move(mats)));
        Fragment Fu{Nu, rep.data.EHchain, N.levels};
        require_valid(Fu, "mackey_decompose (conjugated fragment)");
        rights.push_back(induce(G, rep.data.Echain, ctxE, Fu));
    }

    // block bijection s (x) u (x) n -> su (x) n
    const ElemList& S = rep.data.S.top();
    const std::size_t scount = S.size();
    require(U.size() * scount == rep.data.T.top().size(), "PreconditionFailure",
            "internal: combined transversal size mismatch");
    for (std::size_t a = 0; a < U.size(); ++a)
        for (std::size_t b = 0; b < scount; ++b)
            rep.block_to_left.push_back(rep.data.T.rep_pos(G->mul(S[b], U[a])));

    // assemble the permutation-embedding matrix P with identity inner blocks
    const std::size_t left_dim = rep.left.ambient->dim();
    const std::size_t right_dim = U.size() * scount * n;
    require(left_dim == right_dim, "DimensionMismatch", "Mackey sides have different dimensions");
    FMatrix P(K, left_dim, right_dim);
    for (std::size_t rb = 0; rb < U.size() * scount; ++rb) {
        const std::size_t lb = rep.block_to_left[rb];
        for (std::size_t k2 = 0; k2 < n; ++k2) P.at(lb * n + k2, rb * n + k2) = CycNumber::one(K);
    }

    // right action of k in E: block-diagonal over the u-summands
    auto right_act = [&](unsigned k) {
        FMatrix A(K, right_dim, right_dim);
        for (std::size_t a = 0; a < U.size(); ++a) {
            const FMatrix& inner = rights[a].mod.module->act(k);
            for (std::size_t r = 0; r < scount * n; ++r)
                for (std::size_t c = 0; c < scount * n; ++c)
                    A.at(a * scount * n + r, a * scount * n + c) = inner.at(r, c);
        }
        return A;
    };
    for (unsigned k : E) {
        FMatrix lhs = rep.left.ambient->act(k) * P;
        FMatrix rhs = P * right_act(k);
        if (!(lhs == rhs))
            fail("EquivarianceViolation",
                 "comparison map does not commute with " + G->label(k));
    }

    // levelwise: P(sum of right levels) must equal the left level
    const unsigned top = std::max<unsigned>(
        rep.left.declared(),
        rights.empty() ? 0u : rights.front().fragment.declared());
    for (unsigned j = 0; j <= top; ++j) {
        Subspace rsum(K, right_dim);
        for (std::size_t a = 0; a < U.size(); ++a) {
            std::vector<Vec> shifted;
            for (const Vec& b : rights[a].fragment.level(j).basis()) {
                Vec big2(right_dim, CycNumber::zero(K));
                for (std::size_t k2 = 0; k2 < b.size(); ++k2) big2[a * scount * n + k2] = b[k2];
                shifted.push_back(std::move(big2));
            }
            rsum = rsum.sum(Subspace::span(K, right_dim, shifted));
        }
        rep.level_match.push_back(rsum.image(P) == rep.left.level(j));
    }
    rep.all_levels_match =
        std::all_of(rep.level_match.begin(), rep.level_match.end(), [](bool b) { return b; });

    for (auto& r : rights) rep.right.push_back(std::move(r.fragment));
    return rep;
}

} // namespace glider
