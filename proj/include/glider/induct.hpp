#pragma once

#include "glider/fragment.hpp"

namespace glider {

/// The induced module K T (x) N laid out as |T| blocks of dim(N) each, in
/// the order of the transversal's top representative list.  An element g
/// sends block t to block sigma(g t) acting inside by rho_N(sigma(g t)^-1 g t).
struct InducedModule {
    ModulePtr module;
    Transversal T;
    std::size_t inner_dim = 0;

    std::size_t blocks() const { return T.top().size(); }
    Vec embed_vec(std::size_t block_pos, const Vec& v) const;
    /// t (x) W for the representative at block_pos.
    Subspace embed(std::size_t block_pos, const Subspace& W) const;
    /// K T (x) W: the same inner subspace placed in every block.
    Subspace spread(const Subspace& W) const;
};

/// A fragment induced along a transversal, levels M_j = K T (x) N_j.
struct InducedFragment {
    InducedModule mod;
    Fragment fragment; ///< over the big chain
};

/// Induces the module along ctx's transversal.  The block action is checked
/// against the cocycle factorization h(sigma(g)~, t~) * (t^-1 (sigma(g)^-1 g) t)
/// and the result is verified as a homomorphism on every pair.
InducedModule induce_module(GroupPtr G, const SubgroupChain& Gchain, const InductionContext& ctx,
                            const GModule& N);

/// Induces a fragment over ctx.Hchain to one over Gchain.  Requires a valid
/// input fragment and a filtered cocycle (CocycleNotFiltered); the output
/// fragment is re-verified against the axioms and its body is checked to be
/// K T (x) body(N).
InducedFragment induce(GroupPtr G, const SubgroupChain& Gchain, const InductionContext& ctx,
                       const Fragment& N);

/// Star levels commute with induction: star(N^G, mu) = K T (x) star(N, mu)
/// for every chain level mu, hence N is natural iff N^G is natural.
struct StarLemmaReport {
    std::vector<std::size_t> induced_star_dims;
    std::vector<std::size_t> embedded_star_dims;
    std::vector<bool> equal; ///< per level 0..depth
    bool all_equal = false;
    bool natural_inner = false;
    bool natural_induced = false;
    bool naturality_corollary = false; ///< natural_inner == natural_induced
};
StarLemmaReport star_lemma_check(const InducedFragment& ind, const Fragment& N);

/// Both sides of the restriction of an induced fragment to a second
/// subgroup E: the left side restricts N^G to the E-chain, the right side
/// induces the conjugated fragments u (x) N from (E n H) up to E, one per
/// double-coset representative u.  The block bijection s (x) u (x) n |->
/// su (x) n is checked to be E-equivariant (EquivarianceViolation) and
/// levelwise an equality of subspaces.
struct MackeyReport {
    MackeyData data;
    Fragment left;
    std::vector<Fragment> right;         ///< aligned with data.U_at.back()
    std::vector<std::size_t> block_to_left; ///< right block (u-major, then s) -> left block
    std::vector<bool> level_match;       ///< per level 0..max declared
    bool all_levels_match = false;
};
MackeyReport mackey_decompose(GroupPtr G, const SubgroupChain& Gchain, const ElemList& H,
                              const ElemList& E, const Fragment& N);

} // namespace glider
