#pragma once

#include <optional>

#include "glider/fragment.hpp"
#include "glider/induct.hpp"

namespace glider {

/// The catalog whose support equals `subgroup` as a set (CatalogMissing).
const IrrepCatalog& catalog_for(const std::vector<IrrepCatalog>& catalogs,
                                const ElemList& subgroup);

/// --- going up -------------------------------------------------------------
///
/// Splits the induced fragment N^G of an irreducible depth-d fragment N with
/// one-dimensional deepest level N_d = Ka into [G:H] summands, one per
/// transversal rep t: the chain KG(t o a) >= KG_{d-1}(t o a) >= ... >= K(t o a),
/// each a certified-irreducible fragment over the big chain.

struct GoingUpReport {
    InducedFragment induced;
    std::vector<Fragment> summands; ///< aligned with the transversal reps
    std::vector<CertificateResult> certificates;
    bool summands_valid = false;          ///< every summand passes check_fragment
    bool pairwise_direct_at_top = false;  ///< distinct level-d spaces meet in 0
    std::vector<bool> level_sum_matches;  ///< per level: sum of summands == induced
    bool all_levels_match = false;
};

/// Errors: NotCertifiedIrreducible (N not certified, or dim N_d != 1),
/// CocycleNotFiltered, plus everything `induce` can raise.
GoingUpReport going_up(GroupPtr G, const SubgroupChain& Gchain, const InductionContext& ctx,
                       const Fragment& N);

/// --- decomposition groups ---------------------------------------------------
///
/// For an H_sub-submodule S with H_sub normal in G_sub: V' = K H_sub S, R =
/// the sum of all G_sub-translates t V' that are equivalent to V' as
/// H_sub-modules, and the stabilizer {g in G_sub : g R = R}.  The stabilizer
/// is a subgroup containing H_sub (asserted).

struct DecompositionGroup {
    Subspace generated; ///< V' = K H_sub S
    Subspace isotypic;  ///< R, the sum of the equivalent translates
    ElemList group;     ///< {g in G_sub : g R = R}, G_sub declared order
};

/// S may be any subspace; its H_sub-closure V' is what gets translated.
/// Errors: NotNormal (H_sub not normal in G_sub).
DecompositionGroup decomposition_group(const GModule& M, const Subspace& S,
                                       const ElemList& H_sub, const ElemList& G_sub);

/// --- building blocks --------------------------------------------------------
///
/// Stage-i decomposition of a target space V = K G_i P relative to its seed
/// W = K H_i P: W splits into simple H_i-modules (the seed summands), greedy
/// translates g·seed fill the rest of V (the completion summands), and the
/// blocks are a minimal subset of the seed summands whose G_i-translates
/// cover every summand up to H_i-equivalence.  Full G_i-module summands are
/// always blocks; remaining classes get their first seed representative.

struct StageSummand {
    Subspace space;            ///< simple H_i-submodule
    std::string isotype;       ///< catalog entry name over H_i
    bool from_seed = true;
    std::size_t translate_of = 0; ///< completion only: seed summand index
    unsigned translate_by = 0;    ///< completion only: g with space = g * seed
    std::size_t covered_by = 0;   ///< block index b
    unsigned cover_g = 0;         ///< g in G_i with space equivalent to g * block b
};

struct BuildingBlockSet {
    unsigned stage = 0;  ///< i
    Subspace seed;       ///< W = K H_i P
    Subspace target;     ///< V = K G_i P
    std::vector<StageSummand> summands;      ///< seed pieces first, then completion
    std::size_t seed_count = 0;              ///< how many summands came from W
    std::vector<std::size_t> block_indices;  ///< chosen blocks, as summand indices
    std::vector<bool> block_is_full_module;  ///< aligned: block is a G_i-module
};

/// Public form: parent P = M.level(d - stage + 1) of a certified-irreducible
/// fragment M over the G-chain, target V = K G_i P (equals M.level(d - stage)).
/// Errors: NotCertifiedIrreducible, NotNormal, CatalogMissing, CoverageFailure
/// (a summand no block covers — refutes irreducibility of the input).
BuildingBlockSet building_blocks(const Fragment& M, const ElemList& H, unsigned stage,
                                 const std::vector<IrrepCatalog>& catalogs);

/// --- going down -------------------------------------------------------------
///
/// The full restriction tree: stage-1 building blocks of M_{d-1} relative to
/// K H_1 M_d, then per block S the stage-2 blocks of K G_2 S relative to
/// K H_2 S, and so on to depth d.  Each node carries its chain
///     M(S) = KG S >= KG_{d-1} S >= ... >= KG_i S >= [ancestor meets] >= 0
/// (level d-i+m is K G_{i-m} P^{(i-m)} meet K G_i S over the ancestors
/// P^{(k)}, with P^{(0)} spanning M_d), its decomposition group
/// G'_i = dec(S, H_i, G_i), and the groups tying stage i to stage i+1.

struct InterStageData {
    Subspace next_generated;     ///< K H_{i+1} S
    ElemList next_stage_group;   ///< dec(S, H_{i+1}, G_{i+1})
    ElemList stabilizer;         ///< H' = dec(S, H_i, H_{i+1}): stabilizer of the
                                 ///< equivalence class of S among its H_{i+1}-translates
    bool isotypic_simple = false;///< that class sum is a simple H'-module
    ElemList refined_stabilizer; ///< H'': stabilizer of K H' S when not (else = H')
    Subspace embedding_module;   ///< V = K H' S, the module S embeds into
    bool embedding_simple = false;   ///< V is a simple module over H''
    bool inside_single_simple = false; ///< S lies inside one simple H_{i+1}-summand
                                       ///< of K H_{i+1} S
};

struct DecompositionNode {
    unsigned stage = 0;
    Subspace block;
    std::string isotype;            ///< catalog name over H_i
    bool full_stage_module = false; ///< block is itself a G_i-module
    Fragment chain;                 ///< M(S), a fragment over the H-chain
    ElemList dec_group;             ///< G'_i
    std::optional<InterStageData> inter;          ///< stage < d only
    std::optional<BuildingBlockSet> child_blocks; ///< stage < d only
    std::vector<DecompositionNode> children;      ///< stage i+1 nodes
};

struct GoingDownResult {
    Fragment restricted; ///< M_H over the H-chain
    CertificateResult restricted_certificate;
    bool restricted_irreducible = false; ///< certified: no tree is built
    std::optional<BuildingBlockSet> stage1;
    std::vector<DecompositionNode> nodes; ///< stage-1 roots
    /// Verification of M_H = (+)_S M(S) over the stage-1 nodes:
    std::vector<bool> level_sum_matches;    ///< levels 0..d-1: sums rebuild M_H
    std::vector<std::size_t> level_overlaps;///< per level: sum of dims - dim of sum
    bool top_level_sum_matches = false;     ///< level-d sums (reported, may be false)
    int direct_level = -1; ///< highest common level with pairwise zero meets
};

/// Errors: NotCertifiedIrreducible (M not certified over its chain or
/// dim M_d != 1), NotNormal (some H_i not normal in G), CatalogMissing,
/// CoverageFailure (refutation of irreducibility).
GoingDownResult going_down(const Fragment& M, const ElemList& H,
                           const std::vector<IrrepCatalog>& catalogs);

/// --- factor sets ------------------------------------------------------------
///
/// For a simple H-module S stabilized up to equivalence by G' >= H: one
/// intertwiner P_t per transversal rep t (P_t rho(h) = rho(t h t^-1) P_t,
/// normalized so its first nonzero entry in row-major order is 1), and the
/// scalar table alpha with P_a P_b = alpha(a,b) * P_{sigma(ab)} * rho(h(a,b)).

struct FactorSet {
    ElemList subgroup;           ///< H
    ElemList group;              ///< G'
    ElemList reps;               ///< transversal of H in G', identity first
    std::vector<FMatrix> intertwiner;            ///< aligned with reps
    std::vector<std::vector<CycNumber>> alpha;   ///< alpha[a][b] over rep indices
    bool identity_normalized = false; ///< alpha(1,.) = alpha(.,1) = 1
    bool cocycle_identity = false;    ///< alpha(a,b) alpha(ab,c) = alpha(b,c) alpha(a,bc)
};

/// `reps` may be empty (greedy transversal in G' declared order, identity
/// first).  Errors: NotNormal (H not normal in G'), NotSubgroup,
/// NotStabilized (some t S not equivalent to S), IntertwinerNotUnique
/// (intertwiner space dimension > 1; S not simple or K not splitting),
/// PreconditionFailure (bad explicit transversal).
FactorSet factor_set(const GModule& M, const Subspace& S, const ElemList& H,
                     const ElemList& Gprime, ElemList reps = {});

} // namespace glider
