#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glider/gmodule.hpp"

namespace glider {

using ModulePtr = std::shared_ptr<const GModule>;

/// A fragment: a descending system of subspaces M_0 >= M_1 >= ... inside an
/// ambient module, tied to a subgroup chain 1 = C_0 <= ... <= C_d, subject
/// to K C_i * M_j <= M_{j-i} for j >= i.  Levels beyond the declared list
/// are constant (equal to the last declared level); a fragment whose levels
/// eventually vanish declares a trailing zero level.
struct Fragment {
    ModulePtr ambient;
    SubgroupChain chain;
    std::vector<Subspace> levels;

    unsigned declared() const { return (unsigned)levels.size() - 1; } ///< index L of the last declared level
    /// M_k with the constant-tail convention.
    const Subspace& level(unsigned k) const {
        return levels[std::min<std::size_t>(k, levels.size() - 1)];
    }
    /// Intersection of all levels (= the constant tail).
    Subspace body() const;
    /// Largest e with M_e != body; 0 for constant fragments.
    unsigned essential_length() const;

    bool same_shape(const Fragment& o) const; ///< same ambient dims + chain
};

/// Levelwise violation found by check_fragment.
struct FragmentViolation {
    enum class Kind { Descending, Action, Tail } kind;
    unsigned chain_level = 0; ///< i (Action only)
    unsigned level = 0;       ///< j (Descending/Action)
    unsigned element = 0;     ///< g (Action/Tail)
    Vec witness;              ///< vector whose image escapes
    std::string describe(const Group& G) const;
};

/// Full report of the fragment axioms:
///  - descending: M_j <= M_{j-1} for every declared j;
///  - action: rho(g) M_j <= M_{j - level(g)} for every group element g
///    (checked at g's minimal chain level, which implies all higher levels)
///    and every declared j >= level(g);
///  - tail: rho(g) M_L <= M_L for every g, forced by the constant tail.
/// Independently, the star condition K C_mu M_mu <= M_mu^* is re-verified
/// per level as a cross-check (it follows from the axioms).
struct FragmentReport {
    bool valid = false;
    std::vector<FragmentViolation> violations;
    std::vector<std::size_t> level_dims;
    std::vector<std::size_t> star_dims;  ///< dim M_mu^* per declared mu
    std::vector<bool> star_containment;  ///< K C_mu M_mu <= M_mu^* per declared mu
};

FragmentReport check_fragment(const Fragment& F);

/// Throws PreconditionFailure when F fails check_fragment.
void require_valid(const Fragment& F, const std::string& who);

/// M_i^* = {m in M_0 : K C_i m <= M_0}: the largest candidate level-i entry
/// over M_0.  Enumerated over all elements of C_i (generators are not
/// sufficient for this containment).
Subspace star(const Fragment& F, unsigned i);

/// A fragment is natural when M_i = M_i^* for every i <= depth.
bool is_natural(const Fragment& F);

/// N is a subfragment of M: same ambient/chain, valid, and N_j <= M_j for
/// all j.  Throws NotSubfragment with the offending level otherwise.
void subfragment_check(const Fragment& M, const Fragment& N);

/// N is strict in M when N_j = N_0 `meet` M_j for every j.
bool is_strict(const Fragment& M, const Fragment& N, unsigned* bad_level = nullptr);

/// Triviality of a subfragment N <= M.  Checked in priority order:
///  T2: some N_k = 0 while M_k != 0;
///  T1: some N_k equals the N-tail while M_k has not reached the M-tail;
///  T3: N is M with levels re-indexed by a strictly increasing map alpha
///      (alpha found greedily; tails must agree).
struct TrivialityReport {
    bool trivial = false;
    std::string type;                  ///< "T2", "T1", "T3" or "" when nontrivial
    std::optional<unsigned> witness_k; ///< T1/T2 witness level
    std::vector<unsigned> alpha;       ///< T3 re-indexing on declared levels
};
TrivialityReport classify_subfragment(const Fragment& M, const Fragment& N);

/// Irreducibility certificate for fragments with zero body (BodyNonzero
/// otherwise).  Certified when dim M_e = 1 (e the essential length) and
/// M_i = K C_{e-i} M_e for every i <= e; refuted when a verified nontrivial
/// subfragment is exhibited; inconclusive when the canonical witness
/// candidate turned out trivial.
struct CertificateResult {
    enum class Status { Certified, Refuted, Inconclusive } status;
    unsigned essential_length = 0;
    std::optional<Fragment> witness; ///< valid nontrivial subfragment when refuted
    std::string note;
};
CertificateResult irreducible_certificate(const Fragment& F);

/// Drops the first el(F) - depth levels so the essential length fits the
/// chain; NothingToShift when el(F) <= depth.
Fragment shift(const Fragment& F);

/// Level-i direct-sum test: E_i `meet` F_i = 0 (i must be <= both essential
/// lengths — LevelOutOfRange otherwise), plus the levelwise sum fragment.
struct DirectSumResult {
    bool direct = false;
    unsigned level = 0;
    Fragment sum;
};
DirectSumResult direct_sum_check(const Fragment& E, const Fragment& F, unsigned i);

/// Builds a strict complement L of a strict subfragment N <= M:
/// M_j = N_j (+) L_j on every level, L valid and strict.  Works top level
/// down, forcing each L_j to contain all chain translates of the deeper
/// entries; when those forced vectors collide with N the search fails with
/// NotDecomposed — such a collision is exactly the obstruction that can make
/// a complement not exist, and the error text says so.
Fragment strict_complement(const Fragment& M, const Fragment& N);

/// Greedy decomposition into certified irreducible summands by repeatedly
/// peeling cyclic subfragments and complementing.  Summands that could not
/// be decided carry notes; `complete` means every summand is certified and
/// the levelwise sums rebuild F.
struct DecomposeResult {
    std::vector<Fragment> summands;
    std::vector<CertificateResult> certificates;
    bool complete = false;
    std::vector<std::string> notes;
};
DecomposeResult decompose_glider(const Fragment& F);

/// The same levels viewed over a subgroup E: chain E_i = E n C_i, ambient
/// action restricted to E.
Fragment restrict_fragment(const Fragment& F, const ElemList& E);

/// Dimensions summary like "[4,3,1,0]".
std::string fragment_shape(const Fragment& F);

} // namespace glider
