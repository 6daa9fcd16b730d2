#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glider/group.hpp"
#include "glider/matrix.hpp"

namespace glider {

using GroupPtr = std::shared_ptr<const Group>;

/// A K-linear representation of a subgroup of a fixed finite group.
/// `support` lists the acting elements (parent-group indices, declared
/// order); matrices are aligned with it.  An ambient module has the whole
/// group as support.  Construction verifies the identity matrix and the
/// homomorphism property over every pair (NotHomomorphism); support must be
/// a subgroup (NotSubgroup).
class GModule {
public:
    static GModule from_action(GroupPtr group, FieldPtr field, ElemList support,
                               std::vector<FMatrix> matrices);
    /// Synthesizes the remaining matrices from generator images by closure,
    /// then verifies as from_action.
    static GModule from_generators(GroupPtr group, FieldPtr field, ElemList support,
                                   const std::map<unsigned, FMatrix>& generator_images);

    const GroupPtr& group() const { return group_; }
    const FieldPtr& field() const { return field_; }
    const ElemList& support() const { return support_; }
    std::size_t dim() const { return dim_; }

    bool supports(unsigned g) const { return g < pos_.size() && pos_[g] >= 0; }
    const FMatrix& act(unsigned g) const;

    /// Same space, action recorded only on the sub-support (a subgroup of
    /// the current support).
    GModule restricted_support(const ElemList& sub) const;

    /// Block-diagonal direct sum; supports must agree.
    static GModule direct_sum(const GModule& A, const GModule& B);

    /// Trace character on the given elements (defaults to the support).
    std::vector<CycNumber> character(const ElemList& elems) const;

private:
    GModule() = default;
    void index_support();

    GroupPtr group_;
    FieldPtr field_;
    ElemList support_;
    std::vector<int> pos_; ///< element id -> index into matrices, -1 if absent
    std::size_t dim_ = 0;
    std::vector<FMatrix> mats_;
};

/// --- submodule machinery (subspaces of an ambient module) ---------------

/// Smallest subspace containing the seeds and stable under the listed
/// elements: K<elems> * span(seeds).
Subspace module_generated(const GModule& M, const ElemList& elems, const std::vector<Vec>& seeds);
Subspace module_generated(const GModule& M, const ElemList& elems, const Subspace& seed);

bool is_invariant(const GModule& M, const ElemList& elems, const Subspace& W);

/// Matrix of the action of g on the invariant subspace W, written in W's
/// canonical basis.  Throws NotSubspace when W is not g-stable.
FMatrix restricted_matrix(const GModule& M, unsigned g, const Subspace& W);

/// The representation of `elems` on W (dim = dim W).  Throws NotSubspace
/// when W is not invariant.
GModule restricted_module(const GModule& M, const ElemList& elems, const Subspace& W);

/// Character of the action on an invariant subspace.
std::vector<CycNumber> character_on(const GModule& M, const ElemList& elems, const Subspace& W);

/// Basis of the intertwiner space {P : P A(g) = B(g) P for all g in elems}.
/// (For a subgroup's full element list this is Hom_H(A, B).)
std::vector<FMatrix> intertwiners(const GModule& A, const GModule& B, const ElemList& elems);

/// dim Hom computed two independent ways.
std::size_t homdim(const GModule& A, const GModule& B, const ElemList& elems);
/// Character inner product <chi_A, chi_B> = 1/|H| sum chi_A(h) chi_B(h^-1);
/// equals homdim for semisimple modules and serves as its oracle.
Rational homdim_by_characters(const GModule& A, const GModule& B, const ElemList& elems);

/// Exact isomorphism test for (not necessarily simple) semisimple modules:
/// dims equal and hom(A,B) = hom(A,A) = hom(B,B), which forces equal
/// multiplicity vectors.
bool modules_isomorphic(const GModule& A, const GModule& B, const ElemList& elems);

Subspace cyclic_submodule(const GModule& M, const ElemList& elems, const Vec& v);

/// Conjugate submodule g.W.
Subspace conjugate_submodule(const GModule& M, unsigned g, const Subspace& W);

/// An H-invariant complement of W inside V (both invariant, W <= V),
/// computed by Maschke averaging of a projector — exact in characteristic 0.
Subspace invariant_complement(const GModule& M, const ElemList& elems, const Subspace& W,
                              const Subspace& V);

/// --- irreducible catalogs ------------------------------------------------

/// One irreducible representation of a named subgroup, with its matrices and
/// character, as shipped in data files.
struct CatalogEntry {
    std::string name;
    GModule rep;
    std::vector<CycNumber> character; ///< aligned with rep.support()
};

/// The verified list of all irreducibles of one subgroup.
struct IrrepCatalog {
    std::string subgroup_name;
    ElemList support; ///< the subgroup, declared order
    std::vector<CatalogEntry> entries;

    /// Entry index whose character matches the action on W; CatalogMissing
    /// when no entry matches (then W is not simple or the catalog is wrong).
    std::size_t identify(const GModule& M, const Subspace& W) const;
    const CatalogEntry& by_name(const std::string& n) const;
};

/// Validates completeness (sum of squared dims = |H|), pairwise-distinct
/// orthonormal characters, and each entry's homomorphism property.
void validate_catalog(const Group& G, const IrrepCatalog& catalog);

/// One simple summand produced by split_isotypic.
struct SimplePiece {
    std::size_t catalog_index; ///< iso class
    std::string name;          ///< catalog entry name
    Subspace space;
};

/// Decomposes an invariant subspace W into simple summands, deterministically:
/// central idempotents of the catalog entries cut W into isotypic components
/// (their direct sum must rebuild W — SplitMismatch otherwise), then each
/// component is split greedily into cyclic simples starting from its rref
/// basis vectors.  Order: catalog order, then construction order inside a
/// component.
std::vector<SimplePiece> split_isotypic(const GModule& M, const ElemList& elems,
                                        const Subspace& W, const IrrepCatalog& catalog);

} // namespace glider
