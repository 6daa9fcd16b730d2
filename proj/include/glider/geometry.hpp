#pragma once

#include <string>
#include <utility>
#include <vector>

#include "glider/clifford.hpp"
#include "glider/multipoly.hpp"

namespace glider {

/// Matrix of linear forms in x0..x_{s-1}: the column for a group element g
/// is rho(g) applied to the generic vector (x0,...,x_{s-1}).
struct SymbolicMatrix {
    FieldPtr field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<MultiPoly>> entries; ///< row-major

    const MultiPoly& at(std::size_t r, std::size_t c) const { return entries[r][c]; }
    MultiPoly& at(std::size_t r, std::size_t c) { return entries[r][c]; }

    /// Exact instantiation at a concrete coordinate vector.
    FMatrix evaluate(const Vec& values) const;

    /// "(x0 -x0; x1 -x1)" -- rows joined by "; ", entries by single spaces.
    std::string pretty() const;
};

/// Columns of rho(g)*(x0,...,x_{s-1})^T for g running over `elems` in the
/// given order.
SymbolicMatrix coefficient_matrix(const GModule& S, const ElemList& elems);

/// The pair (A_i, B_i) for one stage: columns over H_i and over G_i.
std::pair<SymbolicMatrix, SymbolicMatrix>
coefficient_matrices(const GModule& S, const ElemList& Hi, const ElemList& Gi);

/// Largest r such that some r x r minor is a nonzero polynomial.
std::size_t generic_rank(const SymbolicMatrix& A);

/// Where the rank comparison between the two coefficient matrices changes.
struct RankLocus {
    std::size_t rank_a = 0; ///< generic rank of A
    std::size_t rank_b = 0; ///< generic rank of B

    enum class Semantics { Vanishing, Nonvanishing };
    /// Vanishing: the locus is the common zero set of `generators`
    /// (rank(B) drops to rank(A) exactly there).  Nonvanishing: the locus is
    /// the complement of that zero set (ranks agree generically; they
    /// degenerate together on the zero set).
    Semantics semantics = Semantics::Vanishing;

    /// Monic, scalar-deduplicated minors (order of first occurrence).
    std::vector<MultiPoly> generators;

    /// Common projective roots of the generators when there are two
    /// variables and every generator has degree <= 2.  For Vanishing these
    /// are the locus; for Nonvanishing its degenerate complement.
    std::vector<ProjPoint> points;
    bool points_valid = false; ///< true when the root search ran and is complete
};

/// Compares generic ranks and emits the degeneracy locus: the (rank_a+1)
/// minors of B when rank(B) > rank(A), else the rank_a minors of A.
RankLocus rank_locus(const SymbolicMatrix& A, const SymbolicMatrix& B);

/// One stage of a concrete point evaluation.
struct StageEvaluation {
    DecompositionGroup data;
    bool full_stage_group = false; ///< decomposition group equals the whole stage group
};

/// Decomposition groups of K*point at every stage, with the inclusion
/// pattern between consecutive stages.
struct PointReport {
    Vec point;
    std::vector<StageEvaluation> stages; ///< index k = stage k+1
    std::vector<bool> inclusion_ok;      ///< stage k group contained in stage k+1 group
    bool inclusions_hold = true;
};

PointReport evaluate_point(const GModule& S, const Vec& point,
                           const SubgroupChain& Gchain, const SubgroupChain& Hchain);

/// Elementwise check that H_{i+1} * G_i = G_{i+1} for every stage pair.
struct MaximalityReport {
    std::vector<bool> stage_ok; ///< index k = stage pair (k+1, k+2)
    bool maximal = true;
    std::string witness; ///< first element separating the product from G_{i+1}
};

MaximalityReport maximal_chain_check(const Group& G, const SubgroupChain& Gchain,
                                     const SubgroupChain& Hchain);

/// Constraint emitted for one component of a declared decomposition.
struct ComponentConstraint {
    std::string component;
    unsigned dim = 0;
    std::size_t first_coord = 0;
    bool projective = false;
    std::string text; ///< "a2 != 0" or "[a0:a1] in P^1"
};

/// Where a generator of a whole fragment may sit: nonzero coordinates on
/// the one-dimensional components, a projective factor per bigger one.
struct ConstraintReport {
    std::vector<ComponentConstraint> constraints;
    std::size_t nonzero_count = 0;
    std::size_t projective_count = 0;
    std::string variety; ///< "P^1 x P^1", or "point" when no factors
};

/// `components` lists (name, dimension) in ambient basis order; the
/// dimensions must tile the module exactly.
ConstraintReport constraint_check(const GModule& M,
                                  const std::vector<std::pair<std::string, unsigned>>& components);

} // namespace glider
