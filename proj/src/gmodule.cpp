#include "glider/gmodule.hpp"

#include <algorithm>
#include <cassert>

namespace glider {

void GModule::index_support() {
    pos_.assign(group_->size(), -1);
    for (std::size_t i = 0; i < support_.size(); ++i) {
        require(support_[i] < group_->size(), "NotSubgroup", "support element out of range");
        require(pos_[support_[i]] < 0, "NotSubgroup", "support lists an element twice");
        pos_[support_[i]] = (int)i;
    }
}

GModule GModule::from_action(GroupPtr group, FieldPtr field, ElemList support,
                             std::vector<FMatrix> matrices) {
    require(is_subgroup(*group, support), "NotSubgroup", "module support is not a subgroup");
    require(matrices.size() == support.size(), "DimensionMismatch",
            "need one matrix per support element");
    GModule M;
    M.group_ = std::move(group);
    M.field_ = std::move(field);
    M.support_ = std::move(support);
    M.mats_ = std::move(matrices);
    M.index_support();
    M.dim_ = M.mats_.empty() ? 0 : M.mats_[0].rows();
    for (const FMatrix& m : M.mats_)
        require(m.rows() == M.dim_ && m.cols() == M.dim_, "DimensionMismatch",
                "action matrices must be square of equal size");
    // identity and full homomorphism check
    require(M.act(M.group_->identity()) == FMatrix::identity(M.field_, M.dim_),
            "NotHomomorphism", "identity does not act as the identity matrix");
    for (unsigned a : M.support_)
        for (unsigned b : M.support_) {
            if (!(M.act(a) * M.act(b) == M.act(M.group_->mul(a, b))))
                fail("NotHomomorphism",
                     "action fails at " + M.group_->label(a) + " * " + M.group_->label(b));
        }
    return M;
}

GModule GModule::from_generators(GroupPtr group, FieldPtr field, ElemList support,
                                 const std::map<unsigned, FMatrix>& generator_images) {
    require(!generator_images.empty(), "NotHomomorphism", "no generator images given");
    const std::size_t dim = generator_images.begin()->second.rows();
    // BFS closure: identity, then left-multiply known elements by generators.
    std::vector<std::optional<FMatrix>> known(group->size());
    known[group->identity()] = FMatrix::identity(field, dim);
    for (const auto& [g, m] : generator_images) known[g] = m;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [g, m] : generator_images)
            for (unsigned x = 0; x < group->size(); ++x) {
                if (!known[x]) continue;
                const unsigned gx = group->mul(g, x);
                if (!known[gx]) {
                    known[gx] = m * (*known[x]);
                    grew = true;
                }
            }
    }
    std::vector<FMatrix> mats;
    for (unsigned s : support) {
        require(known[s].has_value(), "NotSubgroup",
                "generators do not reach element " + group->label(s));
        mats.push_back(*known[s]);
    }
    return from_action(std::move(group), std::move(field), std::move(support), std::move(mats));
}

const FMatrix& GModule::act(unsigned g) const {
    require(supports(g), "NotSubgroup",
            "element " + group_->label(g) + " outside the module's acting subgroup");
    return mats_[pos_[g]];
}

GModule GModule::restricted_support(const ElemList& sub) const {
    std::vector<FMatrix> mats;
    for (unsigned s : sub) mats.push_back(act(s));
    return from_action(group_, field_, sub, std::move(mats));
}

GModule GModule::direct_sum(const GModule& A, const GModule& B) {
    require(A.support_ == B.support_, "DimensionMismatch", "direct sum needs equal supports");
    std::vector<FMatrix> mats;
    for (std::size_t i = 0; i < A.mats_.size(); ++i) {
        FMatrix m(A.field_, A.dim_ + B.dim_, A.dim_ + B.dim_);
        for (std::size_t r = 0; r < A.dim_; ++r)
            for (std::size_t c = 0; c < A.dim_; ++c) m.at(r, c) = A.mats_[i].at(r, c);
        for (std::size_t r = 0; r < B.dim_; ++r)
            for (std::size_t c = 0; c < B.dim_; ++c)
                m.at(A.dim_ + r, A.dim_ + c) = B.mats_[i].at(r, c);
        mats.push_back(std::move(m));
    }
    return from_action(A.group_, A.field_, A.support_, std::move(mats));
}

std::vector<CycNumber> GModule::character(const ElemList& elems) const {
    std::vector<CycNumber> out;
    for (unsigned g : elems) {
        CycNumber tr = CycNumber::zero(field_);
        const FMatrix& m = act(g);
        for (std::size_t i = 0; i < dim_; ++i) tr += m.at(i, i);
        out.push_back(tr);
    }
    return out;
}

Subspace module_generated(const GModule& M, const ElemList& elems, const std::vector<Vec>& seeds) {
    Subspace cur = Subspace::span(M.field(), M.dim(), seeds);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Vec> next = cur.basis();
        for (unsigned g : elems)
            for (const Vec& b : cur.basis()) next.push_back(M.act(g).apply(b));
        Subspace bigger = Subspace::span(M.field(), M.dim(), next);
        if (bigger.dim() != cur.dim()) {
            cur = std::move(bigger);
            grew = true;
        }
    }
    return cur;
}

Subspace module_generated(const GModule& M, const ElemList& elems, const Subspace& seed) {
    return module_generated(M, elems, seed.basis());
}

bool is_invariant(const GModule& M, const ElemList& elems, const Subspace& W) {
    for (unsigned g : elems)
        for (const Vec& b : W.basis())
            if (!W.contains(M.act(g).apply(b))) return false;
    return true;
}

FMatrix restricted_matrix(const GModule& M, unsigned g, const Subspace& W) {
    const std::size_t k = W.dim();
    FMatrix out(M.field(), k, k);
    for (std::size_t j = 0; j < k; ++j) {
        Vec img = M.act(g).apply(W.basis()[j]);
        auto coords = W.coordinates(img);
        require(coords.has_value(), "NotSubspace",
                "subspace is not stable under " + M.group()->label(g));
        for (std::size_t i = 0; i < k; ++i) out.at(i, j) = (*coords)[i];
    }
    return out;
}

GModule restricted_module(const GModule& M, const ElemList& elems, const Subspace& W) {
    std::vector<FMatrix> mats;
    for (unsigned g : elems) mats.push_back(restricted_matrix(M, g, W));
    return GModule::from_action(M.group(), M.field(), elems, std::move(mats));
}

std::vector<CycNumber> character_on(const GModule& M, const ElemList& elems, const Subspace& W) {
    std::vector<CycNumber> out;
    for (unsigned g : elems) {
        FMatrix m = restricted_matrix(M, g, W);
        CycNumber tr = CycNumber::zero(M.field());
        for (std::size_t i = 0; i < m.rows(); ++i) tr += m.at(i, i);
        out.push_back(tr);
    }
    return out;
}

std::vector<FMatrix> intertwiners(const GModule& A, const GModule& B, const ElemList& elems) {
    // unknowns: P (dimB x dimA), flattened row-major; equations: B(g) P - P A(g) = 0
    const std::size_t ra = A.dim(), rb = B.dim();
    const std::size_t unknowns = ra * rb;
    std::vector<Vec> rows;
    const FieldPtr F = A.field();
    for (unsigned g : elems) {
        const FMatrix& Ag = A.act(g);
        const FMatrix& Bg = B.act(g);
        // entry (i, j) of B(g) P - P A(g):  sum_k Bg[i][k] P[k][j] - sum_k P[i][k] Ag[k][j]
        for (std::size_t i = 0; i < rb; ++i)
            for (std::size_t j = 0; j < ra; ++j) {
                Vec row(unknowns, CycNumber::zero(F));
                for (std::size_t k = 0; k < rb; ++k) row[k * ra + j] += Bg.at(i, k);
                for (std::size_t k = 0; k < ra; ++k) row[i * ra + k] -= Ag.at(k, j);
                rows.push_back(std::move(row));
            }
    }
    FMatrix sys = FMatrix::from_rows(F, rows);
    std::vector<Vec> ker = sys.kernel();
    std::vector<FMatrix> out;
    for (const Vec& v : ker) {
        FMatrix P(F, rb, ra);
        for (std::size_t i = 0; i < rb; ++i)
            for (std::size_t j = 0; j < ra; ++j) P.at(i, j) = v[i * ra + j];
        out.push_back(std::move(P));
    }
    return out;
}

std::size_t homdim(const GModule& A, const GModule& B, const ElemList& elems) {
    return intertwiners(A, B, elems).size();
}

Rational homdim_by_characters(const GModule& A, const GModule& B, const ElemList& elems) {
    const FieldPtr F = A.field();
    CycNumber acc = CycNumber::zero(F);
    for (unsigned g : elems) {
        CycNumber trA = CycNumber::zero(F), trB = CycNumber::zero(F);
        const FMatrix& mA = A.act(g);
        for (std::size_t i = 0; i < A.dim(); ++i) trA += mA.at(i, i);
        const FMatrix& mB = B.act(A.group()->inverse(g));
        for (std::size_t i = 0; i < B.dim(); ++i) trB += mB.at(i, i);
        acc += trA * trB;
    }
    CycNumber result = acc / CycNumber(F, Rational((long)elems.size()));
    require(result.is_rational(), "NotHomomorphism", "character inner product is not rational");
    return result.rational_value();
}

bool modules_isomorphic(const GModule& A, const GModule& B, const ElemList& elems) {
    if (A.dim() != B.dim()) return false;
    const std::size_t ab = homdim(A, B, elems);
    const std::size_t aa = homdim(A, A, elems);
    const std::size_t bb = homdim(B, B, elems);
    return ab == aa && ab == bb;
}

Subspace cyclic_submodule(const GModule& M, const ElemList& elems, const Vec& v) {
    return module_generated(M, elems, std::vector<Vec>{v});
}

Subspace conjugate_submodule(const GModule& M, unsigned g, const Subspace& W) {
    return W.image(M.act(g));
}

Subspace invariant_complement(const GModule& M, const ElemList& elems, const Subspace& W,
                              const Subspace& V) {
    require(V.contains(W), "NotSubspace", "W must sit inside V");
    require(is_invariant(M, elems, W) && is_invariant(M, elems, V), "NotSubspace",
            "invariant_complement needs invariant W and V");
    const FieldPtr F = M.field();
    const std::size_t k = V.dim(), m = W.dim();
    if (m == 0) return V;
    if (m == k) return Subspace(F, V.ambient());

    // everything in V-coordinates (columns convention)
    // Q: columns = W basis coords inside V, extended to a basis of K^k
    std::vector<Vec> wcoords;
    for (const Vec& b : W.basis()) wcoords.push_back(*V.coordinates(b));
    // extend with coordinate vectors keeping independence
    std::vector<Vec> cols = wcoords;
    for (std::size_t i = 0; i < k && cols.size() < k; ++i) {
        Vec e(k, CycNumber::zero(F));
        e[i] = CycNumber::one(F);
        std::vector<Vec> trial = cols;
        trial.push_back(e);
        if (Subspace::span(F, k, trial).dim() == cols.size() + 1) cols.push_back(std::move(e));
    }
    FMatrix Q(F, k, k);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t r = 0; r < k; ++r) Q.at(r, c) = cols[c][r];
    auto Qinv = Q.inverse();
    assert(Qinv.has_value());
    FMatrix D(F, k, k);
    for (std::size_t i = 0; i < m; ++i) D.at(i, i) = CycNumber::one(F);
    FMatrix p0 = Q * D * (*Qinv);

    // average over the group: p = 1/|H| sum A_h p0 A_h^{-1}
    FMatrix p(F, k, k);
    for (unsigned g : elems) {
        FMatrix Ag = restricted_matrix(M, g, V);
        FMatrix Aginv = restricted_matrix(M, M.group()->inverse(g), V);
        p = p + Ag * p0 * Aginv;
    }
    p = p.scaled(CycNumber(F, Rational(1, (long)elems.size())));

    // complement = kernel of p, lifted back to ambient coordinates
    std::vector<Vec> comp;
    for (const Vec& x : p.kernel()) {
        Vec amb(V.ambient(), CycNumber::zero(F));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < V.ambient(); ++j) amb[j] += x[i] * V.basis()[i][j];
        comp.push_back(std::move(amb));
    }
    Subspace C = Subspace::span(F, V.ambient(), comp);
    // verify the construction
    assert(C.dim() + W.dim() == V.dim());
    assert(C.intersect(W).is_zero());
    assert(is_invariant(M, elems, C));
    return C;
}

std::size_t IrrepCatalog::identify(const GModule& M, const Subspace& W) const {
    std::vector<CycNumber> chi = character_on(M, support, W);
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].character == chi) return i;
    fail("CatalogMissing", "no catalog entry of " + subgroup_name +
                               " matches the module character on " + W.pretty());
}

const CatalogEntry& IrrepCatalog::by_name(const std::string& n) const {
    for (const auto& e : entries)
        if (e.name == n) return e;
    fail("CatalogMissing", "catalog of " + subgroup_name + " has no entry '" + n + "'");
}

void validate_catalog(const Group& G, const IrrepCatalog& catalog) {
    require(is_subgroup(G, catalog.support), "NotSubgroup",
            "catalog support is not a subgroup: " + catalog.subgroup_name);
    std::size_t dimsq = 0;
    for (const auto& e : catalog.entries) {
        require(e.rep.support() == catalog.support, "CatalogMissing",
                "entry " + e.name + " acts on a different element list");
        require(e.character == e.rep.character(catalog.support), "CatalogMissing",
                "entry " + e.name + " ships a wrong character");
        dimsq += e.rep.dim() * e.rep.dim();
    }
    require(dimsq == catalog.support.size(), "CatalogMissing",
            "sum of squared dims != |" + catalog.subgroup_name + "|; catalog incomplete");
    // orthonormal characters (also forces pairwise distinctness)
    for (std::size_t a = 0; a < catalog.entries.size(); ++a)
        for (std::size_t b = 0; b < catalog.entries.size(); ++b) {
            const Rational ip =
                homdim_by_characters(catalog.entries[a].rep, catalog.entries[b].rep, catalog.support);
            require(ip == Rational(a == b ? 1 : 0), "CatalogMissing",
                    "characters of " + catalog.entries[a].name + ", " + catalog.entries[b].name +
                        " are not orthonormal");
        }
}

std::vector<SimplePiece> split_isotypic(const GModule& M, const ElemList& elems,
                                        const Subspace& W, const IrrepCatalog& catalog) {
    require(elems == catalog.support, "CatalogMissing",
            "split_isotypic needs the catalog of the acting subgroup (same declared order)");
    require(is_invariant(M, elems, W), "NotSubspace", "split_isotypic needs an invariant subspace");
    const FieldPtr F = M.field();
    std::vector<SimplePiece> out;
    Subspace running(F, M.dim());

    for (std::size_t ci = 0; ci < catalog.entries.size(); ++ci) {
        const CatalogEntry& entry = catalog.entries[ci];
        const std::size_t t = entry.rep.dim();
        // central idempotent e_lambda = (t/|H|) sum chi(h^-1) rho(h)
        FMatrix proj(F, M.dim(), M.dim());
        for (std::size_t k = 0; k < elems.size(); ++k) {
            const unsigned h = elems[k];
            const unsigned hinv = M.group()->inverse(h);
            // chi(h^-1): find position of hinv in support
            CycNumber chi_inv = CycNumber::zero(F);
            for (std::size_t p = 0; p < catalog.support.size(); ++p)
                if (catalog.support[p] == hinv) chi_inv = entry.character[p];
            proj = proj + M.act(h).scaled(chi_inv);
        }
        proj = proj.scaled(CycNumber(F, Rational((long)t, (long)elems.size())));

        // isotypic component of W
        std::vector<Vec> imgs;
        for (const Vec& b : W.basis()) imgs.push_back(proj.apply(b));
        Subspace comp = Subspace::span(F, M.dim(), imgs);
        if (comp.is_zero()) continue;
        require(comp.dim() % t == 0, "SplitMismatch",
                "isotypic component dimension not divisible by irreducible dimension");

        // cut the component into simple cyclic pieces
        Subspace used(F, M.dim());
        std::vector<Vec> candidates = comp.basis();
        // fall back to pairwise sums if single basis vectors are "diagonal"
        for (std::size_t a = 0; a < comp.basis().size(); ++a)
            for (std::size_t b = a + 1; b < comp.basis().size(); ++b) {
                Vec s = comp.basis()[a];
                for (std::size_t j = 0; j < s.size(); ++j) s[j] += comp.basis()[b][j];
                candidates.push_back(std::move(s));
            }
        for (const Vec& v : candidates) {
            if (used.dim() == comp.dim()) break;
            if (used.contains(v)) continue;
            Subspace piece = cyclic_submodule(M, elems, v);
            if (piece.dim() != t) continue;              // not simple
            if (!used.intersect(piece).is_zero()) continue; // overlaps previous pieces
            used = used.sum(piece);
            out.push_back(SimplePiece{ci, entry.name, std::move(piece)});
        }
        require(used.dim() == comp.dim(), "SplitMismatch",
                "could not complete a simple decomposition of an isotypic component");
        running = running.sum(comp);
    }
    require(running == W, "SplitMismatch", "isotypic components do not rebuild the subspace");
    return out;
}

} // namespace glider
