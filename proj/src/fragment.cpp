#include "glider/fragment.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace glider {

namespace {

bool same_element_set(const ElemList& a, const ElemList& b) {
    return std::set<unsigned>(a.begin(), a.end()) == std::set<unsigned>(b.begin(), b.end());
}

/// Minimal chain level containing g (>= 1; the axiom at this level implies
/// the axiom at every higher level because deeper targets are larger).
unsigned glevel(const SubgroupChain& chain, unsigned g) {
    for (unsigned i = 1; i < chain.groups.size(); ++i)
        if (std::find(chain.groups[i].begin(), chain.groups[i].end(), g) != chain.groups[i].end())
            return i;
    fail("NotSubgroup", "element missing from the chain's top group");
}

} // namespace

Subspace Fragment::body() const {
    Subspace b = levels.front();
    for (std::size_t i = 1; i < levels.size(); ++i) b = b.intersect(levels[i]);
    return b;
}

unsigned Fragment::essential_length() const {
    const Subspace b = body();
    for (unsigned k = declared(); k > 0; --k)
        if (!(levels[k] == b)) return k;
    return 0;
}

bool Fragment::same_shape(const Fragment& o) const {
    return ambient && o.ambient && ambient->dim() == o.ambient->dim() &&
           ambient->field()->order() == o.ambient->field()->order() &&
           chain.groups == o.chain.groups && same_element_set(ambient->support(), o.ambient->support());
}

std::string FragmentViolation::describe(const Group& G) const {
    switch (kind) {
        case Kind::Descending:
            return "level " + std::to_string(level) + " is not contained in level " +
                   std::to_string(level - 1);
        case Kind::Action:
            return "element " + G.label(element) + " (chain level " + std::to_string(chain_level) +
                   ") maps a vector of level " + std::to_string(level) + " outside level " +
                   std::to_string(level - chain_level);
        case Kind::Tail:
            return "element " + G.label(element) + " does not preserve the constant tail";
    }
    return "";
}

FragmentReport check_fragment(const Fragment& F) {
    require(F.ambient != nullptr, "PreconditionFailure", "fragment without ambient module");
    require(!F.levels.empty(), "PreconditionFailure", "fragment without levels");
    require(F.chain.groups.size() >= 2, "PreconditionFailure", "fragment chain too short");
    require(same_element_set(F.ambient->support(), F.chain.groups.back()), "NotSubgroup",
            "ambient acting group differs from the chain top");
    for (const Subspace& lv : F.levels)
        require(lv.ambient() == F.ambient->dim(), "DimensionMismatch",
                "level subspace lives in a different ambient space");

    FragmentReport rep;
    for (const Subspace& lv : F.levels) rep.level_dims.push_back(lv.dim());

    const unsigned L = F.declared();

    // descending
    for (unsigned j = 1; j <= L; ++j) {
        if (F.levels[j - 1].contains(F.levels[j])) continue;
        for (const Vec& b : F.levels[j].basis())
            if (!F.levels[j - 1].contains(b)) {
                rep.violations.push_back(
                    {FragmentViolation::Kind::Descending, 0, j, 0, b});
                break;
            }
    }

    // action axiom, every element at its minimal chain level
    for (unsigned g : F.ambient->support()) {
        const unsigned i = glevel(F.chain, g);
        for (unsigned j = i; j <= L; ++j) {
            const Subspace& target = F.levels[j - i];
            for (const Vec& b : F.levels[j].basis()) {
                Vec img = F.ambient->act(g).apply(b);
                if (!target.contains(img)) {
                    rep.violations.push_back({FragmentViolation::Kind::Action, i, j, g, b});
                    break;
                }
            }
        }
        // constant tail must be preserved by everything
        for (const Vec& b : F.levels[L].basis()) {
            Vec img = F.ambient->act(g).apply(b);
            if (!F.levels[L].contains(img)) {
                rep.violations.push_back({FragmentViolation::Kind::Tail, 0, L, g, b});
                break;
            }
        }
    }

    rep.valid = rep.violations.empty();

    // star cross-check: K C_mu M_mu <= M_mu^* is a consequence of the axioms
    for (unsigned mu = 0; mu <= L; ++mu) {
        Subspace st = star(F, mu);
        rep.star_dims.push_back(st.dim());
        Subspace gen = module_generated(*F.ambient, F.chain.clamped(mu), F.levels[mu]);
        rep.star_containment.push_back(st.contains(gen));
    }
    if (rep.valid)
        for (bool ok : rep.star_containment)
            assert(ok && "star containment must follow from the fragment axioms");
    return rep;
}

void require_valid(const Fragment& F, const std::string& who) {
    FragmentReport rep = check_fragment(F);
    if (rep.valid) return;
    fail("PreconditionFailure",
         who + " needs a valid fragment; first violation: " +
             rep.violations.front().describe(*F.ambient->group()));
}

Subspace star(const Fragment& F, unsigned i) {
    const Subspace& M0 = F.levels.front();
    const FieldPtr Fld = F.ambient->field();
    const std::size_t n = F.ambient->dim();
    if (M0.is_zero() || i == 0) return M0;
    if (M0.dim() == n) {
        // whole space: membership imposes nothing
        return M0;
    }
    // Residual matrix R: v in M0  <=>  R v = 0, rows = right-kernel basis of
    // the basis matrix.  Then m = B^T x lies in the star iff
    // R rho(g) B^T x = 0 for every g in C_i; stack and take the kernel.
    FMatrix B = M0.basis_matrix();
    std::vector<Vec> resid = B.kernel();
    assert(!resid.empty());
    FMatrix R = FMatrix::from_rows(Fld, resid);
    FMatrix Bt = B.transpose();
    std::vector<Vec> stacked;
    for (unsigned g : F.chain.clamped(i)) {
        FMatrix cond = R * F.ambient->act(g) * Bt; // (n-k) x k
        for (std::size_t r = 0; r < cond.rows(); ++r) stacked.push_back(cond.row(r));
    }
    FMatrix S = FMatrix::from_rows(Fld, stacked);
    std::vector<Vec> xs = S.kernel();
    std::vector<Vec> members;
    for (const Vec& x : xs) members.push_back(Bt.apply(x));
    return Subspace::span(Fld, n, members);
}

bool is_natural(const Fragment& F) {
    for (unsigned i = 0; i <= F.chain.depth(); ++i)
        if (!(F.level(i) == star(F, i))) return false;
    return true;
}

void subfragment_check(const Fragment& M, const Fragment& N) {
    require(M.same_shape(N), "NotSubfragment", "fragments differ in ambient or chain");
    require_valid(M, "subfragment_check (enclosing fragment)");
    require_valid(N, "subfragment_check (candidate subfragment)");
    const unsigned top = std::max(M.declared(), N.declared());
    for (unsigned j = 0; j <= top; ++j)
        require(M.level(j).contains(N.level(j)), "NotSubfragment",
                "containment fails at level " + std::to_string(j));
}

bool is_strict(const Fragment& M, const Fragment& N, unsigned* bad_level) {
    const unsigned top = std::max(M.declared(), N.declared());
    for (unsigned j = 0; j <= top; ++j) {
        if (!(N.level(j) == N.level(0).intersect(M.level(j)))) {
            if (bad_level) *bad_level = j;
            return false;
        }
    }
    return true;
}

TrivialityReport classify_subfragment(const Fragment& M, const Fragment& N) {
    subfragment_check(M, N);
    TrivialityReport rep;
    const unsigned kmax = std::max(M.declared(), N.declared()) + 1;
    const Subspace BN = N.body(), BM = M.body();

    // T2: N already vanished, M has not
    for (unsigned k = 0; k <= kmax; ++k)
        if (N.level(k).is_zero() && !M.level(k).is_zero()) {
            rep.trivial = true;
            rep.type = "T2";
            rep.witness_k = k;
            return rep;
        }
    // T1: N already constant, M still moving
    for (unsigned k = 0; k <= kmax; ++k)
        if (N.level(k) == BN && !(M.level(k) == BM)) {
            rep.trivial = true;
            rep.type = "T1";
            rep.witness_k = k;
            return rep;
        }
    // T3: greedy strictly-increasing re-indexing N_k = M_alpha(k)
    if (BN == BM) {
        const unsigned mbound = M.declared() + kmax + 2;
        std::vector<unsigned> alpha;
        bool ok = true;
        long prev = -1;
        for (unsigned k = 0; k <= kmax && ok; ++k) {
            bool found = false;
            for (unsigned m = (unsigned)(prev + 1); m <= mbound; ++m) {
                if (M.level(m) == N.level(k)) {
                    alpha.push_back(m);
                    prev = m;
                    found = true;
                    break;
                }
            }
            ok = found;
        }
        if (ok) {
            rep.trivial = true;
            rep.type = "T3";
            rep.alpha = std::move(alpha);
            return rep;
        }
    }
    return rep;
}

namespace {

/// [K C_{e} S, K C_{e-1} S, ..., S, 0] over F's chain (clamped groups).
Fragment generated_chain(const Fragment& F, const Subspace& S, unsigned e) {
    Fragment W;
    W.ambient = F.ambient;
    W.chain = F.chain;
    for (unsigned j = 0; j <= e; ++j)
        W.levels.push_back(module_generated(*F.ambient, F.chain.clamped(e - j), S));
    W.levels.emplace_back(F.ambient->field(), F.ambient->dim()); // zero tail
    return W;
}

} // namespace

CertificateResult irreducible_certificate(const Fragment& F) {
    require_valid(F, "irreducible_certificate");
    require(F.body().is_zero(), "BodyNonzero",
            "certificate requires a vanishing tail; body has dimension " +
                std::to_string(F.body().dim()));
    CertificateResult res{CertificateResult::Status::Inconclusive, F.essential_length(), {}, ""};
    const unsigned e = res.essential_length;
    const Subspace& Me = F.level(e);

    if (Me.dim() != 1) {
        if (Me.dim() == 0) {
            // the zero fragment has only trivial subfragments
            res.status = CertificateResult::Status::Certified;
            res.note = "zero fragment";
            return res;
        }
        // a single deepest vector spans a proper nontrivial cyclic subfragment
        Fragment W = generated_chain(F, Subspace::span(F.ambient->field(), F.ambient->dim(),
                                                       {Me.basis().front()}),
                                     e);
        subfragment_check(F, W);
        TrivialityReport tv = classify_subfragment(F, W);
        if (!tv.trivial) {
            res.status = CertificateResult::Status::Refuted;
            res.witness = std::move(W);
            res.note = "deepest level has dimension " + std::to_string(Me.dim()) +
                       "; a cyclic subfragment through one basis vector is nontrivial";
        } else {
            res.note = "deepest level is not a line, yet the canonical cyclic witness is trivial (" +
                       tv.type + ")";
        }
        return res;
    }

    // dim M_e = 1: certified iff every level is generated from the deepest one
    std::optional<unsigned> bad;
    for (unsigned i2 = 0; i2 <= e; ++i2) {
        Subspace gen = module_generated(*F.ambient, F.chain.clamped(e - i2), Me);
        if (!(F.level(i2) == gen)) {
            bad = i2;
            break;
        }
    }
    if (!bad) {
        res.status = CertificateResult::Status::Certified;
        return res;
    }
    Fragment W = generated_chain(F, Me, e);
    subfragment_check(F, W);
    TrivialityReport tv = classify_subfragment(F, W);
    if (!tv.trivial) {
        res.status = CertificateResult::Status::Refuted;
        res.witness = std::move(W);
        res.note = "level " + std::to_string(*bad) +
                   " exceeds the span generated from the deepest level";
    } else {
        res.status = CertificateResult::Status::Inconclusive;
        res.note = "generation fails at level " + std::to_string(*bad) +
                   " but the generated chain is a trivial subfragment (" + tv.type + ")";
    }
    return res;
}

Fragment shift(const Fragment& F) {
    require_valid(F, "shift");
    const unsigned e = F.essential_length();
    const unsigned d = F.chain.depth();
    require(e > d, "NothingToShift",
            "essential length " + std::to_string(e) + " does not exceed the chain depth " +
                std::to_string(d));
    Fragment out;
    out.ambient = F.ambient;
    out.chain = F.chain;
    out.levels.assign(F.levels.begin() + (e - d), F.levels.end());
    return out;
}

DirectSumResult direct_sum_check(const Fragment& E, const Fragment& F, unsigned i) {
    require(E.same_shape(F), "NotSubfragment", "direct sum needs fragments of the same shape");
    require_valid(E, "direct_sum_check");
    require_valid(F, "direct_sum_check");
    require(i <= E.essential_length() && i <= F.essential_length(), "LevelOutOfRange",
            "level " + std::to_string(i) + " exceeds an essential length");
    DirectSumResult res;
    res.level = i;
    res.direct = E.level(i).intersect(F.level(i)).is_zero();
    res.sum.ambient = E.ambient;
    res.sum.chain = E.chain;
    const unsigned top = std::max(E.declared(), F.declared());
    for (unsigned j = 0; j <= top; ++j) res.sum.levels.push_back(E.level(j).sum(F.level(j)));
    return res;
}

Fragment strict_complement(const Fragment& M, const Fragment& N) {
    subfragment_check(M, N);
    unsigned bad = 0;
    require(is_strict(M, N, &bad), "NotStrict",
            "subfragment is not strict at level " + std::to_string(bad));

    const unsigned L = M.declared();
    const unsigned d = M.chain.depth();
    const FieldPtr Fld = M.ambient->field();
    const std::size_t n = M.ambient->dim();
    std::vector<Subspace> C(L + 1, Subspace(Fld, n));

    // deepest level: must be a complement preserved by the whole group
    // because the tail repeats it forever
    if (!M.level(L).is_zero()) {
        C[L] = invariant_complement(*M.ambient, M.chain.groups.back(), N.level(L), M.level(L));
    }

    for (int j = (int)L - 1; j >= 0; --j) {
        // forced part: all chain translates of the deeper complement entries
        Subspace req(Fld, n);
        for (unsigned i2 = 1; i2 <= (L - (unsigned)j) + d; ++i2) {
            const Subspace& deeper = C[std::min<std::size_t>(j + i2, L)];
            if (deeper.is_zero()) continue;
            req = req.sum(module_generated(*M.ambient, M.chain.clamped(i2), deeper));
        }
        assert(M.level(j).contains(req));
        if (!req.intersect(N.level(j)).is_zero())
            fail("NotDecomposed",
                 "no strict complement: translates of the deeper complement meet the subfragment "
                 "at level " + std::to_string(j) + " (a complement may not exist)");

        // greedy completion inside M_j against N_j
        Subspace cur = req;
        auto try_add = [&](const Vec& v) {
            if (cur.dim() + N.level(j).dim() == M.level(j).dim()) return;
            Subspace cand = cur.sum(Subspace::span(Fld, n, {v}));
            if (cand.dim() != cur.dim() + 1) return;
            if (!cand.intersect(N.level(j)).is_zero()) return;
            cur = std::move(cand);
        };
        // candidates aligned with the largest chain subgroup preserving the data
        unsigned best = 0;
        for (unsigned i2 = d; i2 >= 1; --i2) {
            const ElemList& sub = M.chain.clamped(i2);
            if (is_invariant(*M.ambient, sub, N.level(j)) &&
                is_invariant(*M.ambient, sub, M.level(j)) && is_invariant(*M.ambient, sub, cur)) {
                best = i2;
                break;
            }
        }
        if (best >= 1) {
            Subspace inner = N.level(j).sum(cur);
            if (is_invariant(*M.ambient, M.chain.clamped(best), inner)) {
                Subspace inv =
                    invariant_complement(*M.ambient, M.chain.clamped(best), inner, M.level(j));
                for (const Vec& v : inv.basis()) try_add(v);
            }
        }
        for (const Vec& v : M.level(j).basis()) try_add(v);
        require(cur.dim() + N.level(j).dim() == M.level(j).dim(), "NotDecomposed",
                "no strict complement found at level " + std::to_string(j) +
                    " (a complement may not exist)");
        C[j] = std::move(cur);
    }

    Fragment out;
    out.ambient = M.ambient;
    out.chain = M.chain;
    out.levels = std::move(C);

    // verification of everything the construction promises
    FragmentReport rep = check_fragment(out);
    require(rep.valid, "NotDecomposed", "internal: constructed complement fails the axioms");
    for (unsigned j = 0; j <= L; ++j) {
        require(out.levels[j].intersect(N.level(j)).is_zero() &&
                    out.levels[j].sum(N.level(j)) == M.level(j),
                "NotDecomposed", "internal: complement is not levelwise complementary");
    }
    require(is_strict(M, out), "NotDecomposed", "internal: complement is not strict");
    return out;
}

DecomposeResult decompose_glider(const Fragment& F) {
    require_valid(F, "decompose_glider");
    DecomposeResult res;

    if (!F.body().is_zero()) {
        res.summands.push_back(F);
        res.certificates.push_back(CertificateResult{CertificateResult::Status::Inconclusive,
                                                     F.essential_length(), {},
                                                     "nonzero body: decomposition not attempted"});
        res.notes.push_back("nonzero body: decomposition not attempted");
        res.complete = false;
        return res;
    }

    CertificateResult cert = irreducible_certificate(F);
    if (cert.status == CertificateResult::Status::Certified) {
        res.summands.push_back(F);
        res.certificates.push_back(std::move(cert));
        res.complete = true;
        return res;
    }

    const unsigned e = F.essential_length();
    const Subspace& Me = F.level(e);
    std::vector<Vec> candidates = Me.basis();
    for (std::size_t a = 0; a < Me.basis().size(); ++a)
        for (std::size_t b = a + 1; b < Me.basis().size(); ++b) {
            Vec s = Me.basis()[a];
            for (std::size_t k = 0; k < s.size(); ++k) s[k] += Me.basis()[b][k];
            candidates.push_back(std::move(s));
        }

    for (const Vec& v : candidates) {
        Fragment N = generated_chain(F, Subspace::span(F.ambient->field(), F.ambient->dim(), {v}), e);
        if (N.levels == F.levels) continue;
        if (!is_strict(F, N)) continue;
        Fragment L;
        try {
            L = strict_complement(F, N);
        } catch (const Error& err) {
            if (err.code() == "NotDecomposed") continue;
            throw;
        }
        CertificateResult certN = irreducible_certificate(N);
        assert(certN.status == CertificateResult::Status::Certified);
        res.summands.push_back(std::move(N));
        res.certificates.push_back(std::move(certN));
        if (L.level(0).is_zero()) {
            res.complete = true;
            return res;
        }
        DecomposeResult sub = decompose_glider(L);
        for (auto& s : sub.summands) res.summands.push_back(std::move(s));
        for (auto& c : sub.certificates) res.certificates.push_back(std::move(c));
        for (auto& nt : sub.notes) res.notes.push_back(std::move(nt));
        res.complete = sub.complete;
        return res;
    }

    res.summands.push_back(F);
    res.certificates.push_back(cert);
    res.notes.push_back("no peelable strict cyclic subfragment found; summand left undecided");
    res.complete = false;
    return res;
}

Fragment restrict_fragment(const Fragment& F, const ElemList& E) {
    require(is_normal_under(*F.ambient->group(), E, F.chain.groups.back()), "NotNormal",
            "restriction needs a normal subgroup");
    Fragment out;
    out.ambient = std::make_shared<GModule>(F.ambient->restricted_support(E));
    out.chain = intersect_chain(F.chain, E);
    out.levels = F.levels;
    return out;
}

std::string fragment_shape(const Fragment& F) {
    std::string out = "[";
    for (std::size_t i = 0; i < F.levels.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(F.levels[i].dim());
    }
    return out + "]";
}

} // namespace glider
