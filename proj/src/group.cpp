#include "glider/group.hpp"

#include <algorithm>
#include <set>

namespace glider {

Group Group::from_table(std::string name, std::vector<std::string> labels,
                        std::vector<std::vector<unsigned>> table) {
    const std::size_t n = labels.size();
    require(n > 0, "NoIdentity", "empty group");
    require(table.size() == n, "NotLatinSquare", "table row count != element count");
    for (const auto& row : table) {
        require(row.size() == n, "NotLatinSquare", "table row length != element count");
        for (unsigned v : row)
            require(v < n, "NotLatinSquare", "table entry out of range");
    }
    // Latin square: each row and column is a permutation.
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (std::size_t j = 0; j < n; ++j) {
            require(!seen_row[table[i][j]], "NotLatinSquare",
                    "row " + std::to_string(i) + " repeats an element");
            seen_row[table[i][j]] = true;
            require(!seen_col[table[j][i]], "NotLatinSquare",
                    "column " + std::to_string(i) + " repeats an element");
            seen_col[table[j][i]] = true;
        }
    }
    // two-sided identity
    std::optional<unsigned> id;
    for (unsigned e = 0; e < n; ++e) {
        bool ok = true;
        for (unsigned g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
        if (ok) { id = e; break; }
    }
    require(id.has_value(), "NoIdentity", "no two-sided identity element");
    // associativity, all triples
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b)
            for (unsigned c = 0; c < n; ++c)
                require(table[table[a][b]][c] == table[a][table[b][c]], "NotAssociative",
                        "(" + labels[a] + "*" + labels[b] + ")*" + labels[c] + " != " +
                            labels[a] + "*(" + labels[b] + "*" + labels[c] + ")");

    Group G;
    G.name_ = std::move(name);
    G.labels_ = std::move(labels);
    G.table_ = std::move(table);
    G.identity_ = *id;
    G.inv_.resize(n);
    for (unsigned a = 0; a < n; ++a) {
        for (unsigned b = 0; b < n; ++b)
            if (G.table_[a][b] == G.identity_) { G.inv_[a] = b; break; }
    }
    return G;
}

unsigned Group::index_of(const std::string& label) const {
    for (unsigned i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    fail("ParseError", "unknown element label '" + label + "' in group " + name_);
}

bool is_subgroup(const Group& G, const ElemList& members) {
    if (members.empty()) return false;
    std::vector<bool> mask(G.size(), false);
    for (unsigned m : members) {
        if (m >= G.size() || mask[m]) return false;
        mask[m] = true;
    }
    if (!mask[G.identity()]) return false;
    for (unsigned a : members) {
        if (!mask[G.inverse(a)]) return false;
        for (unsigned b : members)
            if (!mask[G.mul(a, b)]) return false;
    }
    return true;
}

bool is_normal_under(const Group& G, const ElemList& sub, const ElemList& normalizers) {
    std::vector<bool> mask(G.size(), false);
    for (unsigned m : sub) mask[m] = true;
    for (unsigned g : normalizers)
        for (unsigned x : sub)
            if (!mask[G.conj(g, x)]) return false;
    return true;
}

ElemList closure(const Group& G, ElemList seed) {
    std::vector<bool> mask(G.size(), false);
    ElemList out;
    auto add = [&](unsigned x) {
        if (!mask[x]) {
            mask[x] = true;
            out.push_back(x);
        }
    };
    add(G.identity());
    for (unsigned s : seed) add(s);
    bool grew = true;
    while (grew) {
        grew = false;
        const ElemList snapshot = out;
        for (unsigned a : snapshot)
            for (unsigned b : snapshot) {
                unsigned p = G.mul(a, b);
                if (!mask[p]) { add(p); grew = true; }
            }
    }
    return out;
}

ElemList ordered_intersection(const ElemList& a, const ElemList& b) {
    std::set<unsigned> bs(b.begin(), b.end());
    ElemList out;
    for (unsigned x : a)
        if (bs.count(x)) out.push_back(x);
    return out;
}

const ElemList& SubgroupChain::at(unsigned i) const {
    require(i < groups.size(), "LevelOutOfRange",
            "chain level " + std::to_string(i) + " of depth " + std::to_string(depth()));
    return groups[i];
}

std::vector<bool> SubgroupChain::mask(unsigned i, unsigned group_size) const {
    std::vector<bool> m(group_size, false);
    for (unsigned x : clamped(i)) m[x] = true;
    return m;
}

void verify_chain(const Group& G, const SubgroupChain& chain) {
    require(chain.groups.size() >= 2, "NotSubgroup", "chain needs at least levels 0 and 1");
    require(chain.groups.front() == ElemList{G.identity()}, "NotSubgroup",
            "chain level 0 must be the trivial subgroup");
    const ElemList& top = chain.groups.back();
    require(top.size() == G.size(), "NotSubgroup", "chain top must be the whole group");
    for (unsigned i = 0; i < chain.groups.size(); ++i) {
        require(is_subgroup(G, chain.groups[i]), "NotSubgroup",
                "chain level " + std::to_string(i) + " is not a subgroup");
        if (i + 1 < chain.groups.size()) {
            std::vector<bool> next(G.size(), false);
            for (unsigned x : chain.groups[i + 1]) next[x] = true;
            for (unsigned x : chain.groups[i])
                require(next[x], "NotSubgroup",
                        "chain level " + std::to_string(i) + " not contained in level " +
                            std::to_string(i + 1));
        }
        ElemList everyone(G.size());
        for (unsigned g = 0; g < G.size(); ++g) everyone[g] = g;
        require(is_normal_under(G, chain.groups[i], everyone), "NotNormal",
                "chain level " + std::to_string(i) + " is not normal in the top group");
    }
}

SubgroupChain intersect_chain(const SubgroupChain& chain, const ElemList& H) {
    SubgroupChain out;
    for (const ElemList& level : chain.groups) out.groups.push_back(ordered_intersection(H, level));
    // level 0 keeps only the identity, in particular
    return out;
}

std::size_t Transversal::rep_pos(unsigned t) const {
    const ElemList& reps = top();
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (reps[i] == t) return i;
    fail("ParseError", "element is not a coset representative");
}

Transversal ascending_transversal(const Group& G, const SubgroupChain& big, const SubgroupChain& small) {
    require(big.groups.size() == small.groups.size(), "LevelOutOfRange",
            "transversal needs chains of equal depth");
    Transversal T;
    const unsigned d = big.depth();
    for (unsigned i = 0; i <= d; ++i) {
        const ElemList& Gi = big.at(i);
        std::vector<bool> Hi = small.mask(i, G.size());
        ElemList reps = i == 0 ? ElemList{} : T.reps_at[i - 1];
        // sanity: lower reps must stay in distinct H_i-cosets
        for (std::size_t a = 0; a < reps.size(); ++a)
            for (std::size_t b = a + 1; b < reps.size(); ++b)
                require(!Hi[G.mul(G.inverse(reps[a]), reps[b])], "AscendingTransversalObstruction",
                        "representatives " + G.label(reps[a]) + ", " + G.label(reps[b]) +
                            " merge at level " + std::to_string(i));
        std::vector<bool> covered(G.size(), false);
        auto cover = [&](unsigned t) {
            for (unsigned h = 0; h < G.size(); ++h)
                if (Hi[h]) covered[G.mul(t, h)] = true;
        };
        for (unsigned t : reps) cover(t);
        for (unsigned g : Gi) {
            if (covered[g]) continue;
            reps.push_back(g);
            cover(g);
        }
        // every element of G_i must now be covered exactly once
        std::size_t hsize = std::count(Hi.begin(), Hi.end(), true);
        require(reps.size() * hsize == Gi.size(), "AscendingTransversalObstruction",
                "coset count mismatch at level " + std::to_string(i));
        T.reps_at.push_back(std::move(reps));
    }
    // section for the big chain's top group; elements outside it keep the
    // out-of-range sentinel
    T.sigma.assign(G.size(), G.size());
    std::vector<bool> Hd = small.mask(d, G.size());
    for (unsigned g : big.at(d)) {
        for (unsigned t : T.reps_at[d]) {
            if (Hd[G.mul(G.inverse(t), g)]) {
                T.sigma[g] = t;
                break;
            }
        }
        require(T.sigma[g] < G.size(), "AscendingTransversalObstruction",
                "element " + G.label(g) + " not covered by the transversal");
    }
    return T;
}

unsigned Cocycle2::value(const Group&, unsigned t1, unsigned t2) const {
    return table[T.rep_pos(t1)][T.rep_pos(t2)]; // rep_pos throws for non-representatives
}

Cocycle2 make_cocycle(const Group& G, const SubgroupChain& Gchain, const SubgroupChain& Hchain,
                      const Transversal& T) {
    Cocycle2 c;
    c.T = T;
    const ElemList& reps = c.T.top();
    const std::size_t k = reps.size();
    std::vector<bool> Hmask = Hchain.mask(Hchain.depth(), G.size());

    c.table.assign(k, std::vector<unsigned>(k, G.identity()));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            const unsigned prod = G.mul(reps[a], reps[b]);
            const unsigned rep = c.T.rep_of(prod);
            const unsigned h = G.mul(G.inverse(rep), prod);
            require(Hmask[h], "CocycleIdentityViolation", "cocycle value escaped the subgroup");
            c.table[a][b] = h;
        }

    // normalization at the identity coset
    const std::size_t e_pos = c.T.rep_pos(c.T.rep_of(G.identity()));
    for (std::size_t a = 0; a < k; ++a)
        require(c.table[e_pos][a] == G.identity() && c.table[a][e_pos] == G.identity(),
                "CocycleIdentityViolation", "cocycle is not normalized at the identity");

    // cocycle identity over all representative triples
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t t = 0; t < k; ++t) {
                const unsigned rs_rep = c.T.rep_of(G.mul(reps[r], reps[s]));
                const unsigned st_rep = c.T.rep_of(G.mul(reps[s], reps[t]));
                const unsigned left = G.mul(
                    c.table[c.T.rep_pos(rs_rep)][t],
                    G.conj(G.inverse(reps[t]), c.table[r][s]));
                const unsigned right = G.mul(c.table[r][c.T.rep_pos(st_rep)], c.table[s][t]);
                require(left == right, "CocycleIdentityViolation",
                        "cocycle identity fails at (" + G.label(reps[r]) + "," +
                            G.label(reps[s]) + "," + G.label(reps[t]) + ")");
            }

    // filtration: h(t1~, t~) in H_i for t1 in T_i
    c.filtered = true;
    for (unsigned i = 1; i < Gchain.groups.size() && c.filtered; ++i) {
        std::vector<bool> Hi = Hchain.mask(i, G.size());
        for (unsigned t1 : c.T.reps_at[i]) {
            for (unsigned t : reps) {
                const unsigned h = c.table[c.T.rep_pos(t1)][c.T.rep_pos(t)];
                if (!Hi[h]) {
                    c.filtered = false;
                    c.witness = Cocycle2::FilterWitness{i, t1, t};
                    break;
                }
            }
            if (!c.filtered) break;
        }
    }
    return c;
}

InductionContext induction_context(const Group& G, const SubgroupChain& Gchain, const ElemList& H) {
    require(is_subgroup(G, H), "NotSubgroup", "H is not a subgroup");
    // the induced-action formula conjugates H by transversal elements, so H
    // must be normal in the chain's top group
    require(is_normal_under(G, H, Gchain.groups.back()), "HNotNormalInG",
            "H is not normal in the chain top");
    InductionContext ctx;
    ctx.Hchain = intersect_chain(Gchain, H);
    Transversal T = ascending_transversal(G, Gchain, ctx.Hchain);
    ctx.cocycle = make_cocycle(G, Gchain, ctx.Hchain, T);
    return ctx;
}

MackeyData mackey_transversal(const Group& G, const SubgroupChain& Gchain, const ElemList& H,
                              const ElemList& E) {
    require(is_subgroup(G, H), "NotSubgroup", "H is not a subgroup");
    require(is_subgroup(G, E), "NotSubgroup", "E is not a subgroup");
    ElemList everyone(G.size());
    for (unsigned g = 0; g < G.size(); ++g) everyone[g] = g;
    require(is_normal_under(G, H, everyone), "HNotNormalInG", "H is not normal in G");
    require(is_normal_under(G, E, everyone), "NotNormal", "E is not normal in G");

    MackeyData out;
    out.Echain = intersect_chain(Gchain, E);
    out.EHchain = intersect_chain(out.Echain, H); // (E n H)_i in H-declared order
    out.S = ascending_transversal(G, out.Echain, out.EHchain);
    out.S_at = out.S.reps_at;

    SubgroupChain Hchain = intersect_chain(Gchain, H);

    // double-coset representatives, ascending
    const unsigned d = Gchain.depth();
    for (unsigned i = 0; i <= d; ++i) {
        const ElemList& Gi = Gchain.at(i);
        const ElemList& Ei = out.Echain.at(i);
        const ElemList& Hi = Hchain.at(i);
        ElemList reps = i == 0 ? ElemList{} : out.U_at[i - 1];
        std::vector<bool> covered(G.size(), false);
        auto cover = [&](unsigned u) {
            for (unsigned e : Ei)
                for (unsigned h : Hi) covered[G.mul(G.mul(e, u), h)] = true;
        };
        for (std::size_t a = 0; a < reps.size(); ++a) {
            require(!covered[reps[a]], "AscendingTransversalObstruction",
                    "double-coset representatives merge at level " + std::to_string(i));
            cover(reps[a]);
        }
        for (unsigned g : Gi) {
            if (covered[g]) continue;
            reps.push_back(g);
            cover(g);
        }
        out.U_at.push_back(std::move(reps));
    }

    // T_i = S_i U_i, verified to be a transversal of H_i in G_i
    Transversal T;
    for (unsigned i = 0; i <= d; ++i) {
        ElemList reps;
        std::vector<bool> covered(G.size(), false);
        std::vector<bool> Hi = Hchain.mask(i, G.size());
        for (unsigned u : out.U_at[i])
            for (unsigned s : out.S_at[i]) {
                const unsigned t = G.mul(s, u);
                require(!covered[t], "AscendingTransversalObstruction",
                        "S*U products collide modulo H at level " + std::to_string(i));
                reps.push_back(t);
                for (unsigned h = 0; h < G.size(); ++h)
                    if (Hi[h]) covered[G.mul(t, h)] = true;
            }
        std::size_t hsize = Hchain.at(i).size();
        require(reps.size() * hsize == Gchain.at(i).size(), "AscendingTransversalObstruction",
                "S*U does not cover level " + std::to_string(i));
        T.reps_at.push_back(std::move(reps));
    }
    // prefix property check: lower reps appear higher up
    for (unsigned i = 0; i + 1 <= d; ++i)
        for (unsigned t : T.reps_at[i])
            require(std::find(T.reps_at[i + 1].begin(), T.reps_at[i + 1].end(), t) !=
                        T.reps_at[i + 1].end(),
                    "AscendingTransversalObstruction",
                    "combined transversal is not ascending at level " + std::to_string(i));
    T.sigma.assign(G.size(), G.size());
    std::vector<bool> Hd = Hchain.mask(d, G.size());
    for (unsigned g = 0; g < G.size(); ++g) {
        for (unsigned t : T.reps_at[d])
            if (Hd[G.mul(G.inverse(t), g)]) {
                T.sigma[g] = t;
                break;
            }
        require(T.sigma[g] < G.size(), "AscendingTransversalObstruction",
                "combined transversal misses element " + G.label(g));
    }
    out.T = std::move(T);
    return out;
}

} // namespace glider
