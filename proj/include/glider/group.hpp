#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glider/error.hpp"

namespace glider {

/// Elements are dense indices 0..n-1 into the label list.
using ElemList = std::vector<unsigned>;

/// A finite group given by its full multiplication table.
/// Construction validates the table: NotLatinSquare, NoIdentity,
/// NotAssociative.
class Group {
public:
    static Group from_table(std::string name, std::vector<std::string> labels,
                            std::vector<std::vector<unsigned>> table);

    const std::string& name() const { return name_; }
    unsigned size() const { return (unsigned)labels_.size(); }
    unsigned identity() const { return identity_; }

    unsigned mul(unsigned a, unsigned b) const { return table_[a][b]; }
    unsigned inverse(unsigned a) const { return inv_[a]; }
    unsigned conj(unsigned g, unsigned x) const { // g x g^-1
        return mul(mul(g, x), inverse(g));
    }

    const std::string& label(unsigned a) const { return labels_[a]; }
    /// Index of a label; throws ParseError when unknown.
    unsigned index_of(const std::string& label) const;

private:
    Group() = default;
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::vector<unsigned>> table_;
    unsigned identity_ = 0;
    std::vector<unsigned> inv_;
};

/// True when members (arbitrary order, no duplicates) form a subgroup.
bool is_subgroup(const Group& G, const ElemList& members);
/// True when every n in normalizers conjugates sub onto itself.
bool is_normal_under(const Group& G, const ElemList& sub, const ElemList& normalizers);
/// Subgroup generated by seed, in discovery order (seed order first).
ElemList closure(const Group& G, ElemList seed);
/// Members of a, keeping a's order, that also lie in b.
ElemList ordered_intersection(const ElemList& a, const ElemList& b);

/// A chain 1 = C_0 <= C_1 <= ... <= C_d inside a fixed group, each level a
/// member list in its *declared order* (the order data files list elements
/// in; several constructions iterate in this order, so it is semantic).
struct SubgroupChain {
    std::vector<ElemList> groups; ///< groups[0] must be {identity}

    unsigned depth() const { return (unsigned)groups.size() - 1; }
    const ElemList& at(unsigned i) const;
    /// at(min(i, depth)): the chain is constant above its top.
    const ElemList& clamped(unsigned i) const { return groups[std::min<std::size_t>(i, depth())]; }
    std::vector<bool> mask(unsigned i, unsigned group_size) const;
};

/// Validates: level 0 is {e}; every level a subgroup (NotSubgroup);
/// ascending containment (NotSubgroup); every level normal in the top
/// group (NotNormal) — normality in the whole group is what the downstream
/// constructions rely on, and it implies normality in every higher level.
void verify_chain(const Group& G, const SubgroupChain& chain);

/// The intersected chain H_i = H `intersect` G_i, declared order inherited
/// from H's declared order.
SubgroupChain intersect_chain(const SubgroupChain& chain, const ElemList& H);

/// A level-consistent system of coset representatives for H_i inside G_i:
/// reps_at[i] is a transversal of H_i in G_i and reps_at[i] is a prefix-set
/// of reps_at[i+1] (every lower rep stays a rep higher up).
struct Transversal {
    std::vector<ElemList> reps_at;
    std::vector<unsigned> sigma; ///< sigma[g] = representative of g H_d, all g in G_d

    const ElemList& top() const { return reps_at.back(); }
    unsigned rep_of(unsigned g) const { return sigma[g]; }
    /// Position of a representative inside top(); throws when g is not a rep.
    std::size_t rep_pos(unsigned t) const;
};

/// Builds the ascending transversal level by level, extending by the
/// earliest uncovered element in each level's declared order.  Verifies the
/// prefix property; throws AscendingTransversalObstruction when lower reps
/// collide modulo a higher subgroup (cannot happen for intersected chains).
Transversal ascending_transversal(const Group& G, const SubgroupChain& big, const SubgroupChain& small);

/// The 2-cocycle h(g1~, g2~) = sigma(g1 g2)^-1 sigma(g1) sigma(g2) of a
/// section, with its filtration status against the chain pair.
struct Cocycle2 {
    Transversal T;
    /// table[a][b] = h(t_a~, t_b~) as a group element, indices into T.top().
    std::vector<std::vector<unsigned>> table;

    bool filtered = false;
    struct FilterWitness {
        unsigned level; ///< chain level i whose H_i fails to absorb the value
        unsigned rep1;  ///< t1 in T_i
        unsigned rep2;  ///< t in T_d
    };
    std::optional<FilterWitness> witness; ///< populated when !filtered

    unsigned value(const Group& G, unsigned t1, unsigned t2) const; ///< by rep elements
};

/// Computes the cocycle of the given transversal and verifies the cocycle
/// identity h(rs~, t~) * (t^-1 h(r~,s~) t) = h(r~, st~) * h(s~, t~) over all
/// representative triples (a violation means corrupted inputs and raises
/// CocycleIdentityViolation).  Also checks the normalization h(1,x) =
/// h(x,1) = 1 and determines filtration: h(t1~, t~) in H_i for every level
/// i, t1 in T_i, t in T_d.
Cocycle2 make_cocycle(const Group& G, const SubgroupChain& Gchain, const SubgroupChain& Hchain,
                      const Transversal& T);

/// Convenience: intersected chain + ascending transversal + cocycle for a
/// subgroup H of the chain's top group.  H must be normal in G
/// (HNotNormalInG) — the induced-action formula needs t^-1 h t in H.
struct InductionContext {
    SubgroupChain Hchain;
    Cocycle2 cocycle;
};
InductionContext induction_context(const Group& G, const SubgroupChain& Gchain, const ElemList& H);

/// Mackey data for a second subgroup E: S_i a transversal of (E n H)_i in
/// E_i, U_i double-coset representatives of (E_i, H_i) in G_i, and the
/// combined transversal T_i = S_i U_i of H_i in G_i.
struct MackeyData {
    SubgroupChain Echain;  ///< E_i = E n G_i
    SubgroupChain EHchain; ///< (E n H)_i
    std::vector<ElemList> S_at;
    std::vector<ElemList> U_at;
    Transversal S;         ///< transversal of (E n H) in E, ascending
    Transversal T;         ///< the combined transversal of H in G
};
MackeyData mackey_transversal(const Group& G, const SubgroupChain& Gchain, const ElemList& H,
                              const ElemList& E);

} // namespace glider
