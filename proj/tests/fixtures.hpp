#pragma once

// Shared test fixtures: the two worked groups (Q8 and D8), their standard
// modules, chains, subspaces and irreducible catalogs.  Everything is built
// through the public API so the fixtures double as construction smoke tests.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "glider/clifford.hpp"
#include "glider/gmodule.hpp"

namespace fx {

using namespace glider;

// Q8 with labels [1,-1,i,-i,j,-j,k,-k]: element = (sign, unit 0..3 = 1,i,j,k).
inline Group make_q8() {
    auto enc = [](int sign, int unit) {
        return unit == 0 ? (sign > 0 ? 0 : 1) : 2 * unit + (sign > 0 ? 0 : 1);
    };
    std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    auto dec = [](unsigned e) { return std::pair<int, int>(e % 2 ? -1 : 1, e < 2 ? 0 : (int)e / 2); };
    int umul[4][4], usgn[4][4];
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) {
            if (u == 0) { umul[u][v] = v; usgn[u][v] = 1; }
            else if (v == 0) { umul[u][v] = u; usgn[u][v] = 1; }
            else if (u == v) { umul[u][v] = 0; usgn[u][v] = -1; }
            else {
                int w = 6 - u - v; // {1,2,3} = {i,j,k}
                bool cyc = (u == 1 && v == 2) || (u == 2 && v == 3) || (u == 3 && v == 1);
                umul[u][v] = w; usgn[u][v] = cyc ? 1 : -1;
            }
        }
    std::vector<std::vector<unsigned>> table(8, std::vector<unsigned>(8));
    for (unsigned a = 0; a < 8; ++a)
        for (unsigned b = 0; b < 8; ++b) {
            auto [sa, ua] = dec(a);
            auto [sb, ub] = dec(b);
            table[a][b] = enc(sa * sb * usgn[ua][ub], umul[ua][ub]);
        }
    return Group::from_table("Q8", labels, table);
}

// D8 = <a,x | a^4 = x^2 = 1, xax = a^-1>; element id = p + 4q for a^p x^q.
inline Group make_d8() {
    std::vector<std::string> labels = {"e", "a", "a2", "a3", "x", "ax", "a2x", "a3x"};
    std::vector<std::vector<unsigned>> table(8, std::vector<unsigned>(8));
    for (unsigned g = 0; g < 8; ++g)
        for (unsigned h = 0; h < 8; ++h) {
            int p = g % 4, q = g / 4, r = h % 4, s = h / 4;
            int pp = ((p + (q ? -r : r)) % 4 + 4) % 4;
            table[g][h] = (unsigned)(pp + 4 * ((q + s) % 2));
        }
    return Group::from_table("D8", labels, table);
}

// The Q8 workbench: ambient Omega = U + T3 + T2 (4-dim), the 2-dim simple U,
// the main chain 1 | Z4^j | Q8, the worked fragment M and the Z2/Z4^i/Z4^j
// irreducible catalogs.
struct Q8 {
    GroupPtr G;
    FieldPtr K;
    CycNumber I, one, zero;

    ElemList all8, Z2, Z4i, Z4j;
    SubgroupChain chain; // 1 | Z4^j | Q8

    ModulePtr Omega; // rho(i) = diag(i,-i,1,-1); rho(j) = ((0,-1;1,0), diag(-1,1))
    ModulePtr U;     // rho(i) = diag(i,-i); rho(j) = (0,-1;1,0)

    Vec e1, e3, e4, delta;
    Subspace M0, M1, M2, Zero4, Zero2;
    Subspace Ce1, Ce3, Ce4, E34, Uspan, Cf1;
    Fragment M; // [Omega, span{e1,e3,e4}, C delta, 0]

    IrrepCatalog catZ2, catZ4i, catZ4j;
    std::vector<IrrepCatalog> cats; // {catZ2, catZ4i}: what going_down needs

    CycNumber num(int n) const { return CycNumber(K, Rational(n)); }
    CycNumber cyc(int re, int im) const { return num(re) + num(im) * I; }
    Vec vec4(int a, int b, int c, int d, int ia = 0, int ib = 0, int ic = 0, int id = 0) const {
        return Vec{cyc(a, ia), cyc(b, ib), cyc(c, ic), cyc(d, id)};
    }
    Vec vec2(int a, int b, int ia = 0, int ib = 0) const { return Vec{cyc(a, ia), cyc(b, ib)}; }

    // One-dimensional representation of a subgroup from its value list.
    GModule one_dim(const ElemList& support, const std::vector<CycNumber>& vals) const {
        std::vector<FMatrix> mats;
        for (const CycNumber& v : vals) {
            FMatrix m(K, 1, 1);
            m.at(0, 0) = v;
            mats.push_back(m);
        }
        return GModule::from_action(G, K, support, mats);
    }
};

inline Q8 q8() {
    Q8 f;
    f.G = std::make_shared<Group>(make_q8());
    f.K = CycField::make(4);
    f.I = CycNumber::root(f.K);
    f.one = CycNumber::one(f.K);
    f.zero = CycNumber::zero(f.K);

    f.all8 = {0, 2, 1, 3, 4, 6, 5, 7}; // 1, i, -1, -i, j, k, -j, -k
    f.Z2 = {0, 1};
    f.Z4i = {0, 2, 1, 3};
    f.Z4j = {0, 4, 1, 5};
    f.chain.groups = {{0}, f.Z4j, f.all8};
    verify_chain(*f.G, f.chain);

    FMatrix Ri = FMatrix::identity(f.K, 4), Rj = FMatrix::identity(f.K, 4);
    Ri.at(0, 0) = f.I; Ri.at(1, 1) = -f.I; Ri.at(2, 2) = f.one; Ri.at(3, 3) = -f.one;
    Rj.at(0, 0) = f.zero; Rj.at(0, 1) = -f.one; Rj.at(1, 0) = f.one; Rj.at(1, 1) = f.zero;
    Rj.at(2, 2) = -f.one; Rj.at(3, 3) = f.one;
    f.Omega = std::make_shared<GModule>(
        GModule::from_generators(f.G, f.K, f.all8, {{2u, Ri}, {4u, Rj}}));

    FMatrix Riu(f.K, 2, 2), Rju(f.K, 2, 2);
    Riu.at(0, 0) = f.I; Riu.at(1, 1) = -f.I;
    Rju.at(0, 1) = -f.one; Rju.at(1, 0) = f.one;
    f.U = std::make_shared<GModule>(
        GModule::from_generators(f.G, f.K, f.all8, {{2u, Riu}, {4u, Rju}}));

    f.e1 = f.vec4(1, 0, 0, 0, 0, 1); // f1 + i f2
    f.e3 = f.vec4(0, 0, 1, 0);
    f.e4 = f.vec4(0, 0, 0, 1);
    f.delta = f.vec4(1, 0, 1, 1, 0, 1); // e1 + e3 + e4

    f.M0 = Subspace::full(f.K, 4);
    f.M1 = Subspace::span(f.K, 4, {f.e1, f.e3, f.e4});
    f.M2 = Subspace::span(f.K, 4, {f.delta});
    f.Zero4 = Subspace(f.K, 4);
    f.Zero2 = Subspace(f.K, 2);
    f.Ce1 = Subspace::span(f.K, 4, {f.e1});
    f.Ce3 = Subspace::span(f.K, 4, {f.e3});
    f.Ce4 = Subspace::span(f.K, 4, {f.e4});
    f.E34 = Subspace::span(f.K, 4, {f.e3, f.e4});
    f.Uspan = Subspace::span(f.K, 4, {f.vec4(1, 0, 0, 0), f.vec4(0, 1, 0, 0)});
    f.Cf1 = Subspace::span(f.K, 4, {f.vec4(1, 0, 0, 0)});

    f.M = Fragment{f.Omega, f.chain, {f.M0, f.M1, f.M2, f.Zero4}};

    f.catZ2 = IrrepCatalog{"Z2", f.Z2, {}};
    f.catZ2.entries.push_back({"triv", f.one_dim(f.Z2, {f.one, f.one}), {}});
    f.catZ2.entries.push_back({"sign", f.one_dim(f.Z2, {f.one, -f.one}), {}});

    auto powers = [&](const CycNumber& w) { // values on 1, g, g^2, g^3
        std::vector<CycNumber> vals = {f.one, w, w * w, w * w * w};
        return vals;
    };
    f.catZ4i = IrrepCatalog{"Z4i", f.Z4i, {}};
    f.catZ4j = IrrepCatalog{"Z4j", f.Z4j, {}};
    for (int k = 0; k < 4; ++k) {
        CycNumber w = f.one;
        for (int t = 0; t < k; ++t) w = w * f.I;
        f.catZ4i.entries.push_back({"chi" + std::to_string(k), f.one_dim(f.Z4i, powers(w)), {}});
        f.catZ4j.entries.push_back({"chi" + std::to_string(k), f.one_dim(f.Z4j, powers(w)), {}});
    }
    for (IrrepCatalog* cat : {&f.catZ2, &f.catZ4i, &f.catZ4j})
        for (CatalogEntry& e : cat->entries) e.character = e.rep.character(cat->support);
    validate_catalog(*f.G, f.catZ2);
    validate_catalog(*f.G, f.catZ4i);
    validate_catalog(*f.G, f.catZ4j);
    f.cats = {f.catZ2, f.catZ4i};
    return f;
}

// The D8 workbench: the 2-dim simple S, the chain 1 | <a> | D8, the Klein
// subgroup HD = {e, x, a2, a2x} and its catalog, plus the Z2 = {e, a2} one.
struct D8 {
    GroupPtr G;
    FieldPtr K;
    CycNumber I, one, zero;

    ElemList allD, Z4a, HD, Z2a2;
    SubgroupChain chain; // 1 | <a> | D8

    ModulePtr S;   // a = diag(i,-i), x = swap, over all of D8
    ModulePtr SHD; // the same space as an HD-module

    IrrepCatalog catZ2a2, catHD;
    std::vector<IrrepCatalog> cats;

    CycNumber num(int n) const { return CycNumber(K, Rational(n)); }
    Vec vec2(int a, int b, int ia = 0, int ib = 0) const {
        return Vec{num(a) + num(ia) * I, num(b) + num(ib) * I};
    }
    GModule one_dim(const ElemList& support, const std::vector<CycNumber>& vals) const {
        std::vector<FMatrix> mats;
        for (const CycNumber& v : vals) {
            FMatrix m(K, 1, 1);
            m.at(0, 0) = v;
            mats.push_back(m);
        }
        return GModule::from_action(G, K, support, mats);
    }
};

inline D8 d8() {
    D8 f;
    f.G = std::make_shared<Group>(make_d8());
    f.K = CycField::make(4);
    f.I = CycNumber::root(f.K);
    f.one = CycNumber::one(f.K);
    f.zero = CycNumber::zero(f.K);

    f.allD = {0, 1, 2, 3, 4, 5, 6, 7};
    f.Z4a = {0, 1, 2, 3};
    f.HD = {0, 4, 2, 6}; // e, x, a2, a2x
    f.Z2a2 = {0, 2};
    f.chain.groups = {{0}, f.Z4a, f.allD};
    verify_chain(*f.G, f.chain);

    FMatrix Ra(f.K, 2, 2), Rx(f.K, 2, 2);
    Ra.at(0, 0) = f.I; Ra.at(1, 1) = -f.I;
    Rx.at(0, 1) = f.one; Rx.at(1, 0) = f.one;
    f.S = std::make_shared<GModule>(
        GModule::from_generators(f.G, f.K, f.allD, {{1u, Ra}, {4u, Rx}}));
    FMatrix negI2 = FMatrix::identity(f.K, 2).scaled(-f.one);
    f.SHD = std::make_shared<GModule>(
        GModule::from_generators(f.G, f.K, f.HD, {{4u, Rx}, {2u, negI2}}));

    f.catZ2a2 = IrrepCatalog{"Z2a2", f.Z2a2, {}};
    f.catZ2a2.entries.push_back({"triv", f.one_dim(f.Z2a2, {f.one, f.one}), {}});
    f.catZ2a2.entries.push_back({"sign", f.one_dim(f.Z2a2, {f.one, -f.one}), {}});

    // support order (e, x, a2, a2x)
    f.catHD = IrrepCatalog{"Klein", f.HD, {}};
    f.catHD.entries.push_back({"triv", f.one_dim(f.HD, {f.one, f.one, f.one, f.one}), {}});
    f.catHD.entries.push_back({"sgn_a2", f.one_dim(f.HD, {f.one, f.one, -f.one, -f.one}), {}});
    f.catHD.entries.push_back({"sgn_x", f.one_dim(f.HD, {f.one, -f.one, f.one, -f.one}), {}});
    f.catHD.entries.push_back({"sgn_both", f.one_dim(f.HD, {f.one, -f.one, -f.one, f.one}), {}});
    for (IrrepCatalog* cat : {&f.catZ2a2, &f.catHD})
        for (CatalogEntry& e : cat->entries) e.character = e.rep.character(cat->support);
    validate_catalog(*f.G, f.catZ2a2);
    validate_catalog(*f.G, f.catHD);
    f.cats = {f.catZ2a2, f.catHD};
    return f;
}

// Error code of a callable, or "(no error)".
template <class F> std::string code_of(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "(no error)";
}

} // namespace fx
