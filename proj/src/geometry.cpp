#include "glider/geometry.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace glider {

namespace {

std::set<unsigned> as_set(const ElemList& xs) { return {xs.begin(), xs.end()}; }

bool subset_of(const ElemList& a, const ElemList& b) {
    auto bs = as_set(b);
    return std::all_of(a.begin(), a.end(), [&](unsigned x) { return bs.count(x) != 0; });
}

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

MultiPoly submatrix_det(const SymbolicMatrix& M, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
    std::size_t n = rows.size();
    if (n == 0) return MultiPoly::constant(M.field, M.rows ? M.entries[0][0].nvars() : 0,
                                           CycNumber::one(M.field));
    if (n == 1) return M.at(rows[0], cols[0]);
    MultiPoly acc = MultiPoly::zero(M.field, M.at(rows[0], cols[0]).nvars());
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> sub_cols;
        for (std::size_t t = 0; t < n; ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        MultiPoly term = M.at(rows[0], cols[j]) * submatrix_det(M, sub_rows, sub_cols);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/// Nonzero minors of the given size, monic, deduplicated, in order of first
/// occurrence (row subsets outer, column subsets inner, both lexicographic).
std::vector<MultiPoly> reduced_minors(const SymbolicMatrix& M, std::size_t size) {
    std::vector<MultiPoly> out;
    for (const auto& rows : combinations(M.rows, size))
        for (const auto& cols : combinations(M.cols, size)) {
            MultiPoly d = submatrix_det(M, rows, cols);
            if (d.is_zero()) continue;
            MultiPoly m = d.monic();
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
        }
    return out;
}

} // namespace

FMatrix SymbolicMatrix::evaluate(const Vec& values) const {
    FMatrix out(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = entries[r][c].evaluate(values);
    return out;
}

std::string SymbolicMatrix::pretty() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t r = 0; r < rows; ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < cols; ++c) {
            if (c) os << " ";
            os << entries[r][c].print();
        }
    }
    os << ")";
    return os.str();
}

SymbolicMatrix coefficient_matrix(const GModule& S, const ElemList& elems) {
    SymbolicMatrix out;
    out.field = S.field();
    out.rows = S.dim();
    out.cols = elems.size();
    std::size_t s = S.dim();
    out.entries.assign(out.rows, std::vector<MultiPoly>(out.cols, MultiPoly::zero(out.field, s)));
    for (std::size_t c = 0; c < elems.size(); ++c) {
        FMatrix rho = S.act(elems[c]);
        for (std::size_t r = 0; r < s; ++r) {
            MultiPoly e = MultiPoly::zero(out.field, s);
            for (std::size_t k = 0; k < s; ++k)
                e = e + MultiPoly::variable(out.field, s, k).scaled(rho.at(r, k));
            out.entries[r][c] = e;
        }
    }
    return out;
}

std::pair<SymbolicMatrix, SymbolicMatrix>
coefficient_matrices(const GModule& S, const ElemList& Hi, const ElemList& Gi) {
    return {coefficient_matrix(S, Hi), coefficient_matrix(S, Gi)};
}

std::size_t generic_rank(const SymbolicMatrix& A) {
    for (std::size_t r = std::min(A.rows, A.cols); r >= 1; --r)
        for (const auto& rows : combinations(A.rows, r))
            for (const auto& cols : combinations(A.cols, r))
                if (!submatrix_det(A, rows, cols).is_zero()) return r;
    return 0;
}

RankLocus rank_locus(const SymbolicMatrix& A, const SymbolicMatrix& B) {
    require(A.rows == B.rows, "DimensionMismatch",
            "coefficient matrices have different row counts");
    RankLocus out;
    out.rank_a = generic_rank(A);
    out.rank_b = generic_rank(B);
    if (out.rank_b > out.rank_a) {
        out.semantics = RankLocus::Semantics::Vanishing;
        out.generators = reduced_minors(B, out.rank_a + 1);
    } else {
        out.semantics = RankLocus::Semantics::Nonvanishing;
        out.generators = reduced_minors(A, out.rank_a);
    }

    // Projective roots: only for binary forms of degree <= 2.
    bool applicable = !out.generators.empty();
    for (const auto& g : out.generators)
        applicable = applicable && g.nvars() == 2 && g.degree() <= 2;
    if (applicable) {
        RootResult roots = homogeneous_binary_roots(out.generators.front());
        bool complete = roots.complete;
        for (const ProjPoint& p : roots.points) {
            bool common = true;
            for (const auto& g : out.generators)
                common = common && g.evaluate({p.x0, p.x1}).is_zero();
            if (common) out.points.push_back(p);
        }
        out.points_valid = complete;
        for (const ProjPoint& p : out.points)
            for (const auto& g : out.generators)
                require(g.evaluate({p.x0, p.x1}).is_zero(), "PreconditionFailure",
                        "internal: locus point fails substitution check");
    }
    return out;
}

PointReport evaluate_point(const GModule& S, const Vec& point,
                           const SubgroupChain& Gchain, const SubgroupChain& Hchain) {
    require(point.size() == S.dim(), "DimensionMismatch",
            "point has " + std::to_string(point.size()) + " coordinates, module dimension is " +
                std::to_string(S.dim()));
    bool all_zero = std::all_of(point.begin(), point.end(),
                               [](const CycNumber& c) { return c.is_zero(); });
    require(!all_zero, "ZeroVector", "projective point has no nonzero coordinate");
    require(Gchain.groups.size() == Hchain.groups.size(), "PreconditionFailure",
            "subgroup chains have different lengths");

    PointReport out;
    out.point = point;
    Subspace Ka = Subspace::span(S.field(), S.dim(), {point});
    std::size_t d = Gchain.groups.size() - 1;
    for (std::size_t i = 1; i <= d; ++i) {
        StageEvaluation st;
        st.data = decomposition_group(S, Ka, Hchain.groups.at(i), Gchain.groups.at(i));
        st.full_stage_group = as_set(st.data.group) == as_set(Gchain.groups.at(i));
        out.stages.push_back(std::move(st));
    }
    for (std::size_t k = 0; k + 1 < out.stages.size(); ++k) {
        bool ok = subset_of(out.stages[k].data.group, out.stages[k + 1].data.group);
        out.inclusion_ok.push_back(ok);
        out.inclusions_hold = out.inclusions_hold && ok;
    }
    return out;
}

MaximalityReport maximal_chain_check(const Group& G, const SubgroupChain& Gchain,
                                     const SubgroupChain& Hchain) {
    require(Gchain.groups.size() == Hchain.groups.size(), "PreconditionFailure",
            "subgroup chains have different lengths");
    MaximalityReport out;
    std::size_t d = Gchain.groups.size() - 1;
    for (std::size_t i = 1; i + 1 <= d; ++i) {
        std::set<unsigned> product;
        for (unsigned h : Hchain.groups.at(i + 1))
            for (unsigned g : Gchain.groups.at(i)) product.insert(G.mul(h, g));
        std::set<unsigned> target = as_set(Gchain.groups.at(i + 1));
        bool ok = product == target;
        out.stage_ok.push_back(ok);
        if (!ok && out.witness.empty()) {
            for (unsigned g : target)
                if (!product.count(g)) {
                    out.witness = "stage " + std::to_string(i) + ": " + G.label(g) +
                                  " is not a product h*g";
                    break;
                }
            if (out.witness.empty())
                for (unsigned p : product)
                    if (!target.count(p)) {
                        out.witness = "stage " + std::to_string(i) + ": product " + G.label(p) +
                                      " falls outside the next stage group";
                        break;
                    }
        }
        out.maximal = out.maximal && ok;
    }
    return out;
}

ConstraintReport constraint_check(const GModule& M,
                                  const std::vector<std::pair<std::string, unsigned>>& components) {
    require(!components.empty(), "NotDecomposed", "no decomposition into simples was supplied");
    std::size_t total = 0;
    for (const auto& [name, dim] : components) total += dim;
    require(total == M.dim(), "NotDecomposed",
            "declared components cover dimension " + std::to_string(total) +
                " but the module has dimension " + std::to_string(M.dim()));

    ConstraintReport out;
    std::vector<std::string> factors;
    std::size_t coord = 0;
    for (const auto& [name, dim] : components) {
        ComponentConstraint c;
        c.component = name;
        c.dim = dim;
        c.first_coord = coord;
        if (dim == 1) {
            c.projective = false;
            c.text = "a" + std::to_string(coord) + " != 0";
            ++out.nonzero_count;
        } else {
            c.projective = true;
            std::string coords;
            for (unsigned k = 0; k < dim; ++k)
                coords += (k ? ":" : "") + std::string("a") + std::to_string(coord + k);
            c.text = "[" + coords + "] in P^" + std::to_string(dim - 1);
            factors.push_back("P^" + std::to_string(dim - 1));
            ++out.projective_count;
        }
        out.constraints.push_back(std::move(c));
        coord += dim;
    }
    if (factors.empty()) {
        out.variety = "point";
    } else {
        for (std::size_t k = 0; k < factors.size(); ++k)
            out.variety += (k ? " x " : "") + factors[k];
    }
    return out;
}

} // namespace glider
