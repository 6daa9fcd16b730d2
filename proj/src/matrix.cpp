#include "glider/matrix.hpp"

#include <algorithm>
#include <cassert>

namespace glider {

FMatrix::FMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      data_(rows * cols, CycNumber::zero(field_)) {}

FMatrix FMatrix::identity(const FieldPtr& field, std::size_t n) {
    FMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CycNumber::one(field);
    return m;
}

FMatrix FMatrix::from_rows(const FieldPtr& field, const std::vector<Vec>& rows) {
    require(!rows.empty(), "DimensionMismatch", "matrix needs at least one row");
    FMatrix m(field, rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == m.cols_, "DimensionMismatch", "ragged rows");
        for (std::size_t c = 0; c < m.cols_; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

Vec FMatrix::row(std::size_t r) const {
    Vec v(cols_, CycNumber::zero(field_));
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

Vec FMatrix::col(std::size_t c) const {
    Vec v(rows_, CycNumber::zero(field_));
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

FMatrix FMatrix::operator*(const FMatrix& o) const {
    require(cols_ == o.rows_, "DimensionMismatch", "matrix product shape mismatch");
    FMatrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const CycNumber& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) += aik * o.at(k, j);
            }
        }
    return r;
}

FMatrix FMatrix::operator+(const FMatrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "DimensionMismatch", "matrix sum shape mismatch");
    FMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

FMatrix FMatrix::operator-(const FMatrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "DimensionMismatch", "matrix difference shape mismatch");
    FMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

FMatrix FMatrix::scaled(const CycNumber& c) const {
    FMatrix r = *this;
    for (auto& x : r.data_) x *= c;
    return r;
}

FMatrix FMatrix::transpose() const {
    FMatrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool FMatrix::operator==(const FMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    return data_ == o.data_;
}

bool FMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const CycNumber& c) { return c.is_zero(); });
}

Vec FMatrix::apply(const Vec& v) const {
    require(v.size() == cols_, "DimensionMismatch", "matrix-vector shape mismatch");
    Vec r(rows_, CycNumber::zero(field_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            r[i] += at(i, j) * v[j];
        }
    return r;
}

FMatrix FMatrix::rref(std::vector<std::size_t>* pivots) const {
    FMatrix m = *this;
    if (pivots) pivots->clear();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
        // find pivot row
        std::size_t piv = lead;
        while (piv < rows_ && m.at(piv, c).is_zero()) ++piv;
        if (piv == rows_) continue;
        // swap into place
        if (piv != lead)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(lead, j));
        // normalize pivot row
        const CycNumber inv = m.at(lead, c).inverse();
        for (std::size_t j = c; j < cols_; ++j) m.at(lead, j) *= inv;
        // eliminate everywhere else
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == lead || m.at(r, c).is_zero()) continue;
            const CycNumber f = m.at(r, c);
            for (std::size_t j = c; j < cols_; ++j) m.at(r, j) -= f * m.at(lead, j);
        }
        if (pivots) pivots->push_back(c);
        ++lead;
    }
    return m;
}

std::size_t FMatrix::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

std::vector<Vec> FMatrix::kernel() const {
    std::vector<std::size_t> piv;
    FMatrix r = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : piv) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        Vec v(cols_, CycNumber::zero(field_));
        v[c] = CycNumber::one(field_);
        // pivot variable values: row i of rref pairs pivot piv[i] with column c
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r.at(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FMatrix> FMatrix::inverse() const {
    require(rows_ == cols_, "DimensionMismatch", "inverse of a non-square matrix");
    // rref of [A | I]
    FMatrix aug(field_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = CycNumber::one(field_);
    }
    std::vector<std::size_t> piv;
    FMatrix r = aug.rref(&piv);
    if (piv.size() != rows_ || piv.back() >= cols_) return std::nullopt;
    FMatrix inv(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = r.at(i, cols_ + j);
    return inv;
}

std::string FMatrix::pretty() const {
    std::string out = "(";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out += " ";
            out += at(i, j).pretty();
        }
    }
    return out + ")";
}

std::optional<Vec> solve_linear(const FMatrix& A, const Vec& b) {
    require(b.size() == A.rows(), "DimensionMismatch", "solve shape mismatch");
    FMatrix aug(A.field(), A.rows(), A.cols() + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    FMatrix r = aug.rref(&piv);
    if (!piv.empty() && piv.back() == A.cols()) return std::nullopt; // inconsistent
    Vec x(A.cols(), CycNumber::zero(A.field()));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r.at(i, A.cols());
    return x;
}

Subspace::Subspace(FieldPtr field, std::size_t ambient)
    : field_(std::move(field)), ambient_(ambient) {}

Subspace Subspace::span(const FieldPtr& field, std::size_t ambient, const std::vector<Vec>& vectors) {
    Subspace s(field, ambient);
    if (vectors.empty()) return s;
    FMatrix m(field, vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        require(vectors[i].size() == ambient, "DimensionMismatch", "spanning vector has wrong length");
        for (std::size_t j = 0; j < ambient; ++j) m.at(i, j) = vectors[i][j];
    }
    std::vector<std::size_t> piv;
    FMatrix r = m.rref(&piv);
    for (std::size_t i = 0; i < piv.size(); ++i) s.basis_.push_back(r.row(i));
    return s;
}

Subspace Subspace::full(const FieldPtr& field, std::size_t ambient) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < ambient; ++i) {
        Vec v(ambient, CycNumber::zero(field));
        v[i] = CycNumber::one(field);
        rows.push_back(std::move(v));
    }
    return span(field, ambient, rows);
}

FMatrix Subspace::basis_matrix() const {
    require(!basis_.empty(), "DimensionMismatch", "zero subspace has an empty basis");
    return FMatrix::from_rows(field_, basis_);
}

bool Subspace::contains(const Vec& v) const {
    require(v.size() == ambient_, "DimensionMismatch", "vector has wrong ambient dimension");
    // reduce v against the rref basis
    Vec w = v;
    for (const Vec& b : basis_) {
        // find pivot of b
        std::size_t p = 0;
        while (p < ambient_ && b[p].is_zero()) ++p;
        if (p == ambient_) continue;
        if (!w[p].is_zero()) {
            const CycNumber f = w[p]; // basis pivot is 1
            for (std::size_t j = 0; j < ambient_; ++j) w[j] -= f * b[j];
        }
    }
    return std::all_of(w.begin(), w.end(), [](const CycNumber& c) { return c.is_zero(); });
}

bool Subspace::contains(const Subspace& other) const {
    for (const Vec& b : other.basis_)
        if (!contains(b)) return false;
    return true;
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
}

Subspace Subspace::sum(const Subspace& o) const {
    require(ambient_ == o.ambient_, "DimensionMismatch", "sum of subspaces of different spaces");
    std::vector<Vec> all = basis_;
    all.insert(all.end(), o.basis_.begin(), o.basis_.end());
    return span(field_ ? field_ : o.field_, ambient_, all);
}

Subspace Subspace::intersect(const Subspace& o) const {
    require(ambient_ == o.ambient_, "DimensionMismatch", "intersection of subspaces of different spaces");
    if (is_zero() || o.is_zero()) return Subspace(field_ ? field_ : o.field_, ambient_);
    // Solutions of y_A * A + y_B * B = 0 give intersection vectors y_A * A.
    // Stack A over B, take the left kernel (= kernel of the transpose).
    std::vector<Vec> stacked = basis_;
    stacked.insert(stacked.end(), o.basis_.begin(), o.basis_.end());
    FMatrix m = FMatrix::from_rows(field_, stacked);
    std::vector<Vec> left = m.transpose().kernel();
    std::vector<Vec> gens;
    for (const Vec& y : left) {
        Vec v(ambient_, CycNumber::zero(field_));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (std::size_t j = 0; j < ambient_; ++j) v[j] += y[i] * basis_[i][j];
        gens.push_back(std::move(v));
    }
    return span(field_, ambient_, gens);
}

Subspace Subspace::image(const FMatrix& m) const {
    require(m.cols() == ambient_, "DimensionMismatch", "map domain mismatch");
    std::vector<Vec> rows;
    for (const Vec& b : basis_) rows.push_back(m.apply(b));
    return span(field_, m.rows(), rows);
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    require(v.size() == ambient_, "DimensionMismatch", "vector has wrong ambient dimension");
    if (basis_.empty()) {
        const bool zero = std::all_of(v.begin(), v.end(), [](const CycNumber& c) { return c.is_zero(); });
        if (zero) return Vec{};
        return std::nullopt;
    }
    // solve x * B = v  <=>  B^T x = v
    return solve_linear(basis_matrix().transpose(), v);
}

std::string vec_pretty(const Vec& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].pretty();
    }
    return out + "]";
}

std::string Subspace::pretty() const {
    if (basis_.empty()) return "0";
    std::string out = "span{";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i) out += ", ";
        out += vec_pretty(basis_[i]);
    }
    return out + "}";
}

} // namespace glider
