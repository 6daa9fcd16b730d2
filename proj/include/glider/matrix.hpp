#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glider/cyclotomic.hpp"

namespace glider {

using Vec = std::vector<CycNumber>;

/// Dense matrix over K = Q(zeta_n), row-major.  All arithmetic is exact.
class FMatrix {
public:
    FMatrix() = default;
    FMatrix(FieldPtr field, std::size_t rows, std::size_t cols); ///< zero-filled

    static FMatrix identity(const FieldPtr& field, std::size_t n);
    /// Builds from nested initializer data; rows must have equal length.
    static FMatrix from_rows(const FieldPtr& field, const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    CycNumber& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const CycNumber& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Vec col(std::size_t c) const;

    FMatrix operator*(const FMatrix& o) const;
    FMatrix operator+(const FMatrix& o) const;
    FMatrix operator-(const FMatrix& o) const;
    FMatrix scaled(const CycNumber& c) const;
    FMatrix transpose() const;
    bool operator==(const FMatrix& o) const;
    bool operator!=(const FMatrix& o) const { return !(*this == o); }

    bool is_zero() const;

    /// A * v with v a column vector.
    Vec apply(const Vec& v) const;

    /// Reduced row echelon form; pivots gets the pivot column indices.
    FMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
    std::size_t rank() const;

    /// Basis of the right kernel {x : A x = 0}, one vector per element.
    std::vector<Vec> kernel() const;

    /// Inverse of a square invertible matrix; std::nullopt when singular.
    std::optional<FMatrix> inverse() const;

    /// "(a b; c d)" with canonical scalar printing.
    std::string pretty() const;

private:
    FieldPtr field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<CycNumber> data_;
};

/// Some solution x of A x = b, or nullopt when inconsistent.
std::optional<Vec> solve_linear(const FMatrix& A, const Vec& b);

/// A subspace of K^n held in canonical form: the reduced row echelon basis,
/// one basis vector per row.  Two Subspace values are equal iff they are the
/// same subspace, so == on the canonical bases decides everything.
class Subspace {
public:
    Subspace() = default;
    /// The zero subspace of K^n.
    Subspace(FieldPtr field, std::size_t ambient);

    /// Row space of the given spanning vectors (not necessarily independent).
    static Subspace span(const FieldPtr& field, std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace full(const FieldPtr& field, std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }
    const FieldPtr& field() const { return field_; }

    const std::vector<Vec>& basis() const { return basis_; }
    FMatrix basis_matrix() const; ///< dim x ambient, rows = basis

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;

    /// Image under the linear map m (columns convention: vectors v -> m v).
    Subspace image(const FMatrix& m) const;

    /// Coordinates of v in this subspace's basis; nullopt if v is outside.
    std::optional<Vec> coordinates(const Vec& v) const;

    /// Deterministic description like "span{[1,0,0], [0,1,-i]}".
    std::string pretty() const;

private:
    FieldPtr field_;
    std::size_t ambient_ = 0;
    std::vector<Vec> basis_; ///< rref rows, zero rows dropped
};

std::string vec_pretty(const Vec& v);

} // namespace glider
