#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "blobcalc/field.hpp"

namespace blobcalc {

using Index = std::uint32_t;

/// One sparse column: (row, value) pairs sorted by row, no zero values.
using SparseColumn = std::vector<std::pair<Index, Scalar>>;

/// Sparse matrix over an exact field, stored column-major. Only nonzero
/// entries are kept and row indices within a column are strictly increasing.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0) {}
    SparseMatrix(FieldSpec field, Index rows, Index cols);

    static SparseMatrix identity(FieldSpec field, Index n);

    FieldSpec field() const { return field_; }
    Index rows() const { return rows_; }
    Index cols() const { return static_cast<Index>(cols_.size()); }

    void set(Index r, Index c, const Scalar& v);
    void add_to(Index r, Index c, const Scalar& v);
    Scalar get(Index r, Index c) const;

    const SparseColumn& column(Index c) const { return cols_[c]; }
    /// Replaces a whole column; entries must be sorted by row, nonzero, in range.
    void set_column(Index c, SparseColumn entries);

    std::size_t nonzero_count() const;
    bool is_zero() const;

    SparseMatrix multiply(const SparseMatrix& rhs) const;
    SparseColumn apply(const SparseColumn& vec) const;  // this * vec
    SparseMatrix transpose() const;
    SparseMatrix operator-(const SparseMatrix& rhs) const;
    SparseMatrix operator+(const SparseMatrix& rhs) const;
    bool operator==(const SparseMatrix& rhs) const;

    /// Horizontal concatenation [lhs | rhs]; row counts must match.
    static SparseMatrix hconcat(const SparseMatrix& lhs, const SparseMatrix& rhs);

private:
    void check_indices(Index r, Index c) const;

    FieldSpec field_;
    Index rows_;
    std::vector<SparseColumn> cols_;
};

/// Rank over the matrix's field by exact Gaussian elimination. Pivots are
/// chosen scanning the lowest column index first, then the lowest row index.
Index rank(const SparseMatrix& m);

/// Basis of ker(m) as columns, in reduced column echelon form: column pivot
/// rows strictly increase, each pivot entry is 1 and is the only nonzero
/// entry of its row. The form is unique, so results are reproducible.
SparseMatrix kernel_basis(const SparseMatrix& m);

/// Reduced column echelon form of the column span (zero columns dropped).
SparseMatrix column_echelon(const SparseMatrix& m);

/// ambient_dim - rank(spanning_vectors).
Index quotient_dimension(Index ambient_dim, const SparseMatrix& spanning_vectors);

/// Basis (RCEF) of the intersection of the column spans. All inputs must
/// share the row dimension; an empty list is invalid.
SparseMatrix subspace_intersection(const std::vector<SparseMatrix>& bases);

/// Coordinates of `vec` in an RCEF basis, read off at the pivot rows and
/// verified exactly; throws std::logic_error if `vec` is outside the span.
SparseColumn coordinates_in_echelon_basis(const SparseMatrix& basis, const SparseColumn& vec);

/// Pivot rows of an RCEF matrix (first nonzero row of each column).
std::vector<Index> echelon_pivot_rows(const SparseMatrix& basis);

}  // namespace blobcalc
