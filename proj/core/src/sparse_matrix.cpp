#include "blobcalc/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace blobcalc {

SparseMatrix::SparseMatrix(FieldSpec field, Index rows, Index cols)
    : field_(field), rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::identity(FieldSpec field, Index n) {
    SparseMatrix m(field, n, n);
    for (Index i = 0; i < n; ++i) m.cols_[i].emplace_back(i, Scalar::one(field));
    return m;
}

void SparseMatrix::check_indices(Index r, Index c) const {
    if (r >= rows_ || c >= cols())
        throw std::out_of_range("sparse matrix index out of range");
}

void SparseMatrix::set(Index r, Index c, const Scalar& v) {
    check_indices(r, c);
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, Index row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        if (v.is_zero())
            col.erase(it);
        else
            it->second = v;
    } else if (!v.is_zero()) {
        col.insert(it, {r, v});
    }
}

void SparseMatrix::add_to(Index r, Index c, const Scalar& v) {
    if (v.is_zero()) return;
    check_indices(r, c);
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, Index row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        Scalar s = it->second + v;
        if (s.is_zero())
            col.erase(it);
        else
            it->second = s;
    } else {
        col.insert(it, {r, v});
    }
}

Scalar SparseMatrix::get(Index r, Index c) const {
    check_indices(r, c);
    const auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, Index row) { return e.first < row; });
    if (it != col.end() && it->first == r) return it->second;
    return Scalar::zero(field_);
}

void SparseMatrix::set_column(Index c, SparseColumn entries) {
    if (c >= cols()) throw std::out_of_range("column index out of range");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].first >= rows_) throw std::out_of_range("row index out of range");
        if (i > 0 && entries[i - 1].first >= entries[i].first)
            throw std::invalid_argument("column entries must be sorted by row");
        if (entries[i].second.is_zero())
            throw std::invalid_argument("column entries must be nonzero");
    }
    cols_[c] = std::move(entries);
}

std::size_t SparseMatrix::nonzero_count() const {
    std::size_t n = 0;
    for (const auto& col : cols_) n += col.size();
    return n;
}

bool SparseMatrix::is_zero() const {
    for (const auto& col : cols_)
        if (!col.empty()) return false;
    return true;
}

namespace {

/// dest += coeff * src, both sorted sparse columns.
SparseColumn axpy(const SparseColumn& dest, const Scalar& coeff, const SparseColumn& src) {
    SparseColumn out;
    out.reserve(dest.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dest.size() || j < src.size()) {
        if (j == src.size() || (i < dest.size() && dest[i].first < src[j].first)) {
            out.push_back(dest[i++]);
        } else if (i == dest.size() || src[j].first < dest[i].first) {
            Scalar v = coeff * src[j].second;
            if (!v.is_zero()) out.emplace_back(src[j].first, std::move(v));
            ++j;
        } else {
            Scalar v = dest[i].second + coeff * src[j].second;
            if (!v.is_zero()) out.emplace_back(dest[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseColumn scale(const SparseColumn& col, const Scalar& coeff) {
    SparseColumn out;
    out.reserve(col.size());
    for (const auto& [r, v] : col) {
        Scalar s = coeff * v;
        if (!s.is_zero()) out.emplace_back(r, std::move(s));
    }
    return out;
}

const Scalar* find_entry(const SparseColumn& col, Index r) {
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, Index row) { return e.first < row; });
    if (it != col.end() && it->first == r) return &it->second;
    return nullptr;
}

}  // namespace

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    if (cols() != rhs.rows()) throw std::invalid_argument("matrix product shape mismatch");
    SparseMatrix out(field_, rows_, rhs.cols());
    for (Index c = 0; c < rhs.cols(); ++c) {
        SparseColumn acc;
        for (const auto& [k, v] : rhs.cols_[c]) acc = axpy(acc, v, cols_[k]);
        out.cols_[c] = std::move(acc);
    }
    return out;
}

SparseColumn SparseMatrix::apply(const SparseColumn& vec) const {
    SparseColumn acc;
    for (const auto& [k, v] : vec) {
        if (k >= cols()) throw std::out_of_range("vector index out of range");
        acc = axpy(acc, v, cols_[k]);
    }
    return acc;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix out(field_, cols(), rows_);
    for (Index c = 0; c < cols(); ++c)
        for (const auto& [r, v] : cols_[c]) out.cols_[r].emplace_back(c, v);
    return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols() != rhs.cols())
        throw std::invalid_argument("matrix difference shape mismatch");
    SparseMatrix out(field_, rows_, cols());
    Scalar minus_one = -Scalar::one(field_);
    for (Index c = 0; c < cols(); ++c) out.cols_[c] = axpy(cols_[c], minus_one, rhs.cols_[c]);
    return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols() != rhs.cols())
        throw std::invalid_argument("matrix sum shape mismatch");
    SparseMatrix out(field_, rows_, cols());
    Scalar one = Scalar::one(field_);
    for (Index c = 0; c < cols(); ++c) out.cols_[c] = axpy(cols_[c], one, rhs.cols_[c]);
    return out;
}

bool SparseMatrix::operator==(const SparseMatrix& rhs) const {
    return field_ == rhs.field_ && rows_ == rhs.rows_ && cols_ == rhs.cols_;
}

SparseMatrix SparseMatrix::hconcat(const SparseMatrix& lhs, const SparseMatrix& rhs) {
    if (lhs.rows() != rhs.rows()) throw std::invalid_argument("hconcat row mismatch");
    SparseMatrix out(lhs.field(), lhs.rows(), lhs.cols() + rhs.cols());
    for (Index c = 0; c < lhs.cols(); ++c) out.cols_[c] = lhs.cols_[c];
    for (Index c = 0; c < rhs.cols(); ++c) out.cols_[lhs.cols() + c] = rhs.cols_[c];
    return out;
}

Index rank(const SparseMatrix& m) {
    // Left-looking elimination. Columns are consumed left to right and each
    // reduced column pivots on its lowest remaining row, which realizes the
    // "lowest column, then lowest row" scan deterministically.
    std::unordered_map<Index, std::size_t> pivot_of_row;
    std::vector<SparseColumn> pivot_cols;
    for (Index c = 0; c < m.cols(); ++c) {
        SparseColumn v = m.column(c);
        while (!v.empty()) {
            Index r = v.front().first;
            auto it = pivot_of_row.find(r);
            if (it == pivot_of_row.end()) break;
            const SparseColumn& p = pivot_cols[it->second];
            Scalar coeff = -(v.front().second / p.front().second);
            v = axpy(v, coeff, p);
        }
        if (!v.empty()) {
            pivot_of_row.emplace(v.front().first, pivot_cols.size());
            pivot_cols.push_back(std::move(v));
        }
    }
    return static_cast<Index>(pivot_cols.size());
}

namespace {

struct EchelonState {
    // Columns in reduced column echelon form; pivot row of each column is
    // its first entry, pivot value 1, and no other column is nonzero there.
    std::vector<SparseColumn> columns;
    std::unordered_map<Index, std::size_t> pivot_of_row;

    // Reduces v against the current pivots (at pivot rows only).
    SparseColumn reduce(SparseColumn v) const {
        for (std::size_t i = 0; i < v.size();) {
            auto it = pivot_of_row.find(v[i].first);
            if (it == pivot_of_row.end()) {
                ++i;
                continue;
            }
            Scalar coeff = -v[i].second;
            v = axpy(v, coeff, columns[it->second]);
            // Entries before position i are untouched (pivot support starts
            // at its pivot row); rescan from i.
        }
        return v;
    }

    void insert(SparseColumn v) {
        Index pr = v.front().first;
        v = scale(v, v.front().second.inverse());
        for (auto& col : columns) {
            if (const Scalar* e = find_entry(col, pr)) {
                Scalar coeff = -*e;
                col = axpy(col, coeff, v);
            }
        }
        pivot_of_row.emplace(pr, columns.size());
        columns.push_back(std::move(v));
    }

    SparseMatrix to_matrix(FieldSpec field, Index rows) const {
        std::vector<std::size_t> order(columns.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return columns[a].front().first < columns[b].front().first;
        });
        SparseMatrix out(field, rows, static_cast<Index>(columns.size()));
        for (std::size_t i = 0; i < order.size(); ++i)
            out.set_column(static_cast<Index>(i), columns[order[i]]);
        return out;
    }
};

}  // namespace

SparseMatrix column_echelon(const SparseMatrix& m) {
    EchelonState st;
    for (Index c = 0; c < m.cols(); ++c) {
        SparseColumn v = st.reduce(m.column(c));
        if (!v.empty()) st.insert(std::move(v));
    }
    return st.to_matrix(m.field(), m.rows());
}

SparseMatrix kernel_basis(const SparseMatrix& m) {
    // Eliminate columns of m while tracking the column combinations; a column
    // that reduces to zero yields a kernel vector.
    std::unordered_map<Index, std::size_t> pivot_of_row;
    std::vector<SparseColumn> pivot_cols;
    std::vector<SparseColumn> pivot_tracks;
    SparseMatrix kernel(m.field(), m.cols(), 0);
    std::vector<SparseColumn> kernel_cols;
    for (Index c = 0; c < m.cols(); ++c) {
        SparseColumn v = m.column(c);
        SparseColumn track{{c, Scalar::one(m.field())}};
        while (!v.empty()) {
            Index r = v.front().first;
            auto it = pivot_of_row.find(r);
            if (it == pivot_of_row.end()) break;
            Scalar coeff = -(v.front().second / pivot_cols[it->second].front().second);
            v = axpy(v, coeff, pivot_cols[it->second]);
            track = axpy(track, coeff, pivot_tracks[it->second]);
        }
        if (v.empty()) {
            kernel_cols.push_back(std::move(track));
        } else {
            pivot_of_row.emplace(v.front().first, pivot_cols.size());
            pivot_cols.push_back(std::move(v));
            pivot_tracks.push_back(std::move(track));
        }
    }
    SparseMatrix raw(m.field(), m.cols(), static_cast<Index>(kernel_cols.size()));
    for (Index i = 0; i < kernel_cols.size(); ++i) raw.set_column(i, std::move(kernel_cols[i]));
    return column_echelon(raw);
}

Index quotient_dimension(Index ambient_dim, const SparseMatrix& spanning_vectors) {
    if (spanning_vectors.rows() != ambient_dim)
        throw std::invalid_argument("spanning vectors must live in the ambient space");
    return ambient_dim - rank(spanning_vectors);
}

SparseMatrix subspace_intersection(const std::vector<SparseMatrix>& bases) {
    if (bases.empty()) throw std::invalid_argument("subspace_intersection of an empty list");
    SparseMatrix acc = column_echelon(bases.front());
    for (std::size_t i = 1; i < bases.size(); ++i) {
        const SparseMatrix& b = bases[i];
        if (b.rows() != acc.rows())
            throw std::invalid_argument("subspace_intersection row dimension mismatch");
        // ker[acc | -b]: solutions acc x = b y; intersection vectors acc x.
        SparseMatrix neg(b.field(), b.rows(), b.cols());
        Scalar minus_one = -Scalar::one(b.field());
        for (Index c = 0; c < b.cols(); ++c) neg.set_column(c, scale(b.column(c), minus_one));
        SparseMatrix combined = SparseMatrix::hconcat(acc, neg);
        SparseMatrix k = kernel_basis(combined);
        SparseMatrix result(acc.field(), acc.rows(), k.cols());
        for (Index c = 0; c < k.cols(); ++c) {
            SparseColumn x;
            for (const auto& [r, v] : k.column(c))
                if (r < acc.cols()) x.emplace_back(r, v);
            result.set_column(c, acc.apply(x));
        }
        acc = column_echelon(result);
    }
    return acc;
}

std::vector<Index> echelon_pivot_rows(const SparseMatrix& basis) {
    std::vector<Index> pivots;
    pivots.reserve(basis.cols());
    for (Index c = 0; c < basis.cols(); ++c) {
        if (basis.column(c).empty()) throw std::logic_error("echelon basis with empty column");
        pivots.push_back(basis.column(c).front().first);
    }
    return pivots;
}

SparseColumn coordinates_in_echelon_basis(const SparseMatrix& basis, const SparseColumn& vec) {
    SparseColumn coords;
    SparseColumn residual = vec;
    for (Index c = 0; c < basis.cols(); ++c) {
        Index pr = basis.column(c).front().first;
        if (const Scalar* e = find_entry(residual, pr)) {
            Scalar x = *e / basis.column(c).front().second;
            residual = axpy(residual, -x, basis.column(c));
            coords.emplace_back(c, std::move(x));
        }
    }
    if (!residual.empty())
        throw std::logic_error("vector is not in the span of the echelon basis");
    return coords;
}

}  // namespace blobcalc
