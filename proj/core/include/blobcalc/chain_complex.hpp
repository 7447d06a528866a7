#pragma once

#include <string>
#include <vector>

#include "blobcalc/sparse_matrix.hpp"

namespace blobcalc {

/// Finite chain complex in degrees 0..K with exact-scalar differentials
/// d_k : C_k -> C_{k-1}. Construction validates matrix shapes and
/// d_k ∘ d_{k+1} = 0, so every live instance is a genuine complex.
class ChainComplex {
public:
    /// dims[k] is the dimension in degree k; differentials[k] is d_k for
    /// k >= 1 (differentials[0] is ignored and may be empty); labels[k]
    /// names the ordered basis of degree k (empty lists are auto-filled).
    ChainComplex(FieldSpec field, std::vector<Index> dims,
                 std::vector<SparseMatrix> differentials,
                 std::vector<std::vector<std::string>> labels);

    FieldSpec field() const { return field_; }
    Index top_degree() const { return static_cast<Index>(dims_.size() - 1); }
    Index dimension(Index k) const { return dims_.at(k); }
    const std::vector<Index>& dimensions() const { return dims_; }
    const SparseMatrix& differential(Index k) const;  // k in 1..K
    const std::vector<std::string>& basis_labels(Index k) const { return labels_.at(k); }

    /// Per-degree homology dimensions for degrees 0..K, treating d_0 and
    /// d_{K+1} as zero maps: dim H_k = dim ker d_k - rank d_{k+1}.
    std::vector<Index> homology_dimensions() const;

private:
    FieldSpec field_;
    std::vector<Index> dims_;
    std::vector<SparseMatrix> diffs_;
    std::vector<std::vector<std::string>> labels_;
};

}  // namespace blobcalc
