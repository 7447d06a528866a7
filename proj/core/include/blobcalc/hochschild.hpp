#pragma once

#include "blobcalc/category.hpp"
#include "blobcalc/chain_complex.hpp"

namespace blobcalc {

/// Degree-k slice of the cyclic bar complex: cyclic composable words
/// o_0 -> o_1 -> ... -> o_k -> o_0 with a hom basis element per step
/// (A^{⊗(k+1)} in the one-object case).
class BarSlice {
public:
    BarSlice(const CategoryPresentation& c, Index degree);

    Index degree() const { return degree_; }
    Index dimension() const { return static_cast<Index>(words_.size()); }
    struct CyclicWord {
        std::vector<int> objects;  // k+1 entries
        std::vector<Index> homs;   // k+1 entries, last one o_k -> o_0
    };
    const CyclicWord& word(Index i) const { return words_.at(i); }
    std::optional<Index> index_of(const std::vector<int>& objects,
                                  const std::vector<Index>& homs) const;
    std::string label(const CategoryPresentation& c, Index i) const;

private:
    Index degree_;
    std::vector<CyclicWord> words_;
    std::map<std::pair<std::vector<int>, std::vector<Index>>, Index> lookup_;
};

/// The Hochschild boundary b : slice k -> slice k-1,
/// b(a_0⊗…⊗a_k) = Σ_{i<k} (-1)^i a_0⊗…⊗(a_i a_{i+1})⊗…⊗a_k
///                + (-1)^k (a_k a_0)⊗a_1⊗…⊗a_{k-1},
/// with products taken in the left-to-right composition convention.
SparseMatrix bar_differential(const CategoryPresentation& c, Index k);

/// Cyclic bar complex through the given top degree (validated b∘b = 0).
ChainComplex bar_complex(const CategoryPresentation& c, Index top_degree);

/// Hochschild homology dimensions in degrees 0..max_degree, computed from
/// the bar complex built through degree max_degree + 1. Independent of the
/// blob and hocolim code paths.
std::vector<Index> hochschild_dims(const CategoryPresentation& c, Index max_degree);

}  // namespace blobcalc
