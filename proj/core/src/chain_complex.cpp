#include "blobcalc/chain_complex.hpp"

#include <stdexcept>

namespace blobcalc {

ChainComplex::ChainComplex(FieldSpec field, std::vector<Index> dims,
                           std::vector<SparseMatrix> differentials,
                           std::vector<std::vector<std::string>> labels)
    : field_(field), dims_(std::move(dims)), diffs_(std::move(differentials)),
      labels_(std::move(labels)) {
    if (dims_.empty()) throw std::invalid_argument("chain complex needs degree 0");
    if (diffs_.size() != dims_.size())
        throw std::invalid_argument("one differential slot per degree expected");
    diffs_[0] = SparseMatrix(field_, 0, dims_[0]);
    for (std::size_t k = 1; k < dims_.size(); ++k) {
        if (diffs_[k].rows() != dims_[k - 1] || diffs_[k].cols() != dims_[k])
            throw std::invalid_argument("differential shape mismatch in degree " +
                                        std::to_string(k));
    }
    for (std::size_t k = 1; k + 1 < dims_.size(); ++k) {
        if (!diffs_[k].multiply(diffs_[k + 1]).is_zero())
            throw std::invalid_argument("d∘d != 0 between degrees " + std::to_string(k + 1) +
                                        " and " + std::to_string(k - 1));
    }
    if (labels_.empty()) labels_.resize(dims_.size());
    if (labels_.size() != dims_.size())
        throw std::invalid_argument("one label list per degree expected");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (labels_[k].empty()) {
            labels_[k].reserve(dims_[k]);
            for (Index i = 0; i < dims_[k]; ++i)
                labels_[k].push_back("d" + std::to_string(k) + "#" + std::to_string(i));
        } else if (labels_[k].size() != dims_[k]) {
            throw std::invalid_argument("label count mismatch in degree " + std::to_string(k));
        }
    }
}

const SparseMatrix& ChainComplex::differential(Index k) const {
    if (k == 0 || k >= dims_.size())
        throw std::out_of_range("differential index must be in 1..top_degree");
    return diffs_[k];
}

std::vector<Index> ChainComplex::homology_dimensions() const {
    std::vector<Index> ranks(dims_.size() + 1, 0);
    for (std::size_t k = 1; k < dims_.size(); ++k) ranks[k] = rank(diffs_[k]);
    std::vector<Index> h(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        Index kernel_dim = dims_[k] - ranks[k];
        h[k] = kernel_dim - ranks[k + 1];
    }
    return h;
}

}  // namespace blobcalc
