#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "blobcalc/sparse_matrix.hpp"

namespace blobcalc {

/// Sparse vector over a hom basis: (basis index, coefficient) pairs sorted
/// by index.
using SparseVec = std::vector<std::pair<Index, Scalar>>;

/// One structure-constant entry: e_a : src->mid composed with e_b : mid->dst
/// has coefficient `value` on basis element e_k of Hom(src,dst).
struct ComposeEntry {
    int src, mid, dst;
    Index a, b, k;
    Scalar value;
};

/// Presentation of a finite-dimensional linear 1-category: named objects, a
/// named basis for every ordered-pair hom space, composition structure
/// constants for the binary step, and identity coefficient vectors. A
/// presentation with one object is exactly a unital associative algebra.
///
/// Composition reads left to right along the manifold orientation: the
/// product of f : a->b and g : b->c is written compose(f, g) : a->c, and
/// iterated composites fold from the left.
class CategoryPresentation {
public:
    CategoryPresentation(std::string name, FieldSpec field, std::vector<std::string> objects,
                         std::vector<std::vector<std::vector<std::string>>> hom_names,
                         const std::vector<ComposeEntry>& compose,
                         std::vector<SparseVec> identities);

    const std::string& name() const { return name_; }
    FieldSpec field() const { return field_; }
    int object_count() const { return static_cast<int>(objects_.size()); }
    const std::string& object_name(int o) const { return objects_.at(o); }
    std::optional<int> object_index(const std::string& name) const;

    Index hom_dim(int src, int dst) const;
    const std::vector<std::string>& hom_basis(int src, int dst) const;
    /// Total dimension over all hom spaces.
    Index total_dim() const;

    /// compose(e_a : src->mid, e_b : mid->dst) over the Hom(src,dst) basis.
    const SparseVec& compose_pair(int src, int mid, int dst, Index a, Index b) const;
    /// compose of sparse vectors u (src->mid) and v (mid->dst).
    SparseVec compose_vec(int src, int mid, int dst, const SparseVec& u, const SparseVec& v) const;
    const SparseVec& identity_vector(int o) const { return identities_.at(o); }

    /// One object and ab = ba for all basis pairs.
    bool is_commutative() const;

    bool operator==(const CategoryPresentation&) const = default;

private:
    std::size_t pair_slot(int src, int dst) const;

    std::string name_;
    FieldSpec field_;
    std::vector<std::string> objects_;
    std::vector<std::vector<std::string>> hom_names_;          // [src*n+dst]
    std::vector<std::vector<SparseVec>> compose_;              // [(src*n+mid)*n+dst][a*dim(mid,dst)+b]
    std::vector<SparseVec> identities_;
    SparseVec empty_vec_;
};

/// Category laws violated by the presentation, at most 10 reported. Empty
/// result means the presentation is a valid linear 1-category.
std::vector<std::string> validate(const CategoryPresentation& c);

/// Built-in presentations: "ground", "trunc-poly:<k>", "group:Z/<n>",
/// "matrix:<n>", each with an optional "@F<p>" field suffix (default: the
/// rationals). Throws std::invalid_argument for unknown names.
CategoryPresentation builtin_presentation(const std::string& name);

/// Left-to-right iterated composition along a path of m+1 objects, as a
/// matrix from the m-fold tensor of step hom spaces to Hom(o_0, o_m).
/// Column index convention: the first step is the most significant digit.
/// For m = 0 the result is the single column id_{o_0}.
SparseMatrix composition_map(const CategoryPresentation& c, const std::vector<int>& object_path);

struct NullSubspace {
    int src, dst;
    Index word_length;
    SparseMatrix basis;  // kernel of the path composition, RCEF columns
};

/// Kernel of composition_map along the given path (m >= 1).
NullSubspace null_subspace(const CategoryPresentation& c, const std::vector<int>& object_path);

/// dim A - rank span{ab - ba}; defined for one-object presentations only.
Index commutator_quotient_dim(const CategoryPresentation& c);

/// All composable words of a fixed length between two objects: a tuple of
/// intermediate objects together with one hom basis index per step. This is
/// the direct sum over internal object paths of the per-path tensors, which
/// is what null fields on a ball live in (internal labels may mix).
class MorphismWordSpace {
public:
    struct Word {
        std::vector<int> objects;  // length + 1 entries, fixed endpoints
        std::vector<Index> homs;   // length entries
    };

    MorphismWordSpace(const CategoryPresentation& c, int src, int dst, Index length);

    int src() const { return src_; }
    int dst() const { return dst_; }
    Index length() const { return length_; }
    Index dimension() const { return static_cast<Index>(words_.size()); }
    const Word& word(Index i) const { return words_.at(i); }
    std::optional<Index> index_of(const std::vector<int>& objects,
                                  const std::vector<Index>& homs) const;

    /// Evaluation by iterated composition: word space -> Hom(src,dst).
    SparseMatrix evaluation_matrix(const CategoryPresentation& c) const;

private:
    int src_, dst_;
    Index length_;
    std::vector<Word> words_;
    std::map<std::pair<std::vector<int>, std::vector<Index>>, Index> lookup_;
};

}  // namespace blobcalc
