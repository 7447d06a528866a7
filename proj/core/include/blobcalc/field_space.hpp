#pragma once

#include <map>
#include <optional>

#include "blobcalc/category.hpp"
#include "blobcalc/manifold.hpp"

namespace blobcalc {

/// Optional fixed objects at interval boundary slots, keyed by component
/// index: (left slot 0 object, right slot N object). Components without an
/// entry have free boundary (summed over). Circles have no boundary.
struct BoundaryCondition {
    std::map<int, std::pair<int, int>> fixed;
    bool operator==(const BoundaryCondition&) const = default;
};

/// Basis element data for one component: an object per labeled position and
/// a hom basis index per morphism position. For field spaces the labeled
/// positions are the gaps and the morphism positions the marked points; for
/// psi values they are the cut slots and the decomposition pieces.
struct ComponentLabeling {
    std::vector<int> objects;
    std::vector<Index> homs;
    auto operator<=>(const ComponentLabeling&) const = default;
};

namespace detail {

/// Deterministic enumeration of component labelings: object tuples in lex
/// order (position 0 most significant), then hom indices in mixed radix
/// (first morphism position most significant). Sectors with a
/// zero-dimensional hom space are skipped entirely.
struct LabeledEnumeration {
    std::vector<std::vector<int>> allowed_objects;
    std::vector<std::pair<int, int>> hom_positions;  // (src position, dst position)
    std::vector<ComponentLabeling> elements;
    std::map<ComponentLabeling, Index> lookup;

    void enumerate(const CategoryPresentation& c);
};

}  // namespace detail

/// Ordered basis of the space of fields (string diagrams) on a carrier:
/// object labels on the gaps between marked points and a hom basis element
/// at each marked point. Global indices are mixed-radix over components,
/// component 0 most significant.
class FieldSpaceIndex {
public:
    FieldSpaceIndex(OneManifold w, CategoryPresentation c, BoundaryCondition bc = {});

    const OneManifold& manifold() const { return manifold_; }
    const CategoryPresentation& category() const { return category_; }
    const BoundaryCondition& boundary() const { return boundary_; }

    Index dimension() const { return dimension_; }
    Index component_dimension(int ci) const { return comp_dims_.at(ci); }
    const ComponentLabeling& local_element(int ci, Index local) const;
    std::optional<Index> local_index(int ci, const ComponentLabeling& e) const;
    std::vector<Index> split(Index global) const;
    Index combine(const std::vector<Index>& locals) const;
    std::string label(Index global) const;

    /// Object at a gap / hom index at a point for a global basis element.
    int gap_object(Index global, int ci, int gap) const;
    Index point_hom(Index global, int ci, int point) const;

private:
    OneManifold manifold_;
    CategoryPresentation category_;
    BoundaryCondition boundary_;
    std::vector<detail::LabeledEnumeration> comps_;
    std::vector<Index> comp_dims_;
    Index dimension_;
};

/// psi_{C,W}(x): object labels at the cut slots of a decomposition (plus
/// the two boundary slots for intervals) and a hom basis element per piece,
/// with shared boundary objects matching by construction.
class PsiValue {
public:
    PsiValue(OneManifold w, CategoryPresentation c, Decomposition x, BoundaryCondition bc = {});

    const OneManifold& manifold() const { return manifold_; }
    const CategoryPresentation& category() const { return category_; }
    const Decomposition& decomposition() const { return decomposition_; }

    Index dimension() const { return dimension_; }
    Index component_dimension(int ci) const { return comp_dims_.at(ci); }
    const ComponentLabeling& local_element(int ci, Index local) const;
    std::optional<Index> local_index(int ci, const ComponentLabeling& e) const;
    std::vector<Index> split(Index global) const;
    Index combine(const std::vector<Index>& locals) const;
    std::string label(Index global) const;

    /// Slots carrying object labels, in label position order.
    const std::vector<int>& labeled_slots(int ci) const { return slots_.at(ci); }
    /// Pieces in traversal order; piece i runs from labeled slot position
    /// piece_ends(ci)[i].first to .second.
    const std::vector<Arc>& pieces(int ci) const { return pieces_.at(ci); }
    const std::vector<std::pair<int, int>>& piece_ends(int ci) const { return piece_ends_.at(ci); }

private:
    OneManifold manifold_;
    CategoryPresentation category_;
    BoundaryCondition boundary_;
    Decomposition decomposition_;
    std::vector<std::vector<int>> slots_;
    std::vector<std::vector<Arc>> pieces_;
    std::vector<std::vector<std::pair<int, int>>> piece_ends_;
    std::vector<detail::LabeledEnumeration> comps_;
    std::vector<Index> comp_dims_;
    Index dimension_;
};

/// The map psi(x) -> psi(y) for a refinement x <= y: each y-piece is the
/// composite of the maximal run of x-pieces it contains, composed left to
/// right; object labels at surviving cuts are preserved.
SparseMatrix refinement_map(const PsiValue& x, const PsiValue& y);

/// Evaluation of a field vector on an arc, sector by sector. A sector fixes
/// everything outside the arc (including the boundary-gap objects); the
/// inside component is a vector over the word space of the arc's boundary
/// objects and covered length.
struct ArcSectorEvaluation {
    int src_object, dst_object;
    Index word_length;
    SparseColumn inside;      // over MorphismWordSpace(src,dst,length)
    SparseVec evaluation;     // over Hom(src,dst)
};

/// Shared enumeration and caches for one (manifold, category, boundary)
/// triple: word spaces, word-space evaluation kernels, and per-arc null
/// constraint subspaces.
class FieldContext {
public:
    FieldContext(OneManifold w, CategoryPresentation c, BoundaryCondition bc = {});

    const OneManifold& manifold() const { return space_.manifold(); }
    const CategoryPresentation& category() const { return space_.category(); }
    const BoundaryCondition& boundary() const { return space_.boundary(); }
    const FieldSpaceIndex& space() const { return space_; }

    const MorphismWordSpace& word_space(int src, int dst, Index length) const;
    /// RCEF kernel of the word-space evaluation (the null fields on a ball
    /// with those boundary objects and covered length).
    const SparseMatrix& word_kernel(int src, int dst, Index length) const;

    struct Sector {
        int src, dst;
        std::vector<Index> field_index_of_word;  // word index -> global field index
    };
    /// Grouping of the field basis by the data outside the arc.
    std::vector<Sector> sectors_of_arc(const Arc& b) const;

    /// RCEF basis (columns over the field space) of the fields whose
    /// restriction to b is null in every sector.
    const SparseMatrix& arc_constraint(const Arc& b) const;

    std::vector<ArcSectorEvaluation> evaluate_on_arc(const SparseColumn& v, const Arc& b) const;

private:
    FieldSpaceIndex space_;
    mutable std::map<std::tuple<int, int, Index>, MorphismWordSpace> word_spaces_;
    mutable std::map<std::tuple<int, int, Index>, SparseMatrix> word_kernels_;
    mutable std::map<Arc, SparseMatrix> arc_constraints_;
};

}  // namespace blobcalc
