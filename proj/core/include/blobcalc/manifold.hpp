#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "blobcalc/sparse_matrix.hpp"

namespace blobcalc {

/// One connected component of a combinatorial 1-manifold with N marked
/// points. An interval has N+1 cut slots 0..N (0 and N are the manifold
/// boundary, 1..N-1 interior) and carries points 1..N, point p sitting
/// between slots p-1 and p. A circle has N cyclic slots 0..N-1 and points
/// 0..N-1, slot g sitting between points g and g+1 (mod N).
struct Component {
    enum class Kind { Interval, Circle };
    Kind kind;
    int points;

    int slot_count() const { return kind == Kind::Interval ? points + 1 : points; }
    int gap_count() const { return slot_count(); }
    bool operator==(const Component&) const = default;
};

struct OneManifold {
    std::vector<Component> components;

    /// Parses "interval:N", "circle:N", joined by '+'. A bare "interval" or
    /// "circle" takes its point count from `default_points`.
    static OneManifold parse(const std::string& literal, std::optional<int> default_points = {});
    std::string to_literal() const;
    int total_points() const;
    bool operator==(const OneManifold&) const = default;
};

/// Chosen cut slots per component, sorted ascending. Interval cuts are
/// interior slots (possibly none); a circle needs at least one cut so the
/// pieces are balls.
struct Decomposition {
    std::vector<std::vector<int>> cuts;

    bool operator==(const Decomposition&) const = default;
    bool operator<(const Decomposition& rhs) const { return cuts < rhs.cuts; }
    std::string to_string() const;
};

std::vector<Decomposition> enumerate_decompositions(const OneManifold& w);

/// x refines y: the cut set of x contains the cut set of y on every
/// component. Throws if the shapes do not match the manifold.
bool is_refinement(const OneManifold& w, const Decomposition& x, const Decomposition& y);

/// The poset D(W) of permissible decompositions on the carrier grid,
/// ordered by refinement (x <= y iff x refines y).
class DecompositionPoset {
public:
    explicit DecompositionPoset(OneManifold w);

    const OneManifold& manifold() const { return manifold_; }
    Index size() const { return static_cast<Index>(objects_.size()); }
    const Decomposition& object(Index i) const { return objects_.at(i); }
    const std::vector<Decomposition>& objects() const { return objects_; }
    std::optional<Index> index_of(const Decomposition& d) const;
    bool leq(Index x, Index y) const;

    /// All strictly increasing chains x_0 < ... < x_j with j <= max_length
    /// (length = number of steps), ordered by length then lexicographically
    /// by object indices. Face maps are index deletion.
    std::vector<std::vector<Index>> chains(int max_length) const;

    /// Covering pairs (x, y): x < y with nothing strictly between.
    std::vector<std::pair<Index, Index>> covering_pairs() const;

private:
    OneManifold manifold_;
    std::vector<Decomposition> objects_;
};

/// A blob: an arc with endpoints on cut slots. On an interval, start < end
/// (the whole interval [0,N] is allowed). On a circle, start != end is a
/// proper arc covering the points strictly between them in the positive
/// direction, while start == end is the whole circle viewed as a ball whose
/// boundary is self-glued at that slot (its image covers every point).
struct Arc {
    int component;
    int start;
    int end;

    bool operator==(const Arc&) const = default;
    auto operator<=>(const Arc&) const = default;
    std::string to_string() const;
};

bool is_seam_arc(const OneManifold& w, const Arc& a);
int covered_point_count(const OneManifold& w, const Arc& a);
/// First covered point in traversal order (interval: start+1; circle:
/// start+1 mod N).
int first_covered_point(const OneManifold& w, const Arc& a);

/// Covered point set of `inner` contained in that of `outer` (arcs on
/// different components are never nested).
bool arc_contains(const OneManifold& w, const Arc& outer, const Arc& inner);
bool arcs_interior_disjoint(const OneManifold& w, const Arc& a, const Arc& b);
/// Distinct and either nested or interior-disjoint.
bool arcs_compatible(const OneManifold& w, const Arc& a, const Arc& b);
/// Canonical blob order: component, then start slot, then decreasing
/// covered length.
bool canonical_arc_less(const OneManifold& w, const Arc& a, const Arc& b);

/// All arcs in canonical order.
std::vector<Arc> enumerate_arcs(const OneManifold& w);

/// Ordered tuple of pairwise compatible arcs in canonical order.
struct BlobConfig {
    std::vector<Arc> arcs;

    bool operator==(const BlobConfig&) const = default;
    bool operator<(const BlobConfig& rhs) const { return arcs < rhs.arcs; }
    std::string to_string() const;
};

/// All k-arc configs, ordered lexicographically by canonical arc indices.
std::vector<BlobConfig> enumerate_blob_configs(const OneManifold& w, int k);

/// Positions of the innermost arcs (arcs containing no other arc of the
/// config).
std::vector<std::size_t> innermost_arcs(const OneManifold& w, const BlobConfig& c);

/// Constructive witness that a config is permissible: a decomposition whose
/// cut set contains every arc endpoint (plus one cut per otherwise-uncut
/// circle), so each arc is a union of consecutive pieces.
Decomposition extend_to_decomposition(const OneManifold& w, const BlobConfig& c);

/// Automorphism of the carrier: a permutation of like-typed components,
/// a rotation per circle and an optional reflection per component. The
/// rotation/reflection of component i describes the map from component i
/// onto component component_map[i] (reflection applied first).
struct Homeomorphism {
    std::vector<int> component_map;
    std::vector<int> rotation;
    std::vector<bool> reflect;

    static Homeomorphism identity(const OneManifold& w);
    static Homeomorphism circle_rotation(const OneManifold& w, int component, int amount);
    bool operator==(const Homeomorphism&) const = default;
};

void check_homeomorphism(const OneManifold& w, const Homeomorphism& h);
/// Slot image of slot s of component c under h (within the image component).
int map_slot(const OneManifold& w, const Homeomorphism& h, int component, int slot);
int map_point(const OneManifold& w, const Homeomorphism& h, int component, int point);

/// h1 after h2.
Homeomorphism compose(const OneManifold& w, const Homeomorphism& h1, const Homeomorphism& h2);
Homeomorphism inverse(const OneManifold& w, const Homeomorphism& h);

Decomposition apply_homeomorphism(const OneManifold& w, const Homeomorphism& h,
                                  const Decomposition& x);
Arc apply_homeomorphism(const OneManifold& w, const Homeomorphism& h, const Arc& a);

/// Relabeled config restored to canonical order, together with the sign of
/// the permutation that restored it.
std::pair<BlobConfig, int> apply_homeomorphism(const OneManifold& w, const Homeomorphism& h,
                                               const BlobConfig& c);

/// Chains map elementwise (homeomorphisms preserve refinement).
std::vector<Decomposition> apply_homeomorphism(const OneManifold& w, const Homeomorphism& h,
                                               const std::vector<Decomposition>& chain);

}  // namespace blobcalc
