#pragma once

#include <memory>
#include <optional>

#include "blobcalc/chain_complex.hpp"
#include "blobcalc/field_space.hpp"

namespace blobcalc {

/// Generator space of one blob configuration: the fields whose restriction
/// to every innermost arc is null, as an RCEF basis over the field space.
struct BlobGeneratorSpace {
    BlobConfig config;
    SparseMatrix basis;
};

/// The blob complex B_*(W;C) on the carrier grid, in degrees 0..max_degree.
/// Degree k is the direct sum over k-arc configurations of their generator
/// spaces (zero-dimensional configurations are skipped); the differential
/// forgets the i-th arc of the canonical order with sign (-1)^{i-1}.
struct BlobComplexResult {
    std::shared_ptr<FieldContext> context;
    Index max_degree;
    std::vector<std::vector<BlobGeneratorSpace>> spaces;  // per degree
    std::vector<std::vector<Index>> offsets;              // per degree, per config
    ChainComplex complex;

    const OneManifold& manifold() const { return context->manifold(); }
    const CategoryPresentation& category() const { return context->category(); }
    std::optional<std::size_t> config_position(Index degree, const BlobConfig& c) const;
};

BlobComplexResult build_blob_complex(const OneManifold& w, const CategoryPresentation& c,
                                     Index max_degree, const BoundaryCondition& bc = {});

/// Ambient dimension estimate per degree (configuration count times field
/// space dimension) for resource guards; does not build anything大.
std::vector<unsigned long long> blob_ambient_estimate(const OneManifold& w,
                                                      const CategoryPresentation& c,
                                                      Index max_degree,
                                                      const BoundaryCondition& bc = {});

/// Degree +1 maps realizing the contractibility of an interval's blob
/// complex: h appends the whole-interval arc as the extra outermost blob
/// (zero when already present), and in degree 0 first subtracts the chosen
/// harmonic representative. Satisfies d h + h d = id in degrees >= 1 and
/// d h = id - iota_s in degree 0.
struct ContractingHomotopy {
    std::vector<SparseMatrix> h;  // h[k] : C_k -> C_{k+1}, k = 0..K-1
    SparseMatrix iota_s;          // C_0 -> C_0, projection with kernel im d_1
};
ContractingHomotopy contracting_homotopy(const BlobComplexResult& r);

/// Explicit isomorphism B(X1 ⊔ X2) ≅ B(X1) ⊗ B(X2) (Koszul-signed tensor
/// differential). Commutation with differentials is validated at build.
struct DisjointUnionIso {
    BlobComplexResult union_complex;
    ChainComplex tensor;
    std::vector<SparseMatrix> iso;  // per degree: union -> tensor
};
DisjointUnionIso disjoint_union_iso(const BlobComplexResult& r1, const BlobComplexResult& r2);

/// Identify the end slot of interval component `from` with the start slot
/// of interval component `to`. from == to closes the interval into a
/// circle; otherwise the two intervals concatenate (the merged component
/// keeps `from`'s position and `to` disappears).
struct Gluing {
    int from_component;
    int to_component;
};

struct GluingResult {
    BlobComplexResult target;
    std::vector<SparseMatrix> chain_map;  // per degree
    SparseMatrix field_map;               // degree-0 pushforward on field spaces
};
GluingResult gluing_chain_map(const BlobComplexResult& source, const Gluing& g);

/// Chain automorphism induced by a carrier automorphism. Orientation-
/// reversing homeomorphisms are only defined for commutative one-object
/// coefficients (no general anti-involution is guessed).
std::vector<SparseMatrix> homeomorphism_action(const BlobComplexResult& r,
                                               const Homeomorphism& h);

/// H_0 data of a complex: representative rows (a complement of im d_1 in
/// the degree-0 basis), the projection onto those coordinates modulo
/// im d_1, and the inclusion back.
struct ZeroHomology {
    std::vector<Index> representative_rows;
    SparseMatrix projection;  // C_0 -> H_0 coordinates
    SparseMatrix inclusion;   // H_0 coordinates -> C_0
};
ZeroHomology zero_homology(const ChainComplex& complex);

/// Map induced on H_0 by a degree-0 chain map.
SparseMatrix induced_h0_map(const ChainComplex& src, const ChainComplex& tgt,
                            const SparseMatrix& phi0);

}  // namespace blobcalc
