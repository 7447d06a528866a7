#pragma once

#include <memory>

#include "blobcalc/chain_complex.hpp"
#include "blobcalc/field_space.hpp"

namespace blobcalc {

/// Ordinary colimit of psi over the truncated decomposition poset: the
/// skein module. Computed as (⊕_x psi(x)) / span{ι_x(a) - ι_y(g(a))} over
/// covering pairs, with explicit projections psi(x) -> colimit coordinates.
struct ColimitResult {
    std::shared_ptr<DecompositionPoset> poset;
    std::vector<PsiValue> psi;           // per poset object
    Index dimension;
    std::vector<SparseMatrix> projections;  // per poset object
};

ColimitResult ordinary_colimit(const OneManifold& w, const CategoryPresentation& c,
                               const BoundaryCondition& bc = {});

/// Simplicial realization of the homotopy colimit: degree m has basis
/// (x_0 < ... < x_m, a) with a in psi(x_0), and differential
/// ∂(x̄,a) = (d_0 x̄, g(a)) + Σ_{i=1..m} (-1)^i (d_i x̄, a),
/// where g is the refinement map psi(x_0) -> psi(x_1). The (x̄, ∂a) term of
/// the general formula vanishes identically for vector-space coefficients.
struct HocolimComplex {
    std::shared_ptr<DecompositionPoset> poset;
    std::vector<PsiValue> psi;                          // per poset object
    std::vector<std::vector<std::vector<Index>>> chains;  // per degree
    std::vector<std::vector<Index>> offsets;              // per degree, per chain
    ChainComplex complex;
};

HocolimComplex hocolim_complex(const OneManifold& w, const CategoryPresentation& c,
                               Index max_degree, const BoundaryCondition& bc = {});

/// Ambient dimension per degree (sum of psi(x_0) over chains), for resource
/// guards.
std::vector<unsigned long long> hocolim_ambient_estimate(const OneManifold& w,
                                                         const CategoryPresentation& c,
                                                         Index max_degree,
                                                         const BoundaryCondition& bc = {});

/// Homology dimensions of blob vs hocolim in degrees 0..max_degree (both
/// complexes are built through max_degree + 1).
struct ModelComparison {
    std::vector<Index> blob_dims;
    std::vector<Index> hocolim_dims;
    bool equal;
};

ModelComparison compare_models(const OneManifold& w, const CategoryPresentation& c,
                               Index max_degree, const BoundaryCondition& bc = {});

enum class SweepModel { Hocolim, Blob };

/// Homology dimensions of circle:N for N in [n_min, n_max], reported in
/// degrees 0..max_degree-1 (complexes built through max_degree). A degree
/// column is marked converged when the last two rows agree; the verdict
/// compares stabilized values against the Hochschild bar-complex oracle.
struct StabilizationSweep {
    std::vector<int> points;                  // the N column
    std::vector<std::vector<Index>> dims;     // per N, per degree
    std::vector<bool> converged;              // per degree
    std::vector<Index> stabilized;            // per degree (last row)
    std::vector<Index> oracle;                // Hochschild dims per degree
    bool oracle_match;                        // stabilized == oracle on converged degrees
};

StabilizationSweep stabilization_sweep(int n_min, int n_max, const CategoryPresentation& c,
                                       Index max_degree, SweepModel model = SweepModel::Hocolim);

}  // namespace blobcalc
