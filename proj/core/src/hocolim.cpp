#include "blobcalc/hocolim.hpp"

#include <map>

#include "blobcalc/blob_complex.hpp"
#include "blobcalc/hochschild.hpp"

namespace blobcalc {

namespace {

std::vector<PsiValue> all_psi(const DecompositionPoset& poset, const CategoryPresentation& c,
                              const BoundaryCondition& bc) {
    std::vector<PsiValue> psi;
    psi.reserve(poset.size());
    for (Index i = 0; i < poset.size(); ++i)
        psi.emplace_back(poset.manifold(), c, poset.object(i), bc);
    return psi;
}

}  // namespace

ColimitResult ordinary_colimit(const OneManifold& w, const CategoryPresentation& c,
                               const BoundaryCondition& bc) {
    auto poset = std::make_shared<DecompositionPoset>(w);
    std::vector<PsiValue> psi = all_psi(*poset, c, bc);
    std::vector<Index> offset(poset->size() + 1, 0);
    for (Index i = 0; i < poset->size(); ++i) offset[i + 1] = offset[i] + psi[i].dimension();
    const Index ambient = offset.back();
    FieldSpec field = c.field();

    std::vector<SparseColumn> relations;
    for (const auto& [x, y] : poset->covering_pairs()) {
        SparseMatrix g = refinement_map(psi[x], psi[y]);
        for (Index a = 0; a < psi[x].dimension(); ++a) {
            SparseColumn col{{offset[x] + a, Scalar::one(field)}};
            for (const auto& [r, v] : g.column(a)) {
                col.emplace_back(offset[y] + r, -v);
            }
            std::sort(col.begin(), col.end(),
                      [](const auto& p, const auto& q) { return p.first < q.first; });
            // ι_x(a) and -ι_y(g(a)) can collide only if x == y, which
            // covering pairs exclude.
            relations.push_back(std::move(col));
        }
    }
    SparseMatrix rel(field, ambient, static_cast<Index>(relations.size()));
    for (Index i = 0; i < relations.size(); ++i) rel.set_column(i, std::move(relations[i]));

    SparseMatrix echelon = column_echelon(rel);
    std::vector<bool> is_pivot(ambient, false);
    std::vector<Index> pivot_col(ambient, 0);
    for (Index cidx = 0; cidx < echelon.cols(); ++cidx) {
        is_pivot[echelon.column(cidx).front().first] = true;
        pivot_col[echelon.column(cidx).front().first] = cidx;
    }
    std::vector<Index> coord_of_row(ambient, 0);
    Index dim = 0;
    for (Index r = 0; r < ambient; ++r)
        if (!is_pivot[r]) coord_of_row[r] = dim++;

    SparseMatrix global_proj(field, dim, ambient);
    for (Index j = 0; j < ambient; ++j) {
        if (!is_pivot[j]) {
            global_proj.set(coord_of_row[j], j, Scalar::one(field));
        } else {
            for (const auto& [r, v] : echelon.column(pivot_col[j]))
                if (r != j) global_proj.add_to(coord_of_row[r], j, -v);
        }
    }
    std::vector<SparseMatrix> projections;
    for (Index i = 0; i < poset->size(); ++i) {
        SparseMatrix p(field, dim, psi[i].dimension());
        for (Index a = 0; a < psi[i].dimension(); ++a) {
            for (const auto& [r, v] : global_proj.column(offset[i] + a)) p.add_to(r, a, v);
        }
        projections.push_back(std::move(p));
    }
    return {std::move(poset), std::move(psi), dim, std::move(projections)};
}

HocolimComplex hocolim_complex(const OneManifold& w, const CategoryPresentation& c,
                               Index max_degree, const BoundaryCondition& bc) {
    auto poset = std::make_shared<DecompositionPoset>(w);
    std::vector<PsiValue> psi = all_psi(*poset, c, bc);
    FieldSpec field = c.field();

    std::vector<std::vector<std::vector<Index>>> chains(max_degree + 1);
    for (auto& chain : poset->chains(static_cast<int>(max_degree)))
        chains[chain.size() - 1].push_back(std::move(chain));

    std::vector<Index> dims(max_degree + 1, 0);
    std::vector<std::vector<Index>> offsets(max_degree + 1);
    std::vector<std::map<std::vector<Index>, std::size_t>> position(max_degree + 1);
    std::vector<std::vector<std::string>> labels(max_degree + 1);
    for (Index m = 0; m <= max_degree; ++m) {
        for (std::size_t i = 0; i < chains[m].size(); ++i) {
            position[m].emplace(chains[m][i], i);
            offsets[m].push_back(dims[m]);
            Index head = chains[m][i].front();
            for (Index a = 0; a < psi[head].dimension(); ++a) {
                std::string lbl = "[";
                for (std::size_t j = 0; j < chains[m][i].size(); ++j) {
                    if (j) lbl += "<";
                    lbl += poset->object(chains[m][i][j]).to_string();
                }
                labels[m].push_back(lbl + "]#" + std::to_string(a));
            }
            dims[m] += psi[head].dimension();
        }
    }

    std::map<std::pair<Index, Index>, SparseMatrix> gluing_cache;
    auto gluing = [&](Index x, Index y) -> const SparseMatrix& {
        auto key = std::make_pair(x, y);
        auto it = gluing_cache.find(key);
        if (it == gluing_cache.end())
            it = gluing_cache.emplace(key, refinement_map(psi[x], psi[y])).first;
        return it->second;
    };

    std::vector<SparseMatrix> diffs(max_degree + 1);
    for (Index m = 1; m <= max_degree; ++m) {
        SparseMatrix d(field, dims[m - 1], dims[m]);
        for (std::size_t ci = 0; ci < chains[m].size(); ++ci) {
            const std::vector<Index>& chain = chains[m][ci];
            // Face 0: drop x_0, push the coefficient through the gluing map.
            {
                std::vector<Index> face(chain.begin() + 1, chain.end());
                std::size_t fpos = position[m - 1].at(face);
                const SparseMatrix& g = gluing(chain[0], chain[1]);
                for (Index a = 0; a < psi[chain[0]].dimension(); ++a)
                    for (const auto& [r, v] : g.column(a))
                        d.add_to(offsets[m - 1][fpos] + r, offsets[m][ci] + a, v);
            }
            // Faces 1..m: drop x_i, keep the coefficient.
            for (Index i = 1; i <= m; ++i) {
                std::vector<Index> face;
                for (Index j = 0; j <= m; ++j)
                    if (j != i) face.push_back(chain[j]);
                std::size_t fpos = position[m - 1].at(face);
                Scalar sign = (i % 2 == 0) ? Scalar::one(field) : -Scalar::one(field);
                for (Index a = 0; a < psi[chain[0]].dimension(); ++a)
                    d.add_to(offsets[m - 1][fpos] + a, offsets[m][ci] + a, sign);
            }
        }
        diffs[m] = std::move(d);
    }
    ChainComplex complex(field, dims, std::move(diffs), std::move(labels));
    return {std::move(poset), std::move(psi), std::move(chains), std::move(offsets),
            std::move(complex)};
}

std::vector<unsigned long long> hocolim_ambient_estimate(const OneManifold& w,
                                                         const CategoryPresentation& c,
                                                         Index max_degree,
                                                         const BoundaryCondition& bc) {
    DecompositionPoset poset(w);
    std::vector<PsiValue> psi = all_psi(poset, c, bc);
    std::vector<unsigned long long> out(max_degree + 1, 0);
    for (const auto& chain : poset.chains(static_cast<int>(max_degree)))
        out[chain.size() - 1] += psi[chain.front()].dimension();
    return out;
}

ModelComparison compare_models(const OneManifold& w, const CategoryPresentation& c,
                               Index max_degree, const BoundaryCondition& bc) {
    BlobComplexResult blob = build_blob_complex(w, c, max_degree + 1, bc);
    HocolimComplex hoco = hocolim_complex(w, c, max_degree + 1, bc);
    std::vector<Index> bd = blob.complex.homology_dimensions();
    std::vector<Index> hd = hoco.complex.homology_dimensions();
    bd.resize(max_degree + 1);
    hd.resize(max_degree + 1);
    return {bd, hd, bd == hd};
}

StabilizationSweep stabilization_sweep(int n_min, int n_max, const CategoryPresentation& c,
                                       Index max_degree, SweepModel model) {
    if (n_min > n_max || n_min < 1) throw std::invalid_argument("bad sweep range");
    if (max_degree < 1) throw std::invalid_argument("sweep needs max degree >= 1");
    StabilizationSweep out;
    for (int n = n_min; n <= n_max; ++n) {
        OneManifold w{{{Component::Kind::Circle, n}}};
        std::vector<Index> h;
        if (model == SweepModel::Hocolim) {
            h = hocolim_complex(w, c, max_degree).complex.homology_dimensions();
        } else {
            h = build_blob_complex(w, c, max_degree).complex.homology_dimensions();
        }
        h.resize(max_degree);  // degrees 0..max_degree-1 are trustworthy
        out.points.push_back(n);
        out.dims.push_back(std::move(h));
    }
    out.oracle = hochschild_dims(c, max_degree - 1);
    out.converged.assign(max_degree, false);
    out.stabilized.assign(max_degree, 0);
    out.oracle_match = true;
    for (Index d = 0; d < max_degree; ++d) {
        std::size_t rows = out.dims.size();
        out.stabilized[d] = out.dims.back()[d];
        out.converged[d] = rows >= 2 && out.dims[rows - 1][d] == out.dims[rows - 2][d];
        if (!out.converged[d] || out.stabilized[d] != out.oracle[d]) out.oracle_match = false;
    }
    return out;
}

}  // namespace blobcalc
