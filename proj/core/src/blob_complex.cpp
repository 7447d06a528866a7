#include "blobcalc/blob_complex.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace blobcalc {

namespace {

// Configurations over a restricted arc list. Arcs covering a single point
// have a zero null space and force the whole generator space to zero, so
// the complex builder only combines arcs covering at least two points.
std::vector<BlobConfig> configs_over(const OneManifold& w, const std::vector<Arc>& arcs, int k) {
    std::vector<BlobConfig> out;
    std::vector<Arc> chosen;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(chosen.size()) == k) {
            out.push_back({chosen});
            return;
        }
        for (std::size_t i = from; i < arcs.size(); ++i) {
            bool ok = true;
            for (const Arc& prev : chosen)
                if (!arcs_compatible(w, prev, arcs[i])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(arcs[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<Arc> constrainable_arcs(const OneManifold& w) {
    std::vector<Arc> arcs;
    for (const Arc& a : enumerate_arcs(w))
        if (covered_point_count(w, a) >= 2) arcs.push_back(a);
    return arcs;
}

SparseMatrix generator_basis(const FieldContext& ctx, const BlobConfig& config) {
    const OneManifold& w = ctx.manifold();
    if (config.arcs.empty()) return SparseMatrix::identity(ctx.category().field(), ctx.space().dimension());
    std::vector<SparseMatrix> constraints;
    for (std::size_t i : innermost_arcs(w, config))
        constraints.push_back(ctx.arc_constraint(config.arcs[i]));
    if (constraints.size() == 1) return constraints.front();
    return subspace_intersection(constraints);
}

}  // namespace

std::optional<std::size_t> BlobComplexResult::config_position(Index degree,
                                                              const BlobConfig& c) const {
    if (degree >= spaces.size()) return std::nullopt;
    for (std::size_t i = 0; i < spaces[degree].size(); ++i)
        if (spaces[degree][i].config == c) return i;
    return std::nullopt;
}

std::vector<unsigned long long> blob_ambient_estimate(const OneManifold& w,
                                                      const CategoryPresentation& c,
                                                      Index max_degree,
                                                      const BoundaryCondition& bc) {
    FieldSpaceIndex space(w, c, bc);
    std::vector<Arc> arcs = constrainable_arcs(w);
    std::vector<unsigned long long> out;
    for (Index k = 0; k <= max_degree; ++k)
        out.push_back(static_cast<unsigned long long>(configs_over(w, arcs, k).size()) *
                      std::max<Index>(space.dimension(), 1));
    return out;
}

BlobComplexResult build_blob_complex(const OneManifold& w, const CategoryPresentation& c,
                                     Index max_degree, const BoundaryCondition& bc) {
    auto ctx = std::make_shared<FieldContext>(w, c, bc);
    std::vector<Arc> arcs = constrainable_arcs(w);

    std::vector<std::vector<BlobGeneratorSpace>> spaces(max_degree + 1);
    std::vector<std::vector<Index>> offsets(max_degree + 1);
    std::vector<Index> dims(max_degree + 1, 0);
    std::vector<std::vector<std::string>> labels(max_degree + 1);
    std::vector<std::map<BlobConfig, std::size_t>> position(max_degree + 1);
    for (Index k = 0; k <= max_degree; ++k) {
        for (const BlobConfig& config : configs_over(w, arcs, static_cast<int>(k))) {
            SparseMatrix basis = generator_basis(*ctx, config);
            if (basis.cols() == 0) continue;
            position[k].emplace(config, spaces[k].size());
            offsets[k].push_back(dims[k]);
            for (Index col = 0; col < basis.cols(); ++col)
                labels[k].push_back(config.to_string() + "#" + std::to_string(col));
            dims[k] += basis.cols();
            spaces[k].push_back({config, std::move(basis)});
        }
    }

    std::vector<SparseMatrix> diffs(max_degree + 1);
    for (Index k = 1; k <= max_degree; ++k) {
        SparseMatrix d(c.field(), dims[k - 1], dims[k]);
        for (std::size_t ci = 0; ci < spaces[k].size(); ++ci) {
            const BlobGeneratorSpace& gen = spaces[k][ci];
            for (std::size_t i = 0; i < gen.config.arcs.size(); ++i) {
                BlobConfig target;
                for (std::size_t j = 0; j < gen.config.arcs.size(); ++j)
                    if (j != i) target.arcs.push_back(gen.config.arcs[j]);
                Scalar sign = (i % 2 == 0) ? Scalar::one(c.field()) : -Scalar::one(c.field());
                auto pos = position[k - 1].find(target);
                for (Index col = 0; col < gen.basis.cols(); ++col) {
                    const SparseColumn& v = gen.basis.column(col);
                    if (pos == position[k - 1].end()) {
                        // A zero-dimensional target forces the image to be
                        // zero; anything else is a nesting violation.
                        if (!v.empty())
                            throw std::logic_error("forget-a-blob image missed its target space");
                        continue;
                    }
                    const BlobGeneratorSpace& tgt = spaces[k - 1][pos->second];
                    SparseColumn coords = coordinates_in_echelon_basis(tgt.basis, v);
                    for (const auto& [tc, val] : coords)
                        d.add_to(offsets[k - 1][pos->second] + tc, offsets[k][ci] + col,
                                 sign * val);
                }
            }
        }
        diffs[k] = std::move(d);
    }

    ChainComplex complex(c.field(), dims, std::move(diffs), std::move(labels));
    return BlobComplexResult{std::move(ctx), max_degree, std::move(spaces), std::move(offsets),
                             std::move(complex)};
}

ContractingHomotopy contracting_homotopy(const BlobComplexResult& r) {
    const OneManifold& w = r.manifold();
    if (w.components.size() != 1 || w.components[0].kind != Component::Kind::Interval)
        throw std::invalid_argument("contracting homotopy needs a single interval");
    if (r.max_degree < 1) throw std::invalid_argument("contracting homotopy needs max degree >= 1");
    FieldSpec field = r.category().field();
    const Arc whole{0, 0, w.components[0].points};

    ZeroHomology h0 = zero_homology(r.complex);
    SparseMatrix iota_s = h0.inclusion.multiply(h0.projection);

    std::vector<SparseMatrix> h(r.max_degree);
    // Degree 0: x -> ({whole}, x - iota_s(x)).
    {
        SparseMatrix m(field, r.complex.dimension(1), r.complex.dimension(0));
        auto whole_pos = r.config_position(1, BlobConfig{{whole}});
        if (whole_pos) {
            const BlobGeneratorSpace& tgt = r.spaces[1][*whole_pos];
            Index off = r.offsets[1][*whole_pos];
            for (Index j = 0; j < r.complex.dimension(0); ++j) {
                SparseColumn v{{j, Scalar::one(field)}};
                SparseColumn correction = iota_s.column(j);
                // v - iota_s e_j
                SparseMatrix tmp(field, r.complex.dimension(0), 1);
                tmp.set_column(0, v);
                for (const auto& [rr, val] : correction) tmp.add_to(rr, 0, -val);
                SparseColumn coords = coordinates_in_echelon_basis(tgt.basis, tmp.column(0));
                for (const auto& [tc, val] : coords) m.add_to(off + tc, j, val);
            }
        }
        // When the whole-interval configuration has a zero generator space
        // every field is harmonic and h_0 stays zero.
        h[0] = std::move(m);
    }
    // Degrees >= 1: append the whole-interval arc (canonical position 1).
    for (Index k = 1; k < r.max_degree; ++k) {
        SparseMatrix m(field, r.complex.dimension(k + 1), r.complex.dimension(k));
        for (std::size_t ci = 0; ci < r.spaces[k].size(); ++ci) {
            const BlobGeneratorSpace& gen = r.spaces[k][ci];
            if (std::find(gen.config.arcs.begin(), gen.config.arcs.end(), whole) !=
                gen.config.arcs.end())
                continue;
            BlobConfig target;
            target.arcs.push_back(whole);
            for (const Arc& a : gen.config.arcs) target.arcs.push_back(a);
            auto pos = r.config_position(k + 1, target);
            if (!pos) throw std::logic_error("homotopy target configuration missing");
            const BlobGeneratorSpace& tgt = r.spaces[k + 1][*pos];
            for (Index col = 0; col < gen.basis.cols(); ++col) {
                SparseColumn coords = coordinates_in_echelon_basis(tgt.basis, gen.basis.column(col));
                for (const auto& [tc, val] : coords)
                    m.add_to(r.offsets[k + 1][*pos] + tc, r.offsets[k][ci] + col, val);
            }
        }
        h[k] = std::move(m);
    }
    return {std::move(h), std::move(iota_s)};
}

ZeroHomology zero_homology(const ChainComplex& complex) {
    FieldSpec field = complex.field();
    Index n = complex.dimension(0);
    SparseMatrix image(field, n, 0);
    if (complex.top_degree() >= 1) image = column_echelon(complex.differential(1));
    std::vector<bool> is_pivot(n, false);
    std::vector<Index> pivot_col(n, 0);
    for (Index c = 0; c < image.cols(); ++c) {
        is_pivot[image.column(c).front().first] = true;
        pivot_col[image.column(c).front().first] = c;
    }
    ZeroHomology out;
    for (Index r = 0; r < n; ++r)
        if (!is_pivot[r]) out.representative_rows.push_back(r);
    Index h = static_cast<Index>(out.representative_rows.size());
    std::vector<Index> coord_of_row(n, 0);
    for (Index i = 0; i < h; ++i) coord_of_row[out.representative_rows[i]] = i;
    out.projection = SparseMatrix(field, h, n);
    out.inclusion = SparseMatrix(field, n, h);
    for (Index i = 0; i < h; ++i)
        out.inclusion.set(out.representative_rows[i], i, Scalar::one(field));
    for (Index j = 0; j < n; ++j) {
        if (!is_pivot[j]) {
            out.projection.set(coord_of_row[j], j, Scalar::one(field));
        } else {
            // e_j ≡ e_j - column (mod image); the column has support on
            // free rows only besides its pivot row j.
            const SparseColumn& col = image.column(pivot_col[j]);
            for (const auto& [rr, v] : col)
                if (rr != j) out.projection.add_to(coord_of_row[rr], j, -v);
        }
    }
    return out;
}

SparseMatrix induced_h0_map(const ChainComplex& src, const ChainComplex& tgt,
                            const SparseMatrix& phi0) {
    ZeroHomology zs = zero_homology(src);
    ZeroHomology zt = zero_homology(tgt);
    return zt.projection.multiply(phi0).multiply(zs.inclusion);
}

namespace {

void check_chain_map(const ChainComplex& src, const ChainComplex& tgt,
                     const std::vector<SparseMatrix>& phi, const std::string& what) {
    Index top = std::min(src.top_degree(), tgt.top_degree());
    for (Index k = 1; k <= top; ++k) {
        SparseMatrix lhs = tgt.differential(k).multiply(phi[k]);
        SparseMatrix rhs = phi[k - 1].multiply(src.differential(k));
        if (!(lhs == rhs)) throw std::logic_error(what + " does not commute with differentials");
    }
}

}  // namespace

DisjointUnionIso disjoint_union_iso(const BlobComplexResult& r1, const BlobComplexResult& r2) {
    if (!(r1.category() == r2.category()))
        throw std::invalid_argument("disjoint union needs matching coefficients");
    if (r1.max_degree != r2.max_degree)
        throw std::invalid_argument("disjoint union needs matching truncation degrees");
    const Index top = r1.max_degree;
    FieldSpec field = r1.category().field();

    OneManifold un;
    un.components = r1.manifold().components;
    const int n1 = static_cast<int>(un.components.size());
    for (const Component& c : r2.manifold().components) un.components.push_back(c);
    BoundaryCondition bc;
    for (const auto& [ci, objs] : r1.context->boundary().fixed) bc.fixed[ci] = objs;
    for (const auto& [ci, objs] : r2.context->boundary().fixed) bc.fixed[ci + n1] = objs;

    BlobComplexResult union_complex = build_blob_complex(un, r1.category(), top, bc);

    // Tensor complex with Koszul differential.
    std::vector<Index> dims(top + 1, 0);
    std::vector<std::vector<Index>> block_offset(top + 1);
    for (Index n = 0; n <= top; ++n) {
        block_offset[n].assign(n + 1, 0);
        for (Index i = 0; i <= n; ++i) {
            block_offset[n][i] = dims[n];
            dims[n] += r1.complex.dimension(i) * r2.complex.dimension(n - i);
        }
    }
    std::vector<SparseMatrix> diffs(top + 1);
    for (Index n = 1; n <= top; ++n) {
        SparseMatrix d(field, dims[n - 1], dims[n]);
        for (Index i = 0; i <= n; ++i) {
            Index j = n - i;
            Index d2j = r2.complex.dimension(j);
            for (Index a = 0; a < r1.complex.dimension(i); ++a)
                for (Index b = 0; b < d2j; ++b) {
                    Index colidx = block_offset[n][i] + a * d2j + b;
                    if (i >= 1) {
                        for (const auto& [ar, av] : r1.complex.differential(i).column(a))
                            d.add_to(block_offset[n - 1][i - 1] + ar * d2j + b, colidx, av);
                    }
                    if (j >= 1) {
                        Scalar sgn = (i % 2 == 0) ? Scalar::one(field) : -Scalar::one(field);
                        Index d2j1 = r2.complex.dimension(j - 1);
                        for (const auto& [br, bv] : r2.complex.differential(j).column(b))
                            d.add_to(block_offset[n - 1][i] + a * d2j1 + br, colidx, sgn * bv);
                    }
                }
        }
        diffs[n] = std::move(d);
    }
    ChainComplex tensor(field, dims, std::move(diffs), {});

    // Iso per degree: read union generator columns in the Kronecker bases.
    std::vector<SparseMatrix> iso(top + 1);
    for (Index n = 0; n <= top; ++n) {
        SparseMatrix m(field, tensor.dimension(n), union_complex.complex.dimension(n));
        for (std::size_t cp = 0; cp < union_complex.spaces[n].size(); ++cp) {
            const BlobGeneratorSpace& gen = union_complex.spaces[n][cp];
            BlobConfig ca, cb;
            for (const Arc& a : gen.config.arcs) {
                if (a.component < n1)
                    ca.arcs.push_back(a);
                else
                    cb.arcs.push_back({a.component - n1, a.start, a.end});
            }
            Index i = static_cast<Index>(ca.arcs.size());
            Index j = n - i;
            auto pa = r1.config_position(i, ca);
            auto pb = r2.config_position(j, cb);
            if (!pa || !pb) throw std::logic_error("union configuration missing in a factor");
            const SparseMatrix& ba = r1.spaces[i][*pa].basis;
            const SparseMatrix& bb = r2.spaces[j][*pb].basis;
            // Kronecker product basis (RCEF again since both factors are).
            Index dim2 = r2.context->space().dimension();
            SparseMatrix kron(field, union_complex.context->space().dimension(),
                              ba.cols() * bb.cols());
            for (Index xa = 0; xa < ba.cols(); ++xa)
                for (Index xb = 0; xb < bb.cols(); ++xb) {
                    SparseColumn col;
                    for (const auto& [ra, va] : ba.column(xa))
                        for (const auto& [rb, vb] : bb.column(xb))
                            col.emplace_back(ra * dim2 + rb, va * vb);
                    std::sort(col.begin(), col.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                    kron.set_column(xa * bb.cols() + xb, std::move(col));
                }
            Index d2j = r2.complex.dimension(j);
            for (Index col = 0; col < gen.basis.cols(); ++col) {
                SparseColumn coords = coordinates_in_echelon_basis(kron, gen.basis.column(col));
                for (const auto& [kidx, val] : coords) {
                    Index xa = kidx / bb.cols();
                    Index xb = kidx % bb.cols();
                    Index a_full = r1.offsets[i][*pa] + xa;
                    Index b_full = r2.offsets[j][*pb] + xb;
                    m.add_to(block_offset[n][i] + a_full * d2j + b_full,
                             union_complex.offsets[n][cp] + col, val);
                }
            }
        }
        iso[n] = std::move(m);
    }
    check_chain_map(union_complex.complex, tensor, iso, "disjoint union isomorphism");
    for (Index n = 0; n <= top; ++n)
        if (rank(iso[n]) != tensor.dimension(n) ||
            tensor.dimension(n) != union_complex.complex.dimension(n))
            throw std::logic_error("disjoint union map is not an isomorphism");
    return {std::move(union_complex), std::move(tensor), std::move(iso)};
}

namespace {

struct GluingGeometry {
    OneManifold glued;
    // source (component, gap) -> target (component, gap); merged gaps share
    // a target.
    std::vector<std::vector<std::pair<int, int>>> gap_map;
    std::vector<std::vector<std::pair<int, int>>> point_map;  // 1-based for intervals
    int merged_component;
};

GluingGeometry gluing_geometry(const OneManifold& w, const Gluing& g) {
    const int ncomp = static_cast<int>(w.components.size());
    if (g.from_component < 0 || g.from_component >= ncomp || g.to_component < 0 ||
        g.to_component >= ncomp)
        throw std::invalid_argument("gluing component out of range");
    const Component& cf = w.components[g.from_component];
    const Component& ct = w.components[g.to_component];
    if (cf.kind != Component::Kind::Interval || ct.kind != Component::Kind::Interval)
        throw std::invalid_argument("gluing identifies interval boundary slots");
    GluingGeometry geo;
    geo.gap_map.resize(ncomp);
    geo.point_map.resize(ncomp);
    if (g.from_component == g.to_component) {
        const int f = g.from_component;
        const int n = cf.points;
        geo.glued = w;
        geo.glued.components[f] = {Component::Kind::Circle, n};
        geo.merged_component = f;
        for (int ci = 0; ci < ncomp; ++ci) {
            const Component& c = w.components[ci];
            if (ci == f) {
                geo.gap_map[ci].resize(c.gap_count());
                for (int gp = 0; gp <= n; ++gp)
                    geo.gap_map[ci][gp] = {f, ((gp - 1) % n + n) % n};
                geo.point_map[ci].resize(c.points + 1);
                for (int p = 1; p <= n; ++p) geo.point_map[ci][p] = {f, p - 1};
            } else {
                geo.gap_map[ci].resize(c.gap_count());
                for (int gp = 0; gp < c.gap_count(); ++gp) geo.gap_map[ci][gp] = {ci, gp};
                geo.point_map[ci].resize(c.points + 1);
                int base = c.kind == Component::Kind::Interval ? 1 : 0;
                for (int p = base; p < base + c.points; ++p) geo.point_map[ci][p] = {ci, p};
            }
        }
        return geo;
    }
    const int f = g.from_component, t = g.to_component;
    const int nf = cf.points, nt = ct.points;
    geo.glued.components.clear();
    auto new_index = [&](int ci) { return ci - (ci > t ? 1 : 0); };
    for (int ci = 0; ci < ncomp; ++ci) {
        if (ci == t) continue;
        Component c = w.components[ci];
        if (ci == f) c = {Component::Kind::Interval, nf + nt};
        geo.glued.components.push_back(c);
    }
    geo.merged_component = new_index(f);
    for (int ci = 0; ci < ncomp; ++ci) {
        const Component& c = w.components[ci];
        geo.gap_map[ci].resize(c.gap_count());
        geo.point_map[ci].resize(c.points + 1);
        if (ci == f) {
            for (int gp = 0; gp <= nf; ++gp) geo.gap_map[ci][gp] = {geo.merged_component, gp};
            for (int p = 1; p <= nf; ++p) geo.point_map[ci][p] = {geo.merged_component, p};
        } else if (ci == t) {
            for (int gp = 0; gp <= nt; ++gp)
                geo.gap_map[ci][gp] = {geo.merged_component, nf + gp};
            for (int p = 1; p <= nt; ++p) geo.point_map[ci][p] = {geo.merged_component, nf + p};
        } else {
            int ni = new_index(ci);
            for (int gp = 0; gp < c.gap_count(); ++gp) geo.gap_map[ci][gp] = {ni, gp};
            int base = c.kind == Component::Kind::Interval ? 1 : 0;
            for (int p = base; p < base + c.points; ++p) geo.point_map[ci][p] = {ni, p};
        }
    }
    return geo;
}

Arc map_arc_through_gluing(const OneManifold& w, const GluingGeometry& geo, const Gluing& g,
                           const Arc& a) {
    if (g.from_component == g.to_component && a.component == g.from_component) {
        int n = w.components[a.component].points;
        return Arc{geo.merged_component, ((a.start - 1) % n + n) % n, ((a.end - 1) % n + n) % n};
    }
    if (a.component == g.from_component)
        return Arc{geo.merged_component, a.start, a.end};
    if (a.component == g.to_component) {
        int nf = w.components[g.from_component].points;
        return Arc{geo.merged_component, nf + a.start, nf + a.end};
    }
    int ni = a.component - (a.component > g.to_component && g.from_component != g.to_component ? 1 : 0);
    return Arc{ni, a.start, a.end};
}

}  // namespace

GluingResult gluing_chain_map(const BlobComplexResult& source, const Gluing& g) {
    const OneManifold& w = source.manifold();
    if (!source.context->boundary().fixed.empty())
        throw std::invalid_argument("gluing is only supported with free boundary conditions");
    GluingGeometry geo = gluing_geometry(w, g);
    BlobComplexResult target =
        build_blob_complex(geo.glued, source.category(), source.max_degree, {});

    const FieldSpaceIndex& sspace = source.context->space();
    const FieldSpaceIndex& tspace = target.context->space();
    FieldSpec field = source.category().field();

    // Field pushforward: relabel gaps and points; sectors whose labels
    // disagree at the merged gap map to zero.
    SparseMatrix phi0(field, tspace.dimension(), sspace.dimension());
    const int ncomp = static_cast<int>(w.components.size());
    const int tcomp = static_cast<int>(geo.glued.components.size());
    for (Index s = 0; s < sspace.dimension(); ++s) {
        auto locals = sspace.split(s);
        std::vector<ComponentLabeling> tlab(tcomp);
        for (int ci = 0; ci < tcomp; ++ci) {
            const Component& c = geo.glued.components[ci];
            tlab[ci].objects.assign(c.gap_count(), -1);
            tlab[ci].homs.assign(c.points, 0);
        }
        bool ok = true;
        for (int ci = 0; ci < ncomp && ok; ++ci) {
            const Component& c = w.components[ci];
            const ComponentLabeling& e = sspace.local_element(ci, locals[ci]);
            for (int gp = 0; gp < c.gap_count() && ok; ++gp) {
                auto [tc, tg] = geo.gap_map[ci][gp];
                int& slot = tlab[tc].objects[tg];
                if (slot == -1)
                    slot = e.objects[gp];
                else if (slot != e.objects[gp])
                    ok = false;  // merged gap labels disagree
            }
            int base = c.kind == Component::Kind::Interval ? 1 : 0;
            for (int p = base; p < base + c.points; ++p) {
                auto [tc, tp] = geo.point_map[ci][p];
                const Component& tcm = geo.glued.components[tc];
                int tpos = tcm.kind == Component::Kind::Interval ? tp - 1 : tp;
                tlab[tc].homs[tpos] = e.homs[base == 1 ? p - 1 : p];
            }
        }
        if (!ok) continue;
        std::vector<Index> tlocals(tcomp);
        bool found = true;
        for (int ci = 0; ci < tcomp; ++ci) {
            auto li = tspace.local_index(ci, tlab[ci]);
            if (!li) {
                found = false;
                break;
            }
            tlocals[ci] = *li;
        }
        if (!found) throw std::logic_error("pushforward element missing from target field space");
        phi0.set(tspace.combine(tlocals), s, Scalar::one(field));
    }

    std::vector<SparseMatrix> chain_map(source.max_degree + 1);
    for (Index k = 0; k <= source.max_degree; ++k) {
        SparseMatrix m(field, target.complex.dimension(k), source.complex.dimension(k));
        for (std::size_t cp = 0; cp < source.spaces[k].size(); ++cp) {
            const BlobGeneratorSpace& gen = source.spaces[k][cp];
            std::vector<Arc> mapped;
            for (const Arc& a : gen.config.arcs) mapped.push_back(map_arc_through_gluing(w, geo, g, a));
            int sign = 1;
            for (std::size_t i = 1; i < mapped.size(); ++i) {
                std::size_t j = i;
                while (j > 0 && canonical_arc_less(geo.glued, mapped[j], mapped[j - 1])) {
                    std::swap(mapped[j], mapped[j - 1]);
                    sign = -sign;
                    --j;
                }
            }
            BlobConfig tconfig{std::move(mapped)};
            auto pos = target.config_position(k, tconfig);
            Scalar sgn = sign > 0 ? Scalar::one(field) : -Scalar::one(field);
            for (Index col = 0; col < gen.basis.cols(); ++col) {
                SparseColumn image = phi0.apply(gen.basis.column(col));
                if (image.empty()) continue;
                if (!pos) throw std::logic_error("glued image missed its target space");
                const BlobGeneratorSpace& tgt = target.spaces[k][*pos];
                SparseColumn coords = coordinates_in_echelon_basis(tgt.basis, image);
                for (const auto& [tc, val] : coords)
                    m.add_to(target.offsets[k][*pos] + tc, source.offsets[k][cp] + col, sgn * val);
            }
        }
        chain_map[k] = std::move(m);
    }
    check_chain_map(source.complex, target.complex, chain_map, "gluing chain map");
    return {std::move(target), std::move(chain_map), std::move(phi0)};
}

std::vector<SparseMatrix> homeomorphism_action(const BlobComplexResult& r,
                                               const Homeomorphism& h) {
    const OneManifold& w = r.manifold();
    check_homeomorphism(w, h);
    for (bool refl : h.reflect)
        if (refl && !r.category().is_commutative())
            throw std::invalid_argument(
                "reflections need a commutative one-object coefficient presentation");
    if (!r.context->boundary().fixed.empty())
        throw std::invalid_argument("homeomorphism action with fixed boundary is not supported");
    const FieldSpaceIndex& space = r.context->space();
    FieldSpec field = r.category().field();
    const int ncomp = static_cast<int>(w.components.size());

    // Transport matrix on the field space.
    SparseMatrix phi0(field, space.dimension(), space.dimension());
    for (Index s = 0; s < space.dimension(); ++s) {
        auto locals = space.split(s);
        std::vector<ComponentLabeling> tlab(ncomp);
        for (int ci = 0; ci < ncomp; ++ci) {
            const Component& c = w.components[h.component_map[ci]];
            tlab[h.component_map[ci]].objects.assign(c.gap_count(), -1);
            tlab[h.component_map[ci]].homs.assign(c.points, 0);
        }
        for (int ci = 0; ci < ncomp; ++ci) {
            const Component& c = w.components[ci];
            const ComponentLabeling& e = space.local_element(ci, locals[ci]);
            int tc = h.component_map[ci];
            for (int gp = 0; gp < c.gap_count(); ++gp)
                tlab[tc].objects[map_slot(w, h, ci, gp)] = e.objects[gp];
            int base = c.kind == Component::Kind::Interval ? 1 : 0;
            for (int p = base; p < base + c.points; ++p) {
                int tp = map_point(w, h, ci, p);
                tlab[tc].homs[base == 1 ? tp - 1 : tp] = e.homs[base == 1 ? p - 1 : p];
            }
        }
        std::vector<Index> tlocals(ncomp);
        for (int ci = 0; ci < ncomp; ++ci) {
            auto li = space.local_index(ci, tlab[ci]);
            if (!li) throw std::logic_error("transported element missing from field space");
            tlocals[ci] = *li;
        }
        phi0.set(space.combine(tlocals), s, Scalar::one(field));
    }

    std::vector<SparseMatrix> action(r.max_degree + 1);
    for (Index k = 0; k <= r.max_degree; ++k) {
        SparseMatrix m(field, r.complex.dimension(k), r.complex.dimension(k));
        for (std::size_t cp = 0; cp < r.spaces[k].size(); ++cp) {
            const BlobGeneratorSpace& gen = r.spaces[k][cp];
            auto [tconfig, sign] = apply_homeomorphism(w, h, gen.config);
            auto pos = r.config_position(k, tconfig);
            if (!pos) throw std::logic_error("transported configuration missing");
            const BlobGeneratorSpace& tgt = r.spaces[k][*pos];
            Scalar sgn = sign > 0 ? Scalar::one(field) : -Scalar::one(field);
            for (Index col = 0; col < gen.basis.cols(); ++col) {
                SparseColumn image = phi0.apply(gen.basis.column(col));
                SparseColumn coords = coordinates_in_echelon_basis(tgt.basis, image);
                for (const auto& [tc, val] : coords)
                    m.add_to(r.offsets[k][*pos] + tc, r.offsets[k][cp] + col, sgn * val);
            }
        }
        action[k] = std::move(m);
    }
    check_chain_map(r.complex, r.complex, action, "homeomorphism action");
    return action;
}

}  // namespace blobcalc
