#include "blobcalc/field_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace blobcalc {

namespace detail {

void LabeledEnumeration::enumerate(const CategoryPresentation& c) {
    elements.clear();
    lookup.clear();
    std::vector<int> objects(allowed_objects.size(), -1);
    auto emit_homs = [&]() {
        std::vector<Index> dims;
        dims.reserve(hom_positions.size());
        for (const auto& [s, d] : hom_positions) {
            Index dim = c.hom_dim(objects[s], objects[d]);
            if (dim == 0) return;  // skip empty sectors entirely
            dims.push_back(dim);
        }
        std::vector<Index> homs(hom_positions.size(), 0);
        while (true) {
            ComponentLabeling e{objects, homs};
            lookup.emplace(e, static_cast<Index>(elements.size()));
            elements.push_back(std::move(e));
            std::size_t i = homs.size();
            while (i > 0) {
                --i;
                if (++homs[i] < dims[i]) break;
                homs[i] = 0;
                if (i == 0) return;
            }
            if (homs.empty()) return;
        }
    };
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == objects.size()) {
            emit_homs();
            return;
        }
        for (int o : allowed_objects[pos]) {
            objects[pos] = o;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
}

}  // namespace detail

namespace {

std::vector<int> all_objects(const CategoryPresentation& c) {
    std::vector<int> out(c.object_count());
    for (int i = 0; i < c.object_count(); ++i) out[i] = i;
    return out;
}

Index product_dimension(const std::vector<Index>& dims) {
    unsigned long long total = 1;
    for (Index d : dims) {
        total *= d;
        if (total > 0x7fffffffull) throw std::overflow_error("basis too large to index");
    }
    return static_cast<Index>(total);
}

std::vector<Index> split_mixed_radix(Index global, const std::vector<Index>& dims) {
    std::vector<Index> locals(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        locals[i] = global % dims[i];
        global /= dims[i];
    }
    return locals;
}

Index combine_mixed_radix(const std::vector<Index>& locals, const std::vector<Index>& dims) {
    Index global = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) global = global * dims[i] + locals[i];
    return global;
}

}  // namespace

FieldSpaceIndex::FieldSpaceIndex(OneManifold w, CategoryPresentation c, BoundaryCondition bc)
    : manifold_(std::move(w)), category_(std::move(c)), boundary_(std::move(bc)) {
    for (const auto& [ci, objs] : boundary_.fixed) {
        if (ci < 0 || ci >= static_cast<int>(manifold_.components.size()) ||
            manifold_.components[ci].kind != Component::Kind::Interval)
            throw std::invalid_argument("boundary condition must name an interval component");
        if (objs.first < 0 || objs.first >= category_.object_count() || objs.second < 0 ||
            objs.second >= category_.object_count())
            throw std::invalid_argument("boundary condition object out of range");
    }
    for (int ci = 0; ci < static_cast<int>(manifold_.components.size()); ++ci) {
        const Component& comp = manifold_.components[ci];
        detail::LabeledEnumeration e;
        e.allowed_objects.assign(comp.gap_count(), all_objects(category_));
        if (comp.kind == Component::Kind::Interval) {
            if (auto it = boundary_.fixed.find(ci); it != boundary_.fixed.end()) {
                e.allowed_objects[0] = {it->second.first};
                e.allowed_objects[comp.points] = {it->second.second};
            }
            for (int p = 1; p <= comp.points; ++p) e.hom_positions.emplace_back(p - 1, p);
        } else {
            int n = comp.points;
            for (int p = 0; p < n; ++p) e.hom_positions.emplace_back(((p - 1) % n + n) % n, p);
        }
        e.enumerate(category_);
        comp_dims_.push_back(static_cast<Index>(e.elements.size()));
        comps_.push_back(std::move(e));
    }
    dimension_ = product_dimension(comp_dims_);
}

const ComponentLabeling& FieldSpaceIndex::local_element(int ci, Index local) const {
    return comps_.at(ci).elements.at(local);
}

std::optional<Index> FieldSpaceIndex::local_index(int ci, const ComponentLabeling& e) const {
    auto it = comps_.at(ci).lookup.find(e);
    if (it == comps_.at(ci).lookup.end()) return std::nullopt;
    return it->second;
}

std::vector<Index> FieldSpaceIndex::split(Index global) const {
    return split_mixed_radix(global, comp_dims_);
}

Index FieldSpaceIndex::combine(const std::vector<Index>& locals) const {
    return combine_mixed_radix(locals, comp_dims_);
}

std::string FieldSpaceIndex::label(Index global) const {
    auto locals = split(global);
    std::string out;
    for (std::size_t ci = 0; ci < locals.size(); ++ci) {
        const ComponentLabeling& e = local_element(static_cast<int>(ci), locals[ci]);
        if (ci) out += "|";
        for (std::size_t g = 0; g < e.objects.size(); ++g) {
            if (g) out += ".";
            out += category_.object_name(e.objects[g]);
        }
        out += ":";
        for (std::size_t p = 0; p < e.homs.size(); ++p) {
            const auto& [s, d] = comps_[ci].hom_positions[p];
            if (p) out += ".";
            out += category_.hom_basis(e.objects[s], e.objects[d])[e.homs[p]];
        }
    }
    return out;
}

int FieldSpaceIndex::gap_object(Index global, int ci, int gap) const {
    auto locals = split(global);
    return local_element(ci, locals.at(ci)).objects.at(gap);
}

Index FieldSpaceIndex::point_hom(Index global, int ci, int point) const {
    auto locals = split(global);
    const Component& comp = manifold_.components.at(ci);
    int pos = comp.kind == Component::Kind::Interval ? point - 1 : point;
    return local_element(ci, locals.at(ci)).homs.at(pos);
}

PsiValue::PsiValue(OneManifold w, CategoryPresentation c, Decomposition x, BoundaryCondition bc)
    : manifold_(std::move(w)), category_(std::move(c)), boundary_(std::move(bc)),
      decomposition_(std::move(x)) {
    if (decomposition_.cuts.size() != manifold_.components.size())
        throw std::invalid_argument("decomposition does not match the manifold");
    for (int ci = 0; ci < static_cast<int>(manifold_.components.size()); ++ci) {
        const Component& comp = manifold_.components[ci];
        const auto& cuts = decomposition_.cuts[ci];
        std::vector<int> slots;
        std::vector<Arc> pieces;
        std::vector<std::pair<int, int>> ends;
        if (comp.kind == Component::Kind::Interval) {
            slots.push_back(0);
            for (int s : cuts) slots.push_back(s);
            slots.push_back(comp.points);
            for (std::size_t i = 0; i + 1 < slots.size(); ++i) {
                pieces.push_back({ci, slots[i], slots[i + 1]});
                ends.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
            }
        } else {
            if (cuts.empty()) throw std::invalid_argument("circle component with no cuts");
            slots = cuts;
            int k = static_cast<int>(slots.size());
            for (int i = 0; i < k; ++i) {
                pieces.push_back({ci, slots[i], slots[(i + 1) % k]});
                ends.emplace_back(i, (i + 1) % k);
            }
        }
        detail::LabeledEnumeration e;
        e.allowed_objects.assign(slots.size(), all_objects(category_));
        if (comp.kind == Component::Kind::Interval) {
            if (auto it = boundary_.fixed.find(ci); it != boundary_.fixed.end()) {
                e.allowed_objects.front() = {it->second.first};
                e.allowed_objects.back() = {it->second.second};
            }
        }
        for (const auto& [s, d] : ends) e.hom_positions.emplace_back(s, d);
        e.enumerate(category_);
        slots_.push_back(std::move(slots));
        pieces_.push_back(std::move(pieces));
        piece_ends_.push_back(std::move(ends));
        comp_dims_.push_back(static_cast<Index>(e.elements.size()));
        comps_.push_back(std::move(e));
    }
    dimension_ = product_dimension(comp_dims_);
}

const ComponentLabeling& PsiValue::local_element(int ci, Index local) const {
    return comps_.at(ci).elements.at(local);
}

std::optional<Index> PsiValue::local_index(int ci, const ComponentLabeling& e) const {
    auto it = comps_.at(ci).lookup.find(e);
    if (it == comps_.at(ci).lookup.end()) return std::nullopt;
    return it->second;
}

std::vector<Index> PsiValue::split(Index global) const {
    return split_mixed_radix(global, comp_dims_);
}

Index PsiValue::combine(const std::vector<Index>& locals) const {
    return combine_mixed_radix(locals, comp_dims_);
}

std::string PsiValue::label(Index global) const {
    return decomposition_.to_string() + "#" + std::to_string(global);
}

SparseMatrix refinement_map(const PsiValue& x, const PsiValue& y) {
    const OneManifold& w = x.manifold();
    const CategoryPresentation& c = x.category();
    if (!(w == y.manifold()))
        throw std::invalid_argument("refinement map needs matching manifolds");
    if (!is_refinement(w, x.decomposition(), y.decomposition()))
        throw std::invalid_argument("refinement map needs x <= y");
    const int ncomp = static_cast<int>(w.components.size());

    // Per component: for each y-piece, the run of x-piece positions
    // composing it, found by following x-pieces from the start slot.
    std::vector<std::vector<std::vector<int>>> runs(ncomp);
    for (int ci = 0; ci < ncomp; ++ci) {
        std::map<int, int> x_piece_at_start;
        for (std::size_t i = 0; i < x.pieces(ci).size(); ++i)
            x_piece_at_start[x.pieces(ci)[i].start] = static_cast<int>(i);
        for (const Arc& ypiece : y.pieces(ci)) {
            std::vector<int> run;
            int slot = ypiece.start;
            do {
                auto it = x_piece_at_start.find(slot);
                if (it == x_piece_at_start.end())
                    throw std::logic_error("refinement run broke at slot " + std::to_string(slot));
                run.push_back(it->second);
                slot = x.pieces(ci)[it->second].end;
            } while (slot != ypiece.end || run.empty());
            // Seam pieces (start == end) exit after a full loop; proper
            // pieces stop at the end slot.
            runs[ci].push_back(std::move(run));
        }
    }

    // Positions of y's labeled slots inside x's labeled slots.
    std::vector<std::vector<int>> slot_pos(ncomp);
    for (int ci = 0; ci < ncomp; ++ci) {
        for (int s : y.labeled_slots(ci)) {
            const auto& xs = x.labeled_slots(ci);
            auto it = std::find(xs.begin(), xs.end(), s);
            if (it == xs.end()) throw std::logic_error("y slot missing from x");
            slot_pos[ci].push_back(static_cast<int>(it - xs.begin()));
        }
    }

    SparseMatrix out(c.field(), y.dimension(), x.dimension());
    for (Index g = 0; g < x.dimension(); ++g) {
        auto locals = x.split(g);
        // Per component, expand the outer product of per-piece composites.
        std::vector<std::vector<std::pair<Index, Scalar>>> comp_targets(ncomp);
        bool dead = false;
        for (int ci = 0; ci < ncomp && !dead; ++ci) {
            const ComponentLabeling& ex = x.local_element(ci, locals[ci]);
            ComponentLabeling proto;
            for (int pos : slot_pos[ci]) proto.objects.push_back(ex.objects[pos]);
            // Composite vector per y-piece.
            std::vector<SparseVec> per_piece;
            for (std::size_t yp = 0; yp < y.pieces(ci).size(); ++yp) {
                const auto& run = runs[ci][yp];
                int src = ex.objects[x.piece_ends(ci)[run[0]].first];
                SparseVec acc{{ex.homs[run[0]], Scalar::one(c.field())}};
                int mid = ex.objects[x.piece_ends(ci)[run[0]].second];
                for (std::size_t q = 1; q < run.size(); ++q) {
                    int nxt = ex.objects[x.piece_ends(ci)[run[q]].second];
                    acc = c.compose_vec(src, mid, nxt, acc,
                                        {{ex.homs[run[q]], Scalar::one(c.field())}});
                    mid = nxt;
                }
                if (acc.empty()) {
                    dead = true;
                    break;
                }
                per_piece.push_back(std::move(acc));
            }
            if (dead) break;
            // Outer product across pieces.
            std::vector<std::pair<std::vector<Index>, Scalar>> partial{{{}, Scalar::one(c.field())}};
            for (const auto& vec : per_piece) {
                std::vector<std::pair<std::vector<Index>, Scalar>> grown;
                for (const auto& [homs, coeff] : partial)
                    for (const auto& [h, v] : vec) {
                        auto hs = homs;
                        hs.push_back(h);
                        grown.emplace_back(std::move(hs), coeff * v);
                    }
                partial = std::move(grown);
            }
            for (auto& [homs, coeff] : partial) {
                ComponentLabeling target = proto;
                target.homs = std::move(homs);
                auto li = y.local_index(ci, target);
                if (!li) throw std::logic_error("refinement target element missing");
                comp_targets[ci].emplace_back(*li, coeff);
            }
        }
        if (dead) continue;
        // Combine components.
        std::vector<std::pair<std::vector<Index>, Scalar>> combos{{{}, Scalar::one(c.field())}};
        for (int ci = 0; ci < ncomp; ++ci) {
            std::vector<std::pair<std::vector<Index>, Scalar>> grown;
            for (const auto& [ls, coeff] : combos)
                for (const auto& [li, v] : comp_targets[ci]) {
                    auto nls = ls;
                    nls.push_back(li);
                    grown.emplace_back(std::move(nls), coeff * v);
                }
            combos = std::move(grown);
        }
        for (const auto& [ls, coeff] : combos) out.add_to(y.combine(ls), g, coeff);
    }
    return out;
}

FieldContext::FieldContext(OneManifold w, CategoryPresentation c, BoundaryCondition bc)
    : space_(std::move(w), std::move(c), std::move(bc)) {}

const MorphismWordSpace& FieldContext::word_space(int src, int dst, Index length) const {
    auto key = std::make_tuple(src, dst, length);
    auto it = word_spaces_.find(key);
    if (it == word_spaces_.end())
        it = word_spaces_.emplace(key, MorphismWordSpace(category(), src, dst, length)).first;
    return it->second;
}

const SparseMatrix& FieldContext::word_kernel(int src, int dst, Index length) const {
    auto key = std::make_tuple(src, dst, length);
    auto it = word_kernels_.find(key);
    if (it == word_kernels_.end()) {
        const MorphismWordSpace& ws = word_space(src, dst, length);
        it = word_kernels_.emplace(key, kernel_basis(ws.evaluation_matrix(category()))).first;
    }
    return it->second;
}

namespace {

struct ArcGeometry {
    std::vector<int> inside_points;     // traversal order, component-local
    std::vector<int> inside_gaps;       // strict interior, traversal order
    int src_gap, dst_gap;
};

ArcGeometry arc_geometry(const OneManifold& w, const Arc& b) {
    const Component& comp = w.components.at(b.component);
    ArcGeometry g;
    if (comp.kind == Component::Kind::Interval) {
        for (int p = b.start + 1; p <= b.end; ++p) g.inside_points.push_back(p);
        for (int gp = b.start + 1; gp <= b.end - 1; ++gp) g.inside_gaps.push_back(gp);
        g.src_gap = b.start;
        g.dst_gap = b.end;
    } else {
        int n = comp.points;
        int m = b.start == b.end ? n : (((b.end - b.start) % n) + n) % n;
        for (int i = 1; i <= m; ++i) g.inside_points.push_back((b.start + i) % n);
        for (int i = 1; i <= m - 1; ++i) g.inside_gaps.push_back((b.start + i) % n);
        g.src_gap = b.start;
        g.dst_gap = b.end;
    }
    return g;
}

}  // namespace

std::vector<FieldContext::Sector> FieldContext::sectors_of_arc(const Arc& b) const {
    const OneManifold& w = manifold();
    const Component& comp = w.components.at(b.component);
    ArcGeometry geo = arc_geometry(w, b);
    const Index m = static_cast<Index>(geo.inside_points.size());

    std::vector<bool> gap_inside(comp.gap_count(), false);
    for (int gp : geo.inside_gaps) gap_inside[gp] = true;
    std::vector<bool> point_inside(comp.points + 1, false);
    for (int p : geo.inside_points) point_inside[p] = true;

    auto point_pos = [&](int p) {
        return comp.kind == Component::Kind::Interval ? p - 1 : p;
    };

    std::map<std::vector<int>, std::size_t> sector_of_key;
    std::vector<Sector> sectors;
    for (Index g = 0; g < space_.dimension(); ++g) {
        auto locals = space_.split(g);
        const ComponentLabeling& e = space_.local_element(b.component, locals[b.component]);
        // Outside key: other components' locals, then outside gaps/points.
        std::vector<int> key;
        for (std::size_t ci = 0; ci < locals.size(); ++ci)
            if (static_cast<int>(ci) != b.component) key.push_back(static_cast<int>(locals[ci]));
        for (int gp = 0; gp < comp.gap_count(); ++gp)
            if (!gap_inside[gp]) key.push_back(e.objects[gp]);
        int first_point = comp.kind == Component::Kind::Interval ? 1 : 0;
        for (int p = first_point; p < first_point + comp.points; ++p)
            if (!point_inside[p]) key.push_back(static_cast<int>(e.homs[point_pos(p)]));

        int src = e.objects[geo.src_gap];
        int dst = e.objects[geo.dst_gap];
        // The word inside the arc: internal object path and hom indices.
        std::vector<int> path{src};
        for (int gp : geo.inside_gaps) path.push_back(e.objects[gp]);
        path.push_back(dst);
        std::vector<Index> homs;
        for (int p : geo.inside_points) homs.push_back(e.homs[point_pos(p)]);

        auto it = sector_of_key.find(key);
        if (it == sector_of_key.end()) {
            const MorphismWordSpace& ws = word_space(src, dst, m);
            Sector s;
            s.src = src;
            s.dst = dst;
            s.field_index_of_word.assign(ws.dimension(), space_.dimension());
            it = sector_of_key.emplace(std::move(key), sectors.size()).first;
            sectors.push_back(std::move(s));
        }
        Sector& sec = sectors[it->second];
        auto wi = word_space(sec.src, sec.dst, m).index_of(path, homs);
        if (!wi) throw std::logic_error("field element missing from its word space");
        sec.field_index_of_word.at(*wi) = g;
    }
    for (const Sector& s : sectors)
        for (Index fi : s.field_index_of_word)
            if (fi >= space_.dimension())
                throw std::logic_error("sector does not cover its word space");
    return sectors;
}

const SparseMatrix& FieldContext::arc_constraint(const Arc& b) const {
    auto it = arc_constraints_.find(b);
    if (it != arc_constraints_.end()) return it->second;
    ArcGeometry geo = arc_geometry(manifold(), b);
    const Index m = static_cast<Index>(geo.inside_points.size());
    std::vector<Sector> sectors = sectors_of_arc(b);
    std::vector<SparseColumn> columns;
    for (const Sector& sec : sectors) {
        const SparseMatrix& kernel = word_kernel(sec.src, sec.dst, m);
        for (Index kc = 0; kc < kernel.cols(); ++kc) {
            SparseColumn col;
            for (const auto& [wi, v] : kernel.column(kc))
                col.emplace_back(sec.field_index_of_word[wi], v);
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b2) { return a.first < b2.first; });
            columns.push_back(std::move(col));
        }
    }
    SparseMatrix raw(category().field(), space_.dimension(), static_cast<Index>(columns.size()));
    for (Index i = 0; i < columns.size(); ++i) raw.set_column(i, std::move(columns[i]));
    return arc_constraints_.emplace(b, column_echelon(raw)).first->second;
}

std::vector<ArcSectorEvaluation> FieldContext::evaluate_on_arc(const SparseColumn& v,
                                                               const Arc& b) const {
    ArcGeometry geo = arc_geometry(manifold(), b);
    const Index m = static_cast<Index>(geo.inside_points.size());
    std::vector<Sector> sectors = sectors_of_arc(b);
    std::vector<ArcSectorEvaluation> out;
    for (const Sector& sec : sectors) {
        SparseColumn inside;
        for (Index wi = 0; wi < sec.field_index_of_word.size(); ++wi) {
            Index fi = sec.field_index_of_word[wi];
            for (const auto& [r, s] : v)
                if (r == fi) inside.emplace_back(wi, s);
        }
        if (inside.empty()) continue;
        SparseMatrix eval = word_space(sec.src, sec.dst, m).evaluation_matrix(category());
        SparseColumn res = eval.apply(inside);
        ArcSectorEvaluation e;
        e.src_object = sec.src;
        e.dst_object = sec.dst;
        e.word_length = m;
        e.inside = std::move(inside);
        for (const auto& [r, s] : res) e.evaluation.emplace_back(r, s);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace blobcalc
