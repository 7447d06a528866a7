#include "blobcalc/manifold.hpp"

#include <algorithm>
#include <stdexcept>

namespace blobcalc {

OneManifold OneManifold::parse(const std::string& literal, std::optional<int> default_points) {
    OneManifold w;
    std::size_t pos = 0;
    while (pos <= literal.size()) {
        std::size_t next = literal.find('+', pos);
        std::string part = literal.substr(pos, next == std::string::npos ? next : next - pos);
        std::string kind = part;
        std::optional<int> n = default_points;
        if (auto colon = part.find(':'); colon != std::string::npos) {
            kind = part.substr(0, colon);
            try {
                n = std::stoi(part.substr(colon + 1));
            } catch (...) {
                throw std::invalid_argument("bad point count in manifold literal '" + part + "'");
            }
        }
        Component c;
        if (kind == "interval")
            c.kind = Component::Kind::Interval;
        else if (kind == "circle")
            c.kind = Component::Kind::Circle;
        else
            throw std::invalid_argument("unknown manifold component '" + part + "'");
        if (!n || *n < 1)
            throw std::invalid_argument("component '" + part + "' needs a point count >= 1");
        c.points = *n;
        w.components.push_back(c);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (w.components.empty()) throw std::invalid_argument("empty manifold literal");
    return w;
}

std::string OneManifold::to_literal() const {
    std::string out;
    for (const auto& c : components) {
        if (!out.empty()) out += "+";
        out += (c.kind == Component::Kind::Interval ? "interval:" : "circle:") +
               std::to_string(c.points);
    }
    return out;
}

int OneManifold::total_points() const {
    int n = 0;
    for (const auto& c : components) n += c.points;
    return n;
}

std::string Decomposition::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (i) out += ";";
        out += "{";
        for (std::size_t j = 0; j < cuts[i].size(); ++j) {
            if (j) out += ",";
            out += std::to_string(cuts[i][j]);
        }
        out += "}";
    }
    return out + ")";
}

namespace {

std::vector<std::vector<int>> component_cut_sets(const Component& c) {
    std::vector<std::vector<int>> sets;
    if (c.kind == Component::Kind::Interval) {
        int interior = c.points - 1;
        for (unsigned mask = 0; mask < (1u << interior); ++mask) {
            std::vector<int> cuts;
            for (int s = 1; s <= interior; ++s)
                if (mask & (1u << (s - 1))) cuts.push_back(s);
            sets.push_back(std::move(cuts));
        }
    } else {
        int slots = c.points;
        for (unsigned mask = 1; mask < (1u << slots); ++mask) {
            std::vector<int> cuts;
            for (int s = 0; s < slots; ++s)
                if (mask & (1u << s)) cuts.push_back(s);
            sets.push_back(std::move(cuts));
        }
    }
    return sets;
}

void check_decomposition(const OneManifold& w, const Decomposition& x) {
    if (x.cuts.size() != w.components.size())
        throw std::invalid_argument("decomposition component count mismatch");
    for (std::size_t i = 0; i < x.cuts.size(); ++i) {
        const Component& c = w.components[i];
        const auto& cuts = x.cuts[i];
        if (!std::is_sorted(cuts.begin(), cuts.end()) ||
            std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end())
            throw std::invalid_argument("cut slots must be sorted and distinct");
        if (c.kind == Component::Kind::Circle && cuts.empty())
            throw std::invalid_argument("circle components need at least one cut");
        for (int s : cuts) {
            bool ok = c.kind == Component::Kind::Interval ? (s >= 1 && s <= c.points - 1)
                                                          : (s >= 0 && s < c.points);
            if (!ok) throw std::invalid_argument("cut slot out of range");
        }
    }
}

}  // namespace

std::vector<Decomposition> enumerate_decompositions(const OneManifold& w) {
    std::vector<std::vector<std::vector<int>>> per_comp;
    for (const auto& c : w.components) per_comp.push_back(component_cut_sets(c));
    std::vector<Decomposition> out;
    std::vector<std::size_t> idx(w.components.size(), 0);
    while (true) {
        Decomposition d;
        for (std::size_t i = 0; i < per_comp.size(); ++i) d.cuts.push_back(per_comp[i][idx[i]]);
        out.push_back(std::move(d));
        // Mixed-radix increment, component 0 most significant.
        std::size_t i = per_comp.size();
        while (i > 0) {
            --i;
            if (++idx[i] < per_comp[i].size()) break;
            idx[i] = 0;
            if (i == 0) return out;
        }
    }
}

bool is_refinement(const OneManifold& w, const Decomposition& x, const Decomposition& y) {
    check_decomposition(w, x);
    check_decomposition(w, y);
    for (std::size_t i = 0; i < x.cuts.size(); ++i)
        if (!std::includes(x.cuts[i].begin(), x.cuts[i].end(), y.cuts[i].begin(), y.cuts[i].end()))
            return false;
    return true;
}

DecompositionPoset::DecompositionPoset(OneManifold w)
    : manifold_(std::move(w)), objects_(enumerate_decompositions(manifold_)) {}

std::optional<Index> DecompositionPoset::index_of(const Decomposition& d) const {
    for (Index i = 0; i < size(); ++i)
        if (objects_[i] == d) return i;
    return std::nullopt;
}

bool DecompositionPoset::leq(Index x, Index y) const {
    return is_refinement(manifold_, objects_.at(x), objects_.at(y));
}

std::vector<std::vector<Index>> DecompositionPoset::chains(int max_length) const {
    std::vector<std::vector<Index>> out;
    std::vector<Index> chain;
    auto rec = [&](auto&& self, Index last) -> void {
        if (static_cast<int>(chain.size()) - 1 >= max_length) return;
        for (Index v = 0; v < size(); ++v) {
            if (v == last || !leq(last, v)) continue;
            chain.push_back(v);
            out.push_back(chain);
            self(self, v);
            chain.pop_back();
        }
    };
    for (Index u = 0; u < size(); ++u) {
        chain = {u};
        out.push_back(chain);
        rec(rec, u);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

std::vector<std::pair<Index, Index>> DecompositionPoset::covering_pairs() const {
    std::vector<std::pair<Index, Index>> out;
    auto total_cuts = [&](Index i) {
        std::size_t n = 0;
        for (const auto& c : objects_[i].cuts) n += c.size();
        return n;
    };
    for (Index x = 0; x < size(); ++x)
        for (Index y = 0; y < size(); ++y)
            if (x != y && leq(x, y) && total_cuts(x) == total_cuts(y) + 1) out.emplace_back(x, y);
    return out;
}

std::string Arc::to_string() const {
    return std::to_string(component) + ":" + std::to_string(start) + "-" + std::to_string(end);
}

namespace {

const Component& arc_component(const OneManifold& w, const Arc& a) {
    if (a.component < 0 || a.component >= static_cast<int>(w.components.size()))
        throw std::invalid_argument("arc component out of range");
    return w.components[a.component];
}

void check_arc(const OneManifold& w, const Arc& a) {
    const Component& c = arc_component(w, a);
    if (c.kind == Component::Kind::Interval) {
        if (!(0 <= a.start && a.start < a.end && a.end <= c.points))
            throw std::invalid_argument("interval arc must satisfy 0 <= start < end <= N");
    } else {
        if (a.start < 0 || a.start >= c.points || a.end < 0 || a.end >= c.points)
            throw std::invalid_argument("circle arc slots out of range");
    }
}

// Proper circle arcs as (first point, length) of their cyclic point range.
std::pair<int, int> circle_range(const Component& c, const Arc& a) {
    int n = c.points;
    int len = ((a.end - a.start) % n + n) % n;
    return {(a.start + 1) % n, len};
}

}  // namespace

bool is_seam_arc(const OneManifold& w, const Arc& a) {
    return arc_component(w, a).kind == Component::Kind::Circle && a.start == a.end;
}

int covered_point_count(const OneManifold& w, const Arc& a) {
    check_arc(w, a);
    const Component& c = arc_component(w, a);
    if (c.kind == Component::Kind::Interval) return a.end - a.start;
    return a.start == a.end ? c.points : circle_range(c, a).second;
}

int first_covered_point(const OneManifold& w, const Arc& a) {
    const Component& c = arc_component(w, a);
    if (c.kind == Component::Kind::Interval) return a.start + 1;
    return (a.start + 1) % c.points;
}

bool arc_contains(const OneManifold& w, const Arc& outer, const Arc& inner) {
    if (outer.component != inner.component) return false;
    const Component& c = arc_component(w, outer);
    if (c.kind == Component::Kind::Interval)
        return outer.start <= inner.start && inner.end <= outer.end;
    bool outer_seam = outer.start == outer.end;
    bool inner_seam = inner.start == inner.end;
    if (outer_seam) {
        if (inner_seam) return outer == inner;
        // The seam's interior is the circle minus its seam slot, so a proper
        // arc sits inside iff the seam slot is not strictly inside the arc.
        int n = c.points;
        int rel = ((outer.start - inner.start) % n + n) % n;
        int len_slots = ((inner.end - inner.start) % n + n) % n;
        return !(rel > 0 && rel < len_slots);
    }
    if (inner_seam) return false;
    auto [po, lo] = circle_range(c, outer);
    auto [pi, li] = circle_range(c, inner);
    int shift = ((pi - po) % c.points + c.points) % c.points;
    return li <= lo && shift <= lo - li;
}

bool arcs_interior_disjoint(const OneManifold& w, const Arc& a, const Arc& b) {
    if (a.component != b.component) return true;
    const Component& c = arc_component(w, a);
    if (c.kind == Component::Kind::Interval) return a.end <= b.start || b.end <= a.start;
    if (a.start == a.end || b.start == b.end) return false;
    auto [pa, la] = circle_range(c, a);
    auto [pb, lb] = circle_range(c, b);
    int n = c.points;
    int ab = ((pb - pa) % n + n) % n;
    int ba = ((pa - pb) % n + n) % n;
    return ab >= la && ba >= lb;
}

bool arcs_compatible(const OneManifold& w, const Arc& a, const Arc& b) {
    if (a == b) return false;
    return arc_contains(w, a, b) || arc_contains(w, b, a) || arcs_interior_disjoint(w, a, b);
}

bool canonical_arc_less(const OneManifold& w, const Arc& a, const Arc& b) {
    if (a.component != b.component) return a.component < b.component;
    if (a.start != b.start) return a.start < b.start;
    return covered_point_count(w, a) > covered_point_count(w, b);
}

std::vector<Arc> enumerate_arcs(const OneManifold& w) {
    std::vector<Arc> out;
    for (int ci = 0; ci < static_cast<int>(w.components.size()); ++ci) {
        const Component& c = w.components[ci];
        if (c.kind == Component::Kind::Interval) {
            for (int s = 0; s < c.points; ++s)
                for (int t = c.points; t > s; --t) out.push_back({ci, s, t});
        } else {
            for (int s = 0; s < c.points; ++s)
                for (int len = c.points; len >= 1; --len)
                    out.push_back({ci, s, (s + len) % c.points});
        }
    }
    return out;
}

std::string BlobConfig::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (i) out += ",";
        out += arcs[i].to_string();
    }
    return out + "]";
}

std::vector<BlobConfig> enumerate_blob_configs(const OneManifold& w, int k) {
    if (k < 0) throw std::invalid_argument("blob count must be >= 0");
    std::vector<Arc> arcs = enumerate_arcs(w);
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

std::vector<std::size_t> innermost_arcs(const OneManifold& w, const BlobConfig& c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.arcs.size(); ++i) {
        bool inner = true;
        for (std::size_t j = 0; j < c.arcs.size(); ++j)
            if (i != j && arc_contains(w, c.arcs[i], c.arcs[j])) {
                inner = false;
                break;
            }
        if (inner) out.push_back(i);
    }
    return out;
}

Decomposition extend_to_decomposition(const OneManifold& w, const BlobConfig& c) {
    Decomposition d;
    d.cuts.resize(w.components.size());
    for (const Arc& a : c.arcs) {
        check_arc(w, a);
        const Component& comp = w.components[a.component];
        auto add = [&](int slot) {
            if (comp.kind == Component::Kind::Interval && (slot == 0 || slot == comp.points))
                return;  // boundary slots are not cuts
            d.cuts[a.component].push_back(slot);
        };
        add(a.start);
        add(a.end);
    }
    for (std::size_t i = 0; i < w.components.size(); ++i) {
        auto& cuts = d.cuts[i];
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        if (w.components[i].kind == Component::Kind::Circle && cuts.empty()) cuts.push_back(0);
    }
    check_decomposition(w, d);
    return d;
}

Homeomorphism Homeomorphism::identity(const OneManifold& w) {
    Homeomorphism h;
    h.component_map.resize(w.components.size());
    for (std::size_t i = 0; i < w.components.size(); ++i) h.component_map[i] = static_cast<int>(i);
    h.rotation.assign(w.components.size(), 0);
    h.reflect.assign(w.components.size(), false);
    return h;
}

Homeomorphism Homeomorphism::circle_rotation(const OneManifold& w, int component, int amount) {
    Homeomorphism h = identity(w);
    const Component& c = w.components.at(component);
    if (c.kind != Component::Kind::Circle)
        throw std::invalid_argument("rotation needs a circle component");
    h.rotation[component] = ((amount % c.points) + c.points) % c.points;
    return h;
}

void check_homeomorphism(const OneManifold& w, const Homeomorphism& h) {
    const std::size_t n = w.components.size();
    if (h.component_map.size() != n || h.rotation.size() != n || h.reflect.size() != n)
        throw std::invalid_argument("homeomorphism component count mismatch");
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        int j = h.component_map[i];
        if (j < 0 || j >= static_cast<int>(n) || seen[j])
            throw std::invalid_argument("component map is not a permutation");
        seen[j] = true;
        if (!(w.components[i] == w.components[j]))
            throw std::invalid_argument("components of different type or size identified");
        if (w.components[i].kind == Component::Kind::Interval && h.rotation[i] != 0)
            throw std::invalid_argument("interval components cannot rotate");
    }
}

int map_slot(const OneManifold& w, const Homeomorphism& h, int component, int slot) {
    const Component& c = w.components.at(component);
    if (c.kind == Component::Kind::Interval)
        return h.reflect[component] ? c.points - slot : slot;
    int n = c.points;
    int s = h.reflect[component] ? (n - 1 - slot) : slot;
    return ((s + h.rotation[component]) % n + n) % n;
}

int map_point(const OneManifold& w, const Homeomorphism& h, int component, int point) {
    const Component& c = w.components.at(component);
    if (c.kind == Component::Kind::Interval)
        return h.reflect[component] ? c.points + 1 - point : point;
    int n = c.points;
    int p = h.reflect[component] ? ((n - point) % n) : point;
    return ((p + h.rotation[component]) % n + n) % n;
}

Homeomorphism compose(const OneManifold& w, const Homeomorphism& h1, const Homeomorphism& h2) {
    check_homeomorphism(w, h1);
    check_homeomorphism(w, h2);
    const std::size_t n = w.components.size();
    Homeomorphism out;
    out.component_map.resize(n);
    out.rotation.assign(n, 0);
    out.reflect.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        int mid = h2.component_map[i];
        out.component_map[i] = h1.component_map[mid];
        out.reflect[i] = h2.reflect[i] != h1.reflect[mid];
        const Component& c = w.components[i];
        if (c.kind == Component::Kind::Circle) {
            // Recover the rotation from the image of slot 0 under the
            // composite map.
            int t = map_slot(w, h1, mid, map_slot(w, h2, static_cast<int>(i), 0));
            int m = c.points;
            out.rotation[i] = out.reflect[i] ? ((t - (m - 1)) % m + m) % m : t;
        }
    }
    return out;
}

Homeomorphism inverse(const OneManifold& w, const Homeomorphism& h) {
    check_homeomorphism(w, h);
    const std::size_t n = w.components.size();
    Homeomorphism out;
    out.component_map.resize(n);
    out.rotation.assign(n, 0);
    out.reflect.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        int j = h.component_map[i];
        out.component_map[j] = static_cast<int>(i);
        out.reflect[j] = h.reflect[i];
        const Component& c = w.components[i];
        if (c.kind == Component::Kind::Circle) {
            int m = c.points;
            out.rotation[j] =
                h.reflect[i] ? h.rotation[i] : ((m - h.rotation[i]) % m + m) % m;
        }
    }
    return out;
}

Decomposition apply_homeomorphism(const OneManifold& w, const Homeomorphism& h,
                                  const Decomposition& x) {
    check_homeomorphism(w, h);
    check_decomposition(w, x);
    Decomposition out;
    out.cuts.resize(x.cuts.size());
    for (std::size_t i = 0; i < x.cuts.size(); ++i) {
        auto& target = out.cuts[h.component_map[i]];
        for (int s : x.cuts[i]) target.push_back(map_slot(w, h, static_cast<int>(i), s));
        std::sort(target.begin(), target.end());
    }
    return out;
}

Arc apply_homeomorphism(const OneManifold& w, const Homeomorphism& h, const Arc& a) {
    check_arc(w, a);
    int s = map_slot(w, h, a.component, a.start);
    int t = map_slot(w, h, a.component, a.end);
    if (h.reflect[a.component]) std::swap(s, t);  // reflection reverses traversal
    return Arc{h.component_map[a.component], s, t};
}

std::vector<Decomposition> apply_homeomorphism(const OneManifold& w, const Homeomorphism& h,
                                               const std::vector<Decomposition>& chain) {
    std::vector<Decomposition> out;
    out.reserve(chain.size());
    for (const Decomposition& x : chain) out.push_back(apply_homeomorphism(w, h, x));
    return out;
}

std::pair<BlobConfig, int> apply_homeomorphism(const OneManifold& w, const Homeomorphism& h,
                                               const BlobConfig& c) {
    std::vector<Arc> mapped;
    mapped.reserve(c.arcs.size());
    for (const Arc& a : c.arcs) mapped.push_back(apply_homeomorphism(w, h, a));
    // Sort to canonical order by insertion, counting inversions for the sign.
    int sign = 1;
    for (std::size_t i = 1; i < mapped.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && canonical_arc_less(w, mapped[j], mapped[j - 1])) {
            std::swap(mapped[j], mapped[j - 1]);
            sign = -sign;
            --j;
        }
    }
    return {BlobConfig{std::move(mapped)}, sign};
}

}  // namespace blobcalc
