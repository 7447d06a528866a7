#include "blobcalc/category.hpp"

#include <algorithm>
#include <stdexcept>

namespace blobcalc {

namespace {

SparseVec add_scaled(const SparseVec& dest, const Scalar& coeff, const SparseVec& src) {
    SparseVec out;
    out.reserve(dest.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dest.size() || j < src.size()) {
        if (j == src.size() || (i < dest.size() && dest[i].first < src[j].first)) {
            out.push_back(dest[i++]);
        } else if (i == dest.size() || src[j].first < dest[i].first) {
            Scalar v = coeff * src[j].second;
            if (!v.is_zero()) out.emplace_back(src[j].first, std::move(v));
            ++j;
        } else {
            Scalar v = dest[i].second + coeff * src[j].second;
            if (!v.is_zero()) out.emplace_back(dest[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

std::string vec_to_string(const CategoryPresentation& c, int src, int dst, const SparseVec& v) {
    if (v.empty()) return "0";
    std::string out;
    for (const auto& [i, s] : v) {
        if (!out.empty()) out += " + ";
        out += s.to_string() + "*" + c.hom_basis(src, dst).at(i);
    }
    return out;
}

}  // namespace

CategoryPresentation::CategoryPresentation(std::string name, FieldSpec field,
                                           std::vector<std::string> objects,
                                           std::vector<std::vector<std::vector<std::string>>> hom_names,
                                           const std::vector<ComposeEntry>& compose,
                                           std::vector<SparseVec> identities)
    : name_(std::move(name)), field_(field), objects_(std::move(objects)) {
    const int n = static_cast<int>(objects_.size());
    if (n == 0) throw std::invalid_argument("presentation needs at least one object");
    if (hom_names.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("hom table must have one row per object");
    hom_names_.resize(static_cast<std::size_t>(n) * n);
    for (int s = 0; s < n; ++s) {
        if (hom_names[s].size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("hom table must be n x n");
        for (int d = 0; d < n; ++d) hom_names_[pair_slot(s, d)] = std::move(hom_names[s][d]);
    }
    compose_.resize(static_cast<std::size_t>(n) * n * n);
    for (int s = 0; s < n; ++s)
        for (int m = 0; m < n; ++m)
            for (int d = 0; d < n; ++d) {
                std::size_t slot = (static_cast<std::size_t>(s) * n + m) * n + d;
                compose_[slot].resize(static_cast<std::size_t>(hom_dim(s, m)) * hom_dim(m, d));
            }
    for (const auto& e : compose) {
        if (e.src < 0 || e.src >= n || e.mid < 0 || e.mid >= n || e.dst < 0 || e.dst >= n)
            throw std::invalid_argument("compose entry object index out of range");
        if (e.a >= hom_dim(e.src, e.mid) || e.b >= hom_dim(e.mid, e.dst) ||
            e.k >= hom_dim(e.src, e.dst))
            throw std::invalid_argument("compose entry basis index out of range");
        std::size_t slot = (static_cast<std::size_t>(e.src) * n + e.mid) * n + e.dst;
        auto& vec = compose_[slot][static_cast<std::size_t>(e.a) * hom_dim(e.mid, e.dst) + e.b];
        auto it = std::lower_bound(vec.begin(), vec.end(), e.k,
                                   [](const auto& p, Index k) { return p.first < k; });
        if (it != vec.end() && it->first == e.k)
            throw std::invalid_argument("duplicate compose entry");
        if (!e.value.is_zero()) vec.insert(it, {e.k, e.value});
    }
    if (identities.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("one identity vector per object expected");
    identities_ = std::move(identities);
    for (int o = 0; o < n; ++o)
        for (const auto& [i, v] : identities_[o])
            if (i >= hom_dim(o, o))
                throw std::invalid_argument("identity coefficient index out of range");
}

std::size_t CategoryPresentation::pair_slot(int src, int dst) const {
    return static_cast<std::size_t>(src) * objects_.size() + dst;
}

std::optional<int> CategoryPresentation::object_index(const std::string& name) const {
    for (int i = 0; i < object_count(); ++i)
        if (objects_[i] == name) return i;
    return std::nullopt;
}

Index CategoryPresentation::hom_dim(int src, int dst) const {
    return static_cast<Index>(hom_names_.at(pair_slot(src, dst)).size());
}

const std::vector<std::string>& CategoryPresentation::hom_basis(int src, int dst) const {
    return hom_names_.at(pair_slot(src, dst));
}

Index CategoryPresentation::total_dim() const {
    Index d = 0;
    for (const auto& names : hom_names_) d += static_cast<Index>(names.size());
    return d;
}

const SparseVec& CategoryPresentation::compose_pair(int src, int mid, int dst, Index a,
                                                    Index b) const {
    const int n = object_count();
    std::size_t slot = (static_cast<std::size_t>(src) * n + mid) * n + dst;
    return compose_.at(slot).at(static_cast<std::size_t>(a) * hom_dim(mid, dst) + b);
}

SparseVec CategoryPresentation::compose_vec(int src, int mid, int dst, const SparseVec& u,
                                            const SparseVec& v) const {
    SparseVec out;
    for (const auto& [a, ca] : u)
        for (const auto& [b, cb] : v) out = add_scaled(out, ca * cb, compose_pair(src, mid, dst, a, b));
    return out;
}

bool CategoryPresentation::is_commutative() const {
    if (object_count() != 1) return false;
    Index d = hom_dim(0, 0);
    for (Index a = 0; a < d; ++a)
        for (Index b = a + 1; b < d; ++b)
            if (compose_pair(0, 0, 0, a, b) != compose_pair(0, 0, 0, b, a)) return false;
    return true;
}

std::vector<std::string> validate(const CategoryPresentation& c) {
    std::vector<std::string> issues;
    const int n = c.object_count();
    auto report = [&](std::string msg) {
        if (issues.size() < 10) issues.push_back(std::move(msg));
    };
    // Associativity on all composable basis triples.
    for (int o0 = 0; o0 < n; ++o0)
        for (int o1 = 0; o1 < n; ++o1)
            for (int o2 = 0; o2 < n; ++o2)
                for (int o3 = 0; o3 < n; ++o3)
                    for (Index a = 0; a < c.hom_dim(o0, o1); ++a)
                        for (Index b = 0; b < c.hom_dim(o1, o2); ++b)
                            for (Index d = 0; d < c.hom_dim(o2, o3); ++d) {
                                SparseVec left = c.compose_vec(
                                    o0, o2, o3, c.compose_pair(o0, o1, o2, a, b), {{d, Scalar::one(c.field())}});
                                SparseVec right = c.compose_vec(
                                    o0, o1, o3, {{a, Scalar::one(c.field())}}, c.compose_pair(o1, o2, o3, b, d));
                                if (left != right)
                                    report("associativity fails at objects (" + c.object_name(o0) +
                                           "," + c.object_name(o1) + "," + c.object_name(o2) + "," +
                                           c.object_name(o3) + ") basis (" +
                                           c.hom_basis(o0, o1)[a] + "," + c.hom_basis(o1, o2)[b] +
                                           "," + c.hom_basis(o2, o3)[d] + "): (ab)c = " +
                                           vec_to_string(c, o0, o3, left) + " but a(bc) = " +
                                           vec_to_string(c, o0, o3, right));
                            }
    // Identity laws.
    for (int o = 0; o < n; ++o)
        for (int d = 0; d < n; ++d)
            for (Index f = 0; f < c.hom_dim(o, d); ++f) {
                SparseVec e{{f, Scalar::one(c.field())}};
                SparseVec left = c.compose_vec(o, o, d, c.identity_vector(o), e);
                if (left != e)
                    report("left identity fails: id_" + c.object_name(o) + " * " +
                           c.hom_basis(o, d)[f] + " = " + vec_to_string(c, o, d, left));
                SparseVec right = c.compose_vec(o, d, d, e, c.identity_vector(d));
                if (right != e)
                    report("right identity fails: " + c.hom_basis(o, d)[f] + " * id_" +
                           c.object_name(d) + " = " + vec_to_string(c, o, d, right));
            }
    return issues;
}

namespace {

CategoryPresentation one_object_algebra(const std::string& name, FieldSpec field,
                                        std::vector<std::string> basis,
                                        const std::vector<std::tuple<Index, Index, Index, long>>& table,
                                        Index unit_index) {
    std::vector<ComposeEntry> compose;
    for (const auto& [a, b, k, v] : table)
        compose.push_back({0, 0, 0, a, b, k, Scalar(v, field)});
    return CategoryPresentation(name, field, {"*"}, {{std::move(basis)}}, compose,
                                {{{unit_index, Scalar::one(field)}}});
}

}  // namespace

CategoryPresentation builtin_presentation(const std::string& name) {
    std::string base = name;
    FieldSpec field;
    if (auto at = name.find('@'); at != std::string::npos) {
        base = name.substr(0, at);
        std::string suffix = name.substr(at + 1);
        if (suffix.size() < 2 || suffix[0] != 'F')
            throw std::invalid_argument("unknown field suffix '" + suffix + "'");
        field = FieldSpec(std::stoul(suffix.substr(1)));
    }
    if (base == "ground")
        return one_object_algebra(name, field, {"1"}, {{0, 0, 0, 1}}, 0);
    if (base.rfind("trunc-poly:", 0) == 0) {
        int k = std::stoi(base.substr(11));
        if (k < 1) throw std::invalid_argument("trunc-poly needs k >= 1");
        std::vector<std::string> basis;
        for (int i = 0; i < k; ++i)
            basis.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
        std::vector<std::tuple<Index, Index, Index, long>> table;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i + j < k)
                    table.push_back({static_cast<Index>(i), static_cast<Index>(j),
                                     static_cast<Index>(i + j), 1});
        return one_object_algebra(name, field, std::move(basis), table, 0);
    }
    if (base.rfind("group:Z/", 0) == 0) {
        int m = std::stoi(base.substr(8));
        if (m < 1) throw std::invalid_argument("group:Z/n needs n >= 1");
        std::vector<std::string> basis;
        for (int i = 0; i < m; ++i) basis.push_back("g^" + std::to_string(i));
        std::vector<std::tuple<Index, Index, Index, long>> table;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                table.push_back({static_cast<Index>(i), static_cast<Index>(j),
                                 static_cast<Index>((i + j) % m), 1});
        return one_object_algebra(name, field, std::move(basis), table, 0);
    }
    if (base.rfind("matrix:", 0) == 0) {
        int m = std::stoi(base.substr(7));
        if (m < 1) throw std::invalid_argument("matrix:n needs n >= 1");
        std::vector<std::string> basis;
        for (int r = 1; r <= m; ++r)
            for (int s = 1; s <= m; ++s)
                basis.push_back("E" + std::to_string(r) + std::to_string(s));
        auto idx = [m](int r, int s) { return static_cast<Index>((r - 1) * m + (s - 1)); };
        std::vector<std::tuple<Index, Index, Index, long>> table;
        for (int r = 1; r <= m; ++r)
            for (int s = 1; s <= m; ++s)
                for (int t = 1; t <= m; ++t)
                    table.push_back({idx(r, s), idx(s, t), idx(r, t), 1});
        // Unit = sum of diagonal matrix units, assembled by hand below.
        std::vector<ComposeEntry> compose;
        for (const auto& [a, b, k, v] : table) compose.push_back({0, 0, 0, a, b, k, Scalar(v, field)});
        SparseVec unit;
        for (int r = 1; r <= m; ++r) unit.emplace_back(idx(r, r), Scalar::one(field));
        std::sort(unit.begin(), unit.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return CategoryPresentation(name, field, {"*"}, {{std::move(basis)}}, compose, {unit});
    }
    throw std::invalid_argument("unknown builtin coefficient '" + name + "'");
}

SparseMatrix composition_map(const CategoryPresentation& c, const std::vector<int>& object_path) {
    if (object_path.empty()) throw std::invalid_argument("empty object path");
    for (int o : object_path)
        if (o < 0 || o >= c.object_count()) throw std::invalid_argument("object index out of range");
    const std::size_t m = object_path.size() - 1;
    int o0 = object_path.front();
    if (m == 0) {
        SparseMatrix out(c.field(), c.hom_dim(o0, o0), 1);
        SparseColumn col;
        for (const auto& [i, v] : c.identity_vector(o0)) col.emplace_back(i, v);
        out.set_column(0, std::move(col));
        return out;
    }
    SparseMatrix acc = SparseMatrix::identity(c.field(), c.hom_dim(o0, object_path[1]));
    for (std::size_t step = 2; step <= m; ++step) {
        int prev = object_path[step - 1];
        int next = object_path[step];
        Index step_dim = c.hom_dim(prev, next);
        SparseMatrix grown(c.field(), c.hom_dim(o0, next), acc.cols() * step_dim);
        for (Index w = 0; w < acc.cols(); ++w) {
            for (Index b = 0; b < step_dim; ++b) {
                SparseVec res;
                for (const auto& [f, coef] : acc.column(w))
                    res = add_scaled(res, coef, c.compose_pair(o0, prev, next, f, b));
                SparseColumn col;
                for (const auto& [i, v] : res) col.emplace_back(i, v);
                grown.set_column(w * step_dim + b, std::move(col));
            }
        }
        acc = std::move(grown);
    }
    return acc;
}

NullSubspace null_subspace(const CategoryPresentation& c, const std::vector<int>& object_path) {
    if (object_path.size() < 2) throw std::invalid_argument("null_subspace needs word length >= 1");
    return NullSubspace{object_path.front(), object_path.back(),
                        static_cast<Index>(object_path.size() - 1),
                        kernel_basis(composition_map(c, object_path))};
}

Index commutator_quotient_dim(const CategoryPresentation& c) {
    if (c.object_count() != 1)
        throw std::invalid_argument("commutator quotient requires a one-object presentation");
    Index d = c.hom_dim(0, 0);
    SparseMatrix span(c.field(), d, d * d);
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) {
            SparseVec ab = c.compose_pair(0, 0, 0, a, b);
            SparseVec comm = add_scaled(ab, -Scalar::one(c.field()), c.compose_pair(0, 0, 0, b, a));
            SparseColumn col;
            for (const auto& [i, v] : comm) col.emplace_back(i, v);
            span.set_column(a * d + b, std::move(col));
        }
    return quotient_dimension(d, span);
}

MorphismWordSpace::MorphismWordSpace(const CategoryPresentation& c, int src, int dst, Index length)
    : src_(src), dst_(dst), length_(length) {
    if (length == 0) {
        if (src == dst) {
            words_.push_back({{src}, {}});
            lookup_.emplace(std::make_pair(std::vector<int>{src}, std::vector<Index>{}), 0);
        }
        return;
    }
    // Depth-first over intermediate objects, then homs, keeping lex order.
    std::vector<int> objects{src};
    std::vector<Index> homs;
    auto emit = [&]() {
        lookup_.emplace(std::make_pair(objects, homs), static_cast<Index>(words_.size()));
        words_.push_back({objects, homs});
    };
    auto rec = [&](auto&& self, Index step) -> void {
        if (step == length) {
            emit();
            return;
        }
        int from = objects.back();
        int last = (step == length - 1) ? dst : -1;
        for (int to = 0; to < c.object_count(); ++to) {
            if (last >= 0 && to != last) continue;
            Index d = c.hom_dim(from, to);
            if (d == 0) continue;
            objects.push_back(to);
            for (Index h = 0; h < d; ++h) {
                homs.push_back(h);
                self(self, step + 1);
                homs.pop_back();
            }
            objects.pop_back();
        }
    };
    // Enumerate hom digits outermost-first so the first step varies slowest.
    // The recursion above interleaves (object, hom) per step, which already
    // orders words lexicographically by (objects, homs) per step.
    rec(rec, 0);
}

std::optional<Index> MorphismWordSpace::index_of(const std::vector<int>& objects,
                                                 const std::vector<Index>& homs) const {
    auto it = lookup_.find(std::make_pair(objects, homs));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

SparseMatrix MorphismWordSpace::evaluation_matrix(const CategoryPresentation& c) const {
    SparseMatrix out(c.field(), c.hom_dim(src_, dst_), dimension());
    for (Index i = 0; i < dimension(); ++i) {
        const Word& w = words_[i];
        SparseVec acc;
        if (length_ == 0) {
            acc = c.identity_vector(src_);
        } else {
            acc = {{w.homs[0], Scalar::one(c.field())}};
            for (Index s = 1; s < length_; ++s)
                acc = c.compose_vec(src_, w.objects[s], w.objects[s + 1], acc,
                                    {{w.homs[s], Scalar::one(c.field())}});
        }
        SparseColumn col;
        for (const auto& [k, v] : acc) col.emplace_back(k, v);
        out.set_column(i, std::move(col));
    }
    return out;
}

}  // namespace blobcalc
