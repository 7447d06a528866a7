#include "blobcalc/hochschild.hpp"

namespace blobcalc {

BarSlice::BarSlice(const CategoryPresentation& c, Index degree) : degree_(degree) {
    // Object cycles (o_0,...,o_k) in lex order, then step homs in mixed
    // radix with step 0 most significant.
    std::vector<int> objects(degree + 1, 0);
    auto emit = [&]() {
        std::vector<Index> dims(degree + 1);
        for (Index s = 0; s <= degree; ++s) {
            int src = objects[s];
            int dst = objects[(s + 1) % (degree + 1)];
            dims[s] = c.hom_dim(src, dst);
            if (dims[s] == 0) return;
        }
        std::vector<Index> homs(degree + 1, 0);
        while (true) {
            lookup_.emplace(std::make_pair(objects, homs), static_cast<Index>(words_.size()));
            words_.push_back({objects, homs});
            std::size_t i = homs.size();
            while (i > 0) {
                --i;
                if (++homs[i] < dims[i]) break;
                homs[i] = 0;
                if (i == 0) return;
            }
        }
    };
    auto rec = [&](auto&& self, Index pos) -> void {
        if (pos == degree + 1) {
            emit();
            return;
        }
        for (int o = 0; o < c.object_count(); ++o) {
            objects[pos] = o;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
}

std::optional<Index> BarSlice::index_of(const std::vector<int>& objects,
                                        const std::vector<Index>& homs) const {
    auto it = lookup_.find(std::make_pair(objects, homs));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::string BarSlice::label(const CategoryPresentation& c, Index i) const {
    const CyclicWord& w = words_.at(i);
    std::string out;
    for (Index s = 0; s <= degree_; ++s) {
        if (s) out += "⊗";
        out += c.hom_basis(w.objects[s], w.objects[(s + 1) % (degree_ + 1)])[w.homs[s]];
    }
    return out;
}

SparseMatrix bar_differential(const CategoryPresentation& c, Index k) {
    if (k < 1) throw std::invalid_argument("bar differential needs degree >= 1");
    BarSlice src(c, k);
    BarSlice dst(c, k - 1);
    SparseMatrix out(c.field(), dst.dimension(), src.dimension());
    const Scalar one = Scalar::one(c.field());
    for (Index i = 0; i < src.dimension(); ++i) {
        const BarSlice::CyclicWord& w = src.word(i);
        auto cyc_obj = [&](Index s) { return w.objects[s % (k + 1)]; };
        // Merge steps i and i+1 for i < k.
        for (Index s = 0; s < k; ++s) {
            Scalar sign = (s % 2 == 0) ? one : -one;
            const SparseVec& prod = c.compose_pair(cyc_obj(s), cyc_obj(s + 1), cyc_obj(s + 2),
                                                   w.homs[s], w.homs[s + 1]);
            for (const auto& [m, v] : prod) {
                std::vector<int> objects;
                std::vector<Index> homs;
                for (Index t = 0; t <= k; ++t)
                    if (t != s + 1) objects.push_back(w.objects[t]);
                for (Index t = 0; t < k + 1; ++t) {
                    if (t == s) {
                        homs.push_back(m);
                        ++t;  // skip the merged step
                    } else {
                        homs.push_back(w.homs[t]);
                    }
                }
                auto idx = dst.index_of(objects, homs);
                if (!idx) throw std::logic_error("bar target word missing");
                out.add_to(*idx, i, sign * v);
            }
        }
        // Wrap-around term: (a_k a_0) with sign (-1)^k, cycle (o_k, o_1, ..., o_{k-1}).
        {
            Scalar sign = (k % 2 == 0) ? one : -one;
            const SparseVec& prod =
                c.compose_pair(w.objects[k], w.objects[0], w.objects[1], w.homs[k], w.homs[0]);
            for (const auto& [m, v] : prod) {
                std::vector<int> objects{w.objects[k]};
                std::vector<Index> homs{m};
                for (Index t = 1; t < k; ++t) {
                    objects.push_back(w.objects[t]);
                    homs.push_back(w.homs[t]);
                }
                auto idx = dst.index_of(objects, homs);
                if (!idx) throw std::logic_error("bar wrap target word missing");
                out.add_to(*idx, i, sign * v);
            }
        }
    }
    return out;
}

ChainComplex bar_complex(const CategoryPresentation& c, Index top_degree) {
    std::vector<Index> dims(top_degree + 1);
    std::vector<std::vector<std::string>> labels(top_degree + 1);
    for (Index k = 0; k <= top_degree; ++k) {
        BarSlice slice(c, k);
        dims[k] = slice.dimension();
        labels[k].reserve(dims[k]);
        for (Index i = 0; i < dims[k]; ++i) labels[k].push_back(slice.label(c, i));
    }
    std::vector<SparseMatrix> diffs(top_degree + 1);
    for (Index k = 1; k <= top_degree; ++k) diffs[k] = bar_differential(c, k);
    return ChainComplex(c.field(), dims, std::move(diffs), std::move(labels));
}

std::vector<Index> hochschild_dims(const CategoryPresentation& c, Index max_degree) {
    ChainComplex complex = bar_complex(c, max_degree + 1);
    std::vector<Index> h = complex.homology_dimensions();
    h.resize(max_degree + 1);
    return h;
}

}  // namespace blobcalc
