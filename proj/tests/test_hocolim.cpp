#include <doctest.h>

#include "blobcalc/hochschild.hpp"
#include "blobcalc/hocolim.hpp"

using namespace blobcalc;

namespace {

OneManifold circle(int n) { return {{{Component::Kind::Circle, n}}}; }
OneManifold interval(int n) { return {{{Component::Kind::Interval, n}}}; }

}  // namespace

TEST_CASE("ordinary colimit dimensions") {
    SUBCASE("intervals collapse to psi of the cut-free decomposition") {
        for (const char* name : {"ground", "trunc-poly:2", "matrix:2"}) {
            CategoryPresentation c = builtin_presentation(name);
            for (int n = 1; n <= 3; ++n)
                CHECK(ordinary_colimit(interval(n), c).dimension == c.hom_dim(0, 0));
        }
    }
    SUBCASE("circles give the commutator quotient") {
        CHECK(ordinary_colimit(circle(3), builtin_presentation("matrix:2")).dimension == 1);
        CHECK(ordinary_colimit(circle(3), builtin_presentation("group:Z/2")).dimension == 2);
        for (int n = 2; n <= 4; ++n)
            CHECK(ordinary_colimit(circle(n), builtin_presentation("ground")).dimension == 1);
    }
    SUBCASE("disjoint unions multiply") {
        CategoryPresentation c = builtin_presentation("trunc-poly:2");
        OneManifold both{{{Component::Kind::Interval, 2}, {Component::Kind::Circle, 2}}};
        CHECK(ordinary_colimit(both, c).dimension ==
              ordinary_colimit(interval(2), c).dimension *
                  ordinary_colimit(circle(2), c).dimension);
    }
}

TEST_CASE("projections commute with refinement maps") {
    for (const char* name : {"trunc-poly:2", "matrix:2"}) {
        CategoryPresentation c = builtin_presentation(name);
        OneManifold w = circle(3);
        ColimitResult col = ordinary_colimit(w, c);
        for (Index x = 0; x < col.poset->size(); ++x)
            for (Index y = 0; y < col.poset->size(); ++y) {
                if (x == y || !col.poset->leq(x, y)) continue;
                SparseMatrix g = refinement_map(col.psi[x], col.psi[y]);
                CHECK(col.projections[y].multiply(g) == col.projections[x]);
            }
    }
}

TEST_CASE("hocolim homology") {
    SUBCASE("constant coefficients on a circle have the homology of a point") {
        CategoryPresentation g = builtin_presentation("ground");
        for (int n = 3; n <= 4; ++n) {
            auto h = hocolim_complex(circle(n), g, 3).complex.homology_dimensions();
            CHECK(h[0] == 1);
            CHECK(h[1] == 0);
            CHECK(h[2] == 0);
        }
    }
    SUBCASE("intervals have a terminal object, so only H_0 survives") {
        for (const char* name : {"ground", "trunc-poly:2", "group:Z/2", "matrix:2"}) {
            CategoryPresentation c = builtin_presentation(name);
            auto h = hocolim_complex(interval(3), c, 3).complex.homology_dimensions();
            CHECK(h[0] == c.hom_dim(0, 0));
            CHECK(h[1] == 0);
            CHECK(h[2] == 0);
        }
    }
    SUBCASE("circle:2 with trunc-poly:2 has H_0 = 2") {
        auto h = hocolim_complex(circle(2), builtin_presentation("trunc-poly:2"), 2)
                     .complex.homology_dimensions();
        CHECK(h[0] == 2);
    }
}

TEST_CASE("H_0 of the homotopy colimit is the ordinary colimit") {
    for (const char* name : {"ground", "trunc-poly:2", "group:Z/2", "matrix:2"}) {
        CategoryPresentation c = builtin_presentation(name);
        for (const OneManifold& w : {circle(2), circle(3), interval(2),
                                     OneManifold{{{Component::Kind::Interval, 2},
                                                  {Component::Kind::Circle, 2}}}}) {
            CHECK(hocolim_complex(w, c, 1).complex.homology_dimensions()[0] ==
                  ordinary_colimit(w, c).dimension);
        }
    }
}

TEST_CASE("model comparison") {
    ModelComparison cmp = compare_models(circle(3), builtin_presentation("trunc-poly:2"), 1);
    CHECK(cmp.equal);
    CHECK(cmp.blob_dims == std::vector<Index>{2, 1});
    ModelComparison g = compare_models(circle(3), builtin_presentation("ground"), 1);
    CHECK(g.equal);
    CHECK(g.blob_dims == std::vector<Index>{1, 0});
}

TEST_CASE("stabilization sweeps") {
    SUBCASE("ground converges immediately") {
        StabilizationSweep s = stabilization_sweep(2, 4, builtin_presentation("ground"), 2);
        CHECK(s.converged == std::vector<bool>{true, true});
        CHECK(s.stabilized == std::vector<Index>{1, 0});
        CHECK(s.oracle == std::vector<Index>{1, 0});
        CHECK(s.oracle_match);
    }
    SUBCASE("trunc-poly:2 degree-0 column is constant at 2") {
        StabilizationSweep s = stabilization_sweep(2, 4, builtin_presentation("trunc-poly:2"), 2);
        for (const auto& row : s.dims) CHECK(row[0] == 2);
        CHECK(s.oracle == std::vector<Index>{2, 1});
    }
    SUBCASE("matrix:2 degree-0 column is constant at 1") {
        StabilizationSweep s =
            stabilization_sweep(2, 4, builtin_presentation("matrix:2"), 2, SweepModel::Blob);
        for (const auto& row : s.dims) CHECK(row[0] == 1);
    }
}

TEST_CASE("ambient estimates match the built dimensions for hocolim") {
    CategoryPresentation c = builtin_presentation("trunc-poly:2");
    OneManifold w = circle(3);
    auto est = hocolim_ambient_estimate(w, c, 2);
    HocolimComplex hc = hocolim_complex(w, c, 2);
    for (Index k = 0; k <= 2; ++k) CHECK(est[k] == hc.complex.dimension(k));
}
