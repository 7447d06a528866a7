#include <doctest.h>

#include "blobcalc/field_space.hpp"

using namespace blobcalc;

namespace {

const FieldSpec Q;

OneManifold circle(int n) { return {{{Component::Kind::Circle, n}}}; }
OneManifold interval(int n) { return {{{Component::Kind::Interval, n}}}; }

CategoryPresentation arrow_category() {
    std::vector<std::vector<std::vector<std::string>>> hom = {
        {{"1a"}, {"f"}},
        {{}, {"1b"}},
    };
    std::vector<ComposeEntry> compose = {
        {0, 0, 0, 0, 0, 0, Scalar(1, Q)},
        {0, 0, 1, 0, 0, 0, Scalar(1, Q)},
        {0, 1, 1, 0, 0, 0, Scalar(1, Q)},
        {1, 1, 1, 0, 0, 0, Scalar(1, Q)},
    };
    return CategoryPresentation("arrow", Q, {"a", "b"}, std::move(hom), compose,
                                {{{0, Scalar(1, Q)}}, {{0, Scalar(1, Q)}}});
}

}  // namespace

TEST_CASE("field space dimensions") {
    for (const char* name : {"trunc-poly:2", "matrix:2"}) {
        CategoryPresentation c = builtin_presentation(name);
        Index d = c.hom_dim(0, 0);
        Index expect = 1;
        for (int n = 1; n <= 4; ++n) {
            expect *= d;
            CHECK(FieldSpaceIndex(circle(n), c).dimension() == expect);
        }
    }
    CategoryPresentation g = builtin_presentation("ground");
    CHECK(FieldSpaceIndex(circle(3), g).dimension() == 1);
    CHECK(FieldSpaceIndex(interval(3), g).dimension() == 1);
    OneManifold both{{{Component::Kind::Interval, 2}, {Component::Kind::Circle, 2}}};
    CHECK(FieldSpaceIndex(both, g).dimension() == 1);

    // mixed sectors need a map b -> a, so only the two constant labelings
    CHECK(FieldSpaceIndex(circle(2), arrow_category()).dimension() == 2);
}

TEST_CASE("fixed interval boundaries filter the enumeration") {
    CategoryPresentation c = arrow_category();
    // interval:1 with boundary (a, b): only the basis element labeled f
    BoundaryCondition bc;
    bc.fixed[0] = {0, 1};
    CHECK(FieldSpaceIndex(interval(1), c, bc).dimension() == 1);
    BoundaryCondition none;
    CHECK(FieldSpaceIndex(interval(1), c, none).dimension() == 3);  // 1a, f, 1b
    BoundaryCondition ba;
    ba.fixed[0] = {1, 0};
    CHECK(FieldSpaceIndex(interval(1), c, ba).dimension() == 0);  // Hom(b,a) = 0
}

TEST_CASE("psi dimensions") {
    CategoryPresentation c = builtin_presentation("trunc-poly:2");
    SUBCASE("one cut on a circle gives d") {
        CHECK(PsiValue(circle(3), c, Decomposition{{{1}}}).dimension() == 2);
    }
    SUBCASE("uncut interval gives d") {
        CHECK(PsiValue(interval(3), c, Decomposition{{{}}}).dimension() == 2);
    }
    SUBCASE("ground always gives 1") {
        CategoryPresentation g = builtin_presentation("ground");
        for (const auto& x : enumerate_decompositions(circle(3)))
            CHECK(PsiValue(circle(3), g, x).dimension() == 1);
    }
    SUBCASE("d^{|S|} for one-object coefficients on a circle") {
        for (const auto& x : enumerate_decompositions(circle(4))) {
            Index expect = 1;
            for (std::size_t i = 0; i < x.cuts[0].size(); ++i) expect *= 2;
            CHECK(PsiValue(circle(4), c, x).dimension() == expect);
        }
    }
    SUBCASE("multiplicative across disjoint unions") {
        OneManifold both{{{Component::Kind::Interval, 2}, {Component::Kind::Circle, 2}}};
        for (const auto& x : enumerate_decompositions(both)) {
            PsiValue whole(both, c, x);
            PsiValue left(interval(2), c, Decomposition{{x.cuts[0]}});
            PsiValue right(circle(2), c, Decomposition{{x.cuts[1]}});
            CHECK(whole.dimension() == left.dimension() * right.dimension());
        }
    }
}

TEST_CASE("refinement maps") {
    CategoryPresentation c = builtin_presentation("trunc-poly:2");
    OneManifold w = circle(3);
    SUBCASE("x = y gives the identity") {
        PsiValue x(w, c, Decomposition{{{0, 1}}});
        CHECK(refinement_map(x, x) == SparseMatrix::identity(Q, x.dimension()));
    }
    SUBCASE("merging two pieces is the multiplication matrix") {
        PsiValue x(w, c, Decomposition{{{0, 1}}});
        PsiValue y(w, c, Decomposition{{{0}}});
        SparseMatrix g = refinement_map(x, y);
        CHECK(g.rows() == 2);
        CHECK(g.cols() == 4);
        CHECK(rank(g) == 2);
        // reading from slot 0: the (0,1) piece then the (1,0) piece
        // product of two x basis elements: x*x = 0
        ComponentLabeling e{{0, 0}, {1, 1}};
        PsiValue xr(w, c, Decomposition{{{0, 1}}});
        auto li = xr.local_index(0, e);
        REQUIRE(li);
        CHECK(g.column(*li).empty());
    }
    SUBCASE("functoriality along all chains") {
        for (const OneManifold& m : {circle(3), interval(3)}) {
            DecompositionPoset p(m);
            std::vector<PsiValue> psi;
            for (Index i = 0; i < p.size(); ++i) psi.emplace_back(m, c, p.object(i));
            for (const auto& ch : p.chains(2)) {
                if (ch.size() != 3) continue;
                SparseMatrix direct = refinement_map(psi[ch[0]], psi[ch[2]]);
                SparseMatrix composed = refinement_map(psi[ch[1]], psi[ch[2]])
                                            .multiply(refinement_map(psi[ch[0]], psi[ch[1]]));
                CHECK(direct == composed);
            }
        }
    }
    SUBCASE("not a refinement is rejected") {
        PsiValue x(w, c, Decomposition{{{0}}});
        PsiValue y(w, c, Decomposition{{{1}}});
        CHECK_THROWS_AS(refinement_map(x, y), std::invalid_argument);
    }
}

TEST_CASE("evaluate on an arc") {
    SUBCASE("a single basis element over one point evaluates to itself") {
        CategoryPresentation c = builtin_presentation("trunc-poly:2");
        FieldContext ctx(circle(3), c);
        // basis element with morphism x at every point
        Index all_x = ctx.space().dimension() - 1;
        auto evals = ctx.evaluate_on_arc({{all_x, Scalar(1, Q)}}, Arc{0, 0, 1});
        REQUIRE(evals.size() == 1);
        CHECK(evals[0].word_length == 1);
        CHECK(evals[0].evaluation == SparseVec{{1, Scalar(1, Q)}});
    }
    SUBCASE("x.x composes to zero over a two-point arc") {
        CategoryPresentation c = builtin_presentation("trunc-poly:2");
        FieldContext ctx(circle(3), c);
        Index all_x = ctx.space().dimension() - 1;
        auto evals = ctx.evaluate_on_arc({{all_x, Scalar(1, Q)}}, Arc{0, 0, 2});
        REQUIRE(evals.size() == 1);
        CHECK(evals[0].evaluation.empty());
    }
    SUBCASE("ground evaluates to the scalar 1") {
        CategoryPresentation g = builtin_presentation("ground");
        FieldContext ctx(circle(3), g);
        auto evals = ctx.evaluate_on_arc({{0, Scalar(1, Q)}}, Arc{0, 0, 0});
        REQUIRE(evals.size() == 1);
        CHECK(evals[0].evaluation == SparseVec{{0, Scalar(1, Q)}});
    }
}

TEST_CASE("null fields on a nested arc stay null on the outer arc") {
    for (const char* name : {"trunc-poly:2", "group:Z/2"}) {
        CategoryPresentation c = builtin_presentation(name);
        for (const OneManifold& w : {circle(3), interval(3)}) {
            FieldContext ctx(w, c);
            for (const Arc& inner : enumerate_arcs(w)) {
                if (covered_point_count(w, inner) < 2) continue;
                const SparseMatrix& constraint = ctx.arc_constraint(inner);
                for (const Arc& outer : enumerate_arcs(w)) {
                    if (outer == inner || !arc_contains(w, outer, inner)) continue;
                    for (Index col = 0; col < constraint.cols(); ++col)
                        for (const auto& e : ctx.evaluate_on_arc(constraint.column(col), outer))
                            CHECK(e.evaluation.empty());
                }
            }
        }
    }
}
