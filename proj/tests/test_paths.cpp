#include "doctest.h"
#include "phylo/generators.hpp"
#include "phylo/paths.hpp"
#include "phylo/reductions.hpp"

using namespace phylo;

namespace {

// s -> {p, n} -> y -> t
struct Gadget {
    Network g;
    VertexId s, p, n, y, t;
    Gadget() {
        s = g.add_vertex();
        p = g.add_vertex();
        n = g.add_vertex();
        y = g.add_vertex();
        t = g.add_vertex();
        g.add_edge(s, p);
        g.add_edge(s, n);
        g.add_edge(p, y);
        g.add_edge(n, y);
        g.add_edge(y, t);
    }
};

}  // namespace

TEST_CASE("enumerate_st_paths") {
    Network t;
    VertexId s = t.add_vertex(), l = t.add_leaf("t");
    t.add_edge(s, l);
    t.add_edge(s, t.add_leaf("u"));
    CHECK(enumerate_st_paths(t, s, l).size() == 1);
    Gadget v;
    CHECK(enumerate_st_paths(v.g, v.s, v.t).size() == 2);
    CHECK(enumerate_st_paths(v.g, v.t, v.s).empty());
    CHECK_THROWS_AS(enumerate_st_paths(v.g, v.s, v.t, 1), BudgetExceeded);
}

TEST_CASE("exists_disjoint_linkage") {
    Network g;
    VertexId a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex(), d = g.add_vertex();
    g.add_edge(a, b);
    g.add_edge(c, d);
    auto l = exists_disjoint_linkage(g, {{a, b}, {c, d}});
    REQUIRE(l);
    CHECK(is_disjoint_linkage(g, {{a, b}, {c, d}}, *l));

    // bowtie: both pairs must pass through m
    Network bow;
    VertexId s1 = bow.add_vertex(), s2 = bow.add_vertex(), m = bow.add_vertex(), t1 = bow.add_vertex(),
             t2 = bow.add_vertex();
    bow.add_edge(s1, m);
    bow.add_edge(s2, m);
    bow.add_edge(m, t1);
    bow.add_edge(m, t2);
    CHECK_FALSE(exists_disjoint_linkage(bow, {{s1, t1}, {s2, t2}}));

    auto empty = exists_disjoint_linkage(bow, {});
    REQUIRE(empty);
    CHECK(empty->paths.empty());
    CHECK_THROWS_AS(exists_disjoint_linkage(bow, {{s1, t1}}, {}, 0), BudgetExceeded);
}

TEST_CASE("solve_forall_exists_paths on hand instances") {
    // pair 1: s1 -> t1 via p or n; pair 2: s2 -> t2 either directly through
    // p's side vertex q or through n's side vertex w.
    Gadget v;
    Network& g = v.g;
    VertexId s2 = g.add_vertex(), t2 = g.add_vertex(), q = g.add_vertex(), w = g.add_vertex();
    g.add_edge(s2, q);
    g.add_edge(s2, w);
    g.add_edge(q, t2);
    g.add_edge(w, t2);
    PathsInstance yes{g, {v.s, s2}, {v.t, t2}, 1};
    auto r = solve_forall_exists_paths(yes);
    CHECK(r.yes);
    CHECK(r.universal_choices == 2);

    // now the only s2 -> t2 route runs through n
    Gadget b;
    VertexId bs = b.g.add_vertex(), bt = b.g.add_vertex();
    b.g.add_edge(bs, b.n);
    b.g.add_edge(b.n, bt);
    PathsInstance no{b.g, {b.s, bs}, {b.t, bt}, 1};
    auto rn = solve_forall_exists_paths(no);
    CHECK_FALSE(rn.yes);
    REQUIRE(rn.counterexample.size() == 1);
    CHECK(rn.counterexample[0] == Path{b.s, b.n, b.y, b.t});
}

TEST_CASE("qsat-derived instances agree with the formula") {
    Rng rng(41);
    for (int i = 0; i < 20; ++i) {
        QBF3 f = random_forall_exists(rng, 3 + i % 2, 1, 1 + i % 2);
        auto red = reduce_qsat_to_paths(f);
        CHECK(solve_forall_exists_paths(red.inst).yes == solve_forall_exists(f).yes);
    }
}
