#include <algorithm>
#include <functional>

#include "doctest.h"
#include "phylo/classes.hpp"
#include "phylo/core.hpp"
#include "phylo/generators.hpp"
#include "phylo/shell.hpp"

using namespace phylo;

namespace {

const char* kDiamond = "((a,(c)#H1),(#H1,b));";

// v is visible iff removing it cuts some leaf off the root.
std::vector<bool> visible_by_deletion(const Network& n) {
    std::vector<bool> out(n.size());
    VertexId root = n.root();
    for (VertexId v = 0; v < n.size(); ++v) {
        if (v == root) {
            out[v] = true;
            continue;
        }
        std::vector<bool> seen(n.size());
        std::function<void(VertexId)> go = [&](VertexId u) {
            if (u == v || seen[u]) return;
            seen[u] = true;
            for (VertexId c : n.children(u)) go(c);
        };
        go(root);
        for (VertexId l : n.leaves())
            if (!seen[l]) out[v] = true;
    }
    return out;
}

bool valid_labeling(const Network& n, const std::vector<int>& t) {
    for (auto [u, v] : n.edges()) {
        if (t[u] < 1 || t[v] < 1) return false;
        if (n.is_reticulation(v) ? t[u] != t[v] : t[u] >= t[v]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("find_shortcuts") {
    CHECK(find_shortcuts(parse_enewick("((a,b),(c,d));")).empty());
    CHECK(find_shortcuts(parse_enewick(kDiamond)).empty());
    // u -> h directly and via w
    Network s = parse_enewick("((((c)#H1,b),#H1),a);");
    auto sc = find_shortcuts(s);
    REQUIRE(sc.size() == 1);
    CHECK(s.is_reticulation(sc[0].second));
}

TEST_CASE("visible_vertices") {
    Network t = parse_enewick("((a,b),(c,d));");
    for (bool b : visible_vertices(t)) CHECK(b);
    Network d = parse_enewick(kDiamond);
    auto vis = visible_vertices(d);
    for (VertexId r : d.reticulations()) CHECK(vis[r]);
    // both parents of H1 have H1 and H2 as children: not tree-child
    Network bad = parse_enewick("((((c)#H1,(d)#H2),a),((#H1,#H2),b));");
    REQUIRE(validate(bad).ok());
    CHECK_FALSE(is_tree_child(bad));
    auto vb = visible_vertices(bad);
    CHECK(std::count(vb.begin(), vb.end(), false) > 0);
    CHECK(vb == visible_by_deletion(bad));
}

TEST_CASE("visibility matches the deletion oracle") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        Network n = random_network(rng, leaf_names(3 + i % 5), i % 4);
        CHECK(visible_vertices(n) == visible_by_deletion(n));
    }
}

TEST_CASE("tree-child iff every vertex visible") {
    Rng rng(12);
    int tc = 0;
    for (int i = 0; i < 200; ++i) {
        Network n = random_network(rng, leaf_names(2 + i % 6), i % 5);
        auto vis = visible_vertices(n);
        bool all = std::all_of(vis.begin(), vis.end(), [](bool b) { return b; });
        CHECK(is_tree_child(n) == all);
        tc += all;
    }
    CHECK(tc > 0);
    CHECK(tc < 200);
}

TEST_CASE("classify") {
    Network t = parse_enewick("((a,b),c);");
    auto rt = classify(t);
    CHECK(rt.tree_child);
    CHECK(rt.normal);
    CHECK(rt.reticulation_visible);
    CHECK(rt.tree_based);
    REQUIRE(rt.temporal);
    CHECK(valid_labeling(t, *rt.temporal));

    Network d = parse_enewick(kDiamond);
    auto rd = classify(d);
    CHECK(rd.tree_child);
    CHECK(rd.normal);
    REQUIRE(rd.temporal);
    CHECK(valid_labeling(d, *rd.temporal));

    auto rs = classify(parse_enewick("((((c)#H1,b),#H1),a);"));
    CHECK_FALSE(rs.normal);
    CHECK_FALSE(rs.temporal);
    CHECK(rs.shortcuts.size() == 1);
}

TEST_CASE("class implications and temporal labelings") {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        Network n = random_network(rng, leaf_names(2 + i % 7), i % 5);
        auto r = classify(n);
        if (r.normal) CHECK(r.tree_child);
        if (r.tree_child) CHECK(r.reticulation_visible);
        if (r.temporal) CHECK(valid_labeling(n, *r.temporal));
        if (r.tree_child && r.temporal) CHECK(r.shortcuts.empty());
        CHECK(r.normal == (r.tree_child && r.shortcuts.empty()));
    }
}

TEST_CASE("is_caterpillar_inducing") {
    Network bal = parse_enewick("((a,b),(c,d));");
    CHECK_FALSE(is_caterpillar_inducing(bal, {}));
    Network cat = make_caterpillar({"a", "b", "c", "d"});
    VertexId deep = cat.parents(*cat.find_leaf("a"))[0];
    CHECK(is_caterpillar_inducing(cat, {deep}));
    CHECK_THROWS_WITH(is_caterpillar_inducing(cat, {*cat.find_leaf("a")}), doctest::Contains("leaf"));
}

TEST_CASE("check_two_path_property") {
    // s -> {p, n} -> y -> t, plus s's spine and a leaf on each literal vertex
    Network g;
    VertexId root = g.add_vertex(), s = g.add_vertex(), p = g.add_vertex(), n = g.add_vertex(), y = g.add_vertex();
    VertexId t = g.add_leaf("t");
    g.add_edge(root, s);
    g.add_edge(root, g.add_leaf("z"));
    g.add_edge(s, p);
    g.add_edge(s, n);
    g.add_edge(p, y);
    g.add_edge(n, y);
    g.add_edge(y, t);
    g.add_edge(p, g.add_leaf("a"));
    g.add_edge(n, g.add_leaf("b"));
    REQUIRE(validate(g).ok());
    auto cert = check_two_path_property(g, {{s, t}}, 1);
    REQUIRE(cert);
    CHECK(cert->paths.size() == 1);

    // unique path
    Network u = parse_enewick("((a,b),c);");
    VertexId r = u.root(), c = *u.find_leaf("c");
    CHECK_FALSE(check_two_path_property(u, {{r, c}}, 1));

    // three paths s -> t
    Network three;
    VertexId s3 = three.add_vertex(), x = three.add_vertex(), w = three.add_vertex(), h1 = three.add_vertex(),
             h2 = three.add_vertex();
    three.add_edge(s3, x);
    three.add_edge(s3, w);
    three.add_edge(x, h1);
    three.add_edge(w, h1);
    three.add_edge(x, h2);
    three.add_edge(h1, h2);
    VertexId w2 = three.add_vertex();
    three.add_edge(w, w2);
    three.add_edge(w2, three.add_leaf("q"));
    three.add_edge(w2, three.add_leaf("q2"));
    VertexId t3 = three.add_leaf("t");
    three.add_edge(h2, t3);
    CHECK(check_two_path_property(three, {{s3, t3}}, 1) == std::nullopt);
    CHECK_THROWS(check_two_path_property(three, {{s3, t3}}, 2));
}
