#include <algorithm>
#include <set>

#include "doctest.h"
#include "phylo/classes.hpp"
#include "phylo/display.hpp"
#include "phylo/generators.hpp"
#include "phylo/reductions.hpp"
#include "phylo/shell.hpp"

using namespace phylo;

namespace {

const char* kDiamond = "((a,(c)#H1),(#H1,b));";

// Four switchings, three distinct trees: every triple on {a,b,c}.
const char* kRedundant = "(((a)#H1,(b)#H2),((#H1,#H2),c));";

std::set<CanonicalForm> intersect(const std::set<CanonicalForm>& a, const std::set<CanonicalForm>& b) {
    std::set<CanonicalForm> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

// Delete-and-suppress oracle: keep any edge subset, drop everything that
// does not reach a leaf of the tree, and compare if a tree remains.
bool displays_by_deletion(const Network& net, const PhyloTree& tree) {
    auto Y = tree.leaf_labels();
    auto edges = net.edges();
    CanonicalForm want = canonical_form(tree);
    for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
        Network h;
        for (VertexId v = 0; v < net.size(); ++v) {
            if (net.out_degree(v) == 0 && Y.count(net.label(v)))
                h.add_leaf(net.label(v));
            else
                h.add_vertex();
        }
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (mask >> e & 1) h.add_edge(edges[e].first, edges[e].second);
        // vertices with a path to a kept leaf
        std::vector<bool> useful(h.size());
        auto order = h.topological_order();
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            VertexId v = *it;
            useful[v] = !h.label(v).empty();
            for (VertexId c : h.children(v)) useful[v] = useful[v] || useful[c];
        }
        Network k = h.induced(useful);
        if (k.leaf_labels() != Y) continue;
        bool forest = true;
        int roots = 0;
        for (VertexId v = 0; v < k.size(); ++v) {
            forest = forest && k.in_degree(v) <= 1;
            roots += k.in_degree(v) == 0;
        }
        if (!forest || roots != 1) continue;
        // strip the in0/out1 chain above the root, then suppress
        VertexId r = 0;
        while (k.in_degree(r) != 0) ++r;
        std::vector<bool> keep(k.size(), true);
        while (k.out_degree(r) == 1 && !k.children(r).empty() && k.out_degree(k.children(r)[0]) > 0) {
            keep[r] = false;
            r = k.children(r)[0];
        }
        Network t = suppress_elementary(k.induced(keep));
        if (Y.size() == 1 || canonical_form(t) == want) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("enumerate_switchings") {
    CHECK(enumerate_switchings(parse_enewick("((a,b),c);")).size() == 1);
    CHECK(enumerate_switchings(independent_diamonds(3)).size() == 8);
    ScopedReticCap cap(20);
    CHECK_THROWS_AS(enumerate_switchings(independent_diamonds(21)), BudgetExceeded);
    CHECK_THROWS_WITH(display_set(independent_diamonds(21)), doctest::Contains("reticulation budget exceeded"));
}

TEST_CASE("ScopedReticCap restores the cap") {
    int before = retic_cap();
    {
        ScopedReticCap cap(2);
        CHECK(retic_cap() == 2);
        CHECK_THROWS_AS(display_set(independent_diamonds(3)), BudgetExceeded);
    }
    CHECK(retic_cap() == before);
}

TEST_CASE("yield_tree") {
    Network t = parse_enewick("((a,b),c);");
    CHECK(canonical_form(yield_tree(t, Switching{})) == "((a,b),c)");

    Network d = parse_enewick(kDiamond);
    std::set<CanonicalForm> got;
    for (const auto& s : enumerate_switchings(d)) got.insert(canonical_form(yield_tree(d, s)));
    CHECK(got == std::set<CanonicalForm>{"((a,c),b)", "((b,c),a)"});

    // Switching off the root's edge to the left block leaves a dangling
    // in0/out1 path above the new root, which must be deleted.
    Network top = parse_enewick("((a)#H1,(#H1,(b,c)));");
    for (const auto& s : enumerate_switchings(top)) {
        PhyloTree y = yield_tree(top, s);
        CHECK(validate(y).ok());
        CHECK(y.leaf_labels() == std::set<std::string>{"a", "b", "c"});
    }
}

TEST_CASE("display_set") {
    CHECK(display_set(parse_enewick("((a,b),c);")) == std::set<CanonicalForm>{"((a,b),c)"});
    CHECK(display_set(independent_diamonds(3)).size() == 8);
    Network r = parse_enewick(kRedundant);
    CHECK(display_set(r).size() < enumerate_switchings(r).size());
}

TEST_CASE("display_set and fingerprints agree") {
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        Network n = random_network(rng, leaf_names(3 + i % 6), i % 6);
        auto ds = display_set(n);
        auto fp = switching_fingerprints(n);
        CHECK(fp.size() == enumerate_switchings(n).size());
        std::set<std::uint64_t> distinct(fp.begin(), fp.end());
        CHECK(distinct.size() >= ds.size());
        std::set<CanonicalForm> direct;
        for (const auto& s : enumerate_switchings(n)) direct.insert(canonical_form(yield_tree(n, s)));
        CHECK(ds == direct);
    }
}

TEST_CASE("displays") {
    Network d = parse_enewick(kDiamond);
    for (const auto& f : display_set(d)) CHECK(displays(d, tree_from_canonical(f)));
    auto e = displays(d, parse_enewick("(a,c);"));
    REQUIRE(e);
    CHECK_FALSE(e->edges.empty());
    CHECK_FALSE(displays(d, parse_enewick("((a,b),c);")));
    CHECK_THROWS_WITH(displays(d, parse_enewick("(a,z);")), doctest::Contains("unknown label"));
}

TEST_CASE("switching soundness on random networks") {
    Rng rng(22);
    for (int i = 0; i < 60; ++i) {
        auto labels = leaf_names(3 + i % 5);
        Network n = random_network(rng, labels, i % 5);
        auto ds = display_set(n);
        CHECK(ds.size() <= (std::size_t{1} << n.reticulations().size()));
        for (const auto& f : ds) CHECK(displays(n, tree_from_canonical(f)));
        // random trees outside the display set are rejected
        for (int k = 0; k < 5; ++k) {
            PhyloTree t = random_tree(rng, labels);
            CHECK(displays(n, t).has_value() == (ds.count(canonical_form(t)) > 0));
        }
    }
}

TEST_CASE("subtree display matches delete-and-suppress") {
    Rng rng(25);
    int tested = 0, yes = 0;
    while (tested < 40) {
        auto labels = leaf_names(3 + static_cast<int>(rng() % 2));
        Network n = random_network(rng, labels, 1 + static_cast<int>(rng() % 2));
        if (n.size() > 12) continue;
        ++tested;
        auto sub = labels;
        std::shuffle(sub.begin(), sub.end(), rng);
        sub.resize(2 + rng() % (sub.size() - 1));
        PhyloTree t = random_tree(rng, sub);
        bool got = displays(n, t).has_value();
        CHECK(got == displays_by_deletion(n, t));
        yes += got;
    }
    CHECK(yes > 0);
}

TEST_CASE("common_tree") {
    Network d = parse_enewick(kDiamond);
    CHECK(common_tree(d, d) == *display_set(d).begin());
    CHECK_FALSE(common_tree(parse_enewick("((a,b),c);"), parse_enewick("((a,c),b);")));
    CHECK_THROWS_WITH(common_tree(d, parse_enewick("(a,b);")), doctest::Contains("leaf-set mismatch"));
    GadgetPair g = build_clause_gadget_pair(1, {1, 2, 3});
    CHECK_FALSE(common_tree(suppress_attachments(g.gA), suppress_attachments(g.gB)));
}

TEST_CASE("display_subset") {
    Network d = parse_enewick(kDiamond);
    CHECK_FALSE(display_subset(parse_enewick("((a,c),b);"), d));
    auto c = display_subset(d, parse_enewick("((a,c),b);"));
    REQUIRE(c);
    CHECK(*c == "((b,c),a)");
    CHECK_FALSE(display_subset(d, d));
}

TEST_CASE("display_equivalence") {
    Network d = parse_enewick(kDiamond);
    CHECK(display_equivalence(d, d).equivalent);
    Network r = parse_enewick(kRedundant), r2 = parse_enewick("(((b)#H1,(c)#H2),((#H1,#H2),a));");
    REQUIRE(display_set(r).size() == 3);
    CHECK(write_enewick(r) != write_enewick(r2));
    CHECK(display_equivalence(r, r2).equivalent);
    auto e = display_equivalence(parse_enewick("((a,b),c);"), parse_enewick("((a,c),b);"));
    CHECK_FALSE(e.equivalent);
    CHECK(e.side == 1);
    CHECK(e.counterexample == "((a,b),c)");
}

TEST_CASE("count_common") {
    Network d = independent_diamonds(2);
    CHECK(count_common(d, d) == display_set(d).size());
    GadgetPair g = build_clause_gadget_pair(1, {1, 2, 3});
    CHECK(count_common(suppress_attachments(g.gA), suppress_attachments(g.gB)) == 0);
    CHECK(count_common(parse_enewick("((a,b),c);"), parse_enewick("((a,c),b);")) == 0);
}

TEST_CASE("count_common matches set intersection") {
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        auto labels = leaf_names(4);
        Network a = random_network(rng, labels, 1 + i % 3), b = random_network(rng, labels, 1 + i % 3);
        CHECK(count_common(a, b) == intersect(display_set(a), display_set(b)).size());
    }
}

TEST_CASE("is_base_tree_switching") {
    Network t = parse_enewick("((a,b),c);");
    CHECK(is_base_tree_switching(t, Switching{}));
    // Both tree vertices below the root are parents of reticulations only,
    // so a base-tree switching keeps one edge out of each.
    Network n = parse_enewick(kRedundant);
    int base = 0;
    for (const auto& s : enumerate_switchings(n)) {
        bool split = s.chosen[0].first != s.chosen[1].first;
        CHECK(is_base_tree_switching(n, s) == split);
        base += split;
    }
    CHECK(base == 2);
}

TEST_CASE("common_base_tree") {
    Network t = parse_enewick("((a,b),c);");
    CHECK(common_base_tree(t, t) == "((a,b),c)");
    CHECK_FALSE(common_base_tree(t, parse_enewick("((a,c),b);")));
}

TEST_CASE("common base tree iff common tree on tree-child pairs") {
    Rng rng(24);
    for (int i = 0; i < 30; ++i) {
        auto labels = leaf_names(4);
        Network a = random_tree_child_network(rng, labels, 1 + i % 2), b = random_tree_child_network(rng, labels, 1);
        CHECK(common_base_tree(a, b).has_value() == common_tree(a, b).has_value());
    }
}
