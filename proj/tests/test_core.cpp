#include <algorithm>

#include "doctest.h"
#include "phylo/core.hpp"
#include "phylo/generators.hpp"
#include "phylo/shell.hpp"

using namespace phylo;

namespace {

bool has_rule(const ValidationReport& r, const std::string& rule) {
    for (const auto& v : r.violations)
        if (v.rfind(rule + ":", 0) == 0) return true;
    return false;
}

}  // namespace

TEST_CASE("validate") {
    CHECK(validate(parse_enewick("(a,b);")).ok());

    Network cyc;
    VertexId a = cyc.add_vertex(), b = cyc.add_vertex();
    cyc.add_edge(a, b);
    cyc.add_edge(b, a);
    CHECK(has_rule(validate(cyc), "cyclic"));

    // v has two parents and two children
    Network d;
    VertexId r = d.add_vertex(), l = d.add_vertex(), rr = d.add_vertex(), v = d.add_vertex();
    d.add_edge(r, l);
    d.add_edge(r, rr);
    d.add_edge(l, v);
    d.add_edge(rr, v);
    d.add_edge(l, d.add_leaf("a"));
    d.add_edge(rr, d.add_leaf("b"));
    d.add_edge(v, d.add_leaf("c"));
    d.add_edge(v, d.add_leaf("e"));
    CHECK(has_rule(validate(d), "degree"));

    Network lone = single_leaf("a");
    CHECK(validate(lone).ok());
    lone.block = false;
    CHECK(has_rule(validate(lone), "degenerate"));
}

TEST_CASE("suppress_elementary") {
    Network p;
    VertexId a = p.add_vertex(), b = p.add_vertex(), c = p.add_leaf("c");
    p.add_edge(a, b);
    p.add_edge(b, c);
    Network s = suppress_elementary(p);
    CHECK(s.size() == 2);
    CHECK(s.edges().size() == 1);

    Network t = parse_enewick("((a,b),c);");
    Network same = suppress_elementary(t);
    CHECK(canonical_form(same) == canonical_form(t));
    CHECK(same.size() == t.size());

    Network chain;
    VertexId top = chain.add_vertex(), cur = top;
    for (int i = 0; i < 3; ++i) {
        VertexId n = chain.add_vertex();
        chain.add_edge(cur, n);
        cur = n;
    }
    chain.add_edge(cur, chain.add_leaf("x"));
    Network one = suppress_elementary(chain);
    CHECK(one.size() == 2);
    REQUIRE(one.edges().size() == 1);
}

TEST_CASE("restrict_tree") {
    PhyloTree cat = make_caterpillar({"a", "b", "c", "d"});
    CHECK(canonical_form(restrict_tree(cat, {"a", "b"})) == "(a,b)");
    CHECK(canonical_form(restrict_tree(cat, {"a", "b", "c", "d"})) == canonical_form(cat));
    PhyloTree bal = parse_enewick("((a,b),(c,d));");
    CHECK(canonical_form(restrict_tree(bal, {"a", "c"})) == "(a,c)");
    PhyloTree one = restrict_tree(bal, {"d"});
    CHECK(one.size() == 1);
    CHECK(one.block);
    CHECK_THROWS_WITH(restrict_tree(bal, {"z"}), doctest::Contains("unknown label"));
    CHECK_THROWS_WITH(restrict_tree(bal, {}), doctest::Contains("empty restriction"));
}

TEST_CASE("canonical_form") {
    CHECK(canonical_form(parse_enewick("(a,b);")) == canonical_form(parse_enewick("(b,a);")));
    // same topology, different vertex ids
    PhyloTree t1;
    VertexId r = t1.add_vertex(), u = t1.add_vertex();
    t1.add_edge(r, u);
    t1.add_edge(u, t1.add_leaf("a"));
    t1.add_edge(u, t1.add_leaf("b"));
    t1.add_edge(r, t1.add_leaf("c"));
    PhyloTree t2;
    VertexId c = t2.add_leaf("c"), b = t2.add_leaf("b"), a = t2.add_leaf("a");
    VertexId u2 = t2.add_vertex(), r2 = t2.add_vertex();
    t2.add_edge(u2, b);
    t2.add_edge(u2, a);
    t2.add_edge(r2, c);
    t2.add_edge(r2, u2);
    CHECK(canonical_form(t1) == canonical_form(t2));
    CHECK(canonical_form(t1) == "((a,b),c)");
    CHECK(canonical_form(make_caterpillar({"a", "b", "c"})) != canonical_form(make_caterpillar({"a", "c", "b"})));
}

TEST_CASE("canonical form round-trips through tree_from_canonical") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        PhyloTree t = random_tree(rng, leaf_names(2 + i % 9));
        CanonicalForm f = canonical_form(t);
        CHECK(canonical_form(tree_from_canonical(f)) == f);
    }
    CHECK_THROWS(tree_from_canonical("((a,b)"));
}

TEST_CASE("contains_caterpillar") {
    PhyloTree cat = make_caterpillar({"a", "b", "c", "d"});
    CHECK(contains_caterpillar(cat, {"b", "a", "c"}));
    PhyloTree bal = parse_enewick("((a,b),(c,d));");
    CHECK(contains_caterpillar(bal, {"a", "b", "c"}));
    CHECK_FALSE(contains_caterpillar(bal, {"a", "c", "b"}));
    CHECK_THROWS(contains_caterpillar(bal, {"a", "z"}));
}

TEST_CASE("restriction of a caterpillar is a caterpillar") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        auto labels = leaf_names(6);
        std::shuffle(labels.begin(), labels.end(), rng);
        PhyloTree cat = make_caterpillar(labels);
        std::vector<std::string> sub;
        for (const auto& l : labels)
            if (rng() & 1) sub.push_back(l);
        if (sub.size() < 2) continue;
        CHECK(contains_caterpillar(cat, sub));
    }
}

TEST_CASE("decompose_caterpillar_blocks") {
    auto d = decompose_caterpillar_blocks(make_caterpillar({"a", "b", "c"}));
    REQUIRE(d.decomposable);
    REQUIRE(d.blocks.size() == 3);
    CHECK(d.blocks[0].leaf_labels() == std::set<std::string>{"c"});
    CHECK(d.blocks[1].leaf_labels() == std::set<std::string>{"b"});
    CHECK(d.blocks[2].leaf_labels() == std::set<std::string>{"a"});

    auto two = decompose_caterpillar_blocks(parse_enewick("(((a,(c)#H1),(#H1,b)),((d,(f)#H2),(#H2,e)));"));
    REQUIRE(two.decomposable);
    CHECK(two.blocks.size() == 2);
    for (const auto& b : two.blocks) CHECK(b.reticulations().size() == 1);

    // reticulation with parents on both sides of the root split
    auto cross = decompose_caterpillar_blocks(parse_enewick("((a,(b)#H1),(#H1,c));"));
    CHECK_FALSE(cross.decomposable);
    CHECK(cross.blocks.size() == 1);
}

namespace {

// A tree contains a caterpillar iff it has all of its rooted triples:
// l_a l_b | l_c for a < b < c.
bool caterpillar_by_triples(const PhyloTree& t, const std::vector<std::string>& cat) {
    auto ancestors = [&](VertexId v) {
        std::vector<VertexId> out{v};
        while (t.in_degree(out.back()) == 1) out.push_back(t.parents(out.back())[0]);
        return out;
    };
    auto lca_depth = [&](VertexId a, VertexId b) {
        auto pa = ancestors(a), pb = ancestors(b);
        std::set<VertexId> sb(pb.begin(), pb.end());
        for (std::size_t i = 0; i < pa.size(); ++i)
            if (sb.count(pa[i])) return static_cast<int>(pa.size() - i);
        return 0;
    };
    std::vector<VertexId> v;
    for (const auto& l : cat) v.push_back(*t.find_leaf(l));
    for (std::size_t c = 2; c < v.size(); ++c)
        for (std::size_t b = 1; b < c; ++b)
            for (std::size_t a = 0; a < b; ++a)
                if (lca_depth(v[a], v[b]) <= lca_depth(v[a], v[c])) return false;
    return true;
}

}  // namespace

TEST_CASE("contains_caterpillar matches the triple oracle") {
    Rng rng(5);
    int hits = 0;
    for (int i = 0; i < 300; ++i) {
        auto labels = leaf_names(3 + i % 5);
        PhyloTree t = random_tree(rng, labels);
        std::shuffle(labels.begin(), labels.end(), rng);
        labels.resize(2 + rng() % (labels.size() - 1));
        bool got = contains_caterpillar(t, labels);
        CHECK(got == caterpillar_by_triples(t, labels));
        hits += got;
    }
    CHECK(hits > 0);
}
