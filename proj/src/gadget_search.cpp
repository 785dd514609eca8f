#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "phylo/classes.hpp"
#include "phylo/display.hpp"
#include "phylo/reductions.hpp"

namespace phylo {

namespace {

const std::vector<std::string> kLabels{"C", "C^1", "C^2", "C^3", "C^4", "C^5", "C^6", "x^1", "x^2", "x^3"};

bool is_x(const Network& n, VertexId v) { return n.out_degree(v) == 0 && n.label(v).rfind("x^", 0) == 0; }

Network random_tree(std::mt19937_64& rng) {
    Network t;
    std::vector<VertexId> pool;
    for (const auto& l : kLabels) pool.push_back(t.add_leaf(l));
    while (pool.size() > 1) {
        std::shuffle(pool.begin(), pool.end(), rng);
        VertexId a = pool.back();
        pool.pop_back();
        VertexId b = pool.back();
        pool.pop_back();
        VertexId v = t.add_vertex();
        t.add_edge(v, a);
        t.add_edge(v, b);
        pool.push_back(v);
    }
    return t;
}

bool add_random_reticulation(Network& n, std::mt19937_64& rng) {
    auto edges = n.edges();
    std::uniform_int_distribution<size_t> pick(0, edges.size() - 1);
    auto [a, b] = edges[pick(rng)];
    auto [c, d] = edges[pick(rng)];
    if (a == c && b == d) return false;
    VertexId p = n.add_vertex(), h = n.add_vertex();
    n.remove_edge(a, b);
    n.add_edge(a, p);
    n.add_edge(p, b);
    n.remove_edge(c, d);
    n.add_edge(c, h);
    n.add_edge(h, d);
    n.add_edge(p, h);
    try {
        n.topological_order();
    } catch (const std::runtime_error&) {
        return false;
    }
    return true;
}

// In the embedded gadget every x leaf sits below a reticulation r, so its
// parent needs a sibling that is neither an x leaf nor a reticulation.
bool x_siblings_ok(const Network& n) {
    for (VertexId v : n.leaves()) {
        if (!is_x(n, v)) continue;
        VertexId p = n.parents(v)[0];
        if (n.is_reticulation(p) || n.out_degree(p) != 2) return false;
        VertexId s = n.children(p)[0] == v ? n.children(p)[1] : n.children(p)[0];
        if (is_x(n, s) || n.is_reticulation(s)) return false;
    }
    return true;
}

std::set<std::string> without(const std::string& drop) {
    std::set<std::string> out(kLabels.begin(), kLabels.end());
    out.erase(drop);
    return out;
}

CanonicalForm restricted(const PhyloTree& t, const std::string& drop) {
    return canonical_form(restrict_tree(t, without(drop)));
}

Network swap_x1_x2(const Network& n) {
    Network out = n;
    for (VertexId v : out.leaves()) {
        if (out.label(v) == "x^1")
            out.set_label(v, "x^2");
        else if (out.label(v) == "x^2")
            out.set_label(v, "x^1");
    }
    return out;
}

QBF3 random_normalized(std::mt19937_64& rng) {
    QBF3 f;
    f.n = 3 + static_cast<int>(rng() % 4);
    int m = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < m; ++j) {
        std::vector<int> vars(f.n);
        for (int i = 0; i < f.n; ++i) vars[i] = i + 1;
        std::shuffle(vars.begin(), vars.end(), rng);
        std::sort(vars.begin(), vars.begin() + 3);
        Clause c;
        for (int l = 0; l < 3; ++l) c[l] = rng() & 1 ? vars[l] : -vars[l];
        f.clauses.push_back(c);
    }
    auto norm = normalize_for_ctc(f);
    return *norm.formula;
}

// Embedding check on a battery of formulas: the A side stays normal.
bool embeds_well(const Network& a, const Network& b, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GadgetFactory factory = [&](int j, const Clause&) { return gadget_pair_from_templates(j, a, b); };
    for (int t = 0; t < 60; ++t) {
        auto red = reduce_sat3_to_ctc(random_normalized(rng), factory);
        if (!is_normal(red.N)) return false;
    }
    return true;
}

}  // namespace

// Candidate pairs: B is a random tree-child network whose trees all carry
// x^1 x^3 | x^2, and A a tree obtained by regrafting x^3 in some tree of B
// so that A agrees with B once any single x leaf is dropped. Only A is held
// to the x-sibling rule: with it on both sides no pair exists, as the x^3
// anchors would have to sit in both gadgets at once. The mirrored pair
// (x^1 and x^2 swapped, sides exchanged) is tried as well.
GadgetPair search_gadget_pair(int j, const GadgetSearchOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t it = 0; it < opt.iterations; ++it) {
        Network B = random_tree(rng);
        int k = 1 + static_cast<int>(rng() % std::max(1, opt.max_retic));
        bool ok = true;
        for (int r = 0; r < k && ok; ++r) ok = add_random_reticulation(B, rng);
        if (!ok || !validate(B).ok() || !find_shortcuts(B).empty()) continue;
        if (opt.require_tree_child && !is_tree_child(B)) continue;
        std::vector<PhyloTree> trees;
        for (const auto& f : display_set(B)) trees.push_back(tree_from_canonical(f));
        if (!std::all_of(trees.begin(), trees.end(),
                         [](const PhyloTree& t) { return contains_caterpillar(t, {"x^1", "x^3", "x^2"}); }))
            continue;
        std::set<CanonicalForm> drop1, drop2;
        for (const auto& t : trees) {
            drop1.insert(restricted(t, "x^1"));
            drop2.insert(restricted(t, "x^2"));
        }
        for (const auto& t : trees) {
            PhyloTree R = restrict_tree(t, without("x^3"));
            for (VertexId v = 0; v < R.size(); ++v) {
                if (R.in_degree(v) == 0 && R.out_degree(v) == 0) continue;
                PhyloTree a = R;
                VertexId x = a.add_leaf("x^3"), w = a.add_vertex();
                if (a.in_degree(v) == 1) {
                    VertexId p = a.parents(v)[0];
                    a.remove_edge(p, v);
                    a.add_edge(p, w);
                }
                a.add_edge(w, v);
                a.add_edge(w, x);
                a = a.compacted();
                if (!contains_caterpillar(a, {"x^2", "x^3", "x^1"})) continue;
                if (!drop1.count(restricted(a, "x^1")) || !drop2.count(restricted(a, "x^2"))) continue;
                for (int mirror = 0; mirror < 2; ++mirror) {
                    Network gA = mirror ? swap_x1_x2(B) : a, gB = mirror ? swap_x1_x2(a) : B;
                    if (!x_siblings_ok(gA)) continue;
                    GadgetPair g = gadget_pair_from_templates(j, gA, gB);
                    auto rep = verify_gadget_contract(g);
                    if (!rep.ok()) continue;
                    if (opt.require_tree_child && !embeds_well(gA, gB, opt.seed)) continue;
                    g.clause_trees = rep.clause_trees;
                    return g;
                }
            }
        }
    }
    throw std::runtime_error("no gadget found");
}

}  // namespace phylo
