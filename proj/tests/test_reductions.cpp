#include <algorithm>

#include "doctest.h"
#include "phylo/classes.hpp"
#include "phylo/display.hpp"
#include "phylo/generators.hpp"
#include "phylo/reductions.hpp"
#include "phylo/shell.hpp"

using namespace phylo;

namespace {

const char* kA = "(((C,((((C^3,x^3),x^2),x^1),C^6)),((C^2,C^4),C^5)),C^1);";
const char* kB = "(((C,(((((C^3)#H1,x^3),x^1),(#H1,x^2)),C^6)),((C^2,C^4),(C^5)#H2)),(C^1,#H2));";

QBF3 one_clause() {
    QBF3 f;
    f.n = 3;
    f.clauses = {{1, 2, 3}};
    return f;
}

}  // namespace

TEST_CASE("shipped gadget passes the contract") {
    for (int j : {1, 2, 7}) {
        GadgetPair g = build_clause_gadget_pair(j, {1, -2, 3});
        auto rep = verify_gadget_contract(g);
        CHECK(rep.c1);
        CHECK(rep.c2);
        CHECK(rep.c3);
        CHECK(rep.c4);
        CHECK(rep.failures.empty());
        CHECK(g.clause_trees.size() == 7);
        CHECK(rep.clause_trees == g.clause_trees);
        for (int l = 0; l < 3; ++l) {
            VertexId r = g.attachA[l];
            CHECK(g.gA.in_degree(r) == 1);
            CHECK(g.gA.out_degree(r) == 1);
            CHECK(g.gA.label(g.gA.children(r)[0]) == clause_x(j, l + 1));
        }
    }
    CHECK_THROWS(build_clause_gadget_pair(1, {1, 1, 2}));
}

TEST_CASE("clause tree patterns") {
    auto pats = clause_patterns();
    CHECK(pats.size() == 7);
    CHECK(std::find(pats.begin(), pats.end(), "FFF") == pats.end());
    GadgetPair g = build_clause_gadget_pair(1, {1, 2, 3});
    for (const auto& z : pats) {
        PhyloTree t = tree_from_canonical(g.clause_trees.at(z));
        for (int l = 0; l < 3; ++l) CHECK(t.find_leaf(clause_x(1, l + 1)).has_value() == (z[l] == 'F'));
        CHECK(t.leaf_labels().size() == 7u + static_cast<std::size_t>(std::count(z.begin(), z.end(), 'F')));
    }
}

TEST_CASE("broken gadgets fail the contract") {
    // x^1 and x^2 swapped in A: both sides now carry x^1 x^3 | x^2
    std::string swapped = kA;
    swapped.replace(swapped.find("x^2"), 3, "x^#");
    swapped.replace(swapped.find("x^1"), 3, "x^2");
    swapped.replace(swapped.find("x^#"), 3, "x^1");
    auto rep = verify_gadget_contract(gadget_pair_from_templates(1, parse_enewick(swapped), parse_enewick(kB)));
    CHECK_FALSE(rep.c3);

    Network noC4 = parse_enewick("(((C,((((C^3,x^3),x^2),x^1),C^6)),(C^2,C^5)),C^1);");
    auto rep1 = verify_gadget_contract(gadget_pair_from_templates(1, noC4, parse_enewick(kB)));
    CHECK_FALSE(rep1.c1);
    CHECK_FALSE(rep1.ok());
}

TEST_CASE("gadget search finds a contract-passing pair") {
    GadgetSearchOptions opt;
    opt.max_retic = 2;
    GadgetPair g = search_gadget_pair(1, opt);
    CHECK(verify_gadget_contract(g).ok());
    GadgetSearchOptions tiny;
    tiny.iterations = 1;
    tiny.max_retic = 1;
    tiny.require_tree_child = true;
    CHECK_THROWS_WITH(search_gadget_pair(1, tiny), "no gadget found");
}

TEST_CASE("reduce_sat3_to_ctc on one clause") {
    QBF3 f = one_clause();
    auto red = reduce_sat3_to_ctc(f);
    CHECK(red.N.leaves().size() == 13);
    CHECK(red.Nprime.leaves().size() == 13);
    CHECK(red.N.leaf_labels() == red.Nprime.leaf_labels());
    CHECK(validate(red.N).ok());
    CHECK(validate(red.Nprime).ok());
    // Only the r's on the A side; B brings two more per clause.
    CHECK(red.N.reticulations().size() == 3);
    CHECK(red.Nprime.reticulations().size() == 5);
    CHECK(is_normal(red.N));
    CHECK(solve_exists(f));
    CHECK(common_tree(red.N, red.Nprime));
    CHECK_THROWS(reduce_sat3_to_ctc(QBF3{3, 0, {{3, 1, 2}}}));
}

TEST_CASE("ctc reduction preserves satisfiability") {
    Rng rng(51);
    for (int i = 0; i < 15; ++i) {
        QBF3 f = *normalize_for_ctc(random_sat3(rng, 3 + i % 2, 1 + i % 2)).formula;
        auto red = reduce_sat3_to_ctc(f);
        CHECK(red.N.leaves().size() == static_cast<std::size_t>(10 * f.clauses.size() + f.n));
        CHECK(is_normal(red.N));
        CHECK(solve_exists(f).has_value() == common_tree(red.N, red.Nprime).has_value());
        auto t = temporal_labeling(red.N);
        if (t)
            for (const auto& r : red.r) {
                CHECK((*t)[r[0]] < (*t)[r[1]]);
                CHECK((*t)[r[1]] < (*t)[r[2]]);
            }
    }
}

TEST_CASE("reduce_qsat_to_paths") {
    QBF3 f;
    f.n = 3;
    f.p = 1;
    f.clauses = {{1, 2, 3}};
    auto red = reduce_qsat_to_paths(f);
    CHECK(red.gadget_vertices == 20);
    CHECK(red.spine_vertices == 7);
    CHECK(red.inst.graph.size() == 20 + 7 - 4);
    std::set<VertexId> S(red.inst.S.begin(), red.inst.S.end());
    CHECK(is_caterpillar_inducing(red.inst.graph, S));
    CHECK(check_two_path_property(red.inst.graph, red.inst.pairs(), red.inst.p));
    CHECK(solve_forall_exists_paths(red.inst).yes == solve_forall_exists(f).yes);

    QBF3 g;
    g.n = 3;
    g.p = 1;
    g.clauses = {{-1, 2, 3}, {-1, -2, 3}, {-1, 2, -3}, {-1, -2, -3}};
    auto rg = reduce_qsat_to_paths(g);
    CHECK(rg.gadget_vertices == 3 * 3 + 11 * 4);
    CHECK_FALSE(solve_forall_exists_paths(rg.inst).yes);

    QBF3 bad;
    bad.n = 3;
    bad.p = 3;
    bad.clauses = {{1, 2, 3}};
    CHECK_THROWS(reduce_qsat_to_paths(bad));
}

TEST_CASE("universal assignments map to the matching paths") {
    QBF3 f;
    f.n = 4;
    f.p = 2;
    f.clauses = {{1, 2, 3}, {-1, -2, 4}};
    auto red = reduce_qsat_to_paths(f);
    Assignment a(5);
    a[1] = true;
    auto ps = universal_paths_for(red, a);
    REQUIRE(ps.size() == 2);
    CHECK(ps[0] == red.minus_paths[1]);
    CHECK(ps[1] == red.plus_paths[2]);
}

TEST_CASE("reduce_paths_to_dsc") {
    QBF3 f;
    f.n = 3;
    f.p = 1;
    f.clauses = {{1, 2, 3}};
    auto inst = reduce_qsat_to_paths(f).inst;
    REQUIRE(inst.S.size() == 4);
    auto red = reduce_paths_to_dsc(inst);
    CHECK(red.N1.leaves().size() == 7);
    CHECK(red.N1.reticulations().size() == 1);
    CHECK(red.N1.leaf_labels() == red.N2.leaf_labels());
    CHECK(is_tree_child(red.N1));
    CHECK(is_temporal(red.N1));
    CHECK(decompose_caterpillar_blocks(red.N1).decomposable);
    CHECK(validate(red.N2).ok());
    CHECK(solve_forall_exists_paths(inst).yes == !display_subset(red.N1, red.N2).has_value());
}

TEST_CASE("reduce_dsc_to_dse") {
    Network n1 = parse_enewick("((a,b),c);"), n2 = parse_enewick("((a,c),b);");
    auto red = reduce_dsc_to_dse(n1, n2);
    CHECK(red.backbone.size() == 2 * 3 + 2);
    CHECK(red.N1star.leaves().size() == 6);
    CHECK(red.N1star.leaf_labels().count(std::string("a") + kPrimeSuffix));
    CHECK(validate(red.N1star).ok());
    CHECK(validate(red.N2star).ok());
    CHECK_FALSE(display_equivalence(red.N1star, red.N2star).equivalent);

    auto same = reduce_dsc_to_dse(n1, n1);
    CHECK(display_equivalence(same.N1star, same.N2star).equivalent);

    auto two = reduce_dsc_to_dse(parse_enewick("(a,b);"), parse_enewick("(a,b);"));
    CHECK(two.backbone.size() == 6);
    CHECK(display_equivalence(two.N1star, two.N2star).equivalent);

    CHECK_THROWS(reduce_dsc_to_dse(parse_enewick("((a,(b)#H1),(#H1,c));"), n2));
}

TEST_CASE("verify_reduction reports") {
    auto rep = verify_reduction(ReductionKind::Sat3Ctc, "p cnf 3 1\n1 2 3 0\n", 20, "one");
    CHECK(rep.agree);
    CHECK(rep.oracle == true);
    CHECK(rep.to_json().find("\"agree\":true") != std::string::npos);

    auto dse = verify_reduction(ReductionKind::DscDse, "((a,b),c);\n((a,c),b);\n", 20);
    CHECK(dse.agree);
    CHECK(dse.oracle == false);

    auto starved = verify_reduction(ReductionKind::DscDse, "((a,b),c);\n((a,c),b);\n", 2);
    CHECK(starved.budget_exhausted);
    CHECK_FALSE(starved.agree);

    CHECK(parse_reduction_kind("chain") == ReductionKind::Chain);
    CHECK_FALSE(parse_reduction_kind("nope"));
    CHECK(reduction_name(ReductionKind::QsatPaths) == "qsat-paths");
}
