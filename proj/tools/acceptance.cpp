// Acceptance run: one PASS/FAIL line per criterion.
// Exit status is 0 once every criterion has been evaluated; --strict makes
// any FAIL line turn into exit status 1.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "phylo/classes.hpp"
#include "phylo/display.hpp"
#include "phylo/generators.hpp"
#include "phylo/logic.hpp"
#include "phylo/paths.hpp"
#include "phylo/reductions.hpp"
#include "phylo/shell.hpp"

using namespace phylo;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Everything generated along the way, for the round-trip criterion.
std::vector<Network> net_corpus;
std::vector<QBF3> formula_corpus;

void keep(const Network& n) { net_corpus.push_back(n); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome switching_soundness() {
    Rng rng(101);
    int bad_yield = 0, bad_display = 0, bad_bound = 0, checked = 0;
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<int> nl(2, 10), nk(0, 6);
        auto labels = leaf_names(nl(rng));
        Network n = random_network(rng, labels, nk(rng));
        keep(n);
        std::set<std::string> X(labels.begin(), labels.end());
        std::set<CanonicalForm> ds;
        for (const auto& s : enumerate_switchings(n)) {
            PhyloTree t = yield_tree(n, s);
            if (!validate(t).ok() || t.leaf_labels() != X) ++bad_yield;
            ds.insert(canonical_form(t));
        }
        if (ds != display_set(n) || ds.size() > (std::size_t{1} << n.reticulations().size())) ++bad_bound;
        for (const auto& f : ds) {
            ++checked;
            if (!displays(n, tree_from_canonical(f))) ++bad_display;
        }
        for (int k = 0; k < 5; ++k) {
            PhyloTree t = random_tree(rng, labels);
            ++checked;
            if (displays(n, t).has_value() != (ds.count(canonical_form(t)) > 0)) ++bad_display;
        }
    }
    return {bad_yield + bad_display + bad_bound == 0,
            fmt("200 networks, %d display queries; bad yields %d, display mismatches %d, set/bound errors %d", checked,
                bad_yield, bad_display, bad_bound)};
}

Outcome sharpness() {
    Network n = independent_diamonds(3);
    keep(n);
    auto ds = display_set(n);
    bool normal = is_normal(n);
    return {normal && ds.size() == 8 && n.reticulations().size() == 3,
            fmt("k=%zu, normal=%d, |display set|=%zu", n.reticulations().size(), int(normal), ds.size())};
}

Outcome tree_child_visibility() {
    Rng rng(102);
    int disagree = 0, tc = 0, done = 0;
    while (done < 200) {
        std::uniform_int_distribution<int> nl(2, 7), nk(0, 4);
        Network n = random_network(rng, leaf_names(nl(rng)), nk(rng));
        if (n.size() > 20) continue;
        keep(n);
        ++done;
        auto vis = visible_vertices(n);
        bool all = std::all_of(vis.begin(), vis.end(), [](bool b) { return b; });
        tc += all;
        disagree += all != is_tree_child(n);
    }
    return {disagree == 0, fmt("200 networks (%d tree-child); discrepancies %d", tc, disagree)};
}

Outcome gadget_contract() {
    GadgetPair g = build_clause_gadget_pair(1, {1, 2, 3});
    auto rep = verify_gadget_contract(g);
    Network a = suppress_attachments(g.gA), b = suppress_attachments(g.gB);
    keep(a);
    keep(b);
    std::size_t common = count_common(a, b);
    std::string fails;
    for (const auto& f : rep.failures) fails += "; " + f;
    return {rep.ok() && common == 0 && rep.clause_trees.size() == 7,
            fmt("C1=%d C2=%d C3=%d C4=%d, common trees %zu, clause patterns %zu", int(rep.c1), int(rep.c2),
                int(rep.c3), int(rep.c4), common, rep.clause_trees.size()) +
                fails};
}

Outcome ctc_reduction() {
    Rng rng(103);
    int total = 0, agree = 0, leaves_ok = 0, temporal = 0, normal = 0, order_ok = 0, temporal_N = 0;
    for (int i = 0; i < 100; ++i) {
        std::uniform_int_distribution<int> nn(3, 6), mm(1, 4);
        int n = nn(rng), m = std::max(mm(rng), (n + 2) / 3);
        QBF3 f = *normalize_for_ctc(random_sat3(rng, n, m)).formula;
        formula_corpus.push_back(f);
        auto red = reduce_sat3_to_ctc(f);
        keep(red.N);
        keep(red.Nprime);
        ++total;
        std::size_t X = 10 * f.clauses.size() + f.n;
        leaves_ok += red.N.leaves().size() == X && red.Nprime.leaves().size() == X;
        auto tN = temporal_labeling(red.N);
        bool t = tN && is_temporal(red.Nprime);
        temporal += t;
        temporal_N += tN.has_value();
        normal += is_normal(red.N) && is_normal(red.Nprime);
        if (tN) {
            bool asc = true;
            for (const auto& r : red.r) asc = asc && (*tN)[r[0]] < (*tN)[r[1]] && (*tN)[r[1]] < (*tN)[r[2]];
            order_ok += asc;
        }
        agree += solve_exists(f).has_value() == common_tree(red.N, red.Nprime).has_value();
    }
    bool pass = agree == total && leaves_ok == total && temporal == total && normal == total;
    return {pass, fmt("%d formulas; decision agreement %d, |X|=10m+n %d, both temporal %d, both normal %d, "
                      "N temporal %d with ascending r-stamps %d",
                      total, agree, leaves_ok, temporal, normal, temporal_N, order_ok)};
}

Outcome paths_reduction() {
    Rng rng(104);
    int total = 0, agree = 0, size_ok = 0, cat = 0, two = 0;
    for (int i = 0; i < 60; ++i) {
        std::uniform_int_distribution<int> nn(3, 4), mm(1, 3);
        int n = nn(rng), p = 1 + static_cast<int>(rng() % 2), m = std::max(mm(rng), (n + 2) / 3);
        QBF3 f = random_forall_exists(rng, n, p, m);
        formula_corpus.push_back(f);
        auto red = reduce_qsat_to_paths(f);
        ++total;
        size_ok += red.gadget_vertices == 3 * f.n + 11 * static_cast<int>(f.clauses.size());
        std::set<VertexId> S(red.inst.S.begin(), red.inst.S.end());
        cat += is_caterpillar_inducing(red.inst.graph, S);
        two += check_two_path_property(red.inst.graph, red.inst.pairs(), red.inst.p).has_value();
        agree += solve_forall_exists(f).yes == solve_forall_exists_paths(red.inst).yes;
    }
    return {agree == total && size_ok == total && cat == total && two == total,
            fmt("%d formulas; agreement %d, 3n+11m vertices %d, caterpillar-inducing %d, two-path %d", total, agree,
                size_ok, cat, two)};
}

std::vector<PathsInstance> dsc_instances(int* from_qsat, int* random) {
    std::vector<PathsInstance> out;
    Rng rng(105);
    // n=3, m=1 formulas give k=4, p=1 and 23 vertices
    for (int i = 0; i < 12; ++i) {
        QBF3 f = random_forall_exists(rng, 3, 1, 1);
        formula_corpus.push_back(f);
        out.push_back(reduce_qsat_to_paths(f).inst);
    }
    *from_qsat = static_cast<int>(out.size());
    for (int i = 0; out.size() < 24 && i < 200; ++i) {
        int k = 2 + static_cast<int>(rng() % 3);
        if (auto inst = random_phylo_paths_instance(rng, k, 1, 25, 20000)) out.push_back(*inst);
    }
    *random = static_cast<int>(out.size()) - *from_qsat;
    return out;
}

Outcome dsc_reduction() {
    int from_qsat = 0, random = 0;
    auto insts = dsc_instances(&from_qsat, &random);
    int total = 0, agree = 0, classes = 0, budget = 0, yes = 0;
    for (const auto& inst : insts) {
        ++total;
        try {
            auto red = reduce_paths_to_dsc(inst);
            keep(red.N1);
            keep(red.N2);
            classes += is_temporal(red.N1) && is_tree_child(red.N1) && decompose_caterpillar_blocks(red.N1).decomposable;
            bool src = solve_forall_exists_paths(inst).yes;
            yes += src;
            agree += src == !display_subset(red.N1, red.N2).has_value();
        } catch (const BudgetExceeded&) {
            ++budget;
        }
    }
    return {total >= 20 && agree == total && classes == total,
            fmt("%d instances (%d qsat-derived, %d random; %d yes); agreement %d, N1 temporal tree-child "
                "caterpillar %d, budget exhausted %d",
                total, from_qsat, random, yes, agree, classes, budget)};
}

Outcome dse_reduction() {
    // Up to relabelling there are three such pairs within 14 reticulations:
    // N2 a cherry, or one reticulation above either leaf.
    const char* n2s[][2] = {{"(a,b);", "(a,b);"},
                            {"(a,b);", "((a)#H1,(#H1,b));"},
                            {"(a,b);", "((b)#H1,(#H1,a));"},
                            {"(x,y);", "((x)#H1,(#H1,y));"},
                            {"(x,y);", "(x,y);"}};
    int total = 0, agree = 0, max_ret = 0, budget = 0;
    for (auto& pr : n2s) {
        Network n1 = parse_enewick(pr[0]);
        Network n2 = parse_enewick(pr[1]);
        ++total;
        try {
            auto red = reduce_dsc_to_dse(n1, n2);
            keep(red.N1star);
            keep(red.N2star);
            max_ret = std::max<int>(max_ret, std::max(red.N1star.reticulations().size(), red.N2star.reticulations().size()));
            bool src = !display_subset(n1, n2).has_value();
            agree += src == display_equivalence(red.N1star, red.N2star).equivalent;
        } catch (const BudgetExceeded&) {
            ++budget;
        }
    }
    // n=3 pairs add no-instances, which n=2 cannot produce.
    const char* pairs3[][2] = {{"((a,b),c);", "((a,c),b);"},
                               {"((a,b),c);", "((a,b),c);"},
                               {"((a,b),c);", "((b,c),a);"}};
    int total3 = 0, agree3 = 0, no3 = 0;
    for (auto& pr : pairs3) {
        Network n1 = parse_enewick(pr[0]), n2 = parse_enewick(pr[1]);
        ++total3;
        try {
            auto red = reduce_dsc_to_dse(n1, n2);
            keep(red.N1star);
            keep(red.N2star);
            bool src = !display_subset(n1, n2).has_value();
            no3 += !src;
            agree3 += src == display_equivalence(red.N1star, red.N2star).equivalent;
        } catch (const BudgetExceeded&) {
            ++budget;
        }
    }
    return {total >= 5 && agree == total && agree3 == total3 && max_ret <= 14,
            fmt("%d instances with n=2 (max %d reticulations per output), agreement %d; %d extra n=3 pairs "
                "(%d no), agreement %d; budget exhausted %d",
                total, max_ret, agree, total3, no3, agree3, budget)};
}

Outcome chain() {
    std::vector<std::string> texts = {
        "p cnf 2 1\na 1 0\ne 2 0\n1 2 2 0\n",      "p cnf 2 1\na 1 0\ne 2 0\n-1 2 2 0\n",
        "p cnf 2 1\na 1 0\ne 2 0\n1 -2 -2 0\n",    "p cnf 2 2\na 1 0\ne 2 0\n1 2 2 0\n-1 -2 -2 0\n",
        "p cnf 2 2\na 1 0\ne 2 0\n1 2 2 0\n1 -2 -2 0\n", "p cnf 2 2\na 1 0\ne 2 0\n-1 2 2 0\n1 -2 -2 0\n",
        "p cnf 3 2\na 1 0\ne 2 3 0\n1 2 3 0\n-1 -2 -3 0\n",      "p cnf 2 1\na 1 0\ne 2 0\n-2 -2 -1 0\n",
        "p cnf 3 1\na 1 0\ne 2 3 0\n1 2 3 0\n",    "p cnf 3 1\na 1 0\ne 2 3 0\n-1 -2 3 0\n",
    };
    int total = 0, agree = 0, budget = 0, min_ret = 1 << 30;
    for (const auto& t : texts) {
        QBF3 f = parse_qdimacs(t);
        formula_corpus.push_back(f);
        ++total;
        auto rep = verify_chain(f);
        agree += rep.agree;
        if (rep.budget_exhausted) {
            ++budget;
            int k = 0;
            if (std::sscanf(rep.detail.c_str(), "reticulation budget exceeded (%d", &k) == 1) min_ret = std::min(min_ret, k);
        }
    }
    std::string why = budget ? fmt("; smallest DSE output needs %d reticulations against a cap of %d", min_ret, retic_cap())
                             : std::string();
    return {agree == total, fmt("%d formulas; agreement %d, budget exhausted %d", total, agree, budget) + why};
}

// Independent oracle: enumerate both sides and intersect.
std::size_t double_enumeration(const Network& a, const Network& b) {
    std::set<CanonicalForm> sa, sb;
    for (const auto& s : enumerate_switchings(a)) sa.insert(canonical_form(yield_tree(a, s)));
    for (const auto& s : enumerate_switchings(b)) sb.insert(canonical_form(yield_tree(b, s)));
    std::size_t n = 0;
    for (const auto& t : sa) n += sb.count(t);
    return n;
}

Outcome base_tree() {
    Rng rng(106);
    int total = 0, agree = 0, counts = 0, common = 0;
    for (int i = 0; i < 50; ++i) {
        auto labels = leaf_names(4 + static_cast<int>(rng() % 2));
        Network a = random_tree_child_network(rng, labels, 1 + static_cast<int>(rng() % 3));
        Network b = random_tree_child_network(rng, labels, 1 + static_cast<int>(rng() % 3));
        keep(a);
        keep(b);
        ++total;
        bool c = common_tree(a, b).has_value();
        common += c;
        agree += common_base_tree(a, b).has_value() == c;
        counts += count_common(a, b) == double_enumeration(a, b);
    }
    return {agree == total && counts == total,
            fmt("%d tree-child pairs (%d with a common tree); base-tree agreement %d, count_common matches %d", total,
                common, agree, counts)};
}

Outcome round_trips() {
    int nets = 0, nets_ok = 0, fs = 0, fs_ok = 0;
    for (const auto& n : net_corpus) {
        ++nets;
        std::string w = write_enewick(n);
        Network back = parse_enewick(w);
        nets_ok += write_enewick(back) == w && back.edges().size() == n.edges().size();
    }
    for (const auto& f : formula_corpus) {
        ++fs;
        std::string w = write_qdimacs(f);
        fs_ok += write_qdimacs(parse_qdimacs(w)) == w && parse_qdimacs(w) == f;
    }
    return {nets_ok == nets && fs_ok == fs,
            fmt("eNewick %d/%d byte-stable, QDIMACS %d/%d byte-stable", nets_ok, nets, fs_ok, fs)};
}

}  // namespace

int main(int argc, char** argv) {
    bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all = {
        {"switching soundness", switching_soundness},
        {"sharpness witness", sharpness},
        {"tree-child iff all visible", tree_child_visibility},
        {"gadget contract", gadget_contract},
        {"CTC reduction", ctc_reduction},
        {"paths reduction", paths_reduction},
        {"DSC reduction", dsc_reduction},
        {"DSE reduction", dse_reduction},
        {"end-to-end chain", chain},
        {"common base tree", base_tree},
        {"I/O round-trips", round_trips},
    };
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("%s %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
    return strict && failed ? 1 : 0;
}
