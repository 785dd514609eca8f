#include "phylo/reductions.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "phylo/classes.hpp"
#include "phylo/display.hpp"
#include "phylo/shell.hpp"
#include "gadget_data.hpp"

namespace phylo {

std::string clause_leaf(int j, int k) {
    std::string s = "C" + std::to_string(j);
    if (k > 0) s += "^" + std::to_string(k);
    return s;
}

std::string clause_x(int j, int l) { return "x" + std::to_string(j) + "^" + std::to_string(l); }

std::string variable_leaf(int i) { return "v" + std::to_string(i); }

namespace {

VertexId subdivide(Network& n, VertexId u, VertexId v, const std::string& note = {}) {
    VertexId w = n.add_vertex(note);
    n.remove_edge(u, v);
    n.add_edge(u, w);
    n.add_edge(w, v);
    return w;
}

void suppress_vertex(Network& n, VertexId v) {
    VertexId p = n.parents(v)[0], c = n.children(v)[0];
    n.remove_edge(p, v);
    n.remove_edge(v, c);
    n.add_edge(p, c);
}

// Caterpillar over existing vertices; items[0], items[1] form the bottom
// cherry. Returns the top vertex (items[0] itself when there is one item).
VertexId hang_caterpillar(Network& n, const std::vector<VertexId>& items, const std::string& note = {}) {
    VertexId top = items.at(0);
    for (size_t i = 1; i < items.size(); ++i) {
        VertexId v = n.add_vertex(note);
        n.add_edge(v, top);
        n.add_edge(v, items[i]);
        top = v;
    }
    return top;
}

// Copies src into dst; returns the id map.
std::vector<VertexId> copy_into(Network& dst, const Network& src, const std::function<std::string(const std::string&)>& relabel) {
    std::vector<VertexId> map(src.size(), -1);
    for (VertexId v = 0; v < src.size(); ++v) {
        if (src.in_degree(v) == 0 && src.out_degree(v) == 0 && !(src.block && src.size() == 1)) continue;
        map[v] = src.out_degree(v) == 0 ? dst.add_leaf(relabel(src.label(v))) : dst.add_vertex(src.note(v));
    }
    for (auto [u, v] : src.edges()) dst.add_edge(map[u], map[v]);
    return map;
}

std::string template_relabel(const std::string& l, int j) {
    if (l == "C") return clause_leaf(j, 0);
    if (l.size() == 3 && l[0] == 'C' && l[1] == '^') return clause_leaf(j, l[2] - '0');
    if (l.size() == 3 && l[0] == 'x' && l[1] == '^') return clause_x(j, l[2] - '0');
    throw std::logic_error("unexpected gadget template label '" + l + "'");
}

CanonicalForm relabel_form(const CanonicalForm& f, const std::function<std::string(const std::string&)>& relabel) {
    PhyloTree t = tree_from_canonical(f);
    for (VertexId v = 0; v < t.size(); ++v)
        if (t.out_degree(v) == 0) t.set_label(v, relabel(t.label(v)));
    return canonical_form(t);
}

std::set<std::string> clause_leaves(int j) {
    std::set<std::string> out;
    for (int k = 0; k <= 6; ++k) out.insert(clause_leaf(j, k));
    for (int l = 1; l <= 3; ++l) out.insert(clause_x(j, l));
    return out;
}

std::set<CanonicalForm> restricted_display_set(const Network& net, const std::set<std::string>& Y) {
    std::set<CanonicalForm> out;
    for (const auto& f : display_set(net)) out.insert(canonical_form(restrict_tree(tree_from_canonical(f), Y)));
    return out;
}

void check_attachments(const GadgetPair& g, const Network& net, const std::array<VertexId, 3>& att, const char* side,
                       std::vector<std::string>& fail) {
    std::set<VertexId> distinct(att.begin(), att.end());
    if (distinct.size() != 3) fail.push_back(std::string("C1: ") + side + " attachment vertices not distinct");
    for (int l = 0; l < 3; ++l) {
        VertexId r = att[l];
        std::string name = std::string("C1: ") + side + " r^" + std::to_string(l + 1);
        if (r < 0 || r >= net.size()) {
            fail.push_back(name + " missing");
            continue;
        }
        if (net.in_degree(r) != 1 || net.out_degree(r) != 1) {
            fail.push_back(name + " is not in-1/out-1");
            continue;
        }
        VertexId c = net.children(r)[0];
        if (net.out_degree(c) != 0 || net.label(c) != clause_x(g.j, l + 1))
            fail.push_back(name + " does not lead to leaf " + clause_x(g.j, l + 1));
    }
}

}  // namespace

Network suppress_attachments(const Network& g) {
    Network n = g;
    for (VertexId v = 0; v < n.size(); ++v)
        if (n.in_degree(v) == 1 && n.out_degree(v) == 1) suppress_vertex(n, v);
    return n.compacted();
}

std::vector<std::string> clause_patterns() {
    std::vector<std::string> out;
    for (int bits = 1; bits < 8; ++bits) {
        std::string z;
        for (int l = 0; l < 3; ++l) z += (bits >> (2 - l)) & 1 ? 'T' : 'F';
        out.push_back(z);
    }
    return out;
}

GadgetPair gadget_pair_from_templates(int j, const Network& a, const Network& b) {
    auto relabel = [j](const std::string& l) { return template_relabel(l, j); };
    GadgetPair g;
    g.j = j;
    auto build = [&](const Network& tmpl, std::array<VertexId, 3>& att) {
        Network net;
        copy_into(net, tmpl, relabel);
        for (int l = 1; l <= 3; ++l) {
            auto x = net.find_leaf(clause_x(j, l));
            if (!x) throw std::invalid_argument("gadget template lacks leaf x^" + std::to_string(l));
            att[l - 1] = subdivide(net, net.parents(*x)[0], *x, "r_" + std::to_string(j) + "^" + std::to_string(l));
        }
        return net;
    };
    g.gA = build(a, g.attachA);
    g.gB = build(b, g.attachB);
    return g;
}

GadgetPair build_clause_gadget_pair(int j, const Clause& literals) {
    std::set<int> vars;
    for (Literal l : literals) {
        if (l == 0) throw std::invalid_argument("literal 0");
        vars.insert(std::abs(l));
    }
    if (vars.size() != 3) throw std::invalid_argument("clause literals must use three distinct variables");
    if (j < 1) throw std::invalid_argument("clause index must be positive");
    GadgetPair g = gadget_pair_from_templates(j, parse_enewick(gadget_data::kGadgetA), parse_enewick(gadget_data::kGadgetB));
    auto relabel = [j](const std::string& l) { return template_relabel(l, j); };
    for (const auto& [pattern, form] : gadget_data::clause_trees()) g.clause_trees[pattern] = relabel_form(form, relabel);
    return g;
}

GadgetReport verify_gadget_contract(const GadgetPair& g) {
    GadgetReport rep;
    auto& fail = rep.failures;
    const auto leaves = clause_leaves(g.j);

    size_t before = fail.size();
    if (g.gA.leaf_labels() != leaves) fail.push_back("C1: gA leaf set differs from the clause leaf set");
    if (g.gB.leaf_labels() != leaves) fail.push_back("C1: gB leaf set differs from the clause leaf set");
    check_attachments(g, g.gA, g.attachA, "gA", fail);
    check_attachments(g, g.gB, g.attachB, "gB", fail);
    rep.c1 = fail.size() == before;

    before = fail.size();
    Network a = suppress_attachments(g.gA), b = suppress_attachments(g.gB);
    for (const auto& [net, side] : {std::pair{&a, "A"}, std::pair{&b, "B"}}) {
        auto v = validate(*net);
        for (const auto& msg : v.violations) fail.push_back(std::string("C2: suppressed ") + side + ": " + msg);
    }
    rep.c2 = fail.size() == before;
    if (!rep.c1 || !rep.c2) return rep;

    before = fail.size();
    const std::vector<std::string> catA{clause_x(g.j, 2), clause_x(g.j, 3), clause_x(g.j, 1)};
    const std::vector<std::string> catB{clause_x(g.j, 1), clause_x(g.j, 3), clause_x(g.j, 2)};
    for (const auto& f : display_set(a))
        if (!contains_caterpillar(tree_from_canonical(f), catA)) fail.push_back("C3: A displays " + f);
    for (const auto& f : display_set(b))
        if (!contains_caterpillar(tree_from_canonical(f), catB)) fail.push_back("C3: B displays " + f);
    rep.c3 = fail.size() == before;

    before = fail.size();
    for (const auto& z : clause_patterns()) {
        std::set<std::string> Y;
        for (int k = 0; k <= 6; ++k) Y.insert(clause_leaf(g.j, k));
        for (int l = 0; l < 3; ++l)
            if (z[l] == 'F') Y.insert(clause_x(g.j, l + 1));
        auto sa = restricted_display_set(a, Y), sb = restricted_display_set(b, Y);
        std::vector<CanonicalForm> both;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(both));
        if (both.empty()) {
            fail.push_back("C4: pattern " + z + " has no common clause tree");
            continue;
        }
        rep.clause_trees[z] = both.front();
        auto stored = g.clause_trees.find(z);
        if (stored != g.clause_trees.end() && !(sa.count(stored->second) && sb.count(stored->second)))
            fail.push_back("C4: stored clause tree for " + z + " is not displayed by both gadgets");
    }
    rep.c4 = fail.size() == before;
    return rep;
}

CtcReduction reduce_sat3_to_ctc(const QBF3& f) { return reduce_sat3_to_ctc(f, build_clause_gadget_pair); }

CtcReduction reduce_sat3_to_ctc(const QBF3& f, const GadgetFactory& gadget) {
    if (!is_ctc_normalized(f)) throw std::invalid_argument("formula is not normalized for the CTC reduction");
    if (f.n < 1 || f.clauses.empty()) throw std::invalid_argument("need n >= 1 and m >= 1");
    const int n = f.n, m = static_cast<int>(f.clauses.size());

    CtcReduction out;
    for (int side = 0; side < 2; ++side) {
        Network net;
        VertexId rho = net.add_vertex("rho");
        std::vector<VertexId> vleaf(n + 1), vitems, citems;
        for (int i = 1; i <= n; ++i) vitems.push_back(vleaf[i] = net.add_leaf(variable_leaf(i)));
        std::vector<std::array<VertexId, 3>> r(m);
        for (int j = 1; j <= m; ++j) {
            GadgetPair g = gadget(j, f.clauses[j - 1]);
            const Network& gad = side == 0 ? g.gA : g.gB;
            const auto& att = side == 0 ? g.attachA : g.attachB;
            auto map = copy_into(net, gad, [](const std::string& s) { return s; });
            citems.push_back(map[gad.root()]);
            for (int l = 0; l < 3; ++l) r[j - 1][l] = map[att[l]];
        }
        net.add_edge(rho, hang_caterpillar(net, vitems));
        net.add_edge(rho, hang_caterpillar(net, citems));

        std::vector<VertexId> d(n + 1);
        for (int i = 1; i <= n; ++i) d[i] = subdivide(net, net.parents(vleaf[i])[0], vleaf[i], "d_" + std::to_string(i));
        for (int j = 1; j <= m; ++j) {
            for (int l = 0; l < 3; ++l) {
                Literal lit = f.clauses[j - 1][l];
                int k = std::abs(lit);
                // N takes the v-edge for positive literals, N' the d-edge.
                bool onto_v = (lit > 0) == (side == 0);
                VertexId head = onto_v ? vleaf[k] : d[k];
                VertexId u = subdivide(net, net.parents(head)[0], head,
                                       "u_" + std::to_string(j) + "^" + std::to_string(l + 1));
                net.add_edge(u, r[j - 1][l]);
            }
        }
        for (int i = 1; i <= n; ++i) suppress_vertex(net, d[i]);
        std::vector<VertexId> map;
        net = net.compacted(&map);
        for (auto& arr : r)
            for (auto& v : arr) v = map[v];
        auto rep = validate(net);
        if (!rep.ok()) throw std::logic_error("CTC reduction produced an invalid network: " + rep.violations.front());
        (side == 0 ? out.N : out.Nprime) = std::move(net);
        (side == 0 ? out.r : out.rprime) = std::move(r);
    }
    return out;
}

PathsReduction reduce_qsat_to_paths(const QBF3& f) {
    const int m = static_cast<int>(f.clauses.size());
    if (m < 1) throw std::invalid_argument("need at least one clause");
    std::vector<bool> used(f.n + 1);
    for (const auto& c : f.clauses)
        for (Literal l : c) {
            if (l == 0 || std::abs(l) > f.n) throw std::invalid_argument("literal out of range");
            used[std::abs(l)] = true;
        }
    PathsReduction red;
    red.var_map.assign(f.n + 1, 0);
    int n = 0, p = 0;
    for (int v = 1; v <= f.n; ++v)
        if (used[v]) {
            red.var_map[v] = ++n;
            if (v <= f.p) ++p;
        }
    if (p < 1 || p >= n) throw std::invalid_argument("need 1 <= p < n after pruning unused variables");
    for (const auto& c : f.clauses)
        if (std::none_of(c.begin(), c.end(), [&](Literal l) { return std::abs(l) > f.p; }))
            throw std::invalid_argument("clause without an existential literal");

    Network& g = red.inst.graph;
    std::vector<VertexId> sv(n + 1), tv(n + 1), y(n + 1);
    for (int i = 1; i <= n; ++i) {
        sv[i] = g.add_vertex("s_v" + std::to_string(i));
        tv[i] = g.add_leaf("tv" + std::to_string(i));
        y[i] = g.add_vertex("y" + std::to_string(i));
    }
    // Literal l (1-based over all clauses): in/out vertices on the path of its sign.
    std::vector<VertexId> lin(3 * m + 1), lout(3 * m + 1);
    std::vector<std::vector<int>> plus(n + 1), minus(n + 1);
    for (int j = 0; j < m; ++j)
        for (int q = 0; q < 3; ++q) {
            int l = 3 * j + q + 1;
            Literal lit = f.clauses[j][q];
            int i = red.var_map[std::abs(lit)];
            std::string tag = (lit > 0 ? "p" : "n") + std::to_string(l);
            lin[l] = g.add_vertex(tag + "_in");
            lout[l] = g.add_vertex(tag + "_out");
            (lit > 0 ? plus : minus)[i].push_back(l);
        }
    red.plus_paths.assign(n + 1, {});
    red.minus_paths.assign(n + 1, {});
    for (int i = 1; i <= n; ++i) {
        for (int sign = 0; sign < 2; ++sign) {
            Path path{sv[i]};
            for (int l : sign == 0 ? plus[i] : minus[i]) {
                path.push_back(lin[l]);
                path.push_back(lout[l]);
            }
            path.push_back(y[i]);
            path.push_back(tv[i]);
            for (size_t k = 0; k + 2 < path.size(); ++k) g.add_edge(path[k], path[k + 1]);
            (sign == 0 ? red.plus_paths : red.minus_paths)[i] = path;
        }
        g.add_edge(y[i], tv[i]);
    }
    std::vector<VertexId> sc(m + 1), tc(m + 1);
    for (int j = 1; j <= m; ++j) {
        std::string js = std::to_string(j);
        sc[j] = g.add_vertex("s_c" + js);
        tc[j] = g.add_leaf("tc" + js);
        VertexId u = g.add_vertex("u" + js), w = g.add_vertex("w" + js), w2 = g.add_vertex("w'" + js);
        g.add_edge(sc[j], u);
        g.add_edge(w, w2);
        g.add_edge(w2, tc[j]);
        int base = 3 * (j - 1);
        g.add_edge(u, lin[base + 1]);
        g.add_edge(lout[base + 1], w);
        g.add_edge(u, lin[base + 2]);
        g.add_edge(lout[base + 2], w);
        g.add_edge(sc[j], lin[base + 3]);
        g.add_edge(lout[base + 3], w2);
    }
    red.gadget_vertices = g.size();
    std::vector<VertexId> spine_items;
    for (int i = 1; i <= n; ++i) spine_items.push_back(sv[i]);
    for (int j = 1; j <= m; ++j) spine_items.push_back(sc[j]);
    hang_caterpillar(g, spine_items, "spine");
    red.spine_vertices = 2 * (n + m) - 1;

    auto rep = validate(g);
    if (!rep.ok()) throw std::logic_error("paths reduction produced an invalid network: " + rep.violations.front());
    for (int i = 1; i <= n; ++i) {
        red.inst.S.push_back(sv[i]);
        red.inst.T.push_back(tv[i]);
    }
    for (int j = 1; j <= m; ++j) {
        red.inst.S.push_back(sc[j]);
        red.inst.T.push_back(tc[j]);
    }
    red.inst.p = p;
    return red;
}

std::vector<Path> universal_paths_for(const PathsReduction& red, const Assignment& a) {
    std::vector<Path> out;
    for (int v = 1; v < static_cast<int>(red.var_map.size()); ++v) {
        int i = red.var_map[v];
        if (i == 0 || i > red.inst.p) continue;
        out.push_back(a.at(v) ? red.minus_paths[i] : red.plus_paths[i]);
    }
    return out;
}

namespace {

std::string fresh_label(const std::set<std::string>& taken, std::string want) {
    if (taken.count(want)) throw std::invalid_argument("label collision on '" + want + "'");
    return want;
}

void require_phylo_instance(const PathsInstance& inst) {
    const Network& g = inst.graph;
    auto rep = validate(g);
    if (!rep.ok()) throw std::invalid_argument("paths graph is not a phylogenetic network: " + rep.violations.front());
    if (inst.S.size() != inst.T.size()) throw std::invalid_argument("S and T differ in length");
    const int k = static_cast<int>(inst.S.size());
    if (inst.p < 1 || inst.p >= k) throw std::invalid_argument("need 1 <= p < k");
    std::set<VertexId> T(inst.T.begin(), inst.T.end()), L;
    for (VertexId v : g.leaves()) L.insert(v);
    if (T != L || static_cast<int>(T.size()) != k) throw std::invalid_argument("T must be exactly the leaf set");
    std::set<VertexId> S(inst.S.begin(), inst.S.end());
    if (static_cast<int>(S.size()) != k) throw std::invalid_argument("S has repeated vertices");
    if (!is_caterpillar_inducing(g, S)) throw std::invalid_argument("network is not caterpillar-inducing");
    if (!check_two_path_property(g, inst.pairs(), inst.p))
        throw std::invalid_argument("network lacks the two-path property");
    if (g.in_degree(inst.S[0]) != 1) throw std::invalid_argument("s_1 needs a unique parent");
}

}  // namespace

DscReduction reduce_paths_to_dsc(const PathsInstance& inst) {
    require_phylo_instance(inst);
    const Network& g = inst.graph;
    const int k = static_cast<int>(inst.S.size()), p = inst.p;
    auto taken = g.leaf_labels();
    std::vector<std::string> t(k), t1(p), t2(p);
    for (int i = 0; i < k; ++i) t[i] = g.label(inst.T[i]);
    const std::string t0 = fresh_label(taken, "t0");
    taken.insert(t0);
    for (int i = 0; i < p; ++i) {
        t1[i] = fresh_label(taken, t[i] + "_1");
        taken.insert(t1[i]);
        t2[i] = fresh_label(taken, t[i] + "_2");
        taken.insert(t2[i]);
    }

    DscReduction out;
    Network& n1 = out.N1;
    std::vector<VertexId> items{n1.add_leaf(t0)};
    for (int i = 0; i < p; ++i) {
        std::string is = std::to_string(i + 1);
        VertexId s = n1.add_vertex("s" + is), a = n1.add_vertex("u" + is + "^1"), b = n1.add_vertex("u" + is + "^2"),
                 c = n1.add_vertex("u" + is + "^3");
        n1.add_edge(s, a);
        n1.add_edge(s, b);
        n1.add_edge(a, c);
        n1.add_edge(b, c);
        n1.add_edge(c, n1.add_leaf(t[i]));
        n1.add_edge(a, n1.add_leaf(t1[i]));
        n1.add_edge(b, n1.add_leaf(t2[i]));
        items.push_back(s);
    }
    for (int i = p; i < k; ++i) items.push_back(n1.add_leaf(t[i]));
    hang_caterpillar(n1, items, "spine");

    Network n2 = g;
    VertexId s1 = inst.S[0];
    VertexId u = subdivide(n2, n2.parents(s1)[0], s1, "u");
    n2.add_edge(u, n2.add_leaf(t0));
    for (int i = 0; i < p; ++i) {
        VertexId s = inst.S[i];
        if (n2.out_degree(s) != 2) throw std::invalid_argument("universal source without two children");
        auto kids = n2.children(s);
        VertexId v1 = subdivide(n2, s, kids[0], "v'" + std::to_string(i + 1));
        VertexId v2 = subdivide(n2, s, kids[1], "v''" + std::to_string(i + 1));
        n2.add_edge(v1, n2.add_leaf(t1[i]));
        n2.add_edge(v2, n2.add_leaf(t2[i]));
    }
    out.N2 = std::move(n2);
    for (const Network* net : {&out.N1, &out.N2}) {
        auto rep = validate(*net);
        if (!rep.ok()) throw std::logic_error("DSC reduction produced an invalid network: " + rep.violations.front());
    }
    return out;
}

DseReduction reduce_dsc_to_dse(const Network& N1, const Network& N2) {
    for (const Network* net : {&N1, &N2}) {
        auto rep = validate(*net);
        if (!rep.ok()) throw std::invalid_argument("input is not a phylogenetic network: " + rep.violations.front());
    }
    const auto X = N1.leaf_labels();
    if (X != N2.leaf_labels()) throw std::invalid_argument("leaf-set mismatch");
    for (const auto& l : X)
        if (X.count(l + kPrimeSuffix)) throw std::invalid_argument("primed label '" + l + kPrimeSuffix + "' collides");
    auto dec = decompose_caterpillar_blocks(N1);
    if (!dec.decomposable) throw std::invalid_argument("N1 is not a caterpillar network");
    VertexId root = N1.root(), top = dec.block_roots.at(0);
    VertexId rest = N1.children(root)[0] == top ? N1.children(root)[1] : N1.children(root)[0];
    Network M1 = subnetwork_at(N1, rest), M1top = subnetwork_at(N1, top);

    auto prime = [](const std::string& l) { return l + kPrimeSuffix; };
    auto same = [](const std::string& l) { return l; };
    using Relabel = std::function<std::string(const std::string&)>;
    const int n = static_cast<int>(X.size());

    auto build = [&](const std::vector<std::pair<const Network*, Relabel>>& blocks, std::vector<VertexId>* backbone) {
        Network g;
        // u[j] for j = 2..2n+3; u_j is the parent of w_j, u_2 also of w_1.
        std::vector<VertexId> u(2 * n + 4, -1);
        for (int j = 2 * n + 3; j >= 2; --j) {
            u[j] = g.add_vertex("u" + std::to_string(j));
            if (j < 2 * n + 3) g.add_edge(u[j + 1], u[j]);
        }
        std::map<std::string, std::vector<VertexId>> copies;  // label -> leaf copies, ascending block
        for (int j = 1; j <= 2 * n + 3; ++j) {
            const auto& [net, relabel] = blocks[j - 1];
            auto map = copy_into(g, *net, relabel);
            VertexId r = map[net->root()];
            g.add_edge(j == 1 ? u[2] : u[j], r);
            for (VertexId v = 0; v < net->size(); ++v)
                if (map[v] >= 0 && net->out_degree(v) == 0) copies[relabel(net->label(v))].push_back(map[v]);
        }
        for (auto& [label, cs] : copies) {
            std::vector<VertexId> parents;
            for (VertexId c : cs) {
                VertexId par = g.parents(c)[0];
                g.remove_edge(par, c);
                g.set_label(c, "");
                parents.push_back(par);
            }
            VertexId below = parents[0];
            for (size_t b = 1; b < parents.size(); ++b) {
                VertexId h = g.add_vertex("h_" + label);
                g.add_edge(below, h);
                g.add_edge(parents[b], h);
                below = h;
            }
            g.add_edge(below, g.add_leaf(label));
        }
        std::vector<VertexId> map;
        g = g.compacted(&map);
        if (backbone)
            for (int j = 2 * n + 3; j >= 2; --j) backbone->push_back(map[u[j]]);
        auto rep = validate(g);
        if (!rep.ok()) throw std::logic_error("DSE reduction produced an invalid network: " + rep.violations.front());
        return g;
    };

    std::vector<std::pair<const Network*, Relabel>> b1, b2;
    for (int i = 0; i < n; ++i) {
        b1.emplace_back(&N2, same);
        b2.emplace_back(&N2, same);
    }
    b1.emplace_back(&N1, same);
    b1.emplace_back(&M1, prime);
    b1.emplace_back(&M1top, prime);
    b2.emplace_back(&M1, same);
    b2.emplace_back(&M1top, same);
    b2.emplace_back(&N1, prime);
    for (int i = 0; i < n; ++i) {
        b1.emplace_back(&N2, prime);
        b2.emplace_back(&N2, prime);
    }
    DseReduction out;
    out.N1star = build(b1, &out.backbone);
    out.N2star = build(b2, nullptr);
    return out;
}

std::optional<ReductionKind> parse_reduction_kind(const std::string& name) {
    if (name == "sat3-ctc") return ReductionKind::Sat3Ctc;
    if (name == "qsat-paths") return ReductionKind::QsatPaths;
    if (name == "paths-dsc") return ReductionKind::PathsDsc;
    if (name == "dsc-dse") return ReductionKind::DscDse;
    if (name == "chain") return ReductionKind::Chain;
    return std::nullopt;
}

std::string reduction_name(ReductionKind k) {
    switch (k) {
        case ReductionKind::Sat3Ctc: return "sat3-ctc";
        case ReductionKind::QsatPaths: return "qsat-paths";
        case ReductionKind::PathsDsc: return "paths-dsc";
        case ReductionKind::DscDse: return "dsc-dse";
        case ReductionKind::Chain: return "chain";
    }
    return "?";
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["instance"] = instance;
    j["kind"] = kind;
    j["oracle"] = oracle ? nlohmann::json(*oracle) : nlohmann::json(nullptr);
    j["reduced"] = reduced ? nlohmann::json(*reduced) : nlohmann::json(nullptr);
    j["agree"] = agree;
    j["budget_exhausted"] = budget_exhausted;
    j["detail"] = detail;
    j["oracle_ms"] = oracle_ms;
    j["reduced_ms"] = reduced_ms;
    return j.dump();
}

namespace {

template <class F>
double timed(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Runs both oracles; budget exhaustion and construction errors are reported.
VerificationReport run_pair(const std::string& kind, const std::string& id, const std::function<bool()>& oracle,
                            const std::function<bool()>& reduced) {
    VerificationReport r;
    r.kind = kind;
    r.instance = id;
    try {
        r.oracle_ms = timed([&] { r.oracle = oracle(); });
        r.reduced_ms = timed([&] { r.reduced = reduced(); });
    } catch (const BudgetExceeded& e) {
        r.budget_exhausted = true;
        r.detail = e.what();
    } catch (const std::exception& e) {
        r.detail = e.what();
    }
    r.agree = r.oracle && r.reduced && *r.oracle == *r.reduced;
    return r;
}

}  // namespace

VerificationReport verify_sat3_ctc(const QBF3& f, const std::string& id) {
    return run_pair(
        "sat3-ctc", id, [&] { return solve_exists(f).has_value(); },
        [&] {
            auto red = reduce_sat3_to_ctc(f);
            return common_tree(red.N, red.Nprime).has_value();
        });
}

VerificationReport verify_qsat_paths(const QBF3& f, const std::string& id) {
    return run_pair(
        "qsat-paths", id, [&] { return solve_forall_exists(f).yes; },
        [&] { return solve_forall_exists_paths(reduce_qsat_to_paths(f).inst).yes; });
}

VerificationReport verify_paths_dsc(const PathsInstance& inst, const std::string& id) {
    return run_pair(
        "paths-dsc", id, [&] { return solve_forall_exists_paths(inst).yes; },
        [&] {
            auto red = reduce_paths_to_dsc(inst);
            return !display_subset(red.N1, red.N2).has_value();
        });
}

VerificationReport verify_dsc_dse(const Network& N1, const Network& N2, const std::string& id) {
    return run_pair(
        "dsc-dse", id, [&] { return !display_subset(N1, N2).has_value(); },
        [&] {
            auto red = reduce_dsc_to_dse(N1, N2);
            return display_equivalence(red.N1star, red.N2star).equivalent;
        });
}

VerificationReport verify_chain(const QBF3& f, const std::string& id) {
    return run_pair(
        "chain", id, [&] { return solve_forall_exists(f).yes; },
        [&] {
            auto paths = reduce_qsat_to_paths(f);
            auto dsc = reduce_paths_to_dsc(paths.inst);
            auto dse = reduce_dsc_to_dse(dsc.N1, dsc.N2);
            return display_equivalence(dse.N1star, dse.N2star).equivalent;
        });
}

VerificationReport verify_reduction(ReductionKind kind, const std::string& text, int budget, const std::string& id) {
    ScopedReticCap cap(budget);
    switch (kind) {
        case ReductionKind::Sat3Ctc: {
            auto norm = normalize_for_ctc(parse_qdimacs(text));
            if (!norm.formula) {
                VerificationReport r;
                r.kind = "sat3-ctc";
                r.instance = id;
                r.detail = "formula repeats a variable inside a clause";
                return r;
            }
            return verify_sat3_ctc(*norm.formula, id);
        }
        case ReductionKind::QsatPaths: return verify_qsat_paths(parse_qdimacs(text), id);
        case ReductionKind::PathsDsc: return verify_paths_dsc(paths_from_json(text), id);
        case ReductionKind::DscDse: {
            auto nets = parse_enewick_lines(text);
            if (nets.size() != 2) throw std::invalid_argument("dsc-dse expects two eNewick lines");
            return verify_dsc_dse(nets[0], nets[1], id);
        }
        case ReductionKind::Chain: return verify_chain(parse_qdimacs(text), id);
    }
    return {};
}

}  // namespace phylo
