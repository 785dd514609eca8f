#include "phylo/core.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace phylo {

namespace {

std::string vname(const Network& n, VertexId v) {
    std::string s = "v" + std::to_string(v);
    if (!n.label(v).empty()) s += " (" + n.label(v) + ")";
    return s;
}

bool has_cycle(const Network& n) {
    try {
        n.topological_order();
        return false;
    } catch (const std::runtime_error&) {
        return true;
    }
}

}  // namespace

ValidationReport validate(const Network& net) {
    ValidationReport rep;
    auto bad = [&](const std::string& rule, const std::string& detail) {
        rep.violations.push_back(rule + ": " + detail);
    };
    if (net.size() == 0) {
        bad("empty", "network has no vertices");
        return rep;
    }
    if (net.size() == 1) {
        if (!net.block) bad("degenerate", "single-leaf network outside a block");
        if (net.label(0).empty()) bad("label", "leaf v0 unlabelled");
        return rep;
    }
    if (has_cycle(net)) bad("cyclic", "directed cycle present");

    std::vector<VertexId> roots;
    std::map<std::string, VertexId> seen;
    for (VertexId v = 0; v < net.size(); ++v) {
        int in = net.in_degree(v), out = net.out_degree(v);
        std::set<VertexId> kids(net.children(v).begin(), net.children(v).end());
        if (kids.size() != net.children(v).size()) bad("parallel", "parallel edges out of " + vname(net, v));
        if (in == 0) {
            roots.push_back(v);
            if (out != 2) bad("root", vname(net, v) + " has out-degree " + std::to_string(out));
            continue;
        }
        if (out == 0) {
            if (in != 1) bad("degree", vname(net, v) + " is a leaf with in-degree " + std::to_string(in));
            const std::string& l = net.label(v);
            if (l.empty()) {
                bad("label", "leaf " + vname(net, v) + " unlabelled");
            } else if (auto [it, fresh] = seen.emplace(l, v); !fresh) {
                bad("label", "label '" + l + "' used by v" + std::to_string(it->second) + " and v" + std::to_string(v));
            }
            continue;
        }
        if (!((in == 1 && out == 2) || (in == 2 && out == 1)))
            bad("degree", vname(net, v) + " has in=" + std::to_string(in) + ", out=" + std::to_string(out));
        if (!net.label(v).empty()) bad("label", "internal " + vname(net, v) + " carries a label");
    }
    if (roots.size() != 1) bad("root", std::to_string(roots.size()) + " vertices of in-degree 0");
    return rep;
}

Network suppress_elementary(const Network& dag) {
    Network n = dag;
    for (VertexId v = 0; v < n.size(); ++v) {
        if (n.in_degree(v) != 1 || n.out_degree(v) != 1) continue;
        VertexId p = n.parents(v)[0], c = n.children(v)[0];
        n.remove_edge(p, v);
        n.remove_edge(v, c);
        n.add_edge(p, c);
    }
    return n.compacted();
}

std::vector<bool> descendants(const Network& net, VertexId v) {
    std::vector<bool> seen(net.size());
    std::vector<VertexId> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (VertexId c : net.children(u))
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
    }
    return seen;
}

Network subnetwork_at(const Network& net, VertexId v) {
    Network out = net.induced(descendants(net, v));
    if (out.size() == 1) out.block = true;
    return out;
}

PhyloTree restrict_tree(const PhyloTree& tree, const std::set<std::string>& Y) {
    if (Y.empty()) throw std::invalid_argument("empty restriction");
    std::set<std::string> have = tree.leaf_labels();
    for (const auto& y : Y)
        if (!have.count(y)) throw std::invalid_argument("unknown label '" + y + "'");
    if (Y.size() == 1) return single_leaf(*Y.begin());

    std::vector<VertexId> order = tree.topological_order();
    std::vector<int> cnt(tree.size());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        if (tree.out_degree(v) == 0) cnt[v] = Y.count(tree.label(v)) ? 1 : 0;
        for (VertexId c : tree.children(v)) cnt[v] += cnt[c];
    }
    // Descend from the root to the lowest vertex that still sees all of Y.
    VertexId top = tree.root();
    const int total = static_cast<int>(Y.size());
    for (bool moved = true; moved;) {
        moved = false;
        for (VertexId c : tree.children(top))
            if (cnt[c] == total) {
                top = c;
                moved = true;
                break;
            }
    }
    std::vector<bool> keep = descendants(tree, top);
    for (VertexId v = 0; v < tree.size(); ++v) keep[v] = keep[v] && cnt[v] > 0;
    return suppress_elementary(tree.induced(keep));
}

CanonicalForm canonical_form_at(const PhyloTree& tree, VertexId v) {
    if (tree.out_degree(v) == 0) return tree.label(v);
    std::vector<std::string> parts;
    for (VertexId c : tree.children(v)) parts.push_back(canonical_form_at(tree, c));
    if (parts.size() == 1) return parts[0];
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += parts[i];
    }
    return s + ")";
}

CanonicalForm canonical_form(const PhyloTree& tree) { return canonical_form_at(tree, tree.root()); }

PhyloTree tree_from_canonical(const CanonicalForm& form) {
    PhyloTree t;
    size_t pos = 0;
    std::function<VertexId()> parse = [&]() -> VertexId {
        if (pos >= form.size()) throw std::invalid_argument("truncated canonical form");
        if (form[pos] != '(') {
            size_t end = form.find_first_of("(),", pos);
            if (end == std::string::npos) end = form.size();
            if (end == pos) throw std::invalid_argument("empty label in canonical form");
            std::string lab = form.substr(pos, end - pos);
            pos = end;
            return t.add_leaf(lab);
        }
        ++pos;
        VertexId v = t.add_vertex();
        t.add_edge(v, parse());
        if (pos >= form.size() || form[pos] != ',') throw std::invalid_argument("expected ',' in canonical form");
        ++pos;
        t.add_edge(v, parse());
        if (pos >= form.size() || form[pos] != ')') throw std::invalid_argument("expected ')' in canonical form");
        ++pos;
        return v;
    };
    parse();
    if (pos != form.size()) throw std::invalid_argument("trailing text in canonical form");
    if (t.size() == 1) t.block = true;
    return t;
}

PhyloTree make_caterpillar(const std::vector<std::string>& labels) {
    if (labels.empty()) throw std::invalid_argument("empty caterpillar");
    if (labels.size() == 1) return single_leaf(labels[0]);
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != labels.size()) throw std::invalid_argument("caterpillar labels not distinct");
    PhyloTree t;
    VertexId cur = t.add_vertex();
    t.add_edge(cur, t.add_leaf(labels[0]));
    t.add_edge(cur, t.add_leaf(labels[1]));
    for (size_t i = 2; i < labels.size(); ++i) {
        VertexId p = t.add_vertex();
        t.add_edge(p, cur);
        t.add_edge(p, t.add_leaf(labels[i]));
        cur = p;
    }
    return t;
}

bool contains_caterpillar(const PhyloTree& tree, const std::vector<std::string>& cat) {
    std::set<std::string> Y(cat.begin(), cat.end());
    return canonical_form(restrict_tree(tree, Y)) == canonical_form(make_caterpillar(cat));
}

namespace {

std::string min_label(const Network& net, const std::vector<bool>& in) {
    std::string best;
    for (VertexId v = 0; v < net.size(); ++v)
        if (in[v] && net.out_degree(v) == 0 && (best.empty() || net.label(v) < best)) best = net.label(v);
    return best;
}

}  // namespace

CaterpillarDecomposition decompose_caterpillar_blocks(const Network& net) {
    CaterpillarDecomposition out;
    VertexId root = net.root();

    // split(v): children of v have disjoint descendant sets.
    std::map<VertexId, std::vector<bool>> desc;
    auto D = [&](VertexId v) -> const std::vector<bool>& {
        auto it = desc.find(v);
        if (it == desc.end()) it = desc.emplace(v, descendants(net, v)).first;
        return it->second;
    };
    auto splits = [&](VertexId v) {
        if (net.out_degree(v) != 2) return false;
        const auto& a = D(net.children(v)[0]);
        const auto& b = D(net.children(v)[1]);
        for (int i = 0; i < net.size(); ++i)
            if (a[i] && b[i]) return false;
        return true;
    };
    // depth(v): number of blocks when v is a spine vertex (or 1 if v is a block).
    std::map<VertexId, int> memo;
    std::function<int(VertexId)> depth = [&](VertexId v) -> int {
        if (!splits(v)) return 1;
        if (auto it = memo.find(v); it != memo.end()) return it->second;
        int d = 1 + std::max(depth(net.children(v)[0]), depth(net.children(v)[1]));
        memo[v] = d;
        return d;
    };

    if (!splits(root)) {
        out.blocks.push_back(net);
        out.block_roots.push_back(root);
        return out;
    }
    out.decomposable = true;
    VertexId v = root;
    while (true) {
        out.spine.push_back(v);
        VertexId a = net.children(v)[0], b = net.children(v)[1];
        int da = depth(a), db = depth(b);
        bool bottom = da == 1 && db == 1;
        if (bottom) {
            // Bottom pair: B_1 is the one holding the smaller label.
            if (min_label(net, D(a)) < min_label(net, D(b))) std::swap(a, b);
            out.blocks.push_back(subnetwork_at(net, a));
            out.block_roots.push_back(a);
            out.blocks.push_back(subnetwork_at(net, b));
            out.block_roots.push_back(b);
            break;
        }
        VertexId cont = a, blk = b;
        if (db > da || (db == da && min_label(net, D(b)) < min_label(net, D(a)))) std::swap(cont, blk);
        out.blocks.push_back(subnetwork_at(net, blk));
        out.block_roots.push_back(blk);
        v = cont;
    }
    return out;
}

}  // namespace phylo
