#include "phylo/classes.hpp"

#include <algorithm>
#include <numeric>

#include "phylo/core.hpp"
#include "phylo/display.hpp"
#include "phylo/paths.hpp"

namespace phylo {

namespace {

// Is there a u->v path avoiding the direct edge (u,v)?
bool bypassed(const Network& net, VertexId u, VertexId v) {
    std::vector<bool> seen(net.size());
    std::vector<VertexId> stack;
    for (VertexId c : net.children(u))
        if (c != v) {
            stack.push_back(c);
            seen[c] = true;
        }
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (x == v) return true;
        for (VertexId c : net.children(x))
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
    }
    return false;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void join(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::vector<Edge> find_shortcuts(const Network& net) {
    std::vector<Edge> out;
    for (auto [u, v] : net.edges())
        if (bypassed(net, u, v)) out.emplace_back(u, v);
    return out;
}

std::vector<bool> visible_vertices(const Network& net) {
    const VertexId root = net.root();
    const std::vector<VertexId> leaves = net.leaves();
    std::vector<bool> vis(net.size());
    for (VertexId v = 0; v < net.size(); ++v) {
        if (net.out_degree(v) == 0) {
            vis[v] = true;
            continue;
        }
        // Which leaves stay reachable from the root once v is removed?
        std::vector<bool> seen(net.size());
        if (v != root) {
            std::vector<VertexId> stack{root};
            seen[root] = true;
            while (!stack.empty()) {
                VertexId x = stack.back();
                stack.pop_back();
                for (VertexId c : net.children(x))
                    if (c != v && !seen[c]) {
                        seen[c] = true;
                        stack.push_back(c);
                    }
            }
        }
        for (VertexId l : leaves)
            if (!seen[l]) vis[v] = true;
    }
    return vis;
}

bool is_tree_child(const Network& net) {
    for (VertexId v = 0; v < net.size(); ++v) {
        if (net.out_degree(v) == 0) continue;
        bool ok = false;
        for (VertexId c : net.children(v))
            if (!net.is_reticulation(c)) ok = true;
        if (!ok) return false;
    }
    return true;
}

bool is_normal(const Network& net) { return is_tree_child(net) && find_shortcuts(net).empty(); }

std::optional<std::vector<int>> temporal_labeling(const Network& net) {
    const int n = net.size();
    UnionFind uf(n);
    for (auto [u, v] : net.edges())
        if (net.is_reticulation(v)) uf.join(u, v);
    // Quotient graph over tree edges.
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n);
    for (auto [u, v] : net.edges()) {
        if (net.is_reticulation(v)) continue;
        int a = uf.find(u), b = uf.find(v);
        if (a == b) return std::nullopt;
        succ[a].push_back(b);
        ++indeg[b];
    }
    std::vector<int> rank(n, 1), stack;
    int classes = 0, done = 0;
    for (int c = 0; c < n; ++c)
        if (uf.find(c) == c) {
            ++classes;
            if (indeg[c] == 0) stack.push_back(c);
        }
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        ++done;
        for (int d : succ[c]) {
            rank[d] = std::max(rank[d], rank[c] + 1);
            if (--indeg[d] == 0) stack.push_back(d);
        }
    }
    if (done != classes) return std::nullopt;
    std::vector<int> t(n);
    for (int v = 0; v < n; ++v) t[v] = rank[uf.find(v)];
    return t;
}

bool is_temporal(const Network& net) { return temporal_labeling(net).has_value(); }

ClassReport classify(const Network& net, bool* tree_based_known) {
    ClassReport r;
    r.tree_child = is_tree_child(net);
    r.shortcuts = find_shortcuts(net);
    r.normal = r.tree_child && r.shortcuts.empty();
    const auto vis = visible_vertices(net);
    r.reticulation_visible = true;
    for (VertexId v : net.reticulations())
        if (!vis[v]) r.reticulation_visible = false;
#ifndef NDEBUG
    bool all_visible = std::all_of(vis.begin(), vis.end(), [](bool b) { return b; });
    if (all_visible != r.tree_child) throw std::logic_error("tree-child rule disagrees with visibility");
#endif
    r.temporal = temporal_labeling(net);
    bool known = true;
    try {
        r.tree_based = is_tree_based(net);
    } catch (const BudgetExceeded&) {
        known = false;
    }
    if (tree_based_known) *tree_based_known = known;
    return r;
}

bool is_caterpillar_inducing(const Network& net, const std::set<VertexId>& S) {
    for (VertexId s : S)
        if (net.out_degree(s) == 0) throw std::invalid_argument("S contains a leaf");
    std::vector<bool> gone(net.size());
    for (VertexId s : S)
        for (VertexId c : net.children(s)) {
            auto d = descendants(net, c);
            for (VertexId v = 0; v < net.size(); ++v)
                if (d[v]) gone[v] = true;
        }
    std::vector<VertexId> keep;
    for (VertexId v = 0; v < net.size(); ++v)
        if (!gone[v]) keep.push_back(v);
    auto kept_children = [&](VertexId v) {
        std::vector<VertexId> out;
        for (VertexId c : net.children(v))
            if (!gone[c]) out.push_back(c);
        return out;
    };
    auto kept_parents = [&](VertexId v) {
        int n = 0;
        for (VertexId p : net.parents(v))
            if (!gone[p]) ++n;
        return n;
    };
    int roots = 0, leaves = 0;
    for (VertexId v : keep) {
        int in = kept_parents(v);
        auto kids = kept_children(v);
        if (in > 1) return false;
        if (in == 0) {
            ++roots;
            if (kids.size() != 2) return false;
        } else if (kids.empty()) {
            ++leaves;
            continue;
        } else if (kids.size() != 2) {
            return false;
        }
        // Caterpillar: at most one non-leaf child per internal vertex.
        int internal = 0;
        for (VertexId c : kids)
            if (!kept_children(c).empty()) ++internal;
        if (internal > 1) return false;
    }
    return roots == 1 && leaves >= 2;
}

std::optional<TwoPathCertificate> check_two_path_property(const Network& net,
                                                          const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                                          int p) {
    if (p < 1 || p > static_cast<int>(pairs.size())) throw std::invalid_argument("p out of range");
    TwoPathCertificate cert;
    std::vector<int> owner(net.size(), -1);
    for (int i = 0; i < p; ++i) {
        auto [s, t] = pairs[i];
        if (s < 0 || s >= net.size() || t < 0 || t >= net.size()) throw std::invalid_argument("vertex absent");
        std::vector<std::vector<VertexId>> ps;
        try {
            ps = enumerate_st_paths(net, s, t, 64);
        } catch (const BudgetExceeded&) {
            return std::nullopt;
        }
        if (ps.size() != 2) return std::nullopt;  // (i)
        if (net.in_degree(t) != 1) return std::nullopt;
        std::set<VertexId> a(ps[0].begin(), ps[0].end()), b(ps[1].begin(), ps[1].end());
        std::set<VertexId> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(common, common.end()));
        if (common != std::set<VertexId>{s, t, net.parents(t)[0]}) return std::nullopt;  // (ii)
        for (const auto& path : ps)
            for (VertexId v : path) {
                if (owner[v] != -1 && owner[v] != i) return std::nullopt;  // (iii)
                owner[v] = i;
            }
        cert.paths.emplace_back(ps[0], ps[1]);
    }
    return cert;
}

}  // namespace phylo
