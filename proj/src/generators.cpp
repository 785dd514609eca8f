#include "phylo/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "phylo/classes.hpp"
#include "phylo/core.hpp"

namespace phylo {

std::vector<std::string> leaf_names(int n, const std::string& prefix) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

PhyloTree random_tree(Rng& rng, const std::vector<std::string>& labels) {
    PhyloTree t;
    std::vector<VertexId> pool;
    for (const auto& l : labels) pool.push_back(t.add_leaf(l));
    if (pool.size() == 1) t.block = true;
    while (pool.size() > 1) {
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        size_t i = pick(rng);
        VertexId a = pool[i];
        pool.erase(pool.begin() + static_cast<long>(i));
        std::uniform_int_distribution<size_t> pick2(0, pool.size() - 1);
        size_t j = pick2(rng);
        VertexId v = t.add_vertex();
        t.add_edge(v, a);
        t.add_edge(v, pool[j]);
        pool[j] = v;
    }
    return t;
}

namespace {

bool try_add_reticulation(Network& n, Rng& rng) {
    auto edges = n.edges();
    std::uniform_int_distribution<size_t> pick(0, edges.size() - 1);
    auto [a, b] = edges[pick(rng)];
    auto [c, d] = edges[pick(rng)];
    if (a == c && b == d) return false;
    Network m = n;
    VertexId p = m.add_vertex(), h = m.add_vertex();
    m.remove_edge(a, b);
    m.add_edge(a, p);
    m.add_edge(p, b);
    m.remove_edge(c, d);
    m.add_edge(c, h);
    m.add_edge(h, d);
    m.add_edge(p, h);
    try {
        m.topological_order();
    } catch (const std::runtime_error&) {
        return false;
    }
    if (!validate(m).ok()) return false;
    n = std::move(m);
    return true;
}

}  // namespace

Network random_network(Rng& rng, const std::vector<std::string>& labels, int k) {
    if (labels.size() < 2 && k > 0) throw std::invalid_argument("reticulations need at least two leaves");
    while (true) {
        Network n = random_tree(rng, labels);
        int added = 0, tries = 0;
        while (added < k && tries < 100 * (k + 1)) {
            ++tries;
            if (try_add_reticulation(n, rng)) ++added;
        }
        if (added == k) return n;
    }
}

Network random_tree_child_network(Rng& rng, const std::vector<std::string>& labels, int k) {
    while (true) {
        Network n = random_network(rng, labels, k);
        if (is_tree_child(n)) return n;
    }
}

Network independent_diamonds(int k) {
    Network n;
    std::vector<VertexId> blocks;
    for (int i = 1; i <= k; ++i) {
        std::string s = std::to_string(i);
        VertexId top = n.add_vertex(), l = n.add_vertex(), r = n.add_vertex(), h = n.add_vertex();
        n.add_edge(top, l);
        n.add_edge(top, r);
        n.add_edge(l, h);
        n.add_edge(r, h);
        n.add_edge(h, n.add_leaf("h" + s));
        n.add_edge(l, n.add_leaf("a" + s));
        n.add_edge(r, n.add_leaf("b" + s));
        blocks.push_back(top);
    }
    blocks.push_back(n.add_leaf("z"));
    VertexId cur = blocks[0];
    for (size_t i = 1; i < blocks.size(); ++i) {
        VertexId v = n.add_vertex();
        n.add_edge(v, cur);
        n.add_edge(v, blocks[i]);
        cur = v;
    }
    return n;
}

QBF3 random_sat3(Rng& rng, int n, int m) {
    if (n < 3) throw std::invalid_argument("need n >= 3 for clauses on distinct variables");
    if (3 * m < n) throw std::invalid_argument("m clauses cannot use all n variables");
    while (true) {
        QBF3 f;
        f.n = n;
        std::vector<bool> used(n + 1);
        for (int j = 0; j < m; ++j) {
            std::vector<int> vars(n);
            std::iota(vars.begin(), vars.end(), 1);
            std::shuffle(vars.begin(), vars.end(), rng);
            std::sort(vars.begin(), vars.begin() + 3);
            Clause c;
            for (int l = 0; l < 3; ++l) {
                c[l] = rng() & 1 ? vars[l] : -vars[l];
                used[vars[l]] = true;
            }
            f.clauses.push_back(c);
        }
        if (std::count(used.begin() + 1, used.end(), true) == n) return f;
    }
}

QBF3 random_forall_exists(Rng& rng, int n, int p, int m) {
    if (p < 1 || p >= n) throw std::invalid_argument("need 1 <= p < n");
    if (3 * m < n) throw std::invalid_argument("m clauses cannot use all n variables");
    std::uniform_int_distribution<int> var(1, n), evar(p + 1, n);
    while (true) {
        QBF3 f;
        f.n = n;
        f.p = p;
        std::vector<bool> used(n + 1);
        for (int j = 0; j < m; ++j) {
            Clause c;
            for (int l = 0; l < 3; ++l) {
                int v = l == 0 ? evar(rng) : var(rng);
                c[l] = rng() & 1 ? v : -v;
                used[v] = true;
            }
            std::shuffle(c.begin(), c.end(), rng);
            f.clauses.push_back(c);
        }
        if (std::count(used.begin() + 1, used.end(), true) == n) return f;
    }
}

std::optional<PathsInstance> random_phylo_paths_instance(Rng& rng, int k, int p, int max_vertices, int attempts) {
    for (int a = 0; a < attempts; ++a) {
        PathsInstance inst;
        Network& g = inst.graph;
        std::vector<VertexId> S;
        for (int i = 0; i < k; ++i) S.push_back(g.add_vertex());
        // Open out-slots, filled top-down with tree vertices, reticulations or leaves.
        std::vector<VertexId> slots;
        for (VertexId s : S) slots.insert(slots.end(), {s, s});
        int leaves = 0;
        bool ok = true;
        while (!slots.empty() && ok) {
            if (g.size() > max_vertices) {
                ok = false;
                break;
            }
            std::uniform_int_distribution<size_t> pick(0, slots.size() - 1);
            size_t i = pick(rng);
            VertexId u = slots[i];
            slots.erase(slots.begin() + static_cast<long>(i));
            int choice = static_cast<int>(rng() % 6);
            int open_after = static_cast<int>(slots.size());
            if (leaves < k && (choice < 2 || open_after + leaves + 1 > 2 * k + 4)) {
                g.add_edge(u, g.add_leaf("t" + std::to_string(++leaves)));
            } else if (choice < 4 && !slots.empty()) {
                std::uniform_int_distribution<size_t> pick2(0, slots.size() - 1);
                size_t j = pick2(rng);
                VertexId w = slots[j];
                if (w == u) continue;
                slots.erase(slots.begin() + static_cast<long>(j));
                VertexId h = g.add_vertex();
                g.add_edge(u, h);
                g.add_edge(w, h);
                slots.push_back(h);
            } else if (choice < 5 || leaves >= k) {
                if (leaves >= k && slots.empty()) {
                    ok = false;
                    break;
                }
                VertexId t = g.add_vertex();
                g.add_edge(u, t);
                slots.insert(slots.end(), {t, t});
            } else {
                g.add_edge(u, g.add_leaf("t" + std::to_string(++leaves)));
            }
        }
        if (!ok || leaves != k) continue;
        // Spine caterpillar over S.
        VertexId top = S[0];
        for (int i = 1; i < k; ++i) {
            VertexId v = g.add_vertex();
            g.add_edge(v, top);
            g.add_edge(v, S[i]);
            top = v;
        }
        if (g.size() > max_vertices || !validate(g).ok()) continue;
        std::vector<VertexId> T = g.leaves();
        std::shuffle(T.begin(), T.end(), rng);
        std::shuffle(S.begin(), S.end(), rng);
        inst.S = S;
        inst.T = T;
        inst.p = p;
        if (g.in_degree(S[0]) != 1) continue;
        std::set<VertexId> Sset(S.begin(), S.end());
        if (!is_caterpillar_inducing(g, Sset)) continue;
        if (!check_two_path_property(g, inst.pairs(), p)) continue;
        return inst;
    }
    return std::nullopt;
}

}  // namespace phylo
