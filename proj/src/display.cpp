#include "phylo/display.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <string>

namespace phylo {

namespace {

int initial_cap() {
    if (const char* env = std::getenv("PHYLO_RETIC_CAP")) {
        try {
            int v = std::stoi(env);
            if (v >= 0) return v;
        } catch (const std::exception&) {
        }
    }
    return 20;
}

int g_cap = initial_cap();

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_label(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a, then finalised
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return mix(h);
}

std::uint64_t hash_pair(std::uint64_t a, std::uint64_t b) {
    if (a > b) std::swap(a, b);
    return mix(mix(a) ^ (b * 0x2545f4914f6cdd1dULL) ^ 0x5bd1e995ULL);
}

// Maintains the displayed tree of the current switching bottom-up. A vertex
// value is the fingerprint of the tree hanging from it after cleanup, or
// empty when no kept leaf lies below it. Flipping one reticulation only
// touches the two active-parent chains above it.
class Engine {
public:
    Engine(const Network& net, const std::set<std::string>* keep = nullptr) : net_(net) {
        rets_ = net.reticulations();
        if (static_cast<int>(rets_.size()) > retic_cap())
            throw BudgetExceeded("reticulation budget exceeded (" + std::to_string(rets_.size()) + " > " +
                                 std::to_string(retic_cap()) + ")");
        for (VertexId r : rets_)
            if (net.in_degree(r) != 2) throw std::invalid_argument("reticulation with in-degree != 2");
        ret_index_.assign(net.size(), -1);
        for (size_t i = 0; i < rets_.size(); ++i) ret_index_[rets_[i]] = static_cast<int>(i);
        bits_.assign(rets_.size(), 0);
        val_.assign(net.size(), 0);
        full_.assign(net.size(), 0);
        for (VertexId v = 0; v < net.size(); ++v) {
            if (net.out_degree(v) != 0) continue;
            if (!keep || keep->count(net.label(v))) {
                val_[v] = hash_label(net.label(v));
                full_[v] = 1;
            }
        }
        order_ = net.topological_order();
        root_ = net.root();
        for (auto it = order_.rbegin(); it != order_.rend(); ++it) recompute(*it);
    }

    int k() const { return static_cast<int>(rets_.size()); }
    const std::vector<VertexId>& rets() const { return rets_; }

    void set_mask(std::uint64_t mask) {
        for (int i = 0; i < k(); ++i) bits_[i] = (mask >> i) & 1;
        for (auto it = order_.rbegin(); it != order_.rend(); ++it) recompute(*it);
    }

    void flip(int i) {
        VertexId r = rets_[i];
        VertexId old_p = active_parent(r);
        bits_[i] ^= 1;
        VertexId new_p = active_parent(r);
        climb(old_p);
        climb(new_p);
    }

    bool nonempty() const { return full_[root_]; }
    std::uint64_t fingerprint() const { return full_[root_] ? val_[root_] : 0; }

    Switching switching() const {
        Switching s;
        for (int i = 0; i < k(); ++i) s.chosen.emplace_back(active_parent(rets_[i]), rets_[i]);
        return s;
    }

    bool active(VertexId p, VertexId c) const {
        int i = ret_index_[c];
        return i < 0 || net_.parents(c)[bits_[i]] == p;
    }

    CanonicalForm canonical() const { return canon(root_); }

    // Top of the embedding: first vertex from the root with two live children.
    VertexId embedding_root() const {
        VertexId v = root_;
        while (true) {
            std::vector<VertexId> live = live_children(v);
            if (live.size() != 1) return v;
            v = live[0];
        }
    }

    std::vector<Edge> embedding_edges() const {
        std::vector<Edge> out;
        std::vector<VertexId> stack{embedding_root()};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (VertexId c : live_children(v)) {
                out.emplace_back(v, c);
                stack.push_back(c);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    VertexId active_parent(VertexId v) const {
        int i = ret_index_[v];
        if (i >= 0) return net_.parents(v)[bits_[i]];
        return net_.parents(v).empty() ? -1 : net_.parents(v)[0];
    }

    std::vector<VertexId> live_children(VertexId v) const {
        std::vector<VertexId> out;
        for (VertexId c : net_.children(v))
            if (active(v, c) && full_[c]) out.push_back(c);
        return out;
    }

    void recompute(VertexId v) {
        if (net_.out_degree(v) == 0) return;
        std::uint64_t h[2];
        int n = 0;
        for (VertexId c : net_.children(v))
            if (active(v, c) && full_[c]) h[n++] = val_[c];
        full_[v] = n > 0;
        val_[v] = n == 0 ? 0 : n == 1 ? h[0] : hash_pair(h[0], h[1]);
    }

    void climb(VertexId v) {
        while (v != -1) {
            recompute(v);
            v = active_parent(v);
        }
    }

    CanonicalForm canon(VertexId v) const {
        if (net_.out_degree(v) == 0) return net_.label(v);
        std::vector<CanonicalForm> parts;
        for (VertexId c : live_children(v)) parts.push_back(canon(c));
        if (parts.size() == 1) return parts[0];
        std::sort(parts.begin(), parts.end());
        return "(" + parts[0] + "," + parts[1] + ")";
    }

    const Network& net_;
    std::vector<VertexId> rets_;
    std::vector<int> ret_index_;
    std::vector<int> bits_;
    std::vector<std::uint64_t> val_;
    std::vector<char> full_;
    std::vector<VertexId> order_;
    VertexId root_;
};

// Visits every switching in Gray-code order; fn receives the bit mask.
template <class F>
void gray_walk(Engine& e, F&& fn) {
    const int k = e.k();
    if (!fn(std::uint64_t{0})) return;
    std::uint64_t mask = 0;
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < total; ++i) {
        int b = std::countr_zero(i);
        e.flip(b);
        mask ^= std::uint64_t{1} << b;
        if (!fn(mask)) return;
    }
}

struct Print {
    std::uint64_t hash;
    std::uint64_t mask;
    bool operator<(const Print& o) const { return hash < o.hash || (hash == o.hash && mask < o.mask); }
};

// One representative switching per distinct fingerprint.
std::vector<Print> distinct_prints(const Network& net, bool base_only = false) {
    Engine e(net);
    std::vector<Print> out;
    auto dedup = [&] {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end(), [](const Print& a, const Print& b) { return a.hash == b.hash; }),
                  out.end());
    };
    // Dedup as we go so memory follows the number of distinct trees.
    std::size_t next_dedup = 1 << 20;
    gray_walk(e, [&](std::uint64_t mask) {
        if (base_only && !is_base_tree_switching(net, e.switching())) return true;
        out.push_back({e.fingerprint(), mask});
        if (out.size() >= next_dedup) {
            dedup();
            next_dedup = 2 * out.size() + (1 << 20);
        }
        return true;
    });
    dedup();
    return out;
}

CanonicalForm form_of(const Network& net, std::uint64_t mask) {
    Engine e(net);
    e.set_mask(mask);
    return e.canonical();
}

void require_same_leaves(const Network& a, const Network& b) {
    if (a.leaf_labels() != b.leaf_labels()) throw std::invalid_argument("leaf-set mismatch");
}

bool contains(const std::vector<Print>& v, std::uint64_t h) {
    auto it = std::lower_bound(v.begin(), v.end(), Print{h, 0});
    return it != v.end() && it->hash == h;
}

std::optional<CanonicalForm> least_common(const Network& a, const Network& b, bool base_only) {
    require_same_leaves(a, b);
    auto pa = distinct_prints(a, base_only);
    auto pb = distinct_prints(b, base_only);
    std::optional<CanonicalForm> best;
    size_t j = 0;
    for (const Print& x : pa) {
        while (j < pb.size() && pb[j].hash < x.hash) ++j;
        if (j == pb.size()) break;
        if (pb[j].hash != x.hash) continue;
        CanonicalForm f = form_of(a, x.mask);
        if (f != form_of(b, pb[j].mask)) continue;
        if (!best || f < *best) best = f;
    }
    return best;
}

std::optional<CanonicalForm> least_missing(const std::vector<Print>& pa, const Network& a,
                                           const std::vector<Print>& pb) {
    std::optional<CanonicalForm> best;
    for (const Print& x : pa) {
        if (contains(pb, x.hash)) continue;
        CanonicalForm f = form_of(a, x.mask);
        if (!best || f < *best) best = f;
    }
    return best;
}

}  // namespace

int retic_cap() { return g_cap; }
void set_retic_cap(int cap) { g_cap = cap; }

void for_each_switching(const Network& net, const std::function<bool(const Switching&)>& fn) {
    std::vector<VertexId> rets = net.reticulations();
    const int k = static_cast<int>(rets.size());
    if (k > retic_cap())
        throw BudgetExceeded("reticulation budget exceeded (" + std::to_string(k) + " > " +
                             std::to_string(retic_cap()) + ")");
    const std::uint64_t total = std::uint64_t{1} << k;
    Switching s;
    s.chosen.resize(k);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < k; ++i) s.chosen[i] = {net.parents(rets[i])[(mask >> i) & 1], rets[i]};
        if (!fn(s)) return;
    }
}

std::vector<Switching> enumerate_switchings(const Network& net) {
    std::vector<Switching> out;
    for_each_switching(net, [&](const Switching& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

PhyloTree yield_tree(const Network& net, const Switching& s) {
    Network n = net;
    std::set<Edge> kept(s.chosen.begin(), s.chosen.end());
    for (VertexId r : net.reticulations())
        for (VertexId p : net.parents(r))
            if (!kept.count({p, r})) n.remove_edge(p, r);
    const std::set<std::string> X = net.leaf_labels();
    for (bool changed = true; changed;) {
        changed = false;
        for (VertexId v = 0; v < n.size(); ++v) {
            int in = n.in_degree(v), out = n.out_degree(v);
            if (in == 1 && out == 1) {
                VertexId p = n.parents(v)[0], c = n.children(v)[0];
                n.remove_edge(p, v);
                n.remove_edge(v, c);
                n.add_edge(p, c);
                changed = true;
            } else if (in == 1 && out == 0 && !(X.count(n.label(v)) && net.out_degree(v) == 0)) {
                n.remove_edge(n.parents(v)[0], v);
                changed = true;
            } else if (in == 0 && out == 1) {
                n.remove_edge(v, n.children(v)[0]);
                changed = true;
            }
        }
    }
    PhyloTree t = n.compacted();
    if (t.size() == 1) t.block = true;
    return t;
}

std::set<CanonicalForm> display_set(const Network& net) {
    std::set<CanonicalForm> out;
    for (const Print& p : distinct_prints(net)) out.insert(form_of(net, p.mask));
    return out;
}

std::optional<Embedding> displays(const Network& net, const PhyloTree& tree) {
    std::set<std::string> Y = tree.leaf_labels();
    std::set<std::string> X = net.leaf_labels();
    for (const auto& y : Y)
        if (!X.count(y)) throw std::invalid_argument("unknown label '" + y + "'");
    const CanonicalForm want = canonical_form(tree);
    Engine e(net, &Y);
    std::function<std::uint64_t(VertexId)> fp = [&](VertexId v) -> std::uint64_t {
        if (tree.out_degree(v) == 0) return hash_label(tree.label(v));
        if (tree.out_degree(v) == 1) return fp(tree.children(v)[0]);
        return hash_pair(fp(tree.children(v)[0]), fp(tree.children(v)[1]));
    };
    const std::uint64_t target = fp(tree.root());
    std::optional<Embedding> found;
    gray_walk(e, [&](std::uint64_t) {
        if (e.fingerprint() != target || e.canonical() != want) return true;
        found = Embedding{e.embedding_edges(), e.embedding_root()};
        return false;
    });
    return found;
}

std::optional<CanonicalForm> common_tree(const Network& a, const Network& b) { return least_common(a, b, false); }

std::optional<CanonicalForm> display_subset(const Network& a, const Network& b) {
    require_same_leaves(a, b);
    return least_missing(distinct_prints(a), a, distinct_prints(b));
}

EquivalenceResult display_equivalence(const Network& a, const Network& b) {
    require_same_leaves(a, b);
    auto pa = distinct_prints(a);
    auto pb = distinct_prints(b);
    EquivalenceResult r;
    if (auto cx = least_missing(pa, a, pb)) {
        r.equivalent = false;
        r.side = 1;
        r.counterexample = *cx;
    } else if (auto cy = least_missing(pb, b, pa)) {
        r.equivalent = false;
        r.side = 2;
        r.counterexample = *cy;
    }
    return r;
}

std::size_t count_common(const Network& a, const Network& b) {
    require_same_leaves(a, b);
    auto pa = distinct_prints(a);
    auto pb = distinct_prints(b);
    std::size_t n = 0;
    for (const Print& x : pa)
        if (contains(pb, x.hash)) ++n;
    return n;
}

bool is_base_tree_switching(const Network& net, const Switching& s) {
    std::set<Edge> kept(s.chosen.begin(), s.chosen.end());
    for (VertexId u = 0; u < net.size(); ++u) {
        if (net.out_degree(u) == 0) continue;
        bool only_rets = true, keeps_one = false;
        for (VertexId c : net.children(u)) {
            if (!net.is_reticulation(c)) only_rets = false;
            else if (kept.count({u, c})) keeps_one = true;
        }
        if (only_rets && !keeps_one) return false;
    }
    return true;
}

std::set<CanonicalForm> base_tree_set(const Network& net) {
    std::set<CanonicalForm> out;
    for (const Print& p : distinct_prints(net, true)) out.insert(form_of(net, p.mask));
    return out;
}

bool is_tree_based(const Network& net) {
    Engine e(net);
    bool found = false;
    gray_walk(e, [&](std::uint64_t) {
        found = is_base_tree_switching(net, e.switching());
        return !found;
    });
    return found;
}

std::optional<CanonicalForm> common_base_tree(const Network& a, const Network& b) {
    if (!is_tree_based(a) || !is_tree_based(b)) throw std::invalid_argument("network is not tree-based");
    return least_common(a, b, true);
}

std::vector<std::uint64_t> switching_fingerprints(const Network& net) {
    Engine e(net);
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t{1} << e.k());
    gray_walk(e, [&](std::uint64_t) {
        out.push_back(e.fingerprint());
        return true;
    });
    return out;
}

}  // namespace phylo
