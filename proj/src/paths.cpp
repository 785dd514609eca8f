#include "phylo/paths.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "phylo/classes.hpp"

namespace phylo {

std::vector<std::pair<VertexId, VertexId>> PathsInstance::pairs() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (size_t i = 0; i < S.size(); ++i) out.emplace_back(S[i], T[i]);
    return out;
}

std::vector<Path> enumerate_st_paths(const Network& g, VertexId s, VertexId t, std::size_t limit) {
    if (s < 0 || s >= g.size() || t < 0 || t >= g.size()) throw std::invalid_argument("vertex absent");
    std::vector<Path> out;
    Path cur{s};
    std::function<void(VertexId)> dfs = [&](VertexId v) {
        if (v == t) {
            if (out.size() == limit) throw BudgetExceeded("path limit exceeded");
            out.push_back(cur);
            return;
        }
        for (VertexId c : g.children(v)) {
            cur.push_back(c);
            dfs(c);
            cur.pop_back();
        }
    };
    dfs(s);
    return out;
}

namespace {

class LinkageSearch {
public:
    LinkageSearch(const Network& g, const std::vector<std::pair<VertexId, VertexId>>& pairs, std::uint64_t budget)
        : g_(g), pairs_(pairs), budget_(budget), used_(g.size()), chosen_(pairs.size()) {
        order_ = g.topological_order();
    }

    bool run(const Linkage& fixed) {
        for (size_t i = 0; i < fixed.paths.size(); ++i) {
            for (VertexId v : fixed.paths[i]) {
                if (used_[v]) return false;
                used_[v] = true;
            }
            chosen_[i] = fixed.paths[i];
        }
        std::vector<int> open;
        for (size_t i = fixed.paths.size(); i < pairs_.size(); ++i) open.push_back(static_cast<int>(i));
        return solve(open);
    }

    Linkage result() const { return Linkage{chosen_}; }

private:
    // Number of s->t paths avoiding used vertices (saturating).
    std::uint64_t count(VertexId s, VertexId t) {
        if (used_[s] || used_[t]) return 0;
        std::vector<std::uint64_t> n(g_.size(), 0);
        n[t] = 1;
        for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
            VertexId v = *it;
            if (v == t || used_[v]) continue;
            std::uint64_t sum = 0;
            for (VertexId c : g_.children(v)) sum = std::min<std::uint64_t>(sum + n[c], 1ULL << 40);
            n[v] = sum;
        }
        return n[s];
    }

    bool solve(std::vector<int>& open) {
        if (open.empty()) return true;
        if (++nodes_ > budget_) throw BudgetExceeded("linkage search budget exceeded");
        // Fail-first: the pair with the fewest remaining candidate paths.
        size_t best = 0;
        std::uint64_t best_n = UINT64_MAX;
        for (size_t i = 0; i < open.size(); ++i) {
            std::uint64_t n = count(pairs_[open[i]].first, pairs_[open[i]].second);
            if (n == 0) return false;
            if (n < best_n) {
                best_n = n;
                best = i;
            }
        }
        int idx = open[best];
        open.erase(open.begin() + best);
        auto [s, t] = pairs_[idx];
        Path cur{s};
        used_[s] = true;
        bool ok = extend(s, t, cur, idx, open);
        used_[s] = false;
        open.insert(open.begin() + best, idx);
        return ok;
    }

    bool extend(VertexId v, VertexId t, Path& cur, int idx, std::vector<int>& open) {
        if (v == t) {
            chosen_[idx] = cur;
            return solve(open);
        }
        for (VertexId c : g_.children(v)) {
            if (used_[c]) continue;
            used_[c] = true;
            cur.push_back(c);
            bool ok = extend(c, t, cur, idx, open);
            cur.pop_back();
            used_[c] = false;
            if (ok) return true;
        }
        return false;
    }

    const Network& g_;
    const std::vector<std::pair<VertexId, VertexId>>& pairs_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<bool> used_;
    std::vector<Path> chosen_;
    std::vector<VertexId> order_;
};

bool mutually_disjoint(const std::vector<Path>& ps) {
    std::set<VertexId> seen;
    for (const auto& p : ps)
        for (VertexId v : p)
            if (!seen.insert(v).second) return false;
    return true;
}

}  // namespace

std::optional<Linkage> exists_disjoint_linkage(const Network& g, const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                               const Linkage& fixed, std::uint64_t node_budget) {
    if (fixed.paths.size() > pairs.size()) throw std::invalid_argument("more fixed paths than pairs");
    LinkageSearch search(g, pairs, node_budget);
    if (!search.run(fixed)) return std::nullopt;
    return search.result();
}

bool is_disjoint_linkage(const Network& g, const std::vector<std::pair<VertexId, VertexId>>& pairs, const Linkage& l) {
    if (l.paths.size() != pairs.size()) return false;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const Path& p = l.paths[i];
        if (p.empty() || p.front() != pairs[i].first || p.back() != pairs[i].second) return false;
        for (size_t j = 0; j + 1 < p.size(); ++j) {
            const auto& ch = g.children(p[j]);
            if (std::find(ch.begin(), ch.end(), p[j + 1]) == ch.end()) return false;
        }
    }
    return mutually_disjoint(l.paths);
}

QuantifiedPathsResult solve_forall_exists_paths(const PathsInstance& inst, std::uint64_t node_budget) {
    const auto pairs = inst.pairs();
    if (inst.S.size() != inst.T.size()) throw std::invalid_argument("S and T differ in length");
    if (inst.p < 1 || inst.p >= static_cast<int>(pairs.size())) throw std::invalid_argument("need 1 <= p < k");

    QuantifiedPathsResult res;
    // Candidate paths per universal pair.
    std::vector<std::vector<Path>> cand(inst.p);
    std::optional<TwoPathCertificate> cert;
    try {
        cert = check_two_path_property(inst.graph, pairs, inst.p);
    } catch (const std::exception&) {
    }
    if (cert) {
        res.phylo = true;
        for (int i = 0; i < inst.p; ++i) cand[i] = {cert->paths[i].first, cert->paths[i].second};
    } else {
        for (int i = 0; i < inst.p; ++i) cand[i] = enumerate_st_paths(inst.graph, pairs[i].first, pairs[i].second);
    }

    std::vector<size_t> pick(inst.p, 0);
    while (true) {
        std::vector<Path> uni;
        for (int i = 0; i < inst.p; ++i) {
            if (cand[i].empty()) return res;  // no universal choice at all: vacuously yes
            uni.push_back(cand[i][pick[i]]);
        }
        ++res.universal_choices;
        if (mutually_disjoint(uni)) {
            if (!exists_disjoint_linkage(inst.graph, pairs, Linkage{uni}, node_budget)) {
                res.yes = false;
                res.counterexample = uni;
                return res;
            }
        }
        int i = 0;
        while (i < inst.p && ++pick[i] == cand[i].size()) pick[i++] = 0;
        if (i == inst.p) break;
    }
    return res;
}

}  // namespace phylo
