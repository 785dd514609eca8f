#include "phylo/network.hpp"

#include <algorithm>

namespace phylo {

VertexId Network::add_vertex(std::string note) {
    children_.emplace_back();
    parents_.emplace_back();
    label_.emplace_back();
    note_.push_back(std::move(note));
    return size() - 1;
}

VertexId Network::add_leaf(const std::string& label) {
    VertexId v = add_vertex();
    label_[v] = label;
    return v;
}

void Network::add_edge(VertexId u, VertexId v) {
    children_.at(u).push_back(v);
    parents_.at(v).push_back(u);
}

void Network::remove_edge(VertexId u, VertexId v) {
    auto& c = children_.at(u);
    auto& p = parents_.at(v);
    auto ci = std::find(c.begin(), c.end(), v);
    auto pi = std::find(p.begin(), p.end(), u);
    if (ci == c.end() || pi == p.end()) throw std::invalid_argument("no such edge");
    c.erase(ci);
    p.erase(pi);
}

void Network::set_label(VertexId v, const std::string& label) { label_.at(v) = label; }

VertexId Network::root() const {
    VertexId r = -1;
    for (VertexId v = 0; v < size(); ++v) {
        if (!parents_[v].empty()) continue;
        if (children_[v].empty() && !(block && size() == 1)) continue;
        if (r != -1) throw std::runtime_error("network has several roots");
        r = v;
    }
    if (r == -1) throw std::runtime_error("network has no root");
    return r;
}

std::vector<Edge> Network::edges() const {
    std::vector<Edge> out;
    for (VertexId u = 0; u < size(); ++u)
        for (VertexId v : children_[u]) out.emplace_back(u, v);
    return out;
}

std::vector<VertexId> Network::leaves() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < size(); ++v)
        if (children_[v].empty() && (!parents_[v].empty() || (block && size() == 1))) out.push_back(v);
    return out;
}

std::vector<VertexId> Network::reticulations() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < size(); ++v)
        if (parents_[v].size() >= 2) out.push_back(v);
    return out;
}

std::set<std::string> Network::leaf_labels() const {
    std::set<std::string> out;
    for (VertexId v : leaves()) out.insert(label_[v]);
    return out;
}

std::optional<VertexId> Network::find_leaf(const std::string& label) const {
    for (VertexId v = 0; v < size(); ++v)
        if (children_[v].empty() && label_[v] == label) return v;
    return std::nullopt;
}

std::vector<VertexId> Network::topological_order() const {
    std::vector<int> indeg(size());
    std::vector<VertexId> order, stack;
    for (VertexId v = 0; v < size(); ++v) {
        indeg[v] = in_degree(v);
        if (indeg[v] == 0) stack.push_back(v);
    }
    std::reverse(stack.begin(), stack.end());
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (VertexId c : children_[v])
            if (--indeg[c] == 0) stack.push_back(c);
    }
    if (static_cast<int>(order.size()) != size()) throw std::runtime_error("cyclic");
    return order;
}

Network Network::induced(const std::vector<bool>& keep, std::vector<VertexId>* map) const {
    Network out;
    out.block = block;
    std::vector<VertexId> m(size(), -1);
    for (VertexId v = 0; v < size(); ++v) {
        if (!keep[v]) continue;
        m[v] = out.add_vertex(note_[v]);
        out.label_[m[v]] = label_[v];
    }
    for (VertexId u = 0; u < size(); ++u)
        if (m[u] != -1)
            for (VertexId v : children_[u])
                if (m[v] != -1) out.add_edge(m[u], m[v]);
    if (map) *map = std::move(m);
    return out;
}

Network Network::compacted(std::vector<VertexId>* map) const {
    std::vector<bool> keep(size());
    for (VertexId v = 0; v < size(); ++v)
        keep[v] = !children_[v].empty() || !parents_[v].empty() || (block && size() == 1);
    return induced(keep, map);
}

Network single_leaf(const std::string& label) {
    Network n;
    n.block = true;
    n.add_leaf(label);
    return n;
}

}  // namespace phylo
