#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phylo {

using VertexId = int;
using Edge = std::pair<VertexId, VertexId>;

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rooted binary leaf-labelled DAG. Vertices are dense ids; labels live on
// leaves only. Notes are free-form debugging annotations (e.g. "r_1^2").
class Network {
public:
    Network() = default;

    VertexId add_vertex(std::string note = {});
    VertexId add_leaf(const std::string& label);
    void add_edge(VertexId u, VertexId v);
    void remove_edge(VertexId u, VertexId v);
    void set_label(VertexId v, const std::string& label);
    void set_note(VertexId v, std::string note) { note_.at(v) = std::move(note); }

    int size() const { return static_cast<int>(children_.size()); }
    const std::vector<VertexId>& children(VertexId v) const { return children_.at(v); }
    const std::vector<VertexId>& parents(VertexId v) const { return parents_.at(v); }
    const std::string& label(VertexId v) const { return label_.at(v); }
    const std::string& note(VertexId v) const { return note_.at(v); }
    int in_degree(VertexId v) const { return static_cast<int>(parents_[v].size()); }
    int out_degree(VertexId v) const { return static_cast<int>(children_[v].size()); }

    bool is_leaf(VertexId v) const { return children_[v].empty() && !parents_[v].empty(); }
    bool is_reticulation(VertexId v) const { return parents_[v].size() == 2; }
    bool is_tree_vertex(VertexId v) const { return parents_[v].size() == 1 && children_[v].size() == 2; }

    // Unique vertex of in-degree zero that has children, or the lone vertex
    // of a single-leaf block. Throws if there is none or several.
    VertexId root() const;

    std::vector<Edge> edges() const;
    std::vector<VertexId> leaves() const;
    std::vector<VertexId> reticulations() const;
    std::set<std::string> leaf_labels() const;
    std::optional<VertexId> find_leaf(const std::string& label) const;

    // Children before parents are NOT guaranteed; this is parents-first.
    // Throws std::runtime_error on a cycle.
    std::vector<VertexId> topological_order() const;

    // Copy keeping only vertices with keep[v]; returns the id map (old -> new, -1 if dropped).
    Network induced(const std::vector<bool>& keep, std::vector<VertexId>* map = nullptr) const;
    // Drop isolated vertices left behind by edits.
    Network compacted(std::vector<VertexId>* map = nullptr) const;

    // Degenerate single-leaf networks are legal only as caterpillar blocks.
    bool block = false;

private:
    std::vector<std::vector<VertexId>> children_;
    std::vector<std::vector<VertexId>> parents_;
    std::vector<std::string> label_;
    std::vector<std::string> note_;
};

using PhyloTree = Network;

Network single_leaf(const std::string& label);

}  // namespace phylo
