#pragma once

#include <optional>
#include <set>
#include <vector>

#include "phylo/network.hpp"

namespace phylo {

// Edges (u,v) for which another directed u->v path exists.
std::vector<Edge> find_shortcuts(const Network& net);

// visible[v]: some leaf has every root-to-leaf path through v.
std::vector<bool> visible_vertices(const Network& net);

// Child rule: every non-leaf vertex has a child that is a leaf or a tree vertex.
bool is_tree_child(const Network& net);
bool is_normal(const Network& net);

// Positive integer time stamps, equal across reticulation edges and strictly
// increasing along tree edges, or nothing if no such stamping exists.
std::optional<std::vector<int>> temporal_labeling(const Network& net);
bool is_temporal(const Network& net);

struct ClassReport {
    bool tree_child = false;
    bool normal = false;
    bool reticulation_visible = false;
    std::optional<std::vector<int>> temporal;
    std::vector<Edge> shortcuts;
    bool tree_based = false;
};

// tree_based enumerates switchings and so respects the reticulation cap;
// when the cap is exceeded it is left false and tree_based_known is cleared.
ClassReport classify(const Network& net, bool* tree_based_known = nullptr);

// Delete every vertex on a path from a child of S to a leaf; is the rest an
// unlabelled caterpillar? Throws std::invalid_argument if S holds a leaf.
bool is_caterpillar_inducing(const Network& net, const std::set<VertexId>& S);

struct TwoPathCertificate {
    // paths[i] = {pi_i, pi_i'} as vertex sequences, for i < p
    std::vector<std::pair<std::vector<VertexId>, std::vector<VertexId>>> paths;
};

std::optional<TwoPathCertificate> check_two_path_property(const Network& net,
                                                          const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                                          int p);

}  // namespace phylo
