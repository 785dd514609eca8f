#pragma once

#include <set>
#include <string>
#include <vector>

#include "phylo/network.hpp"

namespace phylo {

struct ValidationReport {
    std::vector<std::string> violations;  // "rule: detail"
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Network& net);

// Replace every u->v->w with in(v)=out(v)=1 by u->w. Works on any DAG.
Network suppress_elementary(const Network& dag);

// Minimal subtree connecting the leaves labelled Y, elementary vertices
// suppressed. |Y| = 1 gives a degenerate single-leaf block.
PhyloTree restrict_tree(const PhyloTree& tree, const std::set<std::string>& Y);

using CanonicalForm = std::string;

CanonicalForm canonical_form(const PhyloTree& tree);
CanonicalForm canonical_form_at(const PhyloTree& tree, VertexId v);
// Inverse of canonical_form. Throws std::invalid_argument on malformed text.
PhyloTree tree_from_canonical(const CanonicalForm& form);

// Caterpillar (l1, ..., ln): l1 and l2 form the bottom cherry, ln hangs off the root.
PhyloTree make_caterpillar(const std::vector<std::string>& labels);
bool contains_caterpillar(const PhyloTree& tree, const std::vector<std::string>& cat);

struct CaterpillarDecomposition {
    bool decomposable = false;         // false: single block holding the whole net
    std::vector<Network> blocks;       // top to bottom: B_k, ..., B_1
    std::vector<VertexId> block_roots;  // root of each block in the input network
    std::vector<VertexId> spine;       // spine vertices, root first
};

CaterpillarDecomposition decompose_caterpillar_blocks(const Network& net);

// Vertices reachable from v (v included).
std::vector<bool> descendants(const Network& net, VertexId v);

// Sub-network induced on the descendants of v.
Network subnetwork_at(const Network& net, VertexId v);

}  // namespace phylo
