#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "phylo/logic.hpp"
#include "phylo/network.hpp"
#include "phylo/paths.hpp"

namespace phylo {

using Rng = std::mt19937_64;

// Leaf labels "<prefix>1" .. "<prefix>n".
std::vector<std::string> leaf_names(int n, const std::string& prefix = "l");

PhyloTree random_tree(Rng& rng, const std::vector<std::string>& labels);

// Random binary network: a random tree plus k edges between subdivided
// edges, resampled until valid.
Network random_network(Rng& rng, const std::vector<std::string>& labels, int k);

// Same, but rejection-sampled until tree-child.
Network random_tree_child_network(Rng& rng, const std::vector<std::string>& labels, int k);

// k independent diamonds hung off a caterpillar: exactly 2^k display trees.
Network independent_diamonds(int k);

// Normalized 3-SAT formula: every clause on three distinct variables,
// sorted by variable, every variable used. Needs n >= 3 and 3m >= n.
QBF3 random_sat3(Rng& rng, int n, int m);

// forall v1..vp exists v(p+1)..vn; every clause has an existential literal
// and every variable occurs. Needs 3m >= n.
QBF3 random_forall_exists(Rng& rng, int n, int p, int m);

// Paths instance satisfying the reduction preconditions (caterpillar-
// inducing, two-path, T the leaf set), rejection-sampled over random small
// networks. Gives up after `attempts` tries.
std::optional<PathsInstance> random_phylo_paths_instance(Rng& rng, int k, int p, int max_vertices,
                                                         int attempts = 200000);

}  // namespace phylo
