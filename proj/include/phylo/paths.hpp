#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "phylo/network.hpp"

namespace phylo {

using Path = std::vector<VertexId>;

// Graph may be any DAG held in a Network (leaf labels are not required).
struct PathsInstance {
    Network graph;
    std::vector<VertexId> S, T;
    int p = 1;

    std::vector<std::pair<VertexId, VertexId>> pairs() const;
};

struct Linkage {
    std::vector<Path> paths;
};

// All simple s->t paths. Throws BudgetExceeded if there are more than limit.
std::vector<Path> enumerate_st_paths(const Network& g, VertexId s, VertexId t, std::size_t limit = 100000);

// Completes `fixed` (paths for the first fixed.size() pairs, already
// disjoint) to a vertex-disjoint linkage for all pairs. Throws
// BudgetExceeded once more than node_budget search nodes were expanded.
std::optional<Linkage> exists_disjoint_linkage(const Network& g, const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                               const Linkage& fixed = {}, std::uint64_t node_budget = 50'000'000);

struct QuantifiedPathsResult {
    bool yes = true;
    std::vector<Path> counterexample;  // failing universal paths when !yes
    std::uint64_t universal_choices = 0;
    bool phylo = false;  // choices came from the two-path property
};

// For every choice of universal paths (pairs 0..p-1) is there a completion?
// Non-disjoint universal choices are vacuously satisfied.
QuantifiedPathsResult solve_forall_exists_paths(const PathsInstance& inst, std::uint64_t node_budget = 50'000'000);

bool is_disjoint_linkage(const Network& g, const std::vector<std::pair<VertexId, VertexId>>& pairs, const Linkage& l);

}  // namespace phylo
