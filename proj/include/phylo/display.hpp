#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "phylo/core.hpp"

namespace phylo {

// Reticulation budget for every exhaustive enumeration. Defaults to 20, or
// PHYLO_RETIC_CAP when set.
int retic_cap();
void set_retic_cap(int cap);

class ScopedReticCap {
public:
    explicit ScopedReticCap(int cap) : old_(retic_cap()) { set_retic_cap(cap); }
    ~ScopedReticCap() { set_retic_cap(old_); }
    ScopedReticCap(const ScopedReticCap&) = delete;
    ScopedReticCap& operator=(const ScopedReticCap&) = delete;

private:
    int old_;
};

// One kept incoming edge per reticulation, in the order of net.reticulations().
struct Switching {
    std::vector<Edge> chosen;
};

struct Embedding {
    std::vector<Edge> edges;
    VertexId root = -1;
};

// Calls fn for each of the 2^k switchings in binary-counter order; stops
// early when fn returns false. Throws BudgetExceeded when k > retic_cap().
void for_each_switching(const Network& net, const std::function<bool(const Switching&)>& fn);
std::vector<Switching> enumerate_switchings(const Network& net);

PhyloTree yield_tree(const Network& net, const Switching& s);

std::set<CanonicalForm> display_set(const Network& net);

// Tree on a subset Y of the leaves of net.
std::optional<Embedding> displays(const Network& net, const PhyloTree& tree);

// Lexicographically least common canonical tree, if any.
std::optional<CanonicalForm> common_tree(const Network& a, const Network& b);

// Least tree displayed by a but not by b, if any.
std::optional<CanonicalForm> display_subset(const Network& a, const Network& b);

struct EquivalenceResult {
    bool equivalent = true;
    int side = 0;  // 1: tree displayed by the first network only, 2: by the second only
    CanonicalForm counterexample;
};
EquivalenceResult display_equivalence(const Network& a, const Network& b);

std::size_t count_common(const Network& a, const Network& b);

bool is_base_tree_switching(const Network& net, const Switching& s);
std::set<CanonicalForm> base_tree_set(const Network& net);
bool is_tree_based(const Network& net);
std::optional<CanonicalForm> common_base_tree(const Network& a, const Network& b);

// 64-bit fingerprints of all displayed trees, one per switching. Equal trees
// always share a fingerprint; callers confirm matches by canonical form.
std::vector<std::uint64_t> switching_fingerprints(const Network& net);

}  // namespace phylo
