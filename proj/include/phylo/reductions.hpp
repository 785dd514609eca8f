#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phylo/core.hpp"
#include "phylo/logic.hpp"
#include "phylo/paths.hpp"

namespace phylo {

// Leaf names of clause j: C<j>, C<j>^1..C<j>^6, x<j>^1..x<j>^3.
std::string clause_leaf(int j, int k);  // k = 0 gives C<j>
std::string clause_x(int j, int l);
std::string variable_leaf(int i);  // v<i>

struct GadgetPair {
    int j = 1;
    Network gA, gB;
    // r_j^l: in/out-degree one vertices whose child is the leaf x_j^l.
    std::array<VertexId, 3> attachA{}, attachB{};
    // Common clause trees keyed by pattern "z1z2z3" over {F,T}, at least one T.
    std::map<std::string, CanonicalForm> clause_trees;
};

// Suppress r_j^1..3 to get the phylogenetic networks the contract talks about.
Network suppress_attachments(const Network& g);

// The seven patterns with at least one T, in the order FFT, FTF, ...
std::vector<std::string> clause_patterns();

// Shipped gadget for clause j. literals only need distinct variables.
GadgetPair build_clause_gadget_pair(int j, const Clause& literals);

// Gadget pair for clause j from the suppressed networks over the template
// labels C, C^1..C^6, x^1..x^3; r_j^l is inserted above each x leaf.
GadgetPair gadget_pair_from_templates(int j, const Network& a, const Network& b);

struct GadgetReport {
    bool c1 = false, c2 = false, c3 = false, c4 = false;
    std::vector<std::string> failures;
    std::map<std::string, CanonicalForm> clause_trees;  // derived, least common tree per pattern
    bool ok() const { return c1 && c2 && c3 && c4; }
};

GadgetReport verify_gadget_contract(const GadgetPair& g);

// Bounded search over gadget pairs built from a skeleton tree plus at most
// max_retic extra reticulations per side. Throws std::runtime_error
// "no gadget found" when the budget runs out.
struct GadgetSearchOptions {
    int max_retic = 4;
    std::uint64_t seed = 1;
    std::uint64_t iterations = 200000;
    bool require_tree_child = true;
};
GadgetPair search_gadget_pair(int j, const GadgetSearchOptions& opt = {});

struct CtcReduction {
    Network N, Nprime;
    std::vector<std::array<VertexId, 3>> r, rprime;  // r_j^l per clause
};

// f must satisfy is_ctc_normalized.
CtcReduction reduce_sat3_to_ctc(const QBF3& f);
using GadgetFactory = std::function<GadgetPair(int j, const Clause& literals)>;
CtcReduction reduce_sat3_to_ctc(const QBF3& f, const GadgetFactory& gadget);

struct PathsReduction {
    PathsInstance inst;
    int gadget_vertices = 0;  // vertices of G before the spine is attached
    int spine_vertices = 0;
    std::vector<int> var_map;  // original variable -> gadget index (0 if pruned)
    std::vector<Path> plus_paths, minus_paths;  // pi+ and pi- per gadget index
};

// f: forall v1..vp exists v(p+1)..vn. Variables without occurrences are
// pruned; afterwards 1 <= p < n and every clause needs an existential literal.
PathsReduction reduce_qsat_to_paths(const QBF3& f);

// Map a universal assignment to the universal paths it fixes (pi+ for false).
std::vector<Path> universal_paths_for(const PathsReduction& red, const Assignment& a);

struct DscReduction {
    Network N1, N2;
};

DscReduction reduce_paths_to_dsc(const PathsInstance& inst);

struct DseReduction {
    Network N1star, N2star;
    std::vector<VertexId> backbone;  // u_{2n+3}, ..., u_2 in N1star
};

// Labels of the primed copies get this suffix.
inline constexpr const char* kPrimeSuffix = "_p";

DseReduction reduce_dsc_to_dse(const Network& N1, const Network& N2);

enum class ReductionKind { Sat3Ctc, QsatPaths, PathsDsc, DscDse, Chain };

std::optional<ReductionKind> parse_reduction_kind(const std::string& name);
std::string reduction_name(ReductionKind k);

struct VerificationReport {
    std::string instance;
    std::string kind;
    std::optional<bool> oracle;   // decision of the source problem
    std::optional<bool> reduced;  // decision of the target problem
    bool agree = false;
    bool budget_exhausted = false;
    std::string detail;
    double oracle_ms = 0, reduced_ms = 0;

    std::string to_json() const;
};

VerificationReport verify_sat3_ctc(const QBF3& f, const std::string& id = {});
VerificationReport verify_qsat_paths(const QBF3& f, const std::string& id = {});
VerificationReport verify_paths_dsc(const PathsInstance& inst, const std::string& id = {});
VerificationReport verify_dsc_dse(const Network& N1, const Network& N2, const std::string& id = {});
// qsat -> paths -> dsc -> dse, comparing the formula with the final networks.
VerificationReport verify_chain(const QBF3& f, const std::string& id = {});

// Dispatch on kind; instance text is QDIMACS, a paths JSON document, or two
// eNewick lines depending on kind. budget is the reticulation cap.
VerificationReport verify_reduction(ReductionKind kind, const std::string& instance_text, int budget,
                                    const std::string& id = {});

}  // namespace phylo
