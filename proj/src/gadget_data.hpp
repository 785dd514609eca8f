#pragma once

#include <map>
#include <string>

namespace phylo::gadget_data {

// Suppressed gadgets over the template labels; x^l gets r_j^l on its pendant edge.
// A is a tree whose x leaves each have a non-x tree sibling, so the N side stays
// tree-child. B needs the reticulation H1 next to x^3, which makes the N' side
// fail tree-child (and hence normality).
inline constexpr const char* kGadgetA = "(((C,((((C^3,x^3),x^2),x^1),C^6)),((C^2,C^4),C^5)),C^1);";
inline constexpr const char* kGadgetB =
    "(((C,(((((C^3)#H1,x^3),x^1),(#H1,x^2)),C^6)),((C^2,C^4),(C^5)#H2)),(C^1,#H2));";

// Common clause tree per pattern, in canonical form over the template labels.
inline const std::map<std::string, std::string>& clause_trees() {
    static const std::map<std::string, std::string> trees{
        {"FFT", "((((((C^3,x^2),x^1),C^6),C),((C^2,C^4),C^5)),C^1)"},
        {"FTF", "((((((C^3,x^3),x^1),C^6),C),((C^2,C^4),C^5)),C^1)"},
        {"FTT", "(((((C^3,x^1),C^6),C),((C^2,C^4),C^5)),C^1)"},
        {"TFF", "((((((C^3,x^3),x^2),C^6),C),((C^2,C^4),C^5)),C^1)"},
        {"TFT", "(((((C^3,x^2),C^6),C),((C^2,C^4),C^5)),C^1)"},
        {"TTF", "(((((C^3,x^3),C^6),C),((C^2,C^4),C^5)),C^1)"},
        {"TTT", "((((C^2,C^4),C^5),((C^3,C^6),C)),C^1)"},
    };
    return trees;
}

}  // namespace phylo::gadget_data
