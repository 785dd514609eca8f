#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "phylo/network.hpp"
#include "phylo/paths.hpp"

namespace phylo {

class ENewickError : public std::runtime_error {
public:
    ENewickError(std::size_t pos, const std::string& what)
        : std::runtime_error("position " + std::to_string(pos) + ": " + what), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// One network per call; text must end in ';' (surrounding whitespace ignored).
// Hybrid tags "#H<k>" appear twice: once with the subtree, once bare.
Network parse_enewick(const std::string& text);

// Canonical rendering: children ordered by least descendant leaf label,
// hybrid tags numbered in order of first appearance.
std::string write_enewick(const Network& net);

// One network per non-blank line.
std::vector<Network> parse_enewick_lines(const std::string& text);

std::string export_dot(const Network& net, const std::string& name = "N");

// JSON: {"vertices": n, "edges": [[u,v],...], "S": [...], "T": [...], "p": p}
// plus optional "labels": {"id": "label"}.
PathsInstance paths_from_json(const std::string& text);
std::string paths_to_json(const PathsInstance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace phylo
