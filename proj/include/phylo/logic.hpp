#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace phylo {

// Literal: +v or -v for variable v in 1..n.
using Literal = int;
using Clause = std::array<Literal, 3>;

struct QBF3 {
    int n = 0;
    int p = 0;  // variables 1..p are universal, p+1..n existential
    std::vector<Clause> clauses;

    bool operator==(const QBF3&) const = default;
};

// assignment[v] for v in 1..n; index 0 unused.
using Assignment = std::vector<bool>;

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

QBF3 parse_qdimacs(const std::string& text);
std::string write_qdimacs(const QBF3& f);

struct Normalized {
    std::optional<QBF3> formula;
    std::vector<int> rejected_clauses;  // indices of clauses repeating a variable
    std::vector<int> var_map;           // old variable -> new (0 if dropped)
};

// Sorts literals by variable, drops unused variables; rejects clauses that
// repeat a variable.
Normalized normalize_for_ctc(const QBF3& f);

bool is_ctc_normalized(const QBF3& f);

bool satisfies(const QBF3& f, const Assignment& a);

// Throws std::invalid_argument past n = 30.
std::optional<Assignment> solve_exists(const QBF3& f);

struct ForallExistsResult {
    bool yes = true;
    Assignment counterexample;  // universal part (1..p) when !yes
};

// Throws std::invalid_argument past p = 12 or n = 24.
ForallExistsResult solve_forall_exists(const QBF3& f);

}  // namespace phylo
