#include "phylo/logic.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace phylo {

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

int to_int(const std::string& s, int line) {
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') throw ParseError(line, "bad integer '" + s + "'");
    return static_cast<int>(v);
}

}  // namespace

QBF3 parse_qdimacs(const std::string& text) {
    QBF3 f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0, declared_clauses = -1, blocks = 0, maxvar = 0;
    bool header = false, saw_e = false;
    std::vector<int> universal, existential;
    std::vector<int> pending;  // clauses may span lines
    int pending_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (header) throw ParseError(lineno, "second problem line");
            if (blocks > 0 || !f.clauses.empty() || !pending.empty()) throw ParseError(lineno, "problem line must come first");
            if (tok.size() != 4 || tok[1] != "cnf") throw ParseError(lineno, "expected 'p cnf N M'");
            f.n = to_int(tok[2], lineno);
            declared_clauses = to_int(tok[3], lineno);
            if (f.n < 0 || declared_clauses < 0) throw ParseError(lineno, "negative count");
            header = true;
            continue;
        }
        if (tok[0] == "a" || tok[0] == "e") {
            if (!f.clauses.empty() || !pending.empty()) throw ParseError(lineno, "quantifier after clauses");
            if (++blocks > 2) throw ParseError(lineno, "more than two quantifier blocks");
            if (tok[0] == "a" && (blocks != 1)) throw ParseError(lineno, "universal block must come first");
            if (tok[0] == "e" && saw_e) throw ParseError(lineno, "repeated existential block");
            if (tok.back() != "0") throw ParseError(lineno, "quantifier line must end in 0");
            auto& dst = tok[0] == "a" ? universal : existential;
            for (size_t i = 1; i + 1 < tok.size(); ++i) {
                int v = to_int(tok[i], lineno);
                if (v < 1 || (header && v > f.n)) throw ParseError(lineno, "variable out of range");
                maxvar = std::max(maxvar, v);
                dst.push_back(v);
            }
            if (tok[0] == "e") saw_e = true;
            continue;
        }
        if (pending.empty()) pending_line = lineno;
        for (const auto& t : tok) {
            int v = to_int(t, lineno);
            if (v == 0) {
                if (pending.size() != 3) throw ParseError(pending_line, "clause arity " + std::to_string(pending.size()));
                f.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
                pending_line = lineno;
                continue;
            }
            if (header && std::abs(v) > f.n) throw ParseError(lineno, "variable out of range");
            maxvar = std::max(maxvar, std::abs(v));
            pending.push_back(v);
        }
    }
    if (!pending.empty()) throw ParseError(pending_line, "unterminated clause");
    // Without a problem line the header is inferred.
    if (!header) f.n = maxvar;
    if (header && static_cast<int>(f.clauses.size()) != declared_clauses)
        throw ParseError(lineno, "expected " + std::to_string(declared_clauses) + " clauses, found " +
                                     std::to_string(f.clauses.size()));
    // Universal variables must be exactly 1..p.
    std::sort(universal.begin(), universal.end());
    for (size_t i = 0; i < universal.size(); ++i)
        if (universal[i] != static_cast<int>(i) + 1)
            throw ParseError(lineno, "universal variables must be 1..p");
    f.p = static_cast<int>(universal.size());
    for (int v : existential)
        if (v <= f.p) throw ParseError(lineno, "variable quantified twice");
    return f;
}

std::string write_qdimacs(const QBF3& f) {
    std::ostringstream out;
    out << "p cnf " << f.n << ' ' << f.clauses.size() << '\n';
    if (f.p > 0) {
        out << 'a';
        for (int v = 1; v <= f.p; ++v) out << ' ' << v;
        out << " 0\ne";
        for (int v = f.p + 1; v <= f.n; ++v) out << ' ' << v;
        out << " 0\n";
    }
    for (const auto& c : f.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return out.str();
}

Normalized normalize_for_ctc(const QBF3& f) {
    Normalized r;
    if (f.p != 0) throw std::invalid_argument("normalize_for_ctc expects plain 3-SAT");
    for (size_t j = 0; j < f.clauses.size(); ++j) {
        std::set<int> vars;
        for (Literal l : f.clauses[j]) vars.insert(std::abs(l));
        if (vars.size() != 3) r.rejected_clauses.push_back(static_cast<int>(j));
    }
    r.var_map.assign(f.n + 1, 0);
    if (!r.rejected_clauses.empty()) return r;
    std::vector<bool> used(f.n + 1);
    for (const auto& c : f.clauses)
        for (Literal l : c) used[std::abs(l)] = true;
    int next = 0;
    for (int v = 1; v <= f.n; ++v)
        if (used[v]) r.var_map[v] = ++next;
    QBF3 g;
    g.n = next;
    for (auto c : f.clauses) {
        for (auto& l : c) l = l > 0 ? r.var_map[l] : -r.var_map[-l];
        std::sort(c.begin(), c.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
        g.clauses.push_back(c);
    }
    r.formula = g;
    return r;
}

bool is_ctc_normalized(const QBF3& f) {
    if (f.p != 0) return false;
    std::vector<bool> used(f.n + 1);
    for (const auto& c : f.clauses) {
        if (!(std::abs(c[0]) < std::abs(c[1]) && std::abs(c[1]) < std::abs(c[2]))) return false;
        for (Literal l : c) used[std::abs(l)] = true;
    }
    for (int v = 1; v <= f.n; ++v)
        if (!used[v]) return false;
    return true;
}

bool satisfies(const QBF3& f, const Assignment& a) {
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (Literal l : c)
            if (a[std::abs(l)] == (l > 0)) sat = true;
        if (!sat) return false;
    }
    return true;
}

namespace {

// DPLL over the variables from..n with the earlier ones fixed in a.
bool extend(const QBF3& f, Assignment& a, std::vector<bool>& set, int from) {
    // Unit/conflict check on clauses.
    for (const auto& c : f.clauses) {
        bool sat = false;
        int open = 0;
        for (Literal l : c) {
            int v = std::abs(l);
            if (!set[v]) ++open;
            else if (a[v] == (l > 0)) sat = true;
        }
        if (!sat && open == 0) return false;
    }
    int v = from;
    while (v <= f.n && set[v]) ++v;
    if (v > f.n) return true;
    for (bool val : {false, true}) {
        a[v] = val;
        set[v] = true;
        if (extend(f, a, set, v + 1)) return true;
        set[v] = false;
    }
    a[v] = false;
    return false;
}

}  // namespace

std::optional<Assignment> solve_exists(const QBF3& f) {
    if (f.n > 30) throw std::invalid_argument("scale exceeded");
    Assignment a(f.n + 1, false);
    std::vector<bool> set(f.n + 1, false);
    if (extend(f, a, set, 1)) return a;
    return std::nullopt;
}

ForallExistsResult solve_forall_exists(const QBF3& f) {
    if (f.p > 12 || f.n > 24) throw std::invalid_argument("scale exceeded");
    ForallExistsResult r;
    for (unsigned mask = 0; mask < (1u << f.p); ++mask) {
        Assignment a(f.n + 1, false);
        std::vector<bool> set(f.n + 1, false);
        for (int v = 1; v <= f.p; ++v) {
            a[v] = (mask >> (v - 1)) & 1;
            set[v] = true;
        }
        if (!extend(f, a, set, f.p + 1)) {
            r.yes = false;
            r.counterexample.assign(f.n + 1, false);
            for (int v = 1; v <= f.p; ++v) r.counterexample[v] = a[v];
            return r;
        }
    }
    return r;
}

}  // namespace phylo
