// phylo: command-line front end.
// Exit codes: 0 yes/ok, 1 no/counterexample, 2 usage or input error, 3 budget exhausted.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "phylo/classes.hpp"
#include "phylo/core.hpp"
#include "phylo/display.hpp"
#include "phylo/logic.hpp"
#include "phylo/paths.hpp"
#include "phylo/reductions.hpp"
#include "phylo/shell.hpp"

using namespace phylo;
using nlohmann::json;

namespace {

enum Exit { kYes = 0, kNo = 1, kUsage = 2, kBudget = 3 };

Network load_net(const std::string& path) {
    auto nets = parse_enewick_lines(read_file(path));
    if (nets.empty()) throw std::invalid_argument(path + ": no network");
    return nets.front();
}

std::string newick(const CanonicalForm& f) { return f + ";"; }

json path_json(const Path& p) { return json(p); }

int cmd_validate(const std::string& f) {
    std::string text = read_file(f);
    try {
        auto nets = parse_enewick_lines(text);
        std::cout << "ok: " << nets.size() << " network(s)\n";
        return kYes;
    } catch (const ENewickError& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return kNo;
    }
}

int cmd_classify(const std::string& f) {
    Network n = load_net(f);
    bool tb_known = true;
    auto rep = classify(n, &tb_known);
    json j;
    j["leaves"] = n.leaves().size();
    j["reticulations"] = n.reticulations().size();
    j["tree_child"] = rep.tree_child;
    j["normal"] = rep.normal;
    j["reticulation_visible"] = rep.reticulation_visible;
    j["temporal"] = rep.temporal.has_value();
    if (rep.temporal) j["time_stamps"] = *rep.temporal;
    j["shortcuts"] = json::array();
    for (auto [u, v] : rep.shortcuts) j["shortcuts"].push_back({u, v});
    j["tree_based"] = tb_known ? json(rep.tree_based) : json(nullptr);
    std::cout << j.dump(2) << "\n";
    return kYes;
}

int cmd_display_set(const std::string& f, bool count) {
    auto ds = display_set(load_net(f));
    if (count)
        std::cout << ds.size() << "\n";
    else
        for (const auto& t : ds) std::cout << newick(t) << "\n";
    return kYes;
}

int cmd_contains(const std::string& nf, const std::string& tf) {
    Network n = load_net(nf), t = load_net(tf);
    auto emb = displays(n, t);
    if (!emb) {
        std::cout << "no\n";
        return kNo;
    }
    std::cout << "yes; embedding edges:";
    for (auto [u, v] : emb->edges) std::cout << " " << u << "->" << v;
    std::cout << "\n";
    return kYes;
}

int cmd_pair(const std::string& op, const std::string& f1, const std::string& f2) {
    Network a = load_net(f1), b = load_net(f2);
    if (op == "common") {
        auto t = common_tree(a, b);
        if (!t) {
            std::cout << "no common tree\n";
            return kNo;
        }
        std::cout << newick(*t) << "\n";
        return kYes;
    }
    if (op == "subset") {
        auto t = display_subset(a, b);
        if (t) {
            std::cout << "no; displayed by N1 only: " << newick(*t) << "\n";
            return kNo;
        }
        std::cout << "yes\n";
        return kYes;
    }
    if (op == "equiv") {
        auto r = display_equivalence(a, b);
        if (!r.equivalent) {
            std::cout << "no; displayed by N" << r.side << " only: " << newick(r.counterexample) << "\n";
            return kNo;
        }
        std::cout << "yes\n";
        return kYes;
    }
    if (op == "common-count") {
        std::cout << count_common(a, b) << "\n";
        return kYes;
    }
    auto t = common_base_tree(a, b);
    if (!t) {
        std::cout << "no common base tree\n";
        return kNo;
    }
    std::cout << newick(*t) << "\n";
    return kYes;
}

std::string assignment_line(const Assignment& a, int upto) {
    std::string s = "v";
    for (int v = 1; v <= upto; ++v) s += " " + std::string(a[v] ? "" : "-") + std::to_string(v);
    return s + " 0";
}

int cmd_solve(const std::string& what, const std::string& f) {
    if (what == "sat3") {
        QBF3 q = parse_qdimacs(read_file(f));
        auto a = solve_exists(q);
        if (!a) {
            std::cout << "s UNSATISFIABLE\n";
            return kNo;
        }
        std::cout << "s SATISFIABLE\n" << assignment_line(*a, q.n) << "\n";
        return kYes;
    }
    if (what == "qsat") {
        QBF3 q = parse_qdimacs(read_file(f));
        auto r = solve_forall_exists(q);
        if (!r.yes) {
            std::cout << "s FALSE\nfailing universal assignment: " << assignment_line(r.counterexample, q.p) << "\n";
            return kNo;
        }
        std::cout << "s TRUE\n";
        return kYes;
    }
    PathsInstance inst = paths_from_json(read_file(f));
    auto r = solve_forall_exists_paths(inst);
    json j;
    j["yes"] = r.yes;
    j["universal_choices"] = r.universal_choices;
    if (!r.yes) {
        j["counterexample"] = json::array();
        for (const auto& p : r.counterexample) j["counterexample"].push_back(path_json(p));
    }
    std::cout << j.dump() << "\n";
    return r.yes ? kYes : kNo;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file(out, text);
}

int cmd_reduce(const std::string& kind, const std::string& in, const std::string& out) {
    std::string text = read_file(in);
    if (kind == "sat3-ctc") {
        auto norm = normalize_for_ctc(parse_qdimacs(text));
        if (!norm.formula) throw std::invalid_argument("formula repeats a variable inside a clause");
        auto red = reduce_sat3_to_ctc(*norm.formula);
        emit(out, write_enewick(red.N) + "\n" + write_enewick(red.Nprime) + "\n");
    } else if (kind == "qsat-paths") {
        auto red = reduce_qsat_to_paths(parse_qdimacs(text));
        emit(out, paths_to_json(red.inst) + "\n");
    } else if (kind == "paths-dsc") {
        auto red = reduce_paths_to_dsc(paths_from_json(text));
        emit(out, write_enewick(red.N1) + "\n" + write_enewick(red.N2) + "\n");
    } else if (kind == "dsc-dse") {
        auto nets = parse_enewick_lines(text);
        if (nets.size() != 2) throw std::invalid_argument("dsc-dse expects two eNewick lines");
        auto red = reduce_dsc_to_dse(nets[0], nets[1]);
        emit(out, write_enewick(red.N1star) + "\n" + write_enewick(red.N2star) + "\n");
    } else {
        throw CLI::ValidationError("reduction", "unknown reduction " + kind);
    }
    return kYes;
}

int cmd_verify(const std::string& kind, const std::string& in, int budget) {
    auto k = parse_reduction_kind(kind);
    if (!k) throw CLI::ValidationError("reduction", "unknown reduction " + kind);
    auto rep = verify_reduction(*k, read_file(in), budget, in);
    std::cout << rep.to_json() << "\n";
    if (rep.budget_exhausted) return kBudget;
    if (!rep.oracle || !rep.reduced) return kUsage;
    return rep.agree ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phylogenetic network display sets, class checks and hardness reductions"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "Worker threads (enumerations currently run single-threaded)");

    std::string f1, f2, out, kind;
    bool count = false;
    int budget = retic_cap();
    unsigned long long seed = 1;
    std::function<int()> run;

    auto* net = app.add_subcommand("net", "Network queries");
    net->require_subcommand(1);
    auto* v = net->add_subcommand("validate", "Parse and validate every network in F");
    v->add_option("F", f1)->required();
    v->callback([&] { run = [&] { return cmd_validate(f1); }; });
    auto* c = net->add_subcommand("classify", "Class membership report (JSON)");
    c->add_option("F", f1)->required();
    c->callback([&] { run = [&] { return cmd_classify(f1); }; });
    auto* d = net->add_subcommand("display-set", "List displayed trees");
    d->add_option("F", f1)->required();
    d->add_flag("--count", count, "Print only the number of trees");
    d->callback([&] { run = [&] { return cmd_display_set(f1, count); }; });
    auto* ct = net->add_subcommand("contains", "Does NET display TREE?");
    ct->add_option("NET", f1)->required();
    ct->add_option("TREE", f2)->required();
    ct->callback([&] { run = [&] { return cmd_contains(f1, f2); }; });
    for (const char* op : {"common", "subset", "equiv", "common-count", "base-tree"}) {
        auto* s = net->add_subcommand(op, std::string("Pairwise query: ") + op);
        s->add_option("N1", f1)->required();
        s->add_option("N2", f2)->required();
        std::string name = op;
        s->callback([&, name] { run = [&, name] { return cmd_pair(name, f1, f2); }; });
    }

    auto* solve = app.add_subcommand("solve", "Brute-force oracles");
    solve->require_subcommand(1);
    for (const char* what : {"sat3", "qsat", "paths"}) {
        auto* s = solve->add_subcommand(what, std::string("Solve a ") + what + " instance");
        s->add_option("F", f1)->required();
        std::string name = what;
        s->callback([&, name] { run = [&, name] { return cmd_solve(name, f1); }; });
    }

    auto* reduce = app.add_subcommand("reduce", "Run a reduction");
    reduce->add_option("REDUCTION", kind, "sat3-ctc | qsat-paths | paths-dsc | dsc-dse")->required();
    reduce->add_option("IN", f1)->required();
    reduce->add_option("-o,--output", out, "Output file (default stdout)");
    reduce->callback([&] { run = [&] { return cmd_reduce(kind, f1, out); }; });

    auto* verify = app.add_subcommand("verify", "Cross-check a reduction against the oracles");
    verify->add_option("REDUCTION", kind, "sat3-ctc | qsat-paths | paths-dsc | dsc-dse | chain")->required();
    verify->add_option("IN", f1)->required();
    verify->add_option("--budget", budget, "Reticulation cap for display-set enumeration");
    verify->add_option("--seed", seed, "Accepted for reproducible batch runs; single instances ignore it");
    verify->callback([&] { run = [&] { return cmd_verify(kind, f1, budget); }; });

    auto* exp = app.add_subcommand("export", "Export a network");
    auto* dot = exp->add_subcommand("dot", "GraphViz DOT");
    exp->require_subcommand(1);
    dot->add_option("F", f1)->required();
    dot->add_option("-o,--output", out, "Output file (default stdout)");
    dot->callback([&] { run = [&] { emit(out, export_dot(load_net(f1))); return int(kYes); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kYes : kUsage;
    }
    try {
        return run();
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
