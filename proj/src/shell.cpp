#include "phylo/shell.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

#include "phylo/core.hpp"

namespace phylo {

namespace {

bool name_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' && c != ';' && c != ':' &&
           c != '[' && c != ']';
}

class ENewickParser {
public:
    explicit ENewickParser(const std::string& text) : s_(text) {}

    Network parse() {
        skip();
        VertexId root = node();
        skip();
        if (at_end() || s_[i_] != ';') fail("expected ';'");
        ++i_;
        skip();
        if (!at_end()) fail("trailing text after ';'");
        for (const auto& [tag, h] : hybrids_) {
            if (h.count != 2) throw ENewickError(h.first_pos, "unmatched hybrid tag #" + tag);
            if (!h.defined) throw ENewickError(h.first_pos, "hybrid tag #" + tag + " has no subtree");
        }
        (void)root;
        auto report = validate(net_);
        if (!report.ok()) throw ENewickError(s_.size(), "invalid network: " + report.violations.front());
        return net_;
    }

private:
    struct Hybrid {
        VertexId v = -1;
        int count = 0;
        bool defined = false;
        std::size_t first_pos = 0;
    };

    bool at_end() const { return i_ >= s_.size(); }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ENewickError(i_, what); }

    std::string name() {
        std::size_t b = i_;
        while (!at_end() && name_char(s_[i_])) ++i_;
        return s_.substr(b, i_ - b);
    }

    VertexId node() {
        skip();
        if (at_end()) fail("unexpected end of input");
        std::vector<VertexId> kids;
        bool has_kids = false;
        if (s_[i_] == '(') {
            has_kids = true;
            ++i_;
            while (true) {
                kids.push_back(node());
                skip();
                if (at_end()) fail("unbalanced parentheses");
                if (s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                if (s_[i_] == ')') {
                    ++i_;
                    break;
                }
                fail(std::string("unexpected '") + s_[i_] + "'");
            }
        }
        skip();
        std::size_t name_pos = i_;
        std::string nm = name();
        if (!at_end() && s_[i_] == ':') fail("branch lengths are not supported");
        std::string label = nm, tag;
        if (auto h = nm.find('#'); h != std::string::npos) {
            label = nm.substr(0, h);
            tag = nm.substr(h + 1);
            if (tag.empty()) throw ENewickError(name_pos, "empty hybrid tag");
        }
        if (!tag.empty()) {
            auto& hy = hybrids_[tag];
            if (hy.count++ == 0) {
                hy.v = net_.add_vertex();
                hy.first_pos = name_pos;
            }
            if (hy.count > 2) throw ENewickError(name_pos, "hybrid tag #" + tag + " used more than twice");
            if (has_kids) {
                if (hy.defined) throw ENewickError(name_pos, "hybrid tag #" + tag + " defined twice");
                hy.defined = true;
                for (VertexId k : kids) net_.add_edge(hy.v, k);
            } else if (!label.empty()) {
                throw ENewickError(name_pos, "hybrid reference #" + tag + " carries a label");
            }
            if (!label.empty()) net_.set_note(hy.v, label);
            return hy.v;
        }
        if (!has_kids) {
            if (label.empty()) throw ENewickError(name_pos, "missing leaf label");
            if (!labels_.insert(label).second) throw ENewickError(name_pos, "label '" + label + "' reused");
            return net_.add_leaf(label);
        }
        VertexId v = net_.add_vertex(label);
        for (VertexId k : kids) net_.add_edge(v, k);
        return v;
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Network net_;
    std::map<std::string, Hybrid> hybrids_;
    std::set<std::string> labels_;
};

}  // namespace

Network parse_enewick(const std::string& text) { return ENewickParser(text).parse(); }

std::vector<Network> parse_enewick_lines(const std::string& text) {
    std::vector<Network> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
            continue;
        out.push_back(parse_enewick(line));
    }
    return out;
}

std::string write_enewick(const Network& net) {
    const int n = net.size();
    std::vector<std::string> least(n);
    std::vector<bool> done(n);
    std::function<const std::string&(VertexId)> min_label = [&](VertexId v) -> const std::string& {
        if (!done[v]) {
            done[v] = true;
            if (net.out_degree(v) == 0) least[v] = net.label(v);
            for (VertexId c : net.children(v)) {
                const auto& m = min_label(c);
                if (least[v].empty() || m < least[v]) least[v] = m;
            }
        }
        return least[v];
    };
    for (VertexId v = 0; v < n; ++v)
        for (char c : net.label(v))
            if (!name_char(c) || c == '#') throw std::invalid_argument("label '" + net.label(v) + "' not writable");

    std::map<VertexId, int> tag;
    std::string out;
    std::function<void(VertexId)> emit = [&](VertexId v) {
        if (net.is_reticulation(v)) {
            auto it = tag.find(v);
            if (it != tag.end()) {
                out += "#H" + std::to_string(it->second);
                return;
            }
            tag.emplace(v, static_cast<int>(tag.size()) + 1);
        }
        std::vector<VertexId> kids = net.children(v);
        if (!kids.empty()) {
            std::sort(kids.begin(), kids.end(), [&](VertexId a, VertexId b) { return min_label(a) < min_label(b); });
            out += '(';
            for (size_t i = 0; i < kids.size(); ++i) {
                if (i) out += ',';
                emit(kids[i]);
            }
            out += ')';
        } else {
            out += net.label(v);
        }
        if (net.is_reticulation(v)) out += "#H" + std::to_string(tag.at(v));
    };
    emit(net.root());
    out += ';';
    return out;
}

std::string export_dot(const Network& net, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (VertexId v = 0; v < net.size(); ++v) {
        if (net.in_degree(v) == 0 && net.out_degree(v) == 0 && !net.block) continue;
        out << "  v" << v << " [";
        if (net.out_degree(v) == 0)
            out << "shape=plaintext, label=\"" << net.label(v) << "\"";
        else if (net.is_reticulation(v))
            out << "shape=square, label=\"\", width=0.15";
        else
            out << "shape=point";
        out << "];\n";
    }
    for (auto [u, v] : net.edges()) out << "  v" << u << " -> v" << v << ";\n";
    out << "}\n";
    return out.str();
}

PathsInstance paths_from_json(const std::string& text) {
    using nlohmann::json;
    json j = json::parse(text);
    PathsInstance inst;
    int n = j.at("vertices").get<int>();
    if (n < 1) throw std::invalid_argument("paths instance needs at least one vertex");
    for (int v = 0; v < n; ++v) inst.graph.add_vertex();
    if (j.contains("labels"))
        for (auto& [k, val] : j["labels"].items()) inst.graph.set_label(std::stoi(k), val.get<std::string>());
    for (const auto& e : j.at("edges")) {
        int u = e.at(0).get<int>(), v = e.at(1).get<int>();
        if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
        inst.graph.add_edge(u, v);
    }
    inst.S = j.at("S").get<std::vector<VertexId>>();
    inst.T = j.at("T").get<std::vector<VertexId>>();
    inst.p = j.at("p").get<int>();
    if (inst.S.size() != inst.T.size()) throw std::invalid_argument("S and T differ in length");
    for (auto v : inst.S)
        if (v < 0 || v >= n) throw std::invalid_argument("S vertex out of range");
    for (auto v : inst.T)
        if (v < 0 || v >= n) throw std::invalid_argument("T vertex out of range");
    return inst;
}

std::string paths_to_json(const PathsInstance& inst) {
    using nlohmann::json;
    json j;
    j["vertices"] = inst.graph.size();
    json edges = json::array();
    for (auto [u, v] : inst.graph.edges()) edges.push_back({u, v});
    j["edges"] = edges;
    j["S"] = inst.S;
    j["T"] = inst.T;
    j["p"] = inst.p;
    json labels = json::object();
    for (VertexId v = 0; v < inst.graph.size(); ++v)
        if (!inst.graph.label(v).empty()) labels[std::to_string(v)] = inst.graph.label(v);
    if (!labels.empty()) j["labels"] = labels;
    return j.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace phylo
