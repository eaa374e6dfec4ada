#include "satmat/witness_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "satmat/containment.hpp"

namespace satmat {

namespace {

struct Oriented {
    Pattern w;
    Pattern p;
    int line = -1;
};

// Horizontal view: vertical witnesses are transposed.
Oriented orient(const Pattern& w, const Pattern& p, WitnessKind kind) {
    if (kind == WitnessKind::full) throw PreconditionError("witness graphs need a horizontal or vertical witness");
    Oriented o;
    o.w = kind == WitnessKind::vertical ? transpose(w) : w;
    o.p = kind == WitnessKind::vertical ? transpose(p) : p;
    auto cert = check_witness(o.w, o.p, WitnessKind::horizontal);
    if (!cert.valid) throw PreconditionError("not a " + std::string(kind_name(kind)) + " witness: " + cert.failure);
    o.line = cert.cols->first;
    return o;
}

WitnessGraph from_row_sets(int vertices, int line, const std::vector<std::vector<int>>& sets) {
    WitnessGraph g;
    g.vertices = vertices;
    g.line = line;
    g.out.resize(static_cast<std::size_t>(vertices));
    for (int a = 0; a < vertices; ++a)
        for (int b : sets[a])
            if (b != a) g.out[a].push_back(b);
    return g;
}

}  // namespace

WitnessGraph build_witness_graph(const Pattern& w, const Pattern& p, WitnessKind kind) {
    auto o = orient(w, p, kind);
    std::vector<std::vector<int>> sets;
    for (int a = 0; a < o.w.rows(); ++a) sets.push_back(contains_through(o.w, o.p, {a, o.line})->rows);
    return from_row_sets(o.w.rows(), o.line, sets);
}

std::vector<WitnessGraph> build_witness_graphs(const Pattern& w, const Pattern& p, WitnessKind kind,
                                               CopyPolicy policy, std::size_t cap) {
    if (policy == CopyPolicy::lexicographic) return {build_witness_graph(w, p, kind)};
    auto o = orient(w, p, kind);
    const int m = o.w.rows();
    std::vector<std::vector<std::vector<int>>> choices;
    for (int a = 0; a < m; ++a) choices.push_back(row_sets_through(o.w, o.p, {a, o.line}));
    std::vector<WitnessGraph> out;
    std::vector<std::vector<int>> pick(static_cast<std::size_t>(m));
    std::function<void(int)> rec = [&](int a) {
        if (out.size() >= cap) return;
        if (a == m) {
            out.push_back(from_row_sets(m, o.line, pick));
            return;
        }
        for (const auto& s : choices[a]) {
            pick[a] = s;
            rec(a + 1);
        }
    };
    rec(0);
    return out;
}

GraphChecks graph_checks(const WitnessGraph& g, int k) {
    GraphChecks c;
    const int V = g.vertices;
    std::vector<int> indeg(static_cast<std::size_t>(V), 0);
    c.out_degrees_ok = true;
    for (int a = 0; a < V; ++a) {
        if (static_cast<int>(g.out[a].size()) != k - 1) c.out_degrees_ok = false;
        for (int b : g.out[a]) ++indeg[b];
    }
    c.all_in_degree_positive = std::all_of(indeg.begin(), indeg.end(), [](int d) { return d > 0; });

    std::vector<std::vector<int>> und(static_cast<std::size_t>(V));
    for (int a = 0; a < V; ++a)
        for (int b : g.out[a]) {
            und[a].push_back(b);
            und[b].push_back(a);
        }
    std::vector<int> color(static_cast<std::size_t>(V), -1);
    int components = 0;
    c.is_bipartite = true;
    for (int s = 0; s < V; ++s) {
        if (color[s] >= 0) continue;
        ++components;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b : und[a]) {
                if (color[b] < 0) {
                    color[b] = 1 - color[a];
                    stack.push_back(b);
                } else if (color[b] == color[a]) {
                    c.is_bipartite = false;
                }
            }
        }
    }
    c.connected = V > 0 && components == 1;

    bool unit = V > 0;
    for (int a = 0; a < V; ++a)
        if (g.out[a].size() != 1 || indeg[a] != 1) unit = false;
    if (unit) {
        int steps = 0, a = 0;
        do {
            a = g.out[a][0];
            ++steps;
        } while (a != 0 && steps <= V);
        c.is_cycle = steps == V;
    }

    // Vertices on a cycle: those that reach themselves.
    std::vector<char> on_cycle(static_cast<std::size_t>(V), 0);
    for (int s = 0; s < V; ++s) {
        std::vector<char> seen(static_cast<std::size_t>(V), 0);
        std::vector<int> stack(g.out[s].begin(), g.out[s].end());
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            if (seen[a]) continue;
            seen[a] = 1;
            if (a == s) {
                on_cycle[s] = 1;
                break;
            }
            for (int b : g.out[a]) stack.push_back(b);
        }
    }
    c.cycle_reachable_from_all = true;
    for (int s = 0; s < V; ++s) {
        std::vector<char> seen(static_cast<std::size_t>(V), 0);
        std::vector<int> stack{s};
        bool hit = false;
        while (!stack.empty() && !hit) {
            int a = stack.back();
            stack.pop_back();
            if (seen[a]) continue;
            seen[a] = 1;
            if (on_cycle[a]) hit = true;
            for (int b : g.out[a]) stack.push_back(b);
        }
        if (!hit) c.cycle_reachable_from_all = false;
    }
    return c;
}

std::string graph_report(const WitnessGraph& g, const GraphChecks& c) {
    std::ostringstream os;
    os << "vertices " << g.vertices << ", expandable line " << g.line + 1 << "\n";
    for (int a = 0; a < g.vertices; ++a) {
        os << a + 1 << " ->";
        for (int b : g.out[a]) os << " " << b + 1;
        os << "\n";
    }
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    os << "out-degrees k-1: " << yn(c.out_degrees_ok) << "\n"
       << "connected: " << yn(c.connected) << "\n"
       << "all in-degrees positive: " << yn(c.all_in_degree_positive) << "\n"
       << "single cycle: " << yn(c.is_cycle) << "\n"
       << "bipartite: " << yn(c.is_bipartite) << "\n"
       << "cycle reachable from every vertex: " << yn(c.cycle_reachable_from_all) << "\n";
    return os.str();
}

Pattern subgraph_witness(const Pattern& w, const Pattern& p, WitnessKind kind, const std::vector<int>& vertex_set) {
    auto g = build_witness_graph(w, p, kind);
    std::vector<int> vs = vertex_set;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.empty()) throw PreconditionError("empty vertex set");
    for (int a : vs) {
        if (a < 0 || a >= g.vertices) throw PreconditionError("vertex out of range");
        for (int b : g.out[a])
            if (!std::binary_search(vs.begin(), vs.end(), b))
                throw PreconditionError("vertex set not closed under out-edges: " + std::to_string(a + 1) + " -> " +
                                        std::to_string(b + 1));
    }
    const bool vertical = kind == WitnessKind::vertical;
    Pattern hw = vertical ? transpose(w) : w;
    std::vector<int> cols(static_cast<std::size_t>(hw.cols()));
    std::iota(cols.begin(), cols.end(), 0);
    Pattern sub = submatrix(hw, vs, cols);
    if (vertical) sub = transpose(sub);
    auto cert = check_witness(sub, p, kind);
    if (!cert.valid) throw std::logic_error("out-closed restriction is not a witness: " + cert.failure);
    return sub;
}

}  // namespace satmat
