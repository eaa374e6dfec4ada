#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satmat/pattern.hpp"
#include "satmat/saturation.hpp"

namespace satmat {

enum class CopyPolicy { lexicographic, enumerate_all };

// Vertices are the rows of a horizontal witness (columns of a vertical one).
// Edge a -> b when the copy completed by flipping vertex a's cell on the
// expandable line also uses vertex b.
struct WitnessGraph {
    int vertices = 0;
    int line = -1;  // expandable column (row) used
    std::vector<std::vector<int>> out;
};

// Uses the first line of the expandable run; throws if w is not a witness of
// the kind (full is rejected).
WitnessGraph build_witness_graph(const Pattern& w, const Pattern& p, WitnessKind kind);

// One graph per combination of copy choices (distinct vertex sets only),
// stopping after `cap` graphs.
std::vector<WitnessGraph> build_witness_graphs(const Pattern& w, const Pattern& p, WitnessKind kind,
                                               CopyPolicy policy, std::size_t cap = 4096);

struct GraphChecks {
    bool out_degrees_ok = false;  // every vertex has out-degree k-1
    bool connected = false;       // weakly
    bool all_in_degree_positive = false;
    bool is_cycle = false;        // one directed cycle through every vertex
    bool is_bipartite = false;    // underlying undirected graph
    bool cycle_reachable_from_all = false;
};

// k is the number of pattern rows (columns for a vertical witness).
GraphChecks graph_checks(const WitnessGraph& g, int k);
std::string graph_report(const WitnessGraph& g, const GraphChecks& checks);

// Rows (columns) in vertex_set, which must be closed under out-edges; the
// result is re-checked as a witness and a failure throws.
Pattern subgraph_witness(const Pattern& w, const Pattern& p, WitnessKind kind, const std::vector<int>& vertex_set);

}  // namespace satmat
