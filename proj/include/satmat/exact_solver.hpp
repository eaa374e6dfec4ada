#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "satmat/pattern.hpp"

namespace satmat {

class NoSaturatingMatrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolveOptions {
    int threads = 1;
    std::optional<std::uint64_t> node_limit;
    std::optional<std::chrono::milliseconds> time_limit;
    // Grids up to this many cells run without a limit; beyond it a default
    // time limit applies unless one is given.
    int guaranteed_cells = 30;
    std::chrono::milliseconds default_time_limit{60'000};
};

struct SatResult {
    int value = 0;        // exact when complete, else best upper bound
    bool complete = false;
    Pattern optimum;      // least in row-major bit order among optima
    std::uint64_t nodes = 0;
    double seconds = 0;
};

// SATMAT_BUDGET (a node count) overrides node_limit when set.
std::optional<std::uint64_t> env_node_budget();

SatResult sat_exact(int m, int n, const Pattern& p, const SolveOptions& opts = {});

// Exhaustive over all 2^(mn) matrices; refuses m*n > 20.
int sat_exact_oracle(int m, int n, const Pattern& p);

// Binary program: minimise the weight subject to avoidance, a completing copy
// through every zero, and forced ones where no copy passes through a cell.
std::string emit_ilp(int m, int n, const Pattern& p);

enum class FixedRowsOutcome { found, exhausted, inconclusive };
const char* outcome_name(FixedRowsOutcome o);

struct FixedRowsResult {
    FixedRowsOutcome outcome = FixedRowsOutcome::inconclusive;
    std::optional<Pattern> witness;
    int expandable_col = -1;
    int max_width = 0;
    std::uint64_t nodes = 0;
};

// Complete search for a horizontal witness with exactly m0 rows and at most
// (cols(p)-1)*m0+1 columns. p must have no empty columns.
FixedRowsResult decide_fixed_rows(int m0, const Pattern& p, std::optional<std::uint64_t> node_limit = {});

}  // namespace satmat
