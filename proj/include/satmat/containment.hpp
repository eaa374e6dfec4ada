#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "satmat/pattern.hpp"

namespace satmat {

// Lexicographically least copy of p in host, or nullopt if host avoids p.
std::optional<Placement> contains(const Pattern& host, const Pattern& p);

// Restricts which one-entries of p may be mapped onto the forced cell.
using OneFilter = std::function<bool(Cell pattern_one)>;

// Least copy of p in host + {cell} in which some one-entry of p lands on
// cell. The host entry at cell is treated as 1 whatever its value.
std::optional<Placement> contains_through(const Pattern& host, const Pattern& p, Cell cell,
                                          const OneFilter& filter = {});

// Every distinct row set used by a copy through cell, ascending.
std::vector<std::vector<int>> row_sets_through(const Pattern& host, const Pattern& p, Cell cell);

bool is_copy(const Pattern& host, const Pattern& p, const Placement& where);

// Brute force over all row and column subsets. Refuses (PreconditionError)
// when the number of candidate placements exceeds max_candidates.
std::optional<Placement> contains_oracle(const Pattern& host, const Pattern& p,
                                         std::uint64_t max_candidates = 50'000'000);

std::uint64_t binomial(int n, int k);
std::uint64_t placement_count(int m, int n, const Pattern& p);

// Streams every placement of p's index grid into an m x n grid, in ascending
// order. The sink returns false to stop early.
void enumerate_placements(int m, int n, const Pattern& p, const std::function<bool(const Placement&)>& sink);

// Calls fn for every strictly increasing k-subset of [0,n), ascending.
void for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& fn);

}  // namespace satmat
