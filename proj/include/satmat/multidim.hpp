#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "satmat/pattern.hpp"

namespace satmat {

inline constexpr int max_dims = 4;

using Coord = std::vector<int>;  // 0-based, one entry per axis

// d-dimensional 0-1 array, d in 1..4, every side in 1..64. Stored as bit
// lines along the last axis.
class DPattern {
public:
    DPattern() = default;
    explicit DPattern(std::vector<int> dims);

    int d() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int axis) const { return dims_[axis]; }
    std::uint64_t cell_count() const;

    bool at(const Coord& x) const;
    void set(const Coord& x, bool v = true);
    int weight() const;
    std::vector<Coord> ones() const;  // coordinate-lexicographic

    std::size_t line_count() const { return lines_.size(); }
    std::size_t line_of(const Coord& x) const;  // ignores the last coordinate
    std::uint64_t line(std::size_t i) const { return lines_[i]; }
    void or_line(std::size_t i, std::uint64_t bits) { lines_[i] |= bits; }

    // Calls fn on every coordinate in lexicographic order.
    template <class F>
    void for_each_cell(F&& fn) const {
        Coord x(dims_.size(), 0);
        if (dims_.empty()) return;
        while (true) {
            fn(x);
            int a = d() - 1;
            while (a >= 0 && ++x[a] == dims_[a]) x[a--] = 0;
            if (a < 0) return;
        }
    }

    bool operator==(const DPattern&) const = default;

private:
    std::vector<int> dims_;
    std::vector<std::uint64_t> lines_;
};

// "dims n1 ... nd" then one line of 1-based coordinates per one-entry;
// '#' comments and blank lines are ignored.
DPattern parse_dpattern(std::string_view text);
std::string serialize_dpattern(const DPattern& p);  // ones sorted lexicographically

DPattern from_matrix(const Pattern& p);
Pattern to_matrix(const DPattern& p);  // d == 2

// Index choices per axis.
using DPlacement = std::vector<std::vector<int>>;

std::optional<DPlacement> contains_d(const DPattern& host, const DPattern& p);
// Copy of p in host + {cell} that uses cell.
std::optional<DPlacement> contains_through_d(const DPattern& host, const DPattern& p, const Coord& cell);

struct DSaturation {
    bool ok = false;
    std::optional<DPlacement> contained;
    std::optional<Coord> failing_zero;
};

DSaturation is_saturating_d(const DPattern& m, const DPattern& p);
DSaturation is_semisaturating_d(const DPattern& m, const DPattern& p);

// Every cell of the layer x_axis = index is zero and each flip there creates a copy.
bool is_expandable_layer(const DPattern& w, const DPattern& p, int axis, int index);

// 4x4x6 pattern with a 6x6xn witness whose middle n-8 layers are empty.
DPattern pattern_A();
DPattern witness_W_A(int n);  // n >= 8

// Coordinate-lexicographic greedy completion.
DPattern complete_to_saturated_d(const DPattern& m, const DPattern& p);

DPattern corner_pattern(const std::vector<int>& k);  // single one at the far corner
DPattern corner_saturated(const std::vector<int>& n, const std::vector<int>& k);
std::uint64_t max_sat_bound(const std::vector<int>& n, const std::vector<int>& k);

DPattern prepend_allones_layer(const DPattern& m, int axis);
DPattern insert_empty_layers(const DPattern& m, int axis, int before, int count);

// Axes [0, fixed) have sizes fixed_sizes, the others size n. A cell is one
// iff at most k of its free coordinates lie in the middle band
// [p_i, n - p_i + 1] (1-based).
DPattern build_ssat_construction(const DPattern& p, int fixed, const std::vector<int>& fixed_sizes, int n, int k);

// Least k >= 0 for which the boundary-face condition holds; then
// ssat grows like n^k with `fixed` axes held constant.
int compute_ssat_exponent(const DPattern& p, int fixed);

// Weight bound sum over k-subsets S of free axes of |{cells with middle
// coordinates only in S}|, using 2(p_i - 1) boundary values per axis.
std::uint64_t ssat_construction_bound(const DPattern& p, int fixed, const std::vector<int>& fixed_sizes, int n, int k);

}  // namespace satmat
