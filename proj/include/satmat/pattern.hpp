#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace satmat {

// Every axis is stored in one 64-bit word.
inline constexpr int max_side = 64;

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// 0-based everywhere in the API; text reports print 1-based coordinates.
struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

// Strictly increasing host indices for every pattern row and column.
// Ordering is rows first, then cols.
struct Placement {
    std::vector<int> rows;
    std::vector<int> cols;
    auto operator<=>(const Placement&) const = default;
};

class Pattern {
public:
    Pattern() = default;
    Pattern(int rows, int cols);

    static Pattern from_strings(const std::vector<std::string>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool at(int r, int c) const { return (bits_[r] >> c) & 1u; }
    void set(int r, int c, bool v = true);
    void flip(int r, int c) { bits_[r] ^= std::uint64_t{1} << c; }

    std::uint64_t row_bits(int r) const { return bits_[r]; }
    void set_row_bits(int r, std::uint64_t b);
    // bit i is row i
    std::uint64_t col_bits(int c) const;

    int weight() const;
    int row_weight(int r) const;
    int col_weight(int c) const;
    bool row_empty(int r) const { return bits_[r] == 0; }
    bool col_empty(int c) const { return col_bits(c) == 0; }
    bool is_zero() const;

    std::vector<Cell> ones() const;  // row-major

    bool operator==(const Pattern&) const = default;
    // Row-major bit order with 0 < 1, as used to pick the least optimum.
    bool lex_less(const Pattern& o) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint64_t> bits_;
};

Pattern ones_matrix(int rows, int cols);

// '.' and '0' are zero, '1' and U+2022 are one, lines starting with '#' are
// comments and blank lines are skipped.
Pattern parse_pattern(std::string_view text);
std::string serialize_pattern(const Pattern& p);

Pattern transpose(const Pattern& p);
Pattern rotate90(const Pattern& p);   // clockwise
Pattern reflect_h(const Pattern& p);  // across a horizontal axis: rows reversed
Pattern reflect_v(const Pattern& p);  // across a vertical axis: columns reversed

// The eight dihedral images. Index 0 is the identity; image i is undone by
// apply_inverse_symmetry(i, .).
inline constexpr int symmetry_count = 8;
Pattern apply_symmetry(int which, const Pattern& p);
Pattern apply_inverse_symmetry(int which, const Pattern& p);
const char* symmetry_name(int which);
int symmetry_by_name(std::string_view name);

Pattern kronecker(const Pattern& p, const Pattern& q);

struct Decomposition {
    bool anti_diagonal = false;  // [[0,A],[B,0]] instead of [[A,0],[0,B]]
    int row_split = 0;           // A occupies rows [0,row_split)
    int col_split = 0;
    Pattern a;
    Pattern b;
};

std::optional<Decomposition> is_decomposable(const Pattern& p);
bool is_strongly_indecomposable(const Pattern& p);
bool is_permutation_matrix(const Pattern& p);

Pattern insert_empty_column(const Pattern& p, int index);
Pattern insert_empty_row(const Pattern& p, int index);
Pattern delete_row(const Pattern& p, int index);
Pattern delete_column(const Pattern& p, int index);
Pattern prepend_allones_column(const Pattern& p);
Pattern submatrix(const Pattern& p, const std::vector<int>& rows, const std::vector<int>& cols);
Pattern row_band(const Pattern& p, int first, int last);  // rows [first,last)
Pattern col_band(const Pattern& p, int first, int last);

int longest_empty_col_run(const Pattern& p);
int longest_empty_row_run(const Pattern& p);

// true iff a <= b entrywise (same shape)
bool dominated_by(const Pattern& a, const Pattern& b);

}  // namespace satmat
