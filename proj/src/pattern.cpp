#include "satmat/pattern.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace satmat {

namespace {

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

void check_shape(int rows, int cols) {
    if (rows < 0 || cols < 0 || rows > max_side || cols > max_side)
        throw PreconditionError("matrix shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " outside 0..64 per axis");
}

}  // namespace

Pattern::Pattern(int rows, int cols) : rows_(rows), cols_(cols) {
    check_shape(rows, cols);
    bits_.assign(static_cast<std::size_t>(rows), 0);
}

Pattern Pattern::from_strings(const std::vector<std::string>& rows) {
    std::string text;
    for (const auto& r : rows) text += r + "\n";
    return parse_pattern(text);
}

void Pattern::set(int r, int c, bool v) {
    auto bit = std::uint64_t{1} << c;
    if (v)
        bits_[r] |= bit;
    else
        bits_[r] &= ~bit;
}

void Pattern::set_row_bits(int r, std::uint64_t b) { bits_[r] = b & low_mask(cols_); }

std::uint64_t Pattern::col_bits(int c) const {
    std::uint64_t out = 0;
    for (int r = 0; r < rows_; ++r) out |= ((bits_[r] >> c) & 1u) << r;
    return out;
}

int Pattern::weight() const {
    int w = 0;
    for (auto b : bits_) w += std::popcount(b);
    return w;
}

int Pattern::row_weight(int r) const { return std::popcount(bits_[r]); }
int Pattern::col_weight(int c) const { return std::popcount(col_bits(c)); }

bool Pattern::is_zero() const {
    for (auto b : bits_)
        if (b) return false;
    return true;
}

std::vector<Cell> Pattern::ones() const {
    std::vector<Cell> out;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (at(r, c)) out.push_back({r, c});
    return out;
}

bool Pattern::lex_less(const Pattern& o) const {
    for (int r = 0; r < rows_; ++r) {
        if (bits_[r] == o.bits_[r]) continue;
        // lowest differing column comes first in row-major order
        auto diff = bits_[r] ^ o.bits_[r];
        int c = std::countr_zero(diff);
        return !at(r, c);
    }
    return false;
}

Pattern ones_matrix(int rows, int cols) {
    Pattern p(rows, cols);
    for (int r = 0; r < rows; ++r) p.set_row_bits(r, ~std::uint64_t{0});
    return p;
}

Pattern parse_pattern(std::string_view text) {
    std::vector<std::vector<bool>> grid;
    int width = -1;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        std::vector<bool> row;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char ch = line[i];
            if (ch == '.' || ch == '0') {
                row.push_back(false);
            } else if (ch == '1') {
                row.push_back(true);
            } else if (line.substr(i, 3) == "\xE2\x80\xA2") {
                row.push_back(true);
                i += 2;
            } else {
                throw ParseError(lineno, std::string("illegal character '") + ch + "'");
            }
        }
        if (width >= 0 && static_cast<int>(row.size()) != width)
            throw ParseError(lineno, "ragged row: expected " + std::to_string(width) + " cells, got " +
                                         std::to_string(row.size()));
        width = static_cast<int>(row.size());
        if (width > max_side) throw ParseError(lineno, "more than 64 columns");
        grid.push_back(std::move(row));
        if (grid.size() > static_cast<std::size_t>(max_side)) throw ParseError(lineno, "more than 64 rows");
    }
    if (grid.empty()) throw ParseError(lineno, "no matrix rows");

    Pattern p(static_cast<int>(grid.size()), width);
    for (int r = 0; r < p.rows(); ++r)
        for (int c = 0; c < width; ++c)
            if (grid[r][c]) p.set(r, c);
    return p;
}

std::string serialize_pattern(const Pattern& p) {
    std::string out;
    out.reserve(static_cast<std::size_t>(p.rows() * (p.cols() + 1)));
    for (int r = 0; r < p.rows(); ++r) {
        for (int c = 0; c < p.cols(); ++c) out += p.at(r, c) ? '1' : '.';
        out += '\n';
    }
    return out;
}

Pattern transpose(const Pattern& p) {
    Pattern t(p.cols(), p.rows());
    for (int c = 0; c < p.cols(); ++c) t.set_row_bits(c, p.col_bits(c));
    return t;
}

Pattern rotate90(const Pattern& p) {
    Pattern t(p.cols(), p.rows());
    for (int r = 0; r < p.rows(); ++r)
        for (int c = 0; c < p.cols(); ++c)
            if (p.at(r, c)) t.set(c, p.rows() - 1 - r);
    return t;
}

Pattern reflect_h(const Pattern& p) {
    Pattern t(p.rows(), p.cols());
    for (int r = 0; r < p.rows(); ++r) t.set_row_bits(p.rows() - 1 - r, p.row_bits(r));
    return t;
}

Pattern reflect_v(const Pattern& p) {
    Pattern t(p.rows(), p.cols());
    for (int r = 0; r < p.rows(); ++r)
        for (int c = 0; c < p.cols(); ++c)
            if (p.at(r, c)) t.set(r, p.cols() - 1 - c);
    return t;
}

// 0 id, 1 rot90, 2 rot180, 3 rot270, 4 transpose, 5 anti-transpose,
// 6 reflect_h, 7 reflect_v
Pattern apply_symmetry(int which, const Pattern& p) {
    switch (which) {
        case 0: return p;
        case 1: return rotate90(p);
        case 2: return rotate90(rotate90(p));
        case 3: return rotate90(rotate90(rotate90(p)));
        case 4: return transpose(p);
        case 5: return rotate90(rotate90(transpose(p)));
        case 6: return reflect_h(p);
        case 7: return reflect_v(p);
    }
    throw PreconditionError("symmetry index out of range");
}

Pattern apply_inverse_symmetry(int which, const Pattern& p) {
    switch (which) {
        case 1: return apply_symmetry(3, p);
        case 3: return apply_symmetry(1, p);
        default: return apply_symmetry(which, p);
    }
}

const char* symmetry_name(int which) {
    static const char* names[] = {"identity", "rotate90", "rotate180", "rotate270",
                                  "transpose", "anti-transpose", "reflect-rows", "reflect-cols"};
    return names[which];
}

int symmetry_by_name(std::string_view name) {
    for (int s = 0; s < symmetry_count; ++s)
        if (name == symmetry_name(s)) return s;
    throw PreconditionError("unknown symmetry " + std::string(name));
}

Pattern kronecker(const Pattern& p, const Pattern& q) {
    Pattern out(p.rows() * q.rows(), p.cols() * q.cols());
    for (auto [a, c] : p.ones())
        for (auto [b, d] : q.ones()) out.set(a * q.rows() + b, c * q.cols() + d);
    return out;
}

namespace {

// Nonzero entries restricted to rows [r0,r1) x cols [c0,c1).
bool block_nonzero(const Pattern& p, int r0, int r1, int c0, int c1) {
    if (c1 <= c0) return false;
    std::uint64_t m = low_mask(c1) & ~low_mask(c0);
    for (int r = r0; r < r1; ++r)
        if (p.row_bits(r) & m) return true;
    return false;
}

Pattern block(const Pattern& p, int r0, int r1, int c0, int c1) {
    Pattern out(r1 - r0, std::max(0, c1 - c0));
    if (c1 <= c0) return out;
    for (int r = r0; r < r1; ++r) out.set_row_bits(r - r0, (p.row_bits(r) & low_mask(c1)) >> c0);
    return out;
}

}  // namespace

std::optional<Decomposition> is_decomposable(const Pattern& p) {
    const int R = p.rows(), C = p.cols();
    for (int anti = 0; anti < 2; ++anti)
        for (int r = 1; r < R; ++r)
            for (int c = 1; c < C; ++c) {
                Decomposition d;
                d.anti_diagonal = anti;
                d.row_split = r;
                d.col_split = c;
                if (!anti) {
                    if (block_nonzero(p, 0, r, c, C) || block_nonzero(p, r, R, 0, c)) continue;
                    if (!block_nonzero(p, 0, r, 0, c) || !block_nonzero(p, r, R, c, C)) continue;
                    d.a = block(p, 0, r, 0, c);
                    d.b = block(p, r, R, c, C);
                } else {
                    if (block_nonzero(p, 0, r, 0, c) || block_nonzero(p, r, R, c, C)) continue;
                    if (!block_nonzero(p, 0, r, c, C) || !block_nonzero(p, r, R, 0, c)) continue;
                    d.a = block(p, 0, r, c, C);
                    d.b = block(p, r, R, 0, c);
                }
                return d;
            }
    return std::nullopt;
}

bool is_strongly_indecomposable(const Pattern& p) {
    if (is_decomposable(p)) return false;
    const int R = p.rows(), C = p.cols();
    // bands: rows [0,r1) [r1,r2) [r2,R), cols [0,c1) [c1,c2) [c2,C)
    for (int r1 = 0; r1 <= R; ++r1)
        for (int r2 = r1; r2 <= R; ++r2)
            for (int c1 = 0; c1 <= C; ++c1)
                for (int c2 = c1; c2 <= C; ++c2) {
                    if (block_nonzero(p, 0, r1, 0, c1) || block_nonzero(p, 0, r1, c2, C) ||
                        block_nonzero(p, r1, r2, c1, c2) || block_nonzero(p, r2, R, 0, c1) ||
                        block_nonzero(p, r2, R, c2, C))
                        continue;
                    int present = block_nonzero(p, 0, r1, c1, c2) + block_nonzero(p, r1, r2, 0, c1) +
                                  block_nonzero(p, r1, r2, c2, C) + block_nonzero(p, r2, R, c1, c2);
                    if (present >= 3) return false;
                }
    return true;
}

bool is_permutation_matrix(const Pattern& p) {
    if (p.rows() != p.cols() || p.rows() == 0) return false;
    for (int r = 0; r < p.rows(); ++r)
        if (p.row_weight(r) != 1) return false;
    for (int c = 0; c < p.cols(); ++c)
        if (p.col_weight(c) != 1) return false;
    return true;
}

Pattern insert_empty_column(const Pattern& p, int index) {
    if (index < 0 || index > p.cols()) throw PreconditionError("column index out of range");
    Pattern out(p.rows(), p.cols() + 1);
    for (int r = 0; r < p.rows(); ++r) {
        auto b = p.row_bits(r);
        out.set_row_bits(r, (b & low_mask(index)) | ((b >> index) << (index + 1)));
    }
    return out;
}

Pattern insert_empty_row(const Pattern& p, int index) {
    if (index < 0 || index > p.rows()) throw PreconditionError("row index out of range");
    Pattern out(p.rows() + 1, p.cols());
    for (int r = 0; r < p.rows(); ++r) out.set_row_bits(r < index ? r : r + 1, p.row_bits(r));
    return out;
}

Pattern delete_row(const Pattern& p, int index) {
    Pattern out(p.rows() - 1, p.cols());
    for (int r = 0, o = 0; r < p.rows(); ++r)
        if (r != index) out.set_row_bits(o++, p.row_bits(r));
    return out;
}

Pattern delete_column(const Pattern& p, int index) {
    Pattern out(p.rows(), p.cols() - 1);
    for (int r = 0; r < p.rows(); ++r) {
        auto b = p.row_bits(r);
        auto high = index + 1 >= 64 ? 0 : (b >> (index + 1)) << index;
        out.set_row_bits(r, (b & low_mask(index)) | high);
    }
    return out;
}

Pattern prepend_allones_column(const Pattern& p) {
    Pattern out(p.rows(), p.cols() + 1);
    for (int r = 0; r < p.rows(); ++r) out.set_row_bits(r, (p.row_bits(r) << 1) | 1u);
    return out;
}

Pattern submatrix(const Pattern& p, const std::vector<int>& rows, const std::vector<int>& cols) {
    Pattern out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (p.at(rows[i], cols[j])) out.set(static_cast<int>(i), static_cast<int>(j));
    return out;
}

Pattern row_band(const Pattern& p, int first, int last) { return block(p, first, last, 0, p.cols()); }
Pattern col_band(const Pattern& p, int first, int last) { return block(p, 0, p.rows(), first, last); }

int longest_empty_col_run(const Pattern& p) {
    int best = 0, run = 0;
    for (int c = 0; c < p.cols(); ++c) {
        run = p.col_empty(c) ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best;
}

int longest_empty_row_run(const Pattern& p) { return longest_empty_col_run(transpose(p)); }

bool dominated_by(const Pattern& a, const Pattern& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int r = 0; r < a.rows(); ++r)
        if (a.row_bits(r) & ~b.row_bits(r)) return false;
    return true;
}

}  // namespace satmat
