#pragma once

// Generators and brute-force oracles shared by the test binaries. Oracles use
// only Pattern::at and plain loops; no library search code.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "satmat/pattern.hpp"

namespace satmat::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240917);
    return g;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Pattern random_pattern(int rows, int cols, double density) {
    std::bernoulli_distribution bit(density);
    Pattern p(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (bit(rng())) p.set(r, c);
    return p;
}

inline Pattern random_nonzero(int rows, int cols, double density) {
    while (true) {
        Pattern p = random_pattern(rows, cols, density);
        if (!p.is_zero()) return p;
    }
}

inline bool has_empty_line(const Pattern& p) {
    for (int r = 0; r < p.rows(); ++r)
        if (p.row_empty(r)) return true;
    for (int c = 0; c < p.cols(); ++c)
        if (p.col_empty(c)) return true;
    return false;
}

// Every pattern of the given size, as a bit index over row-major cells.
inline Pattern pattern_from_mask(int rows, int cols, std::uint64_t mask) {
    Pattern p(rows, cols);
    for (int i = 0; i < rows * cols; ++i)
        if (mask >> i & 1) p.set(i / cols, i % cols);
    return p;
}

// Subsets of {0..n-1} of size k, as sorted vectors.
inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        if (__builtin_popcount(m) != k) continue;
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (m >> i & 1) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

inline bool brute_contains(const Pattern& host, const Pattern& p) {
    if (p.rows() > host.rows() || p.cols() > host.cols()) return false;
    for (const auto& rs : subsets(host.rows(), p.rows()))
        for (const auto& cs : subsets(host.cols(), p.cols())) {
            bool ok = true;
            for (int r = 0; r < p.rows() && ok; ++r)
                for (int c = 0; c < p.cols() && ok; ++c)
                    if (p.at(r, c) && !host.at(rs[r], cs[c])) ok = false;
            if (ok) return true;
        }
    return false;
}

inline bool brute_saturating(const Pattern& m, const Pattern& p) {
    if (brute_contains(m, p)) return false;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            if (m.at(r, c)) continue;
            Pattern f = m;
            f.set(r, c);
            if (!brute_contains(f, p)) return false;
        }
    return true;
}

// Least weight over all m x n matrices; tiny grids only.
inline int brute_sat(int m, int n, const Pattern& p) {
    int best = m * n + 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m * n)); ++mask) {
        int w = __builtin_popcountll(mask);
        if (w >= best) continue;
        if (brute_saturating(pattern_from_mask(m, n, mask), p)) best = w;
    }
    return best;
}

// Random q2-like pattern in a random orientation with no empty lines.
inline Pattern random_q2like(int max_side) {
    while (true) {
        const int k = uniform(4, max_side), l = uniform(4, max_side);
        const int hl = uniform(1, k - 3), hr = uniform(hl + 1, k - 2);
        const int cb = uniform(1, l - 3), ct = uniform(cb + 1, l - 2);
        Pattern p(k, l);
        p.set(0, 0);
        p.set(0, ct);
        p.set(hl, 0);
        p.set(hr, l - 1);
        p.set(k - 1, cb);
        for (int r = 1; r < k - 1; ++r)
            for (int c = 1; c < l - 1; ++c)
                if (r != hl && r != hr && c != ct && c != cb && uniform(0, 1)) p.set(r, c);
        if (has_empty_line(p)) continue;
        return apply_symmetry(uniform(0, symmetry_count - 1), p);
    }
}

}  // namespace satmat::testing
