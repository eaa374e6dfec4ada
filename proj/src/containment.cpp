#include "satmat/containment.hpp"

#include <algorithm>
#include <bit>

namespace satmat {

namespace {

// Rows are chosen depth-first in pattern order; after every choice the columns
// are matched greedily (leftmost host column that covers the pattern column on
// the rows chosen so far). Greedy failure on a prefix is final, so the first
// complete hit is the least rowChoice and greedy gives its least colChoice.
class Matcher {
public:
    Matcher(const Pattern& host, const Pattern& p) : host_(host), p_(p) {
        m_ = host.rows();
        n_ = host.cols();
        k_ = p.rows();
        l_ = p.cols();
        host_cols_.resize(static_cast<std::size_t>(n_));
        for (int c = 0; c < n_; ++c) host_cols_[c] = host.col_bits(c);
        need_.assign(static_cast<std::size_t>((k_ + 1) * l_), 0);
        rows_.assign(static_cast<std::size_t>(k_), 0);
        cols_.assign(static_cast<std::size_t>(l_), 0);
    }

    void force(Cell pattern_one, Cell host_cell) {
        fpr_ = pattern_one.row;
        fpc_ = pattern_one.col;
        fhr_ = host_cell.row;
        fhc_ = host_cell.col;
        host_cols_[fhc_] |= std::uint64_t{1} << fhr_;
    }

    std::optional<Placement> first() {
        if (k_ > m_ || l_ > n_) return std::nullopt;
        on_hit_ = nullptr;
        if (!dfs(0, 0)) return std::nullopt;
        return Placement{rows_, cols_};
    }

    // Visits every row set that admits a column match.
    void all_row_sets(const std::function<void(const std::vector<int>&)>& fn) {
        if (k_ > m_ || l_ > n_) return;
        on_hit_ = &fn;
        dfs(0, 0);
    }

private:
    std::uint64_t* need(int depth) { return need_.data() + static_cast<std::ptrdiff_t>(depth) * l_; }

    bool greedy(const std::uint64_t* need) {
        int h = 0;
        for (int c = 0; c < l_; ++c) {
            if (c == fpc_) {
                if (fhc_ < h || (host_cols_[fhc_] & need[c]) != need[c]) return false;
                cols_[c] = fhc_;
                h = fhc_ + 1;
                continue;
            }
            int limit = (fpc_ >= 0 && c < fpc_) ? fhc_ : n_;
            while (h < limit && (host_cols_[h] & need[c]) != need[c]) ++h;
            if (h >= limit) return false;
            cols_[c] = h++;
        }
        return true;
    }

    bool dfs(int t, int min_row) {
        if (t == k_) {
            if (!greedy(need(k_))) return false;
            if (on_hit_) {
                (*on_hit_)(rows_);
                return false;  // keep enumerating
            }
            return true;
        }
        int lo = min_row, hi = m_ - (k_ - t);
        if (t == fpr_) {
            lo = std::max(lo, fhr_);
            hi = std::min(hi, fhr_);
        } else if (fpr_ > t) {
            hi = std::min(hi, fhr_ - (fpr_ - t));
        }
        const std::uint64_t prow = p_.row_bits(t);
        const int pw = std::popcount(prow);
        const std::uint64_t* cur = need(t);
        std::uint64_t* next = need(t + 1);
        for (int h = lo; h <= hi; ++h) {
            std::uint64_t hrow = host_.row_bits(h);
            if (h == fhr_) hrow |= std::uint64_t{1} << fhc_;
            if (std::popcount(hrow) < pw) continue;
            rows_[t] = h;
            const std::uint64_t bit = std::uint64_t{1} << h;
            for (int c = 0; c < l_; ++c) next[c] = cur[c] | (((prow >> c) & 1u) ? bit : 0);
            if (!greedy(next)) continue;
            if (dfs(t + 1, h + 1)) return true;
        }
        return false;
    }

    const Pattern& host_;
    const Pattern& p_;
    int m_ = 0, n_ = 0, k_ = 0, l_ = 0;
    int fpr_ = -1, fpc_ = -1, fhr_ = -1, fhc_ = -1;
    std::vector<std::uint64_t> host_cols_;
    std::vector<std::uint64_t> need_;
    std::vector<int> rows_, cols_;
    const std::function<void(const std::vector<int>&)>* on_hit_ = nullptr;
};

}  // namespace

std::optional<Placement> contains(const Pattern& host, const Pattern& p) {
    Matcher m(host, p);
    return m.first();
}

std::optional<Placement> contains_through(const Pattern& host, const Pattern& p, Cell cell,
                                          const OneFilter& filter) {
    std::optional<Placement> best;
    for (Cell one : p.ones()) {
        if (filter && !filter(one)) continue;
        Matcher m(host, p);
        m.force(one, cell);
        auto hit = m.first();
        if (hit && (!best || *hit < *best)) best = std::move(hit);
    }
    return best;
}

std::vector<std::vector<int>> row_sets_through(const Pattern& host, const Pattern& p, Cell cell) {
    std::vector<std::vector<int>> out;
    for (Cell one : p.ones()) {
        Matcher m(host, p);
        m.force(one, cell);
        m.all_row_sets([&](const std::vector<int>& rows) { out.push_back(rows); });
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_copy(const Pattern& host, const Pattern& p, const Placement& where) {
    if (static_cast<int>(where.rows.size()) != p.rows() || static_cast<int>(where.cols.size()) != p.cols())
        return false;
    for (std::size_t i = 0; i < where.rows.size(); ++i) {
        if (where.rows[i] < 0 || where.rows[i] >= host.rows()) return false;
        if (i > 0 && where.rows[i] <= where.rows[i - 1]) return false;
    }
    for (std::size_t i = 0; i < where.cols.size(); ++i) {
        if (where.cols[i] < 0 || where.cols[i] >= host.cols()) return false;
        if (i > 0 && where.cols[i] <= where.cols[i - 1]) return false;
    }
    for (auto [r, c] : p.ones())
        if (!host.at(where.rows[r], where.cols[c])) return false;
    return true;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::uint64_t placement_count(int m, int n, const Pattern& p) {
    return binomial(m, p.rows()) * binomial(n, p.cols());
}

void for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!fn(idx)) return;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

void enumerate_placements(int m, int n, const Pattern& p, const std::function<bool(const Placement&)>& sink) {
    Placement pl;
    bool go = true;
    for_each_combination(m, p.rows(), [&](const std::vector<int>& rows) {
        pl.rows = rows;
        for_each_combination(n, p.cols(), [&](const std::vector<int>& cols) {
            pl.cols = cols;
            go = sink(pl);
            return go;
        });
        return go;
    });
}

std::optional<Placement> contains_oracle(const Pattern& host, const Pattern& p, std::uint64_t max_candidates) {
    auto count = placement_count(host.rows(), host.cols(), p);
    if (count > max_candidates)
        throw PreconditionError("oracle refused: " + std::to_string(count) + " candidate placements exceed " +
                                std::to_string(max_candidates));
    std::optional<Placement> found;
    enumerate_placements(host.rows(), host.cols(), p, [&](const Placement& pl) {
        for (int r = 0; r < p.rows(); ++r)
            for (int c = 0; c < p.cols(); ++c)
                if (p.at(r, c) && !host.at(pl.rows[r], pl.cols[c])) return true;
        found = pl;
        return false;
    });
    return found;
}

}  // namespace satmat
