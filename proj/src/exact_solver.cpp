#include "satmat/exact_solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "satmat/containment.hpp"
#include "satmat/saturation.hpp"

namespace satmat {

std::optional<std::uint64_t> env_node_budget() {
    const char* v = std::getenv("SATMAT_BUDGET");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    auto n = std::strtoull(v, &end, 10);
    if (end == v || *end) throw PreconditionError(std::string("SATMAT_BUDGET is not a node count: ") + v);
    return n;
}

namespace {

using Clock = std::chrono::steady_clock;

template <int W>
struct Bits {
    std::array<std::uint64_t, W> w{};

    void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    bool subset_of(const Bits& o) const {
        for (int k = 0; k < W; ++k)
            if (w[k] & ~o.w[k]) return false;
        return true;
    }
    Bits operator|(const Bits& o) const {
        Bits r;
        for (int k = 0; k < W; ++k) r.w[k] = w[k] | o.w[k];
        return r;
    }
    bool operator<(const Bits& o) const { return w < o.w; }
    bool operator==(const Bits& o) const = default;
};

struct Shared {
    std::atomic<int> best{0};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> aborted{false};
    std::optional<std::uint64_t> node_limit;
    std::optional<Clock::time_point> deadline;
    std::mutex mu;
};

// Cells are numbered row-major. A zero cell stays admissible while some copy
// through it has all its other cells either one or still undecided; a one
// cell is admissible while no copy lies inside the ones.
template <int W>
class BranchAndBound {
public:
    BranchAndBound(int m, int n, const Pattern& p) : m_(m), n_(n), N_(m * n) {
        std::set<Bits<W>> seen;
        enumerate_placements(m, n, p, [&](const Placement& pl) {
            Bits<W> b;
            for (auto [r, c] : p.ones()) b.set(pl.rows[r] * n + pl.cols[c]);
            if (seen.insert(b).second) places_.push_back(b);
            return true;
        });
        through_.resize(static_cast<std::size_t>(N_));
        for (int i = 0; i < static_cast<int>(places_.size()); ++i)
            for (int c = 0; c < N_; ++c)
                if (places_[i].test(c)) through_[c].push_back(i);
        suffix_.resize(static_cast<std::size_t>(N_ + 1));
        forced_.assign(static_cast<std::size_t>(N_ + 1), 0);
        for (int t = N_ - 1; t >= 0; --t) {
            suffix_[t] = suffix_[t + 1];
            suffix_[t].set(t);
            forced_[t] = forced_[t + 1] + (through_[t].empty() ? 1 : 0);
        }
    }

    int cells() const { return N_; }

    struct Worker {
        Bits<W> ones;
        std::vector<int> zeros;
        std::vector<int> sup;
        int count = 0;
        std::uint64_t local_nodes = 0;
    };

    Worker fresh() const {
        Worker wk;
        wk.sup.assign(static_cast<std::size_t>(N_), -1);
        return wk;
    }

    bool one_ok(const Worker& wk, int t) const {
        for (int i : through_[t])
            if (places_[i].subset_of(wk.ones)) return false;
        return true;
    }

    bool supported(Worker& wk, int z, const Bits<W>& optimistic) const {
        Bits<W> with = optimistic;
        with.set(z);
        if (wk.sup[z] >= 0 && places_[wk.sup[z]].subset_of(with)) return true;
        for (int i : through_[z])
            if (places_[i].subset_of(with)) {
                wk.sup[z] = i;
                return true;
            }
        return false;
    }

    bool zero_ok(Worker& wk, int t) const {
        Bits<W> opt = wk.ones | suffix_[t + 1];
        if (!supported(wk, t, opt)) return false;
        for (int z : wk.zeros)
            if (!supported(wk, z, opt)) return false;
        return true;
    }

    // Applies a decided prefix; false if some step is inadmissible.
    bool replay(Worker& wk, const std::vector<char>& prefix) const {
        for (int t = 0; t < static_cast<int>(prefix.size()); ++t) {
            if (prefix[t]) {
                wk.ones.set(t);
                if (!one_ok(wk, t)) return false;
                ++wk.count;
            } else {
                if (!zero_ok(wk, t)) return false;
                wk.zeros.push_back(t);
            }
        }
        return true;
    }

    // Admissible prefixes of the given depth, zero-first order.
    std::vector<std::vector<char>> prefixes(int depth) const {
        std::vector<std::vector<char>> out;
        std::vector<char> cur;
        Worker wk = fresh();
        std::function<void(int)> rec = [&](int t) {
            if (t == depth) {
                out.push_back(cur);
                return;
            }
            if (zero_ok(wk, t)) {
                wk.zeros.push_back(t);
                cur.push_back(0);
                rec(t + 1);
                cur.pop_back();
                wk.zeros.pop_back();
            }
            wk.ones.set(t);
            if (one_ok(wk, t)) {
                cur.push_back(1);
                rec(t + 1);
                cur.pop_back();
            }
            wk.ones.reset(t);
        };
        rec(0);
        return out;
    }

    bool tick(Worker& wk, Shared& sh) const {
        if (++wk.local_nodes % 1024 == 0) {
            sh.nodes += 1024;
            if (sh.node_limit && sh.nodes.load() > *sh.node_limit) sh.aborted = true;
            if (sh.deadline && Clock::now() > *sh.deadline) sh.aborted = true;
        }
        return !sh.aborted.load(std::memory_order_relaxed);
    }

    // Minimum weight below sh.best; ones first.
    void improve(Worker& wk, int t, Shared& sh, Bits<W>& incumbent) const {
        if (!tick(wk, sh)) return;
        if (wk.count + forced_[t] >= sh.best.load(std::memory_order_relaxed)) return;
        if (t == N_) {
            std::lock_guard lock(sh.mu);
            if (wk.count < sh.best) {
                sh.best = wk.count;
                incumbent = wk.ones;
            }
            return;
        }
        wk.ones.set(t);
        if (one_ok(wk, t)) {
            ++wk.count;
            improve(wk, t + 1, sh, incumbent);
            --wk.count;
        }
        wk.ones.reset(t);
        if (zero_ok(wk, t)) {
            wk.zeros.push_back(t);
            improve(wk, t + 1, sh, incumbent);
            wk.zeros.pop_back();
        }
    }

    // First leaf of weight <= bound in zero-first order.
    bool least(Worker& wk, int t, int bound, Shared& sh, Bits<W>& out) const {
        if (!tick(wk, sh)) return false;
        if (wk.count + forced_[t] > bound) return false;
        if (t == N_) {
            out = wk.ones;
            return true;
        }
        if (zero_ok(wk, t)) {
            wk.zeros.push_back(t);
            bool hit = least(wk, t + 1, bound, sh, out);
            wk.zeros.pop_back();
            if (hit) return true;
        }
        wk.ones.set(t);
        bool hit = false;
        if (one_ok(wk, t)) {
            ++wk.count;
            hit = least(wk, t + 1, bound, sh, out);
            --wk.count;
        }
        wk.ones.reset(t);
        return hit;
    }

    Pattern to_pattern(const Bits<W>& b) const {
        Pattern out(m_, n_);
        for (int c = 0; c < N_; ++c)
            if (b.test(c)) out.set(c / n_, c % n_);
        return out;
    }

    Bits<W> from_pattern(const Pattern& p) const {
        Bits<W> b;
        for (auto [r, c] : p.ones()) b.set(r * n_ + c);
        return b;
    }

private:
    int m_, n_, N_;
    std::vector<Bits<W>> places_;
    std::vector<std::vector<int>> through_;
    std::vector<Bits<W>> suffix_;
    std::vector<int> forced_;
};

template <class F>
void run_parallel(int threads, std::size_t tasks, F&& body) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < tasks; i = next++) body(i);
    };
    if (threads <= 1 || tasks <= 1) {
        work();
        return;
    }
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
}

template <int W>
SatResult solve(int m, int n, const Pattern& p, const SolveOptions& opts) {
    auto start = Clock::now();
    BranchAndBound<W> bb(m, n, p);
    Shared sh;
    sh.node_limit = env_node_budget();
    if (!sh.node_limit) sh.node_limit = opts.node_limit;
    if (opts.time_limit)
        sh.deadline = start + *opts.time_limit;
    else if (m * n > opts.guaranteed_cells && !sh.node_limit)
        sh.deadline = start + opts.default_time_limit;

    // Seed: greedy completion of the zero matrix (the all-ones matrix when p
    // cannot fit at all).
    Pattern seed;
    if (p.rows() > m || p.cols() > n) {
        seed = ones_matrix(m, n);
    } else {
        if (p.is_zero()) throw NoSaturatingMatrix("every matrix of this shape contains the zero pattern");
        seed = complete_to_saturated(Pattern(m, n), p);
    }
    sh.best = seed.weight();
    auto incumbent = bb.from_pattern(seed);

    const int threads = std::max(1, opts.threads);
    const int depth = threads > 1 ? std::min(bb.cells(), 8) : 0;
    auto tasks = bb.prefixes(depth);

    run_parallel(threads, tasks.size(), [&](std::size_t i) {
        auto wk = bb.fresh();
        if (!bb.replay(wk, tasks[i])) return;
        bb.improve(wk, depth, sh, incumbent);
        sh.nodes += wk.local_nodes % 1024;
    });
    bool complete = !sh.aborted;
    const int value = sh.best;

    SatResult res;
    res.value = value;
    res.optimum = bb.to_pattern(incumbent);
    if (complete) {
        std::vector<std::optional<Bits<W>>> found(tasks.size());
        std::atomic<std::size_t> first_hit{tasks.size()};
        run_parallel(threads, tasks.size(), [&](std::size_t i) {
            if (i > first_hit.load()) return;
            auto wk = bb.fresh();
            if (!bb.replay(wk, tasks[i])) return;
            Bits<W> out;
            if (bb.least(wk, depth, value, sh, out)) {
                found[i] = out;
                std::size_t cur = first_hit.load();
                while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
                }
            }
            sh.nodes += wk.local_nodes % 1024;
        });
        complete = !sh.aborted;
        for (auto& f : found)
            if (f) {
                res.optimum = bb.to_pattern(*f);
                break;
            }
    }
    res.complete = complete;
    res.nodes = sh.nodes;
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return res;
}

}  // namespace

SatResult sat_exact(int m, int n, const Pattern& p, const SolveOptions& opts) {
    if (m < 1 || n < 1) throw PreconditionError("grid must be at least 1x1");
    if (m * n <= 64) return solve<1>(m, n, p, opts);
    if (m * n <= 256) return solve<4>(m, n, p, opts);
    throw PreconditionError("grid larger than 256 cells");
}

int sat_exact_oracle(int m, int n, const Pattern& p) {
    const int N = m * n;
    if (m < 1 || n < 1 || N > 20) throw PreconditionError("oracle limited to grids of at most 20 cells");
    // Weights ascending; the first saturating matrix found has minimum weight.
    for (int w = 0; w <= N; ++w) {
        bool hit = false;
        for_each_combination(N, w, [&](const std::vector<int>& cells) {
            Pattern cand(m, n);
            for (int c : cells) cand.set(c / n, c % n);
            if (is_saturating(cand, p).saturating) {
                hit = true;
                return false;
            }
            return true;
        });
        if (hit) return w;
    }
    throw NoSaturatingMatrix("no " + std::to_string(m) + "x" + std::to_string(n) + " matrix is saturating");
}

namespace {

class LpWriter {
public:
    explicit LpWriter(std::ostringstream& os) : os_(os) {}
    void begin(const std::string& name) {
        os_ << " " << name << ":";
        terms_ = 0;
    }
    void term(long coef, const std::string& var) {
        if (terms_ > 0 && terms_ % 8 == 0) os_ << "\n   ";
        if (coef == 1)
            os_ << (terms_ ? " + " : " ") << var;
        else if (coef == -1)
            os_ << " - " << var;
        else if (coef < 0)
            os_ << " - " << -coef << " " << var;
        else
            os_ << (terms_ ? " + " : " ") << coef << " " << var;
        ++terms_;
    }
    void end(const std::string& sense, long rhs) { os_ << " " << sense << " " << rhs << "\n"; }

private:
    std::ostringstream& os_;
    int terms_ = 0;
};

std::string xvar(int r, int c) { return "x_" + std::to_string(r + 1) + "_" + std::to_string(c + 1); }

}  // namespace

std::string emit_ilp(int m, int n, const Pattern& p) {
    const long w = p.weight();
    // y_i is the i-th placement in enumeration order, even when two
    // placements cover the same cells (p with empty lines).
    std::vector<std::vector<Cell>> sets;
    enumerate_placements(m, n, p, [&](const Placement& pl) {
        std::vector<Cell> cells;
        for (auto [r, c] : p.ones()) cells.push_back({pl.rows[r], pl.cols[c]});
        sets.push_back(std::move(cells));
        return true;
    });
    std::vector<std::vector<int>> through(static_cast<std::size_t>(m * n));
    for (int i = 0; i < static_cast<int>(sets.size()); ++i)
        for (Cell c : sets[i]) through[c.row * n + c.col].push_back(i);

    std::ostringstream os;
    os << "\\ saturation of a " << p.rows() << "x" << p.cols() << " pattern of weight " << w << " in a " << m << "x"
       << n << " grid\n";
    os << "\\ pattern rows:";
    for (int r = 0; r < p.rows(); ++r) {
        os << " ";
        for (int c = 0; c < p.cols(); ++c) os << (p.at(r, c) ? '1' : '.');
    }
    os << "\n\\ " << sets.size() << " placements\n";
    LpWriter lp(os);
    os << "Minimize\n";
    lp.begin("weight");
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) lp.term(1, xvar(r, c));
    os << "\n";
    os << "Subject To\n";
    for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
        lp.begin("avoid_" + std::to_string(i + 1));
        for (Cell c : sets[i]) lp.term(1, xvar(c.row, c.col));
        lp.end("<=", w - 1);
    }
    for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
        const auto y = "y_" + std::to_string(i + 1);
        lp.begin("full_if_" + std::to_string(i + 1));
        if (w - 1 != 0) lp.term(w - 1, y);
        for (Cell c : sets[i]) lp.term(-1, xvar(c.row, c.col));
        lp.end("<=", 0);
        lp.begin("only_if_" + std::to_string(i + 1));
        lp.term(1, y);
        for (Cell c : sets[i]) lp.term(-1, xvar(c.row, c.col));
        lp.end(">=", -w + 2);
    }
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) {
            const auto& t = through[r * n + c];
            if (t.empty()) {
                lp.begin("forced_" + std::to_string(r + 1) + "_" + std::to_string(c + 1));
                lp.term(1, xvar(r, c));
                lp.end("=", 1);
            } else {
                lp.begin("cover_" + std::to_string(r + 1) + "_" + std::to_string(c + 1));
                for (int i : t) lp.term(1, "y_" + std::to_string(i + 1));
                lp.end(">=", 1);
            }
        }
    os << "Binaries\n";
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) os << " " << xvar(r, c) << "\n";
    for (std::size_t i = 0; i < sets.size(); ++i) os << " y_" << i + 1 << "\n";
    os << "End\n";
    return os.str();
}

const char* outcome_name(FixedRowsOutcome o) {
    switch (o) {
        case FixedRowsOutcome::found: return "found";
        case FixedRowsOutcome::exhausted: return "exhausted";
        case FixedRowsOutcome::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// Columns other than the expandable one are nonempty: a witness keeps one
// after deleting every column outside all completing copies, and copies only
// touch nonempty columns when p has none empty.
class FixedRowSearch {
public:
    FixedRowSearch(int m0, const Pattern& p, std::optional<std::uint64_t> limit)
        : m0_(m0), p_(p), limit_(limit) {}

    std::uint64_t nodes = 0;
    bool aborted = false;

    std::optional<Pattern> run(int width, int j) {
        width_ = width;
        j_ = j;
        masks_.assign(static_cast<std::size_t>(width), 0);
        if (dfs(0)) return build(width);
        return std::nullopt;
    }

private:
    Pattern build(int decided) const {
        Pattern w(m0_, width_);
        for (int c = 0; c < width_; ++c) {
            std::uint64_t mask = c < decided ? masks_[c] : (c == j_ ? 0 : (std::uint64_t{1} << m0_) - 1);
            for (int r = 0; r < m0_; ++r)
                if ((mask >> r) & 1u) w.set(r, c);
        }
        return w;
    }

    bool viable(int decided) {
        Pattern actual(m0_, width_);
        for (int c = 0; c < decided; ++c)
            for (int r = 0; r < m0_; ++r)
                if ((masks_[c] >> r) & 1u) actual.set(r, c);
        if (contains(actual, p_)) return false;
        Pattern optimistic = build(decided);
        for (int r = 0; r < m0_; ++r)
            if (!contains_through(optimistic, p_, {r, j_})) return false;
        return true;
    }

    bool dfs(int c) {
        if (aborted) return false;
        if (limit_ && nodes >= *limit_) {
            aborted = true;
            return false;
        }
        ++nodes;
        if (c == width_) return true;
        if (c == j_) {
            masks_[c] = 0;
            return viable(c + 1) && dfs(c + 1);
        }
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m0_); ++mask) {
            masks_[c] = mask;
            if (viable(c + 1) && dfs(c + 1)) return true;
            if (aborted) return false;
        }
        return false;
    }

    int m0_;
    const Pattern& p_;
    std::optional<std::uint64_t> limit_;
    int width_ = 0, j_ = 0;
    std::vector<std::uint64_t> masks_;
};

}  // namespace

FixedRowsResult decide_fixed_rows(int m0, const Pattern& p, std::optional<std::uint64_t> node_limit) {
    if (m0 < 1 || m0 > 16) throw PreconditionError("row count must be in 1..16");
    for (int c = 0; c < p.cols(); ++c)
        if (p.col_empty(c)) throw PreconditionError("pattern has an empty column " + std::to_string(c + 1));
    if (auto env = env_node_budget()) node_limit = env;

    FixedRowsResult res;
    res.max_width = (p.cols() - 1) * m0 + 1;
    FixedRowSearch search(m0, p, node_limit);
    for (int width = 1; width <= std::min(res.max_width, max_side); ++width)
        for (int j = 0; j < width; ++j) {
            auto w = search.run(width, j);
            res.nodes = search.nodes;
            if (w) {
                res.outcome = FixedRowsOutcome::found;
                res.witness = w;
                res.expandable_col = j;
                return res;
            }
            if (search.aborted) {
                res.outcome = FixedRowsOutcome::inconclusive;
                return res;
            }
        }
    res.outcome = res.max_width <= max_side ? FixedRowsOutcome::exhausted : FixedRowsOutcome::inconclusive;
    return res;
}

}  // namespace satmat
