#include <doctest.h>

#include <map>
#include <sstream>

#include "satmat/constructions.hpp"
#include "satmat/containment.hpp"
#include "satmat/corpus.hpp"
#include "satmat/exact_solver.hpp"
#include "satmat/saturation.hpp"
#include "support.hpp"

using namespace satmat;
using namespace satmat::testing;

namespace {

struct Row {
    std::string name;
    std::map<std::string, long> terms;
    std::string op;
    long rhs = 0;
};

struct Lp {
    std::vector<std::string> objective;
    std::vector<Row> rows;
    std::vector<std::string> binaries;
};

// Reads the subset of the LP text format the emitter produces.
Lp parse_lp(const std::string& text) {
    Lp lp;
    std::istringstream in(text);
    std::string line, section;
    std::vector<std::string> logical;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '\\') continue;
        if (line[0] != ' ') {
            section = line;
            continue;
        }
        if (section == "Binaries") {
            lp.binaries.push_back(line.substr(1));
        } else if (line.find(':') == std::string::npos && !logical.empty()) {
            logical.back() += " " + line;
        } else {
            logical.push_back(section + "|" + line);
        }
    }
    for (const auto& l : logical) {
        const auto bar = l.find('|');
        const std::string sec = l.substr(0, bar);
        std::istringstream ts(l.substr(bar + 1));
        std::string name, tok;
        ts >> name;
        name.pop_back();
        Row row{name, {}, "", 0};
        long sign = 1, coef = 1;
        while (ts >> tok) {
            if (tok == "+") {
                sign = 1;
            } else if (tok == "-") {
                sign = -1;
            } else if (tok == "<=" || tok == ">=" || tok == "=") {
                row.op = tok;
                ts >> row.rhs;
            } else if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
                coef = std::stol(tok);
            } else {
                row.terms[tok] += sign * coef;
                sign = 1;
                coef = 1;
            }
        }
        if (sec == "Minimize") {
            for (const auto& [v, c] : row.terms) lp.objective.push_back(v);
        } else {
            lp.rows.push_back(row);
        }
    }
    return lp;
}

std::string x_name(int r, int c) { return "x_" + std::to_string(r + 1) + "_" + std::to_string(c + 1); }

// Assigns x from m and y_i = [copy i is one short of complete], placements in
// ascending order; true when every row holds.
bool lp_accepts(const Lp& lp, const Pattern& m, const Pattern& p) {
    std::map<std::string, long> val;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) val[x_name(r, c)] = m.at(r, c);
    int idx = 0;
    enumerate_placements(m.rows(), m.cols(), p, [&](const Placement& pl) {
        int f = 0;
        for (auto [r, c] : p.ones()) f += m.at(pl.rows[r], pl.cols[c]);
        val["y_" + std::to_string(++idx)] = (f == p.weight() - 1);
        return true;
    });
    for (const auto& row : lp.rows) {
        long lhs = 0;
        for (const auto& [v, c] : row.terms) lhs += c * val.at(v);
        if (row.op == "<=" && lhs > row.rhs) return false;
        if (row.op == ">=" && lhs < row.rhs) return false;
        if (row.op == "=" && lhs != row.rhs) return false;
    }
    return true;
}

// Cover rows range over every cell some placement passes through, so such a
// one must also lie in a copy that is exactly one cell short.
bool ones_near_complete(const Pattern& m, const Pattern& p) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            if (!m.at(r, c)) continue;
            bool found = false, any = false;
            enumerate_placements(m.rows(), m.cols(), p, [&](const Placement& pl) {
                int f = 0;
                bool through = false;
                for (auto [pr, pc] : p.ones()) {
                    f += m.at(pl.rows[pr], pl.cols[pc]);
                    through |= pl.rows[pr] == r && pl.cols[pc] == c;
                }
                any |= through;
                found = through && f == p.weight() - 1;
                return !found;
            });
            if (any && !found) return false;
        }
    return true;
}

int count_prefix(const Lp& lp, const std::string& prefix) {
    int n = 0;
    for (const auto& r : lp.rows) n += r.name.rfind(prefix, 0) == 0;
    return n;
}

std::string least_optimum(int m, int n, const Pattern& p, int value) {
    std::string best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m * n)); ++mask) {
        if (__builtin_popcountll(mask) != value) continue;
        Pattern cand = pattern_from_mask(m, n, mask);
        if (!brute_saturating(cand, p)) continue;
        std::string s = serialize_pattern(cand);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

}  // namespace

TEST_CASE("small values of the triangular pattern") {
    Pattern tri = corpus_pattern("tri");
    CHECK(sat_exact(3, 3, tri).value == 8);
    CHECK(sat_exact(3, 4, tri).value == 10);
    auto r = sat_exact(4, 4, tri);
    CHECK(r.complete);
    CHECK(r.value == 12);
    CHECK(is_saturating(r.optimum, tri).saturating);
    CHECK(r.optimum.weight() == 12);
}

TEST_CASE("trivial and frozen values") {
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) CHECK(sat_exact(m, n, parse_pattern("1")).value == 0);
    for (int n = 1; n <= 4; ++n) {
        CHECK(sat_exact(n, n, Pattern::from_strings({"11"})).value == n);
        CHECK(sat_exact_oracle(n, n, Pattern::from_strings({"11"})) == n);
    }
    // frozen from brute_sat(3, 3, I2)
    CHECK(brute_sat(3, 3, corpus_pattern("i2")) == 5);
    CHECK(sat_exact(3, 3, corpus_pattern("i2")).value == 5);
    // a pattern larger than the grid forces every cell
    CHECK(sat_exact(2, 2, ones_matrix(3, 2)).value == 4);
}

TEST_CASE("solver, library oracle and test oracle agree on tiny grids") {
    for (int it = 0; it < 60; ++it) {
        Pattern p = random_nonzero(uniform(1, 3), uniform(1, 3), 0.5);
        const int m = uniform(1, 3), n = uniform(1, 3);
        auto r = sat_exact(m, n, p);
        REQUIRE(r.complete);
        const int brute = brute_sat(m, n, p);
        CHECK(r.value == brute);
        CHECK(sat_exact_oracle(m, n, p) == brute);
        CHECK(serialize_pattern(r.optimum) == least_optimum(m, n, p, brute));
    }
}

TEST_CASE("library oracle agrees on 4x4 grids") {
    for (int it = 0; it < 12; ++it) {
        Pattern p = random_nonzero(uniform(1, 3), uniform(1, 3), 0.5);
        CHECK(sat_exact(4, 4, p).value == sat_exact_oracle(4, 4, p));
    }
    CHECK_THROWS_AS(sat_exact_oracle(5, 5, parse_pattern("1")), PreconditionError);
}

TEST_CASE("worker count does not change the value or the optimum") {
    for (int it = 0; it < 8; ++it) {
        Pattern p = random_nonzero(uniform(2, 3), uniform(2, 3), 0.5);
        SolveOptions one, three;
        three.threads = 3;
        auto a = sat_exact(4, 4, p, one);
        auto b = sat_exact(4, 4, p, three);
        CHECK(a.value == b.value);
        CHECK(a.optimum == b.optimum);
    }
}

TEST_CASE("node budget yields an incomplete result, never a fake optimum") {
    SolveOptions opts;
    opts.node_limit = 50;
    auto r = sat_exact(4, 5, corpus_pattern("tri"), opts);
    CHECK_FALSE(r.complete);
    CHECK(r.value >= 14);
}

TEST_CASE("emitted model counts for a single one on a 2x2 grid") {
    Lp lp = parse_lp(emit_ilp(2, 2, parse_pattern("1")));
    CHECK(lp.objective.size() == 4);
    int xs = 0, ys = 0;
    for (const auto& b : lp.binaries) (b[0] == 'x' ? xs : ys)++;
    CHECK(xs == 4);
    CHECK(ys == 4);
    CHECK(count_prefix(lp, "avoid_") == 4);
    CHECK(count_prefix(lp, "full_if_") == 4);
    CHECK(count_prefix(lp, "only_if_") == 4);
    CHECK(count_prefix(lp, "cover_") == 4);
    CHECK(count_prefix(lp, "forced_") == 0);
}

TEST_CASE("a pattern larger than the grid forces every cell") {
    Lp lp = parse_lp(emit_ilp(2, 2, ones_matrix(3, 2)));
    CHECK(count_prefix(lp, "forced_") == 4);
    CHECK(count_prefix(lp, "cover_") == 0);
    for (const auto& b : lp.binaries) CHECK(b[0] == 'x');
}

TEST_CASE("the emitted model accepts saturating matrices whose ones all sit in near-complete copies") {
    for (int it = 0; it < 12; ++it) {
        Pattern p = random_nonzero(uniform(1, 2), uniform(1, 3), 0.6);
        const int m = uniform(2, 3), n = uniform(2, 3);
        Lp lp = parse_lp(emit_ilp(m, n, p));
        INFO(serialize_pattern(p), " in ", m, "x", n);
        CHECK(static_cast<std::uint64_t>(lp.binaries.size()) ==
              static_cast<std::uint64_t>(m * n) + placement_count(m, n, p));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m * n)); ++mask) {
            Pattern cand = pattern_from_mask(m, n, mask);
            CHECK(lp_accepts(lp, cand, p) == (brute_saturating(cand, p) && ones_near_complete(cand, p)));
        }
    }
}

TEST_CASE("column insertion equalities and inequalities") {
    for (int it = 0; it < 25; ++it) {
        Pattern p = random_nonzero(uniform(1, 2), uniform(1, 2), 0.6);
        const int m = uniform(1, 3), n = uniform(2, 4);
        const int base = sat_exact(m, n - 1, p).value;
        CHECK(sat_exact(m, n, insert_empty_column(p, 0)).value == m + base);
        Pattern any = p;
        any = insert_empty_column(any, 0);
        for (int r = 0; r < any.rows(); ++r)
            if (uniform(0, 1)) any.set(r, 0);
        CHECK(sat_exact(m, n, any).value <= m + base);
        // the same statements with rows in place of columns
        const int base_t = sat_exact(n - 1, m, transpose(p)).value;
        CHECK(sat_exact(n, m, insert_empty_row(transpose(p), 0)).value == m + base_t);
    }
}

TEST_CASE("solved values respect the general upper bound") {
    for (int it = 0; it < 80; ++it) {
        const int k = uniform(1, 3);
        Pattern p = random_nonzero(k, k, 0.5);
        const int m = uniform(k, 4), n = uniform(k, 4);
        CHECK(sat_exact(m, n, p).value <= (k - 1) * (m + n - k + 1));
    }
}

TEST_CASE("fixed-row witness search") {
    auto s = decide_fixed_rows(2, corpus_pattern("s"));
    CHECK(s.outcome == FixedRowsOutcome::exhausted);
    CHECK(decide_fixed_rows(2, corpus_pattern("s_prime")).outcome == FixedRowsOutcome::exhausted);
    auto one = decide_fixed_rows(1, parse_pattern("1"));
    REQUIRE(one.outcome == FixedRowsOutcome::found);
    CHECK(*one.witness == Pattern(1, 1));
    auto qk2 = decide_fixed_rows(4, corpus_pattern("qk2"));
    REQUIRE(qk2.outcome == FixedRowsOutcome::found);
    CHECK(check_witness(*qk2.witness, corpus_pattern("qk2"), WitnessKind::horizontal).valid);
    CHECK(qk2.witness->cols() <= 3 * 4 + 1);
    // m0 = rows(p): every copy uses every row, so a flip in row 1 would need
    // the empty expandable column to hold the one above it
    CHECK(decide_fixed_rows(4, corpus_pattern("q2")).outcome == FixedRowsOutcome::exhausted);
    auto capped = decide_fixed_rows(3, corpus_pattern("qk2"), 5);
    CHECK(capped.outcome != FixedRowsOutcome::exhausted);
    CHECK_THROWS_AS(decide_fixed_rows(2, Pattern::from_strings({"1.1"})), PreconditionError);
}

TEST_CASE("one-row search agrees with enumerating every row") {
    for (const char* text : {"11", "111", "1"}) {
        Pattern p = Pattern::from_strings({text});
        const int width = p.cols();
        bool any = false;
        for (int w = 1; w <= width && !any; ++w)
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask)
                if (check_witness(pattern_from_mask(1, w, mask), p, WitnessKind::horizontal).valid) any = true;
        auto got = decide_fixed_rows(1, p);
        CHECK((got.outcome == FixedRowsOutcome::found) == any);
    }
}
