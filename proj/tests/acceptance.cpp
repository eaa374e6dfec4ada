// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "satmat/classifier.hpp"
#include "satmat/constructions.hpp"
#include "satmat/containment.hpp"
#include "satmat/corpus.hpp"
#include "satmat/exact_solver.hpp"
#include "satmat/multidim.hpp"
#include "satmat/saturation.hpp"
#include "satmat/witness_graph.hpp"
#include "support.hpp"

using namespace satmat;
using namespace satmat::testing;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        if (ok) detail << "first failure: " << what;
        ok = false;
    }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !c.ok;
    std::printf("criterion %2d %s  %s (%.1fs)%s%s\n", id, c.ok ? "PASS" : "FAIL", title, secs,
                c.detail.str().empty() ? "" : "  ", c.detail.str().c_str());
    std::fflush(stdout);
}

std::string str(const Pattern& p) { return serialize_pattern(p); }

// Every pattern of the given shape, nonzero, with at most max_weight ones.
std::vector<Pattern> all_patterns(int max_side, int max_weight) {
    std::vector<Pattern> out;
    for (int r = 1; r <= max_side; ++r)
        for (int c = 1; c <= max_side; ++c)
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (r * c)); ++mask)
                if (std::popcount(mask) <= max_weight) out.push_back(pattern_from_mask(r, c, mask));
    return out;
}

std::vector<Pattern> one_sided_witnesses(const CorpusStore& store, std::vector<std::pair<Pattern, WitnessKind>>& ps) {
    std::vector<Pattern> ws;
    for (const auto& e : corpus_entries(store)) {
        if (e.claim != "witness" || e.kind == "full") continue;
        Pattern w = store.pattern(e.matrix);
        if (e.transpose) w = transpose(w);
        if (!e.symmetry.empty()) w = apply_symmetry(symmetry_by_name(e.symmetry), w);
        ws.push_back(w);
        ps.emplace_back(store.pattern(e.pattern), parse_kind(e.kind));
    }
    return ws;
}

}  // namespace

int main() {
    const CorpusStore store = CorpusStore::embedded();

    criterion(1, "triangular-pattern table and the 5x5 diagonal-corner value", [&](Check& c) {
        const Pattern tri = store.pattern("tri");
        const auto t0 = std::chrono::steady_clock::now();
        const int want[4][3] = {{3, 3, 8}, {3, 4, 10}, {4, 4, 12}, {4, 5, 14}};
        for (const auto& [m, n, v] : want) {
            auto r = sat_exact(m, n, tri);
            c.expect(r.complete && r.value == v, "tri " + std::to_string(m) + "x" + std::to_string(n));
            c.expect(is_saturating(r.optimum, tri).saturating && r.optimum.weight() == v, "tri optimum");
        }
        const double table = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.expect(table <= 60, "table took over 60 s");
        SolveOptions slow;
        slow.time_limit = std::chrono::minutes(10);
        auto d = sat_exact(5, 5, store.pattern("diag_corner"), slow);
        c.expect(d.complete && d.value == 20, "diag-corner 5x5 = " + std::to_string(d.value));
        c.expect(is_saturating(d.optimum, store.pattern("diag_corner")).saturating, "diag-corner optimum");
        c.detail << "table " << table << "s, diag-corner " << d.seconds << "s";
    });

    criterion(2, "every instantiation of the upper-triangular star pattern", [&](Check& c) {
        const std::pair<int, int> wild[3] = {{0, 1}, {0, 2}, {1, 2}};
        for (int mask = 0; mask < 8; ++mask) {
            Pattern t(3, 3);
            for (int i = 0; i < 3; ++i) t.set(i, i);
            for (int b = 0; b < 3; ++b)
                if (mask >> b & 1) t.set(wild[b].first, wild[b].second);
            c.expect(sat_exact(3, 3, t).value == 8, "3x3 for " + str(t));
            c.expect(sat_exact(3, 4, t).value == 10, "3x4 for " + str(t));
        }
    });

    criterion(3, "solver equals the enumeration oracle on every pattern up to 3x3 and grid up to 4x4", [&](Check& c) {
        long instances = 0;
        for (const Pattern& p : all_patterns(3, 9))
            for (int m = 1; m <= 4; ++m)
                for (int n = 1; n <= 4; ++n) {
                    ++instances;
                    const int a = sat_exact(m, n, p).value;
                    c.expect(a == sat_exact_oracle(m, n, p),
                             str(p) + " in " + std::to_string(m) + "x" + std::to_string(n));
                }
        // the empty pattern is in every matrix, so neither side has a value
        bool both_throw = true;
        try {
            sat_exact(2, 2, Pattern(1, 1));
            both_throw = false;
        } catch (const NoSaturatingMatrix&) {
        }
        try {
            sat_exact_oracle(2, 2, Pattern(1, 1));
            both_throw = false;
        } catch (const NoSaturatingMatrix&) {
        }
        c.expect(both_throw, "empty pattern");
        c.detail << instances << " instances";
    });

    criterion(4, "corpus regression", [&](Check& c) {
        auto report = verify_corpus(store);
        int passed = 0;
        for (const auto& o : report.outcomes) {
            c.expect(o.pass, o.name + ": " + o.detail);
            passed += o.pass;
        }
        for (const auto& o : report.outcomes) c.expect(!o.skipped, "skipped " + o.name);
        int linear_witnessed = 0;
        for (const char* stem : {"lin1", "lin2", "lin3", "lin4", "lin5", "lin6"}) {
            const Pattern p = store.pattern(stem);
            c.expect(ssat_class(p) == Growth::linear, std::string(stem) + " not ssat-linear");
            for (const auto& e : corpus_entries(store))
                if (e.pattern == stem && e.claim == "witness") {
                    for (const auto& o : report.outcomes)
                        if (o.name == e.name) linear_witnessed += o.pass;
                }
        }
        c.expect(linear_witnessed >= 6, "linear-class witnesses");
        c.detail << passed << " entries pass";
    });

    criterion(5, "witness-graph shapes", [&](Check& c) {
        auto g = build_witness_graph(store.pattern("q1t_wv"), store.pattern("q1t"), WitnessKind::vertical);
        c.expect(g.vertices == 6, "six vertices");
        // K3,3 with both directions: some 3/3 split has every cross arc and no other
        bool k33 = false;
        for (int mask = 0; mask < 64 && g.vertices == 6; ++mask) {
            if (std::popcount(static_cast<unsigned>(mask)) != 3) continue;
            bool ok = true;
            for (int v = 0; v < 6; ++v) {
                std::vector<int> want;
                for (int u = 0; u < 6; ++u)
                    if ((mask >> u & 1) != (mask >> v & 1)) want.push_back(u);
                auto out = g.out[v];
                std::sort(out.begin(), out.end());
                ok &= out == want;
            }
            k33 |= ok;
        }
        c.expect(k33, "complete bipartite K3,3");

        bool cycle = false;
        for (const auto& h : build_witness_graphs(store.pattern("qk2_cycle"), store.pattern("qk2"),
                                                  WitnessKind::horizontal, CopyPolicy::enumerate_all))
            cycle |= h.vertices == 5 && graph_checks(h, 2).is_cycle;
        c.expect(cycle, "five-cycle");

        std::vector<std::pair<Pattern, WitnessKind>> ps;
        auto ws = one_sided_witnesses(store, ps);
        int graphs = 0;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            const auto& [p, kind] = ps[i];
            const int k = kind == WitnessKind::vertical ? p.cols() : p.rows();
            for (const auto& h : build_witness_graphs(ws[i], p, kind, CopyPolicy::enumerate_all, 256)) {
                c.expect(graph_checks(h, k).out_degrees_ok, "out-degree on " + str(p));
                ++graphs;
            }
        }
        c.detail << graphs << " corpus graphs";
    });

    criterion(6, "constructions self-validate", [&](Check& c) {
        const Pattern q2 = store.pattern("q2");
        auto valid = [](const Pattern& w, const Pattern& p, WitnessKind k) { return check_witness(w, p, k).valid; };
        c.expect(valid(build_wv_q2like(q2), q2, WitnessKind::vertical), "W_V(Q2)");
        c.expect(valid(build_wh_q2like(q2), q2, WitnessKind::horizontal), "W_H(Q2)");
        int larger = 0;
        while (larger < 5) {
            Pattern p = random_q2like(7);
            if (p.rows() * p.cols() <= q2.rows() * q2.cols()) continue;
            c.expect(valid(build_wv_q2like(p), p, WitnessKind::vertical), "W_V of " + str(p));
            c.expect(valid(build_wh_q2like(p), p, WitnessKind::horizontal), "W_H of " + str(p));
            ++larger;
        }
        Pattern w = build_wh_q2like(q2);
        for (int step = 0; step < 5; ++step) {
            w = append_witness_row(w, q2);
            c.expect(valid(w, q2, WitnessKind::horizontal), "appended row " + std::to_string(step + 1));
        }
        for (int k = 2; k <= 4; ++k)
            c.expect(check_intermediaries(build_wk(k), family_p(k), family_q(k), WitnessKind::horizontal).ok,
                     "W_k intermediaries, k=" + std::to_string(k));
        auto glued = glue_witnesses(store.pattern("q4_wh"), store.pattern("q4_wv"), store.pattern("q4"), 3, 6);
        c.expect(glued.matrix == store.pattern("q4_glued"), "glued Q4 witness differs from the corpus");
        c.expect(glued.check.valid, "glued Q4 witness invalid");
        c.detail << larger << " larger q2-like instances";
    });

    criterion(7, "empty-column insertion equality and any-column inequality", [&](Check& c) {
        const std::vector<Pattern> panel = {
            parse_pattern("1"),
            Pattern::from_strings({"11"}),
            Pattern::from_strings({"1.", ".1"}),
            Pattern::from_strings({".1", "1."}),
            Pattern::from_strings({"11", "1."}),
            Pattern::from_strings({"1.1"}),
            store.pattern("tri"),
        };
        int triples = 0;
        for (const Pattern& p : panel)
            for (int m = 1; m <= 3; ++m)
                for (int n = 2; n <= 4; ++n) {
                    if (m * n > 12) continue;
                    const int base = sat_exact(m, n - 1, p).value;
                    const std::string at = str(p) + " " + std::to_string(m) + "x" + std::to_string(n);
                    c.expect(sat_exact(m, n, insert_empty_column(p, 0)).value == m + base, "equality " + at);
                    const Pattern blank = insert_empty_column(p, 0);
                    for (std::uint64_t col = 1; col < (std::uint64_t{1} << p.rows()); ++col) {
                        Pattern q = blank;
                        for (int r = 0; r < p.rows(); ++r)
                            if (col >> r & 1) q.set(r, 0);
                        c.expect(sat_exact(m, n, q).value <= m + base, "inequality " + at);
                    }
                    ++triples;
                }
        c.detail << triples << " triples";
    });

    criterion(8, "kronecker law over every factor pair up to 3x3 with at most four ones", [&](Check& c) {
        const auto pats = all_patterns(3, 4);
        std::vector<Growth> cls;
        for (const Pattern& p : pats) {
            cls.push_back(ssat_class(p));
            for (int s = 1; s < symmetry_count; ++s)
                c.expect(ssat_class(apply_symmetry(s, p)) == cls.back(), "symmetry on " + str(p));
        }
        long pairs = 0;
        for (std::size_t i = 0; i < pats.size(); ++i)
            for (std::size_t j = 0; j < pats.size(); ++j) {
                const bool both = cls[i] == Growth::bounded && cls[j] == Growth::bounded;
                const Growth pq = ssat_class(kronecker(pats[i], pats[j]));
                c.expect((pq == Growth::bounded) == both, str(pats[i]) + " x " + str(pats[j]));
                if (i < j) c.expect(pq == ssat_class(kronecker(pats[j], pats[i])), "flip " + str(pats[i]));
                ++pairs;
            }
        c.detail << pairs << " ordered pairs";
    });

    criterion(9, "fixed-row search decides the small cases", [&](Check& c) {
        c.expect(decide_fixed_rows(2, store.pattern("s")).outcome == FixedRowsOutcome::exhausted, "S at 2");
        c.expect(decide_fixed_rows(2, store.pattern("s_prime")).outcome == FixedRowsOutcome::exhausted, "S' at 2");
        const Pattern qk2 = store.pattern("qk2");
        int found = 0;
        for (int m0 : {2, 3, 4}) {
            auto r = decide_fixed_rows(m0, qk2);
            if (r.outcome != FixedRowsOutcome::found) continue;
            ++found;
            c.expect(r.witness && r.witness->rows() == m0, "witness shape");
            c.expect(r.witness && check_witness(*r.witness, qk2, WitnessKind::horizontal).valid, "re-validation");
        }
        c.expect(decide_fixed_rows(4, qk2).outcome == FixedRowsOutcome::found, "2x4 Q2 at 4");
        c.detail << found << " witnesses re-validated";
    });

    criterion(10, "multidimensional suite", [&](Check& c) {
        const DPattern a = pattern_A();
        for (int n : {8, 9, 10, 12}) {
            const DPattern w = witness_W_A(n);
            c.expect(!contains_d(w, a), "W(" + std::to_string(n) + ") contains A");
            for (int z = 0; z < n; ++z) {
                bool empty = true;
                for (const auto& o : w.ones()) empty &= o[2] != z;
                if (empty) c.expect(is_expandable_layer(w, a, 2, z), "layer " + std::to_string(z));
            }
        }
        const DPattern done = complete_to_saturated_d(witness_W_A(9), a);
        c.expect(done.weight() <= 288 && is_saturating_d(done, a).ok, "completed weight");
        for (int it = 0; it < 20; ++it) {
            const int d = uniform(1, 3);
            std::vector<int> n, k;
            std::uint64_t all = 1, inner = 1;
            for (int ax = 0; ax < d; ++ax) {
                k.push_back(uniform(1, 3));
                n.push_back(uniform(k.back(), 5));
                all *= static_cast<std::uint64_t>(n.back());
                inner *= static_cast<std::uint64_t>(n.back() - k.back() + 1);
            }
            const DPattern s = corner_saturated(n, k);
            c.expect(static_cast<std::uint64_t>(s.weight()) == all - inner, "corner weight");
            c.expect(is_saturating_d(s, corner_pattern(k)).ok, "corner saturation");
        }
        for (int m = 2; m <= 4; ++m)
            for (int n = 2; n <= 4; ++n)
                for (int k1 = 1; k1 <= m; ++k1)
                    for (int k2 = 1; k2 <= n; ++k2)
                        c.expect(static_cast<std::uint64_t>(sat_exact(m, n, to_matrix(corner_pattern({k1, k2}))).value) ==
                                     max_sat_bound({m, n}, {k1, k2}),
                                 "corner vs solver");
        int panel = 0;
        for (int it = 0; it < 40; ++it) {
            const int d = uniform(2, 3);
            DPattern p([&] {
                std::vector<int> dims;
                for (int ax = 0; ax < d; ++ax) dims.push_back(uniform(1, 2));
                return dims;
            }());
            p.for_each_cell([&](const Coord& x) {
                if (uniform(0, 1)) p.set(x);
            });
            if (p.weight() == 0) continue;
            const int fixed = uniform(0, d - 1);
            std::vector<int> sizes;
            for (int ax = 0; ax < fixed; ++ax) sizes.push_back(std::max(p.dim(ax), 2 * (p.dim(ax) - 1)));
            const int k = compute_ssat_exponent(p, fixed);
            c.expect(is_semisaturating_d(build_ssat_construction(p, fixed, sizes, 6, k), p).ok, "ssat construction");
            ++panel;
        }
        c.detail << panel << " construction instances";
    });

    criterion(11, "growth as n tends to infinity", [&](Check& c) {
        // not computable; the finite certificates behind it are criteria 4 to 10
        c.detail << "note only: asymptotic claims are covered by certificate checks";
    });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures ? 1 : 0;
}
