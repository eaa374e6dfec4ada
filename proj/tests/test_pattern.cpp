#include <doctest.h>

#include "satmat/corpus.hpp"
#include "satmat/pattern.hpp"
#include "support.hpp"

using namespace satmat;
using namespace satmat::testing;

namespace {

// Ones split into A (label 0) and B (label 1), A strictly above B and strictly
// left (diagonal) or right (anti) of it.
bool naive_decomposable(const Pattern& p) {
    auto ones = p.ones();
    const int w = static_cast<int>(ones.size());
    for (int mask = 1; mask + 1 < (1 << w); ++mask)
        for (int anti = 0; anti < 2; ++anti) {
            bool ok = true;
            for (int i = 0; i < w && ok; ++i)
                for (int j = 0; j < w && ok; ++j) {
                    if ((mask >> i & 1) || !(mask >> j & 1)) continue;  // i in A, j in B
                    if (ones[i].row >= ones[j].row) ok = false;
                    if (!anti && ones[i].col >= ones[j].col) ok = false;
                    if (anti && ones[i].col <= ones[j].col) ok = false;
                }
            if (ok) return true;
        }
    return false;
}

// Four groups: 0 top, 1 left, 2 right, 3 bottom; at least three nonempty.
bool naive_strongly_indecomposable(const Pattern& p) {
    if (naive_decomposable(p)) return false;
    auto ones = p.ones();
    const int w = static_cast<int>(ones.size());
    std::vector<int> label(static_cast<std::size_t>(w), 0);
    while (true) {
        int used = 0;
        for (int g = 0; g < 4; ++g)
            if (std::count(label.begin(), label.end(), g)) ++used;
        bool ok = used >= 3;
        for (int i = 0; i < w && ok; ++i)
            for (int j = 0; j < w && ok; ++j) {
                if (label[i] == label[j]) continue;
                const Cell a = ones[i], b = ones[j];
                if (label[i] == 0 && a.row >= b.row) ok = false;
                if (label[i] == 3 && a.row <= b.row) ok = false;
                if (label[i] == 1 && a.col >= b.col) ok = false;
                if (label[i] == 2 && a.col <= b.col) ok = false;
            }
        if (ok) return false;
        int i = 0;
        while (i < w && ++label[i] == 4) label[i++] = 0;
        if (i == w) return true;
    }
}

}  // namespace

TEST_CASE("parse accepts dots, zeros, ones and bullets") {
    Pattern i2 = parse_pattern("1.\n.1\n");
    CHECK(i2.rows() == 2);
    CHECK(i2.at(0, 0));
    CHECK(i2.at(1, 1));
    CHECK(i2.weight() == 2);
    CHECK(parse_pattern("# comment\n10\n01") == i2);
    CHECK(parse_pattern("•.\n.•\n") == i2);
    Pattern one = parse_pattern("1");
    CHECK(one.rows() == 1);
    CHECK(one.cols() == 1);
    CHECK(one.weight() == 1);
}

TEST_CASE("parse reports the offending line") {
    auto line_of = [](const char* text) {
        try {
            parse_pattern(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("1.\n.1.\n") == 2);
    CHECK(line_of("1.\nx.\n") == 2);
    CHECK(line_of("") > 0);
    CHECK(line_of("# only a comment\n") > 0);
    std::string wide(65, '1');
    CHECK(line_of(wide.c_str()) == 1);
}

TEST_CASE("Q1 from the corpus has ones at the displayed cells") {
    Pattern q1 = corpus_pattern("q1");
    std::vector<Cell> expect{{0, 2}, {1, 0}, {2, 3}, {3, 1}};
    CHECK(q1.ones() == expect);
}

TEST_CASE("serialization round-trips bit-exactly") {
    for (int it = 0; it < 200; ++it) {
        Pattern p = random_pattern(uniform(1, 9), uniform(1, 9), 0.4);
        std::string s = serialize_pattern(p);
        CHECK(parse_pattern(s) == p);
        CHECK(serialize_pattern(parse_pattern(s)) == s);
        CHECK(s.back() == '\n');
        CHECK(s.find(' ') == std::string::npos);
    }
}

TEST_CASE("symmetries form the dihedral group and invert") {
    Pattern p = Pattern::from_strings({"11.", "..1"});
    CHECK(rotate90(p) == Pattern::from_strings({".1", ".1", "1."}));
    CHECK(reflect_h(p) == Pattern::from_strings({"..1", "11."}));
    CHECK(reflect_v(p) == Pattern::from_strings({".11", "1.."}));
    CHECK(transpose(p) == Pattern::from_strings({"1.", "1.", ".1"}));
    for (int it = 0; it < 50; ++it) {
        Pattern q = random_pattern(uniform(1, 6), uniform(1, 6), 0.5);
        CHECK(rotate90(rotate90(rotate90(rotate90(q)))) == q);
        CHECK(transpose(transpose(q)) == q);
        for (int s = 0; s < symmetry_count; ++s) {
            CHECK(apply_inverse_symmetry(s, apply_symmetry(s, q)) == q);
            CHECK(apply_symmetry(s, q).weight() == q.weight());
            CHECK(symmetry_by_name(symmetry_name(s)) == s);
        }
    }
}

TEST_CASE("kronecker product") {
    Pattern one = parse_pattern("1");
    Pattern swap = Pattern::from_strings({".1", "1."});
    Pattern i2 = Pattern::from_strings({"1.", ".1"});
    CHECK(kronecker(swap, one) == swap);
    Pattern k = kronecker(swap, i2);
    std::vector<Cell> expect{{0, 2}, {1, 3}, {2, 0}, {3, 1}};
    CHECK(k.ones() == expect);
    Pattern w2 = corpus_pattern("qk2_w2");
    Pattern w4 = kronecker(w2, ones_matrix(3, 1));
    for (int r = 0; r < w4.rows(); ++r) CHECK(w4.row_bits(r) == w2.row_bits(r / 3));
    for (int it = 0; it < 50; ++it) {
        Pattern a = random_pattern(uniform(1, 4), uniform(1, 4), 0.5);
        Pattern b = random_pattern(uniform(1, 4), uniform(1, 4), 0.5);
        Pattern ab = kronecker(a, b);
        CHECK(ab.weight() == a.weight() * b.weight());
        CHECK(ab.rows() == a.rows() * b.rows());
        CHECK(ab.cols() == a.cols() * b.cols());
    }
}

TEST_CASE("decomposition examples") {
    Pattern i2 = Pattern::from_strings({"1.", ".1"});
    auto d = is_decomposable(i2);
    REQUIRE(d);
    CHECK_FALSE(d->anti_diagonal);
    CHECK(d->a == parse_pattern("1"));
    CHECK(d->b == parse_pattern("1"));
    CHECK_FALSE(is_decomposable(corpus_pattern("q1")));
    CHECK_FALSE(is_decomposable(corpus_pattern("q2")));
    auto j = is_decomposable(corpus_pattern("j3"));
    REQUIRE(j);
    CHECK(j->anti_diagonal);
}

TEST_CASE("decomposition splits reassemble and agree with the naive enumerator") {
    for (int it = 0; it < 400; ++it) {
        Pattern p = random_nonzero(uniform(1, 5), uniform(1, 5), 0.35);
        if (p.weight() > 10) continue;
        auto d = is_decomposable(p);
        CHECK(d.has_value() == naive_decomposable(p));
        if (!d) continue;
        // reassemble from the reported blocks
        Pattern re(p.rows(), p.cols());
        const int ar = d->row_split, ac = d->col_split;
        for (auto [r, c] : d->a.ones()) re.set(r, d->anti_diagonal ? ac + c : c);
        for (auto [r, c] : d->b.ones()) re.set(ar + r, d->anti_diagonal ? c : ac + c);
        CHECK(re == p);
        CHECK_FALSE(d->a.is_zero());
        CHECK_FALSE(d->b.is_zero());
    }
}

TEST_CASE("strong indecomposability") {
    CHECK_FALSE(is_strongly_indecomposable(corpus_pattern("q4")));
    CHECK(is_strongly_indecomposable(parse_pattern("1")));
    for (int it = 0; it < 300; ++it) {
        Pattern p = random_nonzero(uniform(1, 5), uniform(1, 5), 0.3);
        if (p.weight() > 8) continue;
        CHECK(is_strongly_indecomposable(p) == naive_strongly_indecomposable(p));
    }
}

TEST_CASE("permutation matrices") {
    CHECK(is_permutation_matrix(corpus_pattern("q1")));
    CHECK_FALSE(is_permutation_matrix(corpus_pattern("q2")));
    CHECK_FALSE(is_permutation_matrix(Pattern::from_strings({"1.", "1."})));
}

TEST_CASE("editing helpers") {
    Pattern p = Pattern::from_strings({"1.1", ".1."});
    CHECK(insert_empty_column(p, 1) == Pattern::from_strings({"1..1", "..1."}));
    CHECK(insert_empty_row(p, 2) == Pattern::from_strings({"1.1", ".1.", "..."}));
    CHECK(delete_row(p, 0) == Pattern::from_strings({".1."}));
    CHECK(delete_column(p, 2) == Pattern::from_strings({"1.", ".1"}));
    CHECK(prepend_allones_column(p) == Pattern::from_strings({"11.1", "1.1."}));
    CHECK(longest_empty_col_run(Pattern::from_strings({"1..1", "1..."})) == 2);
    CHECK(longest_empty_row_run(p) == 0);
    CHECK(dominated_by(Pattern::from_strings({"1..", ".1."}), p));
    CHECK_FALSE(dominated_by(p, Pattern::from_strings({"1..", ".1."})));
    CHECK_THROWS_AS(insert_empty_column(p, 4), PreconditionError);
    Pattern wide(1, 64);
    wide.set(0, 63);
    CHECK(delete_column(wide, 0).at(0, 62));
    CHECK_THROWS(Pattern(1, 65));
}
