#include "satmat/classifier.hpp"

#include "satmat/corpus.hpp"

namespace satmat {

const char* growth_name(Growth g) { return g == Growth::bounded ? "bounded" : "linear"; }

const char* status_name(SatStatus s) {
    switch (s) {
        case SatStatus::bounded: return "bounded";
        case SatStatus::linear: return "linear";
        case SatStatus::unknown: return "unknown";
    }
    return "?";
}

namespace {

void require_nonzero(const Pattern& p) {
    if (p.rows() == 0 || p.cols() == 0 || p.is_zero()) throw PreconditionError("pattern has no one-entries");
}

bool col_has_row_singleton(const Pattern& p, int c) {
    for (int r = 0; r < p.rows(); ++r)
        if (p.at(r, c) && p.row_weight(r) == 1) return true;
    return false;
}

bool row_has_col_singleton(const Pattern& p, int r) {
    for (int c = 0; c < p.cols(); ++c)
        if (p.at(r, c) && p.col_weight(c) == 1) return true;
    return false;
}

bool has_isolated_one(const Pattern& p) {
    for (auto [r, c] : p.ones())
        if (p.row_weight(r) == 1 && p.col_weight(c) == 1) return true;
    return false;
}

// The single one of a line of weight one.
Cell only_in_row(const Pattern& p, int r) {
    for (int c = 0; c < p.cols(); ++c)
        if (p.at(r, c)) return {r, c};
    return {-1, -1};
}

Cell only_in_col(const Pattern& p, int c) {
    for (int r = 0; r < p.rows(); ++r)
        if (p.at(r, c)) return {r, c};
    return {-1, -1};
}

bool any_symmetry(const Pattern& p, bool (*raw)(const Pattern&)) {
    for (int s = 0; s < symmetry_count; ++s)
        if (raw(apply_symmetry(s, p))) return true;
    return false;
}

bool same_up_to_symmetry(const Pattern& p, const Pattern& q) {
    for (int s = 0; s < symmetry_count; ++s)
        if (apply_symmetry(s, q) == p) return true;
    return false;
}

}  // namespace

Growth ssat_class(const Pattern& p) {
    require_nonzero(p);
    const int l = p.cols() - 1, k = p.rows() - 1;
    bool ok = col_has_row_singleton(p, 0) && col_has_row_singleton(p, l) && row_has_col_singleton(p, 0) &&
              row_has_col_singleton(p, k) && has_isolated_one(p);
    return ok ? Growth::bounded : Growth::linear;
}

Growth ssat_fixed_class(const Pattern& p) {
    require_nonzero(p);
    bool ok = row_has_col_singleton(p, 0) && row_has_col_singleton(p, p.rows() - 1);
    return ok ? Growth::bounded : Growth::linear;
}

std::vector<std::string> explain_ssat(const Pattern& p) {
    require_nonzero(p);
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    return {
        std::string("first column has a one alone in its row: ") + yes(col_has_row_singleton(p, 0)),
        std::string("last column has a one alone in its row: ") + yes(col_has_row_singleton(p, p.cols() - 1)),
        std::string("first row has a one alone in its column: ") + yes(row_has_col_singleton(p, 0)),
        std::string("last row has a one alone in its column: ") + yes(row_has_col_singleton(p, p.rows() - 1)),
        std::string("some one is alone in its row and its column: ") + yes(has_isolated_one(p)),
    };
}

bool is_q1_like_raw(const Pattern& p) {
    const int R = p.rows(), C = p.cols();
    if (R < 2 || C < 2) return false;
    if (p.row_weight(0) != 1 || p.row_weight(R - 1) != 1 || p.col_weight(0) != 1 || p.col_weight(C - 1) != 1)
        return false;
    Cell t = only_in_row(p, 0), b = only_in_row(p, R - 1);
    Cell l = only_in_col(p, 0), r = only_in_col(p, C - 1);
    if (t == b || t == l || t == r || b == l || b == r || l == r) return false;
    if (p.col_weight(t.col) != 1 || p.col_weight(b.col) != 1) return false;
    if (p.row_weight(l.row) != 1 || p.row_weight(r.row) != 1) return false;
    return (t.col < b.col && r.row < l.row) || (t.col > b.col && r.row > l.row);
}

bool is_q2_like_raw(const Pattern& p) {
    const int R = p.rows(), C = p.cols();
    if (R < 2 || C < 2) return false;
    const Cell corners[] = {{0, 0}, {0, C - 1}, {R - 1, 0}, {R - 1, C - 1}};
    int count = 0;
    Cell hit{};
    for (Cell c : corners)
        if (p.at(c.row, c.col)) {
            ++count;
            hit = c;
        }
    if (count != 1) return false;
    Pattern q = p;
    q.set(hit.row, hit.col, false);
    return is_q1_like_raw(q);
}

bool is_q3_like_raw(const Pattern& p) {
    const int R = p.rows(), C = p.cols();
    if (R < 3 || C < 3) return false;
    if (!p.at(0, 1) || !p.at(1, 0) || !p.at(2, C - 1)) return false;
    if (p.row_weight(0) != 1 || p.row_weight(1) != 1 || p.row_weight(2) != 1) return false;
    if (p.col_weight(1) != 1) return false;
    for (int r = 3; r < R; ++r)
        if (p.row_weight(r) < 2) return false;
    return true;
}

bool is_q1_like(const Pattern& p) { return any_symmetry(p, is_q1_like_raw); }
bool is_q2_like(const Pattern& p) { return any_symmetry(p, is_q2_like_raw); }
bool is_q3_like(const Pattern& p) { return any_symmetry(p, is_q3_like_raw); }

namespace {

struct FullWitnessEntry {
    std::string name;
    Pattern pattern;
    Pattern matrix;
};

const std::vector<FullWitnessEntry>& full_witnesses() {
    static const std::vector<FullWitnessEntry> entries = [] {
        std::vector<FullWitnessEntry> out;
        auto store = CorpusStore::embedded();
        for (const auto& e : corpus_entries(store))
            if (e.claim == "witness" && e.kind == "full")
                out.push_back({e.name, store.pattern(e.pattern), store.pattern(e.matrix)});
        return out;
    }();
    return entries;
}

}  // namespace

Verdict sat_verdict(const Pattern& p) {
    require_nonzero(p);
    Verdict v;
    if (ssat_class(p) == Growth::linear) {
        v.status = SatStatus::linear;
        v.reason = "ssat-linear";
        v.rule = "linear semisaturation forces linear saturation";
        return v;
    }
    if (auto d = is_decomposable(p)) {
        v.status = SatStatus::linear;
        v.reason = "decomposable";
        v.rule = "decomposable patterns have linear saturation";
        v.decomposition = d;
        return v;
    }
    if (is_permutation_matrix(p)) {
        v.status = SatStatus::bounded;
        v.reason = "permutation-indecomposable";
        v.rule = "indecomposable permutation matrices have bounded saturation";
        return v;
    }
    if (is_q1_like(p)) {
        v.status = SatStatus::bounded;
        v.reason = "q1-like";
        v.rule = "Q1-like patterns have bounded saturation";
        return v;
    }
    if (is_q2_like(p)) {
        v.status = SatStatus::bounded;
        v.reason = "q2-like";
        v.rule = "Q2-like patterns have explicit vertical and horizontal witnesses";
        return v;
    }
    for (const auto& e : full_witnesses())
        for (int s = 0; s < symmetry_count; ++s) {
            if (apply_symmetry(s, e.pattern) != p) continue;
            auto cert = check_witness(apply_symmetry(s, e.matrix), p, WitnessKind::full);
            if (!cert.valid) continue;
            v.status = SatStatus::bounded;
            v.reason = "corpus-witness";
            v.rule = "a full witness bounds saturation";
            v.corpus_entry = e.name + " (" + symmetry_name(s) + ")";
            v.certificate = std::move(cert);
            return v;
        }
    if (is_q3_like(p)) {
        if (same_up_to_symmetry(p, corpus_pattern("q3")) || same_up_to_symmetry(p, corpus_pattern("q5"))) {
            v.status = SatStatus::linear;
            v.reason = "q3-like-fixed-dim";
            v.rule = "bounded with one dimension fixed, yet linear in n";
            return v;
        }
        v.notes.push_back("q3-like: saturation is bounded whenever one dimension is fixed");
    }
    v.rule = "no rule applies";
    return v;
}

}  // namespace satmat
