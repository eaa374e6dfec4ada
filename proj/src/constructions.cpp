#include "satmat/constructions.hpp"

#include <stdexcept>

#include "satmat/classifier.hpp"
#include "satmat/containment.hpp"

namespace satmat {

namespace {

bool swaps_axes(int symmetry) { return symmetry == 1 || symmetry == 3 || symmetry == 4 || symmetry == 5; }

Cell other_in_row(const Pattern& p, int r, int skip_col) {
    for (int c = 0; c < p.cols(); ++c)
        if (p.at(r, c) && c != skip_col) return {r, c};
    return {-1, -1};
}

Cell other_in_col(const Pattern& p, int c, int skip_row) {
    for (int r = 0; r < p.rows(); ++r)
        if (p.at(r, c) && r != skip_row) return {r, c};
    return {-1, -1};
}

std::optional<Q2Anatomy> anatomy_in_frame(const Pattern& q, int symmetry) {
    const int R = q.rows(), C = q.cols();
    if (R < 4 || C < 4) return std::nullopt;
    if (!q.at(0, 0) || q.at(0, C - 1) || q.at(R - 1, 0) || q.at(R - 1, C - 1)) return std::nullopt;
    if (q.row_weight(0) != 2 || q.col_weight(0) != 2) return std::nullopt;
    Pattern rest = q;
    rest.set(0, 0, false);
    if (!is_q1_like_raw(rest)) return std::nullopt;
    Q2Anatomy a;
    a.symmetry = symmetry;
    a.normalized = q;
    a.corner = {0, 0};
    a.t = other_in_row(q, 0, 0);
    a.l = other_in_col(q, 0, 0);
    a.r = other_in_col(q, C - 1, -1);
    a.b = other_in_row(q, R - 1, -1);
    if (a.t.col <= a.b.col || a.r.row <= a.l.row) return std::nullopt;
    a.h_l = a.l.row;
    a.h_r = a.r.row;
    a.c_t = a.t.col;
    a.c_b = a.b.col;
    return a;
}

void paste(Pattern& dst, const Pattern& src, int row0, int col0) {
    for (auto [r, c] : src.ones()) dst.set(row0 + r, col0 + c);
}

void require_valid(const WitnessCertificate& cert, const std::string& what) {
    if (!cert.valid) throw std::logic_error(what + " failed its check: " + cert.failure);
}

// Normalized-frame witnesses; vertical first.
std::pair<Pattern, Pattern> q2_witnesses_in_frame(const Q2Anatomy& a) {
    const Pattern& p = a.normalized;
    const int k = p.rows(), l = p.cols();

    const int d = a.h_r - a.h_l;
    Pattern wv(k + d, 2 * l - 2);
    paste(wv, delete_column(p, l - 1), 0, 0);
    paste(wv, delete_column(p, 0), d, l - 1);
    for (int c = 0; c < l - 1; ++c) wv.set(d, c);

    const int shift = a.c_t - a.c_b;
    Pattern stacked(2 * k - 2, l + shift);
    paste(stacked, delete_row(p, k - 1), 0, shift);
    paste(stacked, delete_row(p, 0), k - 1, 0);
    Pattern wh0 = delete_column(stacked, 0);

    Pattern wh(2 * k - 2, (k - 1) + wh0.cols());
    for (int i = 0; i < k - 1; ++i) wh.set(i, i);
    // all-ones row sits on the row of the lower copy that held l
    const int ones_row = (k - 1) + (a.h_l - 1);
    for (int c = 0; c < k - 1; ++c) wh.set(ones_row, c);
    paste(wh, wh0, 0, k - 1);
    return {wv, wh};
}

Pattern q2_witness(const Pattern& p, WitnessKind want) {
    auto a = q2_anatomy(p);
    auto [wv, wh] = q2_witnesses_in_frame(a);
    const bool vertical_in_frame = (want == WitnessKind::vertical) != swaps_axes(a.symmetry);
    Pattern w = apply_inverse_symmetry(a.symmetry, vertical_in_frame ? wv : wh);
    require_valid(check_witness(w, p, want), std::string("q2-like ") + kind_name(want) + " witness");
    return w;
}

Pattern without_empty_columns(const Pattern& p) {
    std::vector<int> rows, cols;
    for (int r = 0; r < p.rows(); ++r) rows.push_back(r);
    for (int c = 0; c < p.cols(); ++c)
        if (!p.col_empty(c)) cols.push_back(c);
    return submatrix(p, rows, cols);
}

int expandable_column(const Pattern& w, const Pattern& p) {
    auto cert = check_witness(w, p, WitnessKind::horizontal);
    if (!cert.valid) throw PreconditionError("not a horizontal witness: " + cert.failure);
    return cert.cols->first;
}

}  // namespace

Q2Anatomy q2_anatomy(const Pattern& p) {
    for (int s = 0; s < symmetry_count; ++s)
        if (auto a = anatomy_in_frame(apply_symmetry(s, p), s)) return *a;
    throw PreconditionError("pattern is not q2-like");
}

Pattern build_wv_q2like(const Pattern& p) { return q2_witness(p, WitnessKind::vertical); }
Pattern build_wh_q2like(const Pattern& p) { return q2_witness(p, WitnessKind::horizontal); }

Pattern append_witness_row(const Pattern& w, const Pattern& p) {
    const int j = expandable_column(w, p);
    const int m = w.rows();
    auto copy = contains_through(w, p, {m - 1, j});
    if (!copy) throw std::logic_error("bottom flip completes no copy");
    Pattern out(m + 1, w.cols());
    paste(out, w, 0, 0);
    const int last = p.rows() - 1;
    for (int c = 0; c < p.cols(); ++c)
        if (p.at(last, c) && copy->cols[c] != j) out.set(m, copy->cols[c]);
    require_valid(check_witness(out, p, WitnessKind::horizontal), "appended row");
    return out;
}

Pattern dilate_columns(const Pattern& w, const Pattern& p, const Pattern& target) {
    for (int c = 0; c < p.cols(); ++c)
        if (p.col_empty(c)) throw PreconditionError("pattern has an empty column");
    if (target.rows() != p.rows() || without_empty_columns(target) != p)
        throw PreconditionError("target is not the pattern with empty columns inserted");
    expandable_column(w, p);
    const int k = longest_empty_col_run(target);
    if (k == 0) return w;
    const int stride = 2 * k + 1;
    Pattern out(w.rows(), stride * (w.cols() - 1) + 1);
    for (auto [r, c] : w.ones()) out.set(r, stride * c);
    require_valid(check_witness(out, target, WitnessKind::horizontal), "column dilation");
    return out;
}

Pattern dilate_rows(const Pattern& w, const Pattern& p, const Pattern& target) {
    for (int r = 0; r < p.rows(); ++r)
        if (p.row_empty(r)) throw PreconditionError("pattern has an empty row");
    const Pattern tt = transpose(target);
    if (target.cols() != p.cols() || without_empty_columns(tt) != transpose(p))
        throw PreconditionError("target is not the pattern with empty rows inserted");
    if (target.row_empty(0) || target.row_empty(target.rows() - 1))
        throw PreconditionError("empty rows must be interior");
    const int j = expandable_column(w, p);
    auto alone_in_row = [&](Cell one) { return p.row_weight(one.row) == 1; };
    for (int i = 0; i < w.rows(); ++i)
        if (!contains_through(w, p, {i, j}, alone_in_row))
            throw PreconditionError("row " + std::to_string(i + 1) +
                                    ": no copy uses the flipped cell as a one alone in its row");
    const int k = longest_empty_row_run(target);
    if (k == 0) return w;
    const int stride = 2 * k;
    Pattern out(stride * (w.rows() - 1) + 1, w.cols());
    for (auto [r, c] : w.ones()) out.set(stride * r, c);
    require_valid(check_witness(out, target, WitnessKind::horizontal), "row dilation");
    return out;
}

GlueResult glue_witnesses(const Pattern& wh, const Pattern& wv, const Pattern& p, int row_split, int col_split) {
    if (row_split < 0 || row_split > wh.rows())
        throw PreconditionError("row split " + std::to_string(row_split) + " outside 0.." + std::to_string(wh.rows()));
    if (col_split < 0 || col_split > wv.cols())
        throw PreconditionError("column split " + std::to_string(col_split) + " outside 0.." +
                                std::to_string(wv.cols()));
    GlueResult g;
    if (is_strongly_indecomposable(p)) {
        auto h = check_witness(wh, p, WitnessKind::horizontal);
        auto v = check_witness(wv, p, WitnessKind::vertical);
        if (!h.valid) throw PreconditionError("horizontal input: " + h.failure);
        if (!v.valid) throw PreconditionError("vertical input: " + v.failure);
        if (row_split < 1 || col_split < 1) throw PreconditionError("splits must leave a nonempty first block");
        auto alone_in_row = [&](Cell one) { return p.row_weight(one.row) == 1; };
        auto alone_in_col = [&](Cell one) { return p.col_weight(one.col) == 1; };
        if (!contains_through(wh, p, {row_split - 1, h.cols->first}, alone_in_row))
            throw PreconditionError("row " + std::to_string(row_split) +
                                    " of the horizontal witness has no flip playing a one alone in its row");
        if (!contains_through(wv, p, {v.rows->first, col_split - 1}, alone_in_col))
            throw PreconditionError("column " + std::to_string(col_split) +
                                    " of the vertical witness has no flip playing a one alone in its column");
    } else {
        g.warnings.push_back("pattern is not strongly indecomposable; split conditions not enforced");
    }

    int a_end = row_split, d_begin = row_split;
    while (a_end > 0 && wh.row_empty(a_end - 1)) --a_end;
    while (d_begin < wh.rows() && wh.row_empty(d_begin)) ++d_begin;
    int b_end = col_split, c_begin = col_split;
    while (b_end > 0 && wv.col_empty(b_end - 1)) --b_end;
    while (c_begin < wv.cols() && wv.col_empty(c_begin)) ++c_begin;
    g.absorbed_rows = d_begin - a_end;
    g.absorbed_cols = c_begin - b_end;

    const Pattern A = row_band(wh, 0, a_end), D = row_band(wh, d_begin, wh.rows());
    const Pattern B = col_band(wv, 0, b_end), C = col_band(wv, c_begin, wv.cols());
    const int top = A.rows(), mid = wv.rows(), left = B.cols(), centre = wh.cols();
    Pattern w(top + mid + D.rows(), left + centre + C.cols());
    paste(w, A, 0, left);
    paste(w, B, top, 0);
    paste(w, C, top, left + centre);
    paste(w, D, top + mid, left);
    g.matrix = w;
    g.check = check_witness(w, p, WitnessKind::full);
    return g;
}

Pattern family_p(int k) {
    if (k < 2) throw PreconditionError("family needs k >= 2");
    Pattern p(k, 4);
    for (int c : {0, 2, 3}) p.set(0, c);
    for (int c : {0, 1, 3}) p.set(k - 1, c);
    return p;
}

Pattern family_q(int k) {
    Pattern q = family_p(k);
    for (int r = 1; r < k - 1; ++r) {
        q.set(r, 0);
        q.set(r, 3);
    }
    return q;
}

Pattern build_w2() { return Pattern::from_strings({".11.11", "111.1.", "..1.11", "1.1.11"}); }

Pattern build_wk(int k) {
    if (k < 2) throw PreconditionError("W_k needs k >= 2");
    Pattern w = kronecker(build_w2(), ones_matrix(k - 1, 1));
    auto chk = check_intermediaries(w, family_p(k), family_q(k), WitnessKind::horizontal);
    if (!chk.ok) throw std::logic_error("W_" + std::to_string(k) + ": " + chk.failure);
    return w;
}

IntermediaryCheck check_intermediaries(const Pattern& w, const Pattern& lo, const Pattern& hi, WitnessKind kind) {
    if (!dominated_by(lo, hi)) throw PreconditionError("lower pattern is not below the upper one");
    std::vector<Cell> free;
    for (auto c : hi.ones())
        if (!lo.at(c.row, c.col)) free.push_back(c);
    if (free.size() > 20) throw PreconditionError("more than 2^20 intermediaries");
    IntermediaryCheck out;
    for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
        Pattern r = lo;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1) r.set(free[i].row, free[i].col);
        auto cert = check_witness(w, r, kind);
        ++out.checked;
        if (!cert.valid) {
            out.failure = "intermediary\n" + serialize_pattern(r) + cert.failure;
            return out;
        }
    }
    out.ok = true;
    return out;
}

Pattern build_fixed_ssat(int m0, int n, const Pattern& p) {
    const int k = p.rows(), l = p.cols();
    if (p.is_zero()) throw PreconditionError("zero pattern");
    if (m0 < 2 * (k - 1)) throw PreconditionError("need m0 >= 2(rows-1) = " + std::to_string(2 * (k - 1)));
    if (n < 2 * (l - 1)) throw PreconditionError("need n >= 2(cols-1) = " + std::to_string(2 * (l - 1)));
    Pattern m(m0, n);
    for (int r = 0; r < m0; ++r)
        for (int c = 0; c < l - 1; ++c) {
            m.set(r, c);
            m.set(r, n - 1 - c);
        }
    if (ssat_fixed_class(p) == Growth::bounded) {
        auto s = is_semisaturating(m, p);
        if (!s.semisaturating)
            throw std::logic_error("fixed-row construction not semisaturating at " + format_cell(*s.failing_zero));
    }
    return m;
}

Pattern prepend_ones_column(const Pattern& m, const Pattern& p) {
    auto s = is_saturating(m, p);
    if (!s.saturating) throw PreconditionError("matrix is not saturating for the pattern");
    return prepend_allones_column(m);
}

}  // namespace satmat
