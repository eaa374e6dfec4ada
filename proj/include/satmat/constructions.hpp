#pragma once

#include <string>
#include <vector>

#include "satmat/pattern.hpp"
#include "satmat/saturation.hpp"

namespace satmat {

// Landmarks of a q2-like pattern after mapping it to the orientation with the
// corner one top-left, t right of b and r below l. Cells are in that frame.
struct Q2Anatomy {
    int symmetry = 0;  // apply_symmetry(symmetry, p) == normalized
    Pattern normalized;
    Cell corner, t, l, r, b;
    int h_l = 0, h_r = 0, c_t = 0, c_b = 0;  // 0-based
};

// Throws PreconditionError when p is not q2-like.
Q2Anatomy q2_anatomy(const Pattern& p);

// Every construction re-checks its output and throws std::logic_error with
// the checker's failure text if the check does not pass.
Pattern build_wv_q2like(const Pattern& p);
Pattern build_wh_q2like(const Pattern& p);

// Adds one row below a horizontal witness: ones where the copy completed by
// the bottom flip has its last pattern row, minus the expandable column.
Pattern append_witness_row(const Pattern& w, const Pattern& p);

// target is p with empty columns (rows) inserted; k is target's longest
// empty run. Columns: 2k empty columns between consecutive columns of w.
// Rows: 2k-1 empty rows between consecutive rows of w, after checking that
// every flip on the expandable column can play a one alone in its row.
Pattern dilate_columns(const Pattern& w, const Pattern& p, const Pattern& target);
Pattern dilate_rows(const Pattern& w, const Pattern& p, const Pattern& target);

struct GlueResult {
    Pattern matrix;
    WitnessCertificate check;  // full-witness check; may fail
    std::vector<std::string> warnings;
    int absorbed_rows = 0;
    int absorbed_cols = 0;
};

// [[0 A 0] [B 0 C] [0 D 0]] with A = wh rows [0,row_split), D the rest,
// B = wv columns [0,col_split), C the rest. Empty wh rows (wv columns)
// touching the split are dropped. Split conditions are enforced only for
// strongly indecomposable p.
GlueResult glue_witnesses(const Pattern& wh, const Pattern& wv, const Pattern& p, int row_split, int col_split);

// k x 4 patterns with top row 1.11, bottom row 11.1 and interior rows empty
// (family_p) or 1..1 (family_q).
Pattern family_p(int k);
Pattern family_q(int k);
Pattern build_w2();
// W2 with every row repeated k-1 times; column 4 is expandable for family_q(k).
Pattern build_wk(int k);

struct IntermediaryCheck {
    bool ok = false;
    int checked = 0;
    std::string failure;
};

// w must avoid lo; every r with lo <= r <= hi must then admit w as a witness.
IntermediaryCheck check_intermediaries(const Pattern& w, const Pattern& lo, const Pattern& hi, WitnessKind kind);

// [ones | zeros | ones] with cols(p)-1 columns of ones on each side.
Pattern build_fixed_ssat(int m0, int n, const Pattern& p);

// Column of ones before m, which must be saturating for p; the result
// saturates p with any column prepended.
Pattern prepend_ones_column(const Pattern& m, const Pattern& p);

}  // namespace satmat
