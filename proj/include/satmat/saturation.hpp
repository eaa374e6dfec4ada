#pragma once

#include <map>
#include <optional>
#include <string>

#include "satmat/containment.hpp"
#include "satmat/pattern.hpp"

namespace satmat {

enum class WitnessKind { horizontal, vertical, full };

const char* kind_name(WitnessKind k);
WitnessKind parse_kind(const std::string& s);  // h|v|full and long names

// Flip -> least copy through the flipped cell.
using FlipEvidence = std::map<Cell, Placement>;

struct LineCheck {
    bool expandable = false;
    FlipEvidence evidence;
    std::optional<Cell> failing_cell;  // nonempty line, or a flip that creates no copy
};

LineCheck is_expandable_column(const Pattern& w, const Pattern& p, int col);
LineCheck is_expandable_row(const Pattern& w, const Pattern& p, int row);

struct SaturationResult {
    bool saturating = false;
    std::optional<Placement> contained;  // m already contains p
    std::optional<Cell> failing_zero;    // flip that creates no copy
};

SaturationResult is_saturating(const Pattern& m, const Pattern& p);

struct SemisaturationResult {
    bool semisaturating = false;
    std::optional<Cell> failing_zero;
};

SemisaturationResult is_semisaturating(const Pattern& m, const Pattern& p);

// Run length a witness needs: one more than the longest run of empty
// columns (rows) of p.
int required_col_run(const Pattern& p);
int required_row_run(const Pattern& p);

struct LineRange {
    int first = 0;  // inclusive, 0-based
    int last = 0;
};

struct WitnessCertificate {
    WitnessKind kind = WitnessKind::horizontal;
    Pattern matrix;
    Pattern pattern;
    bool valid = false;
    std::optional<Placement> contained;
    std::optional<LineRange> cols;  // expandable column run used
    std::optional<LineRange> rows;
    FlipEvidence evidence;          // every flip in the runs above
    std::string failure;

    std::string report() const;
};

WitnessCertificate check_witness(const Pattern& w, const Pattern& p, WitnessKind kind);

// Row-major greedy: a zero becomes one whenever the flip keeps p avoided.
Pattern complete_to_saturated(const Pattern& m, const Pattern& p);

// Deletes rows and columns (last index first) while the result stays a
// witness of the same kind; then restricts to out-closed vertex sets of the
// witness graph while that shrinks it.
Pattern minimize_witness(const Pattern& w, const Pattern& p, WitnessKind kind);

std::string format_placement(const Placement& pl);  // 1-based
std::string format_cell(Cell c);                    // 1-based

}  // namespace satmat
