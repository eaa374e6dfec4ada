#include "satmat/saturation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace satmat {

const char* kind_name(WitnessKind k) {
    switch (k) {
        case WitnessKind::horizontal: return "horizontal";
        case WitnessKind::vertical: return "vertical";
        case WitnessKind::full: return "full";
    }
    return "?";
}

WitnessKind parse_kind(const std::string& s) {
    if (s == "h" || s == "horizontal") return WitnessKind::horizontal;
    if (s == "v" || s == "vertical") return WitnessKind::vertical;
    if (s == "full" || s == "f") return WitnessKind::full;
    throw PreconditionError("unknown witness kind '" + s + "' (expected h, v or full)");
}

std::string format_cell(Cell c) {
    return "(" + std::to_string(c.row + 1) + "," + std::to_string(c.col + 1) + ")";
}

std::string format_placement(const Placement& pl) {
    auto list = [](const std::vector<int>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
        return s + "]";
    };
    return "rows " + list(pl.rows) + " cols " + list(pl.cols);
}

LineCheck is_expandable_column(const Pattern& w, const Pattern& p, int col) {
    LineCheck out;
    for (int r = 0; r < w.rows(); ++r)
        if (w.at(r, col)) {
            out.failing_cell = Cell{r, col};
            return out;
        }
    for (int r = 0; r < w.rows(); ++r) {
        auto hit = contains_through(w, p, {r, col});
        if (!hit) {
            out.failing_cell = Cell{r, col};
            out.evidence.clear();
            return out;
        }
        out.evidence.emplace(Cell{r, col}, std::move(*hit));
    }
    out.expandable = true;
    return out;
}

LineCheck is_expandable_row(const Pattern& w, const Pattern& p, int row) {
    LineCheck out;
    if (!w.row_empty(row)) {
        for (int c = 0; c < w.cols(); ++c)
            if (w.at(row, c)) {
                out.failing_cell = Cell{row, c};
                break;
            }
        return out;
    }
    for (int c = 0; c < w.cols(); ++c) {
        auto hit = contains_through(w, p, {row, c});
        if (!hit) {
            out.failing_cell = Cell{row, c};
            out.evidence.clear();
            return out;
        }
        out.evidence.emplace(Cell{row, c}, std::move(*hit));
    }
    out.expandable = true;
    return out;
}

SaturationResult is_saturating(const Pattern& m, const Pattern& p) {
    SaturationResult out;
    if (auto hit = contains(m, p)) {
        out.contained = std::move(hit);
        return out;
    }
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!m.at(r, c) && !contains_through(m, p, {r, c})) {
                out.failing_zero = Cell{r, c};
                return out;
            }
    out.saturating = true;
    return out;
}

SemisaturationResult is_semisaturating(const Pattern& m, const Pattern& p) {
    SemisaturationResult out;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!m.at(r, c) && !contains_through(m, p, {r, c})) {
                out.failing_zero = Cell{r, c};
                return out;
            }
    out.semisaturating = true;
    return out;
}

int required_col_run(const Pattern& p) { return 1 + longest_empty_col_run(p); }
int required_row_run(const Pattern& p) { return 1 + longest_empty_row_run(p); }

namespace {

struct RunSearch {
    std::optional<LineRange> range;
    FlipEvidence evidence;
    int longest = 0;
};

// First maximal run of expandable lines with length >= need.
template <class CheckLine>
RunSearch find_run(int lines, int need, CheckLine check) {
    RunSearch out;
    int start = -1;
    FlipEvidence acc;
    auto close = [&](int end) {  // run is [start, end)
        if (start >= 0) {
            out.longest = std::max(out.longest, end - start);
            if (!out.range && end - start >= need) {
                out.range = LineRange{start, end - 1};
                out.evidence = acc;
            }
        }
        start = -1;
        acc.clear();
    };
    for (int i = 0; i < lines; ++i) {
        auto lc = check(i);
        if (lc.expandable) {
            if (start < 0) start = i;
            acc.merge(lc.evidence);
        } else {
            close(i);
            if (out.range) return out;
        }
    }
    close(lines);
    return out;
}

}  // namespace

WitnessCertificate check_witness(const Pattern& w, const Pattern& p, WitnessKind kind) {
    WitnessCertificate cert;
    cert.kind = kind;
    cert.matrix = w;
    cert.pattern = p;
    if (auto hit = contains(w, p)) {
        cert.contained = hit;
        cert.failure = "matrix contains the pattern at " + format_placement(*hit);
        return cert;
    }
    bool ok = true;
    if (kind != WitnessKind::vertical) {
        int need = required_col_run(p);
        auto rs = find_run(w.cols(), need, [&](int c) { return is_expandable_column(w, p, c); });
        if (rs.range) {
            cert.cols = rs.range;
            cert.evidence.merge(rs.evidence);
        } else {
            ok = false;
            cert.failure = "no run of " + std::to_string(need) + " expandable columns (longest " +
                           std::to_string(rs.longest) + ")";
        }
    }
    if (kind != WitnessKind::horizontal) {
        int need = required_row_run(p);
        auto rs = find_run(w.rows(), need, [&](int r) { return is_expandable_row(w, p, r); });
        if (rs.range) {
            cert.rows = rs.range;
            cert.evidence.merge(rs.evidence);
        } else {
            ok = false;
            if (!cert.failure.empty()) cert.failure += "; ";
            cert.failure += "no run of " + std::to_string(need) + " expandable rows (longest " +
                            std::to_string(rs.longest) + ")";
        }
    }
    cert.valid = ok;
    return cert;
}

std::string WitnessCertificate::report() const {
    std::ostringstream os;
    os << "witness " << kind_name(kind) << ": " << (valid ? "valid" : "invalid") << "\n";
    os << "pattern " << pattern.rows() << "x" << pattern.cols() << "\n" << serialize_pattern(pattern);
    os << "matrix " << matrix.rows() << "x" << matrix.cols() << "\n" << serialize_pattern(matrix);
    if (cols)
        os << "expandable columns " << cols->first + 1 << ".." << cols->last + 1 << " (run needed "
           << required_col_run(pattern) << ")\n";
    if (rows)
        os << "expandable rows " << rows->first + 1 << ".." << rows->last + 1 << " (run needed "
           << required_row_run(pattern) << ")\n";
    for (const auto& [cell, pl] : evidence) os << "flip " << format_cell(cell) << " -> " << format_placement(pl) << "\n";
    if (!failure.empty()) os << "failure: " << failure << "\n";
    return os.str();
}

Pattern complete_to_saturated(const Pattern& m, const Pattern& p) {
    if (auto hit = contains(m, p))
        throw PreconditionError("input already contains the pattern at " + format_placement(*hit));
    Pattern cur = m;
    for (int r = 0; r < cur.rows(); ++r)
        for (int c = 0; c < cur.cols(); ++c)
            if (!cur.at(r, c) && !contains_through(cur, p, {r, c})) cur.set(r, c);
    return cur;
}

namespace {

bool still_witness(const Pattern& w, const Pattern& p, WitnessKind kind) {
    if (w.rows() == 0 || w.cols() == 0) return false;
    return check_witness(w, p, kind).valid;
}

// Rows reachable along copies from one expandable column, split into weak
// components; each component is closed under out-edges.
std::vector<std::vector<int>> row_components(const WitnessCertificate& cert) {
    const int m = cert.matrix.rows();
    const int col = cert.cols->first;
    std::vector<int> parent(static_cast<std::size_t>(m));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int r = 0; r < m; ++r) {
        const auto& pl = cert.evidence.at(Cell{r, col});
        for (int b : pl.rows) parent[find(b)] = find(r);
    }
    std::map<int, std::vector<int>> groups;
    for (int r = 0; r < m; ++r) groups[find(r)].push_back(r);
    std::vector<std::vector<int>> out;
    for (auto& [root, rows] : groups) out.push_back(rows);
    return out;
}

Pattern shrink_by_components(const Pattern& w, const Pattern& p, WitnessKind kind) {
    if (kind == WitnessKind::full) return w;
    const bool vertical = kind == WitnessKind::vertical;
    Pattern cur = vertical ? transpose(w) : w;
    Pattern pat = vertical ? transpose(p) : p;
    while (true) {
        auto cert = check_witness(cur, pat, WitnessKind::horizontal);
        auto comps = row_components(cert);
        if (comps.size() < 2) break;
        std::vector<int> all_cols(static_cast<std::size_t>(cur.cols()));
        std::iota(all_cols.begin(), all_cols.end(), 0);
        std::optional<Pattern> best;
        for (const auto& comp : comps) {
            auto sub = submatrix(cur, comp, all_cols);
            if (still_witness(sub, pat, WitnessKind::horizontal) && (!best || sub.rows() < best->rows())) best = sub;
        }
        if (!best) break;
        cur = *best;
    }
    return vertical ? transpose(cur) : cur;
}

}  // namespace

Pattern minimize_witness(const Pattern& w, const Pattern& p, WitnessKind kind) {
    if (!check_witness(w, p, kind).valid) throw PreconditionError("input is not a witness of the requested kind");
    Pattern cur = w;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int r = cur.rows() - 1; r >= 0; --r) {
            auto cand = delete_row(cur, r);
            if (still_witness(cand, p, kind)) {
                cur = cand;
                changed = true;
            }
        }
        for (int c = cur.cols() - 1; c >= 0; --c) {
            auto cand = delete_column(cur, c);
            if (still_witness(cand, p, kind)) {
                cur = cand;
                changed = true;
            }
        }
        if (!changed) {
            auto shrunk = shrink_by_components(cur, p, kind);
            if (shrunk.rows() * shrunk.cols() < cur.rows() * cur.cols()) {
                cur = shrunk;
                changed = true;
            }
        }
    }
    return cur;
}

}  // namespace satmat
