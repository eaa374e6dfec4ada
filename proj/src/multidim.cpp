#include "satmat/multidim.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "satmat/containment.hpp"
#include "satmat/corpus.hpp"

namespace satmat {

namespace {

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

DPattern::DPattern(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty() || static_cast<int>(dims_.size()) > max_dims)
        throw PreconditionError("dimension must be in 1..4");
    std::size_t lines = 1;
    for (std::size_t a = 0; a < dims_.size(); ++a) {
        if (dims_[a] < 1 || dims_[a] > max_side) throw PreconditionError("every side must be in 1..64");
        if (a + 1 < dims_.size()) lines *= static_cast<std::size_t>(dims_[a]);
    }
    lines_.assign(lines, 0);
}

std::uint64_t DPattern::cell_count() const {
    std::uint64_t n = 1;
    for (int s : dims_) n *= static_cast<std::uint64_t>(s);
    return n;
}

std::size_t DPattern::line_of(const Coord& x) const {
    std::size_t idx = 0;
    for (int a = 0; a + 1 < d(); ++a) idx = idx * static_cast<std::size_t>(dims_[a]) + static_cast<std::size_t>(x[a]);
    return idx;
}

bool DPattern::at(const Coord& x) const { return (lines_[line_of(x)] >> x.back()) & 1u; }

void DPattern::set(const Coord& x, bool v) {
    for (int a = 0; a < d(); ++a)
        if (x[a] < 0 || x[a] >= dims_[a]) throw PreconditionError("coordinate out of range");
    auto bit = std::uint64_t{1} << x.back();
    auto& l = lines_[line_of(x)];
    l = v ? (l | bit) : (l & ~bit);
}

int DPattern::weight() const {
    int w = 0;
    for (auto l : lines_) w += std::popcount(l);
    return w;
}

std::vector<Coord> DPattern::ones() const {
    std::vector<Coord> out;
    for_each_cell([&](const Coord& x) {
        if (at(x)) out.push_back(x);
    });
    return out;
}

DPattern parse_dpattern(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    std::optional<DPattern> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!out) {
            std::string tag;
            ls >> tag;
            if (tag != "dims") throw ParseError(lineno, "expected 'dims n1 ... nd'");
            std::vector<int> dims;
            int v;
            while (ls >> v) dims.push_back(v);
            if (!ls.eof()) throw ParseError(lineno, "malformed dims line");
            try {
                out.emplace(dims);
            } catch (const PreconditionError& e) {
                throw ParseError(lineno, e.what());
            }
            continue;
        }
        Coord x;
        int v;
        while (ls >> v) x.push_back(v - 1);
        if (!ls.eof() || static_cast<int>(x.size()) != out->d())
            throw ParseError(lineno, "expected " + std::to_string(out->d()) + " coordinates");
        for (int a = 0; a < out->d(); ++a)
            if (x[a] < 0 || x[a] >= out->dim(a)) throw ParseError(lineno, "coordinate out of range");
        out->set(x);
    }
    if (!out) throw ParseError(lineno, "missing dims line");
    return *out;
}

std::string serialize_dpattern(const DPattern& p) {
    std::ostringstream os;
    os << "dims";
    for (int s : p.dims()) os << " " << s;
    os << "\n";
    for (const auto& x : p.ones()) {
        for (int a = 0; a < p.d(); ++a) os << (a ? " " : "") << x[a] + 1;
        os << "\n";
    }
    return os.str();
}

DPattern from_matrix(const Pattern& p) {
    DPattern out({p.rows(), p.cols()});
    for (auto [r, c] : p.ones()) out.set({r, c});
    return out;
}

Pattern to_matrix(const DPattern& p) {
    if (p.d() != 2) throw PreconditionError("not two-dimensional");
    Pattern out(p.dim(0), p.dim(1));
    for (const auto& x : p.ones()) out.set(x[0], x[1]);
    return out;
}

namespace {

// Index sets for every axis but the last are enumerated; the last axis is
// matched greedily from the AND of the host lines each pattern layer needs.
class DMatcher {
public:
    DMatcher(const DPattern& host, const DPattern& p) : host_(host), p_(p), d_(p.d()) {
        if (host.d() != p.d()) throw PreconditionError("dimension mismatch");
        lines_.resize(host.line_count());
        for (std::size_t i = 0; i < lines_.size(); ++i) lines_[i] = host.line(i);
        layer_ones_.resize(static_cast<std::size_t>(p.dims().back()));
        for (const auto& x : p.ones()) layer_ones_[x.back()].push_back(Coord(x.begin(), x.end() - 1));
        choice_.resize(static_cast<std::size_t>(d_));
        for (int a = 0; a < d_; ++a) choice_[a].resize(static_cast<std::size_t>(p.dim(a)));
    }

    void force(const Coord& one, const Coord& cell) {
        forced_one_ = one;
        forced_cell_ = cell;
        lines_[host_.line_of(cell)] |= std::uint64_t{1} << cell.back();
    }

    std::optional<DPlacement> first() {
        for (int a = 0; a < d_; ++a)
            if (p_.dim(a) > host_.dim(a)) return std::nullopt;
        if (axis(0)) return choice_;
        return std::nullopt;
    }

private:
    bool axis(int a) {
        if (a == d_ - 1) return greedy();
        return pick(a, 0, 0);
    }

    bool pick(int a, int i, int lo) {
        const int need = p_.dim(a), size = host_.dim(a);
        if (i == need) return axis(a + 1);
        int hi = size - (need - i);
        if (!forced_one_.empty()) {
            int f = forced_one_[a], z = forced_cell_[a];
            if (i == f) {
                if (z < lo || z > hi) return false;
                choice_[a][i] = z;
                return pick(a, i + 1, z + 1);
            }
            if (i < f) hi = std::min(hi, z - (f - i));
        }
        for (int h = lo; h <= hi; ++h) {
            choice_[a][i] = h;
            if (pick(a, i + 1, h + 1)) return true;
        }
        return false;
    }

    bool greedy() {
        const int last = d_ - 1, size = host_.dim(last);
        int prev = -1;
        Coord hx(static_cast<std::size_t>(d_), 0);
        for (int c = 0; c < p_.dim(last); ++c) {
            std::uint64_t avail = low_mask(size);
            for (const auto& px : layer_ones_[c]) {
                for (int a = 0; a < last; ++a) hx[a] = choice_[a][px[a]];
                avail &= lines_[host_.line_of(hx)];
                if (!avail) return false;
            }
            avail &= ~low_mask(prev + 1);
            int pos;
            if (!forced_one_.empty() && c == forced_one_[last]) {
                pos = forced_cell_[last];
                if (!((avail >> pos) & 1u)) return false;
            } else {
                if (!forced_one_.empty() && c < forced_one_[last]) avail &= low_mask(forced_cell_[last]);
                if (!avail) return false;
                pos = std::countr_zero(avail);
            }
            choice_[last][c] = pos;
            prev = pos;
        }
        return true;
    }

    const DPattern& host_;
    const DPattern& p_;
    int d_;
    std::vector<std::uint64_t> lines_;
    std::vector<std::vector<Coord>> layer_ones_;
    DPlacement choice_;
    Coord forced_one_, forced_cell_;
};

}  // namespace

std::optional<DPlacement> contains_d(const DPattern& host, const DPattern& p) {
    DMatcher m(host, p);
    return m.first();
}

std::optional<DPlacement> contains_through_d(const DPattern& host, const DPattern& p, const Coord& cell) {
    for (const auto& one : p.ones()) {
        DMatcher m(host, p);
        m.force(one, cell);
        if (auto hit = m.first()) return hit;
    }
    return std::nullopt;
}

DSaturation is_semisaturating_d(const DPattern& m, const DPattern& p) {
    DSaturation out;
    bool ok = true;
    m.for_each_cell([&](const Coord& x) {
        if (!ok || m.at(x)) return;
        if (!contains_through_d(m, p, x)) {
            ok = false;
            out.failing_zero = x;
        }
    });
    out.ok = ok;
    return out;
}

DSaturation is_saturating_d(const DPattern& m, const DPattern& p) {
    if (auto hit = contains_d(m, p)) {
        DSaturation out;
        out.contained = hit;
        return out;
    }
    return is_semisaturating_d(m, p);
}

bool is_expandable_layer(const DPattern& w, const DPattern& p, int axis, int index) {
    bool ok = true;
    w.for_each_cell([&](const Coord& x) {
        if (!ok || x[axis] != index) return;
        if (w.at(x) || !contains_through_d(w, p, x)) ok = false;
    });
    return ok;
}

DPattern pattern_A() { return parse_dpattern(corpus_text("layered_a.dpat")); }

DPattern witness_W_A(int n) {
    if (n < 8) throw PreconditionError("the layered witness needs n >= 8");
    auto w8 = parse_dpattern(corpus_text("layered_w8.dpat"));
    return insert_empty_layers(w8, 2, 4, n - 8);
}

DPattern complete_to_saturated_d(const DPattern& m, const DPattern& p) {
    if (contains_d(m, p)) throw PreconditionError("input already contains the pattern");
    DPattern cur = m;
    m.for_each_cell([&](const Coord& x) {
        if (!cur.at(x) && !contains_through_d(cur, p, x)) cur.set(x);
    });
    return cur;
}

DPattern corner_pattern(const std::vector<int>& k) {
    DPattern out(k);
    Coord x(k.size());
    for (std::size_t a = 0; a < k.size(); ++a) x[a] = k[a] - 1;
    out.set(x);
    return out;
}

DPattern corner_saturated(const std::vector<int>& n, const std::vector<int>& k) {
    if (n.size() != k.size()) throw PreconditionError("dimension mismatch");
    for (std::size_t a = 0; a < n.size(); ++a)
        if (k[a] < 1 || n[a] < k[a] - 1) throw PreconditionError("need 1 <= k_i and n_i >= k_i - 1");
    DPattern out(n);
    out.for_each_cell([&](const Coord& x) {
        for (std::size_t a = 0; a < n.size(); ++a)
            if (x[a] + 1 <= k[a] - 1) {
                out.set(x);
                return;
            }
    });
    return out;
}

std::uint64_t max_sat_bound(const std::vector<int>& n, const std::vector<int>& k) {
    std::uint64_t all = 1, inner = 1;
    for (std::size_t a = 0; a < n.size(); ++a) {
        all *= static_cast<std::uint64_t>(n[a]);
        inner *= static_cast<std::uint64_t>(n[a] - k[a] + 1);
    }
    return all - inner;
}

DPattern insert_empty_layers(const DPattern& m, int axis, int before, int count) {
    if (axis < 0 || axis >= m.d() || before < 0 || before > m.dim(axis) || count < 0)
        throw PreconditionError("bad layer insertion");
    auto dims = m.dims();
    dims[axis] += count;
    DPattern out(dims);
    for (auto x : m.ones()) {
        if (x[axis] >= before) x[axis] += count;
        out.set(x);
    }
    return out;
}

DPattern prepend_allones_layer(const DPattern& m, int axis) {
    DPattern out = insert_empty_layers(m, axis, 0, 1);
    out.for_each_cell([&](const Coord& x) {
        if (x[axis] == 0) out.set(x);
    });
    return out;
}

namespace {

void check_construction_args(const DPattern& p, int fixed, const std::vector<int>& fixed_sizes, int n) {
    if (fixed < 0 || fixed >= p.d()) throw PreconditionError("need 0 <= fixed < d");
    if (static_cast<int>(fixed_sizes.size()) != fixed) throw PreconditionError("one size per fixed axis");
    for (int a = 0; a < p.d(); ++a)
        if (n <= p.dim(a)) throw PreconditionError("n must exceed every side of the pattern");
    for (int a = 0; a < fixed; ++a)
        if (fixed_sizes[a] < std::max(p.dim(a), 2 * (p.dim(a) - 1)))
            throw PreconditionError("fixed axis " + std::to_string(a + 1) + " needs size >= max(p_i, 2(p_i - 1))");
}

bool in_middle(int x, int side, int pi) { return x + 1 >= pi && x + 1 <= side - pi + 1; }

}  // namespace

DPattern build_ssat_construction(const DPattern& p, int fixed, const std::vector<int>& fixed_sizes, int n, int k) {
    check_construction_args(p, fixed, fixed_sizes, n);
    std::vector<int> dims(static_cast<std::size_t>(p.d()), n);
    for (int a = 0; a < fixed; ++a) dims[a] = fixed_sizes[a];
    DPattern out(dims);
    out.for_each_cell([&](const Coord& x) {
        int middle = 0;
        for (int a = fixed; a < p.d(); ++a) middle += in_middle(x[a], n, p.dim(a));
        if (middle <= k) out.set(x);
    });
    return out;
}

std::uint64_t ssat_construction_bound(const DPattern& p, int fixed, const std::vector<int>& fixed_sizes, int n, int k) {
    check_construction_args(p, fixed, fixed_sizes, n);
    const int free = p.d() - fixed;
    std::uint64_t base = 1;
    for (int s : fixed_sizes) base *= static_cast<std::uint64_t>(s);
    std::uint64_t total = 0;
    for_each_combination(free, std::min(k, free), [&](const std::vector<int>& subset) {
        std::uint64_t term = base;
        for (int a = 0; a < free; ++a) {
            bool in = std::find(subset.begin(), subset.end(), a) != subset.end();
            term *= in ? static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(2 * (p.dim(fixed + a) - 1));
        }
        total += term;
        return true;
    });
    return total;
}

namespace {

// Faces free on `free_axes` (a subset of the non-fixed axes), every other
// coordinate pinned to 1 or p_i. Each needs a one alone in every cross-section
// that pins k+1 of the face's free coordinates to its own values.
bool face_condition(const DPattern& p, int fixed, int k) {
    const int d = p.d();
    const auto ones = p.ones();
    std::vector<int> free_axes;
    for (int a = fixed; a < d; ++a) free_axes.push_back(a);
    const int nf = static_cast<int>(free_axes.size());
    for (int mask = 0; mask < (1 << nf); ++mask) {
        std::vector<int> F;
        for (int i = 0; i < nf; ++i)
            if (mask >> i & 1) F.push_back(free_axes[i]);
        if (static_cast<int>(F.size()) < k + 1) continue;
        std::vector<int> pinned;
        for (int a = 0; a < d; ++a)
            if (std::find(F.begin(), F.end(), a) == F.end()) pinned.push_back(a);
        for (int side = 0; side < (1 << pinned.size()); ++side) {
            auto on_face = [&](const Coord& x) {
                for (std::size_t i = 0; i < pinned.size(); ++i) {
                    int want = (side >> i & 1) ? p.dim(pinned[i]) - 1 : 0;
                    if (x[pinned[i]] != want) return false;
                }
                return true;
            };
            bool found = false;
            for (const auto& o : ones) {
                if (!on_face(o)) continue;
                bool alone = true;
                for_each_combination(static_cast<int>(F.size()), k + 1, [&](const std::vector<int>& T) {
                    for (const auto& q : ones) {
                        if (q == o) continue;
                        bool same = true;
                        for (int t : T)
                            if (q[F[t]] != o[F[t]]) same = false;
                        if (same) {
                            alone = false;
                            return false;
                        }
                    }
                    return true;
                });
                if (alone) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

}  // namespace

int compute_ssat_exponent(const DPattern& p, int fixed) {
    if (fixed < 0 || fixed >= p.d()) throw PreconditionError("need 0 <= fixed < d");
    if (p.weight() == 0) throw PreconditionError("pattern has no one-entries");
    for (int k = 0; k < p.d() - fixed; ++k)
        if (face_condition(p, fixed, k)) return k;
    return p.d() - fixed;
}

}  // namespace satmat
