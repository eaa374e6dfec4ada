#include "satmat/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "satmat/classifier.hpp"
#include "satmat/constructions.hpp"
#include "satmat/exact_solver.hpp"
#include "satmat/multidim.hpp"
#include "satmat/saturation.hpp"
#include "satmat/witness_graph.hpp"

namespace satmat {

CorpusStore CorpusStore::embedded() {
    CorpusStore s;
    for (const auto& f : embedded_corpus()) s.files_.emplace_back(std::string(f.name), std::string(f.content));
    std::sort(s.files_.begin(), s.files_.end());
    return s;
}

CorpusStore CorpusStore::from_directory(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw PreconditionError("corpus directory not found: " + dir);
    CorpusStore s;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        s.files_.emplace_back(entry.path().filename().string(), buf.str());
    }
    std::sort(s.files_.begin(), s.files_.end());
    return s;
}

std::vector<std::string> CorpusStore::files() const {
    std::vector<std::string> out;
    for (const auto& [name, text] : files_) out.push_back(name);
    return out;
}

const std::string& CorpusStore::text(const std::string& file) const {
    for (const auto& [name, content] : files_)
        if (name == file) return content;
    throw PreconditionError("no corpus file named " + file);
}

Pattern CorpusStore::pattern(const std::string& stem) const {
    try {
        return parse_pattern(text(stem + ".pat"));
    } catch (const ParseError& e) {
        throw PreconditionError(stem + ".pat: " + e.what());
    }
}

std::uint64_t CorpusStore::checksum() const {
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        h ^= 0;
        h *= 1099511628211ull;
    };
    for (const auto& [name, content] : files_) {
        feed(name);
        feed(content);
    }
    return h;
}

Pattern corpus_pattern(const std::string& stem) {
    static const CorpusStore store = CorpusStore::embedded();
    return store.pattern(stem);
}

std::string corpus_text(const std::string& file) {
    static const CorpusStore store = CorpusStore::embedded();
    return store.text(file);
}

std::vector<CorpusEntry> corpus_entries(const CorpusStore& store) {
    auto doc = nlohmann::json::parse(store.text("manifest.json"));
    std::vector<CorpusEntry> out;
    for (const auto& j : doc.at("entries")) {
        CorpusEntry e;
        e.name = j.at("name").get<std::string>();
        e.claim = j.at("claim").get<std::string>();
        e.origin = j.value("origin", "");
        e.pattern = j.value("pattern", "");
        e.matrix = j.value("matrix", "");
        e.upper = j.value("upper", "");
        e.kind = j.value("kind", "");
        e.shape = j.value("shape", "");
        e.status = j.value("status", "");
        e.symmetry = j.value("symmetry", "");
        e.transpose = j.value("transpose", false);
        e.slow = j.value("slow", false);
        e.rows = j.value("rows", 0);
        e.cols = j.value("cols", 0);
        e.value = j.value("value", 0);
        if (j.contains("sizes")) e.sizes = j.at("sizes").get<std::vector<int>>();
        out.push_back(std::move(e));
    }
    return out;
}

bool CorpusReport::all_pass() const {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const CorpusOutcome& o) { return o.pass || o.skipped; });
}

std::string CorpusReport::text() const {
    std::ostringstream os;
    int pass = 0, fail = 0, skip = 0;
    for (const auto& o : outcomes) {
        const char* tag = o.skipped ? "SKIP" : (o.pass ? "PASS" : "FAIL");
        os << tag << "  " << o.name << " [" << o.claim << "]";
        if (!o.detail.empty()) os << "  " << o.detail;
        os << "\n";
        (o.skipped ? skip : (o.pass ? pass : fail))++;
    }
    os << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
    return os.str();
}

namespace {

bool is_k33(const WitnessGraph& g) {
    if (g.vertices != 6) return false;
    auto c = graph_checks(g, 4);
    if (!c.is_bipartite || !c.out_degrees_ok) return false;
    // out-degree 3 into a bipartite graph on 6 vertices: every vertex must see
    // the whole other side, which then has size 3
    std::vector<int> side(6, -1);
    side[0] = 0;
    for (int b : g.out[0]) side[b] = 1;
    for (int a = 0; a < 6; ++a)
        if (side[a] < 0) side[a] = 0;
    for (int a = 0; a < 6; ++a)
        for (int b : g.out[a])
            if (side[a] == side[b]) return false;
    return std::count(side.begin(), side.end(), 0) == 3;
}

CorpusOutcome verify_entry(const CorpusStore& store, const CorpusEntry& e, bool include_slow) {
    CorpusOutcome o{e.name, e.claim, false, false, ""};
    if (e.claim == "witness") {
        auto p = store.pattern(e.pattern);
        auto w = store.pattern(e.matrix);
        if (e.transpose) w = transpose(w);
        if (!e.symmetry.empty()) w = apply_symmetry(symmetry_by_name(e.symmetry), w);
        auto cert = check_witness(w, p, parse_kind(e.kind));
        o.pass = cert.valid;
        o.detail = cert.valid ? std::string(e.kind) + " witness " + std::to_string(w.rows()) + "x" +
                                    std::to_string(w.cols())
                              : cert.failure;
    } else if (e.claim == "intermediary-witness") {
        auto lo = store.pattern(e.pattern), hi = store.pattern(e.upper), w = store.pattern(e.matrix);
        auto chk = check_intermediaries(w, lo, hi, parse_kind(e.kind));
        o.pass = chk.ok;
        if (!chk.ok) {
            o.detail = chk.failure;
            return o;
        }
        const int checked = chk.checked;
        o.detail = std::to_string(checked) + " intermediaries witnessed";
    } else if (e.claim == "graph") {
        auto p = store.pattern(e.pattern), w = store.pattern(e.matrix);
        auto kind = parse_kind(e.kind);
        auto g = build_witness_graph(w, p, kind);
        int k = kind == WitnessKind::vertical ? p.cols() : p.rows();
        if (e.shape == "k33") {
            o.pass = is_k33(g);
        } else if (e.shape == "cycle") {
            // the graph depends on which copy each flip picks; some choice must be a cycle
            for (const auto& h : build_witness_graphs(w, p, kind, CopyPolicy::enumerate_all)) {
                auto c = graph_checks(h, k);
                if (c.is_cycle && c.out_degrees_ok) o.pass = true;
            }
        } else
            o.detail = "unknown shape " + e.shape;
        if (o.detail.empty()) o.detail = e.shape + (o.pass ? "" : " not matched");
    } else if (e.claim == "ssat-linear") {
        o.pass = ssat_class(store.pattern(e.pattern)) == Growth::linear;
    } else if (e.claim == "verdict") {
        auto v = sat_verdict(store.pattern(e.pattern));
        o.pass = e.status == status_name(v.status);
        o.detail = std::string(status_name(v.status)) + " (" + v.reason + ")";
    } else if (e.claim == "sat-value") {
        if (e.slow && !include_slow) {
            o.skipped = true;
            o.detail = "slow; run with --slow";
            return o;
        }
        auto r = sat_exact(e.rows, e.cols, store.pattern(e.pattern));
        o.pass = r.complete && r.value == e.value;
        o.detail = "sat(" + std::to_string(e.rows) + "," + std::to_string(e.cols) + ") = " + std::to_string(r.value) +
                   (r.complete ? "" : " (incomplete)");
    } else if (e.claim == "layered-witness") {
        auto a = parse_dpattern(store.text(e.pattern + ".dpat"));
        auto w8 = parse_dpattern(store.text(e.matrix + ".dpat"));
        o.pass = true;
        for (int n : e.sizes) {
            auto w = insert_empty_layers(w8, 2, 4, n - 8);
            if (contains_d(w, a)) {
                o.pass = false;
                o.detail = "n=" + std::to_string(n) + " contains the pattern";
                return o;
            }
            for (int layer = 4; layer < n - 4; ++layer)
                if (!is_expandable_layer(w, a, 2, layer)) {
                    o.pass = false;
                    o.detail = "n=" + std::to_string(n) + " layer " + std::to_string(layer + 1) + " not expandable";
                    return o;
                }
        }
        o.detail = "avoids and expands for " + std::to_string(e.sizes.size()) + " sizes";
    } else {
        o.detail = "unknown claim";
    }
    return o;
}

}  // namespace

CorpusReport verify_corpus(const CorpusStore& store, bool include_slow) {
    CorpusReport rep;
    for (const auto& e : corpus_entries(store)) {
        try {
            rep.outcomes.push_back(verify_entry(store, e, include_slow));
        } catch (const std::exception& ex) {
            rep.outcomes.push_back({e.name, e.claim, false, false, std::string("error: ") + ex.what()});
        }
    }
    return rep;
}

}  // namespace satmat
