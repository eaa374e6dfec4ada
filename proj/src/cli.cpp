#include "satmat/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "satmat/classifier.hpp"
#include "satmat/constructions.hpp"
#include "satmat/corpus.hpp"
#include "satmat/exact_solver.hpp"
#include "satmat/multidim.hpp"
#include "satmat/saturation.hpp"
#include "satmat/witness_graph.hpp"

namespace satmat {

namespace {

// Raised for unreadable inputs; maps to exit_usage.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& spec, const std::string& corpus_ext) {
    const std::string prefix = "corpus:";
    if (spec.rfind(prefix, 0) == 0) {
        std::string name = spec.substr(prefix.size());
        if (name.find('.') == std::string::npos) name += corpus_ext;
        try {
            return corpus_text(name);
        } catch (const PreconditionError&) {
            throw InputError("no corpus file " + name);
        }
    }
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw InputError("cannot read " + spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Pattern load(const std::string& spec) {
    try {
        return parse_pattern(read_source(spec, ".pat"));
    } catch (const ParseError& e) {
        throw InputError(spec + ": " + e.what());
    }
}

DPattern load_d(const std::string& spec) {
    try {
        return parse_dpattern(read_source(spec, ".dpat"));
    } catch (const ParseError& e) {
        throw InputError(spec + ": " + e.what());
    }
}

std::string placement_1based(const DPlacement& pl) {
    std::ostringstream os;
    for (std::size_t a = 0; a < pl.size(); ++a) {
        os << (a ? " " : "") << "axis" << a + 1 << " [";
        for (std::size_t i = 0; i < pl[a].size(); ++i) os << (i ? "," : "") << pl[a][i] + 1;
        os << "]";
    }
    return os.str();
}

std::string coord_1based(const Coord& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i] + 1;
    os << ")";
    return os.str();
}

WitnessKind kind_arg(const std::string& s) {
    try {
        return parse_kind(s);
    } catch (const PreconditionError& e) {
        throw InputError(e.what());
    }
}

struct Ctx {
    std::ostream& out;
    std::ostream& err;
    int code = exit_yes;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"0-1 matrix pattern saturation toolkit", "satmat"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");
    Ctx ctx{out, err};
    std::function<void()> action;

    // contain
    {
        auto* c = app.add_subcommand("contain", "Does the host contain the pattern?");
        auto host = std::make_shared<std::string>(), pat = std::make_shared<std::string>();
        c->add_option("--host", *host, "host matrix")->required();
        c->add_option("--pattern", *pat, "pattern")->required();
        c->callback([&, host, pat] {
            action = [&, host, pat] {
                auto pl = contains(load(*host), load(*pat));
                if (pl) {
                    out << "contains " << format_placement(*pl) << "\n";
                } else {
                    out << "avoids\n";
                    ctx.code = exit_no;
                }
            };
        });
    }

    // check-witness
    {
        auto* c = app.add_subcommand("check-witness", "Check a horizontal, vertical or full witness");
        auto w = std::make_shared<std::string>(), pat = std::make_shared<std::string>();
        auto kind = std::make_shared<std::string>("full");
        auto explain = std::make_shared<bool>(false), minimize = std::make_shared<bool>(false);
        c->add_option("--witness", *w, "candidate witness")->required();
        c->add_option("--pattern", *pat, "pattern")->required();
        c->add_option("--kind", *kind, "h | v | full")->capture_default_str();
        c->add_flag("--explain", *explain, "print the certificate");
        c->add_flag("--minimize", *minimize, "print a minimal witness contained in the input");
        c->callback([&, w, pat, kind, explain, minimize] {
            action = [&, w, pat, kind, explain, minimize] {
                auto k = kind_arg(*kind);
                Pattern wm = load(*w), p = load(*pat);
                auto cert = check_witness(wm, p, k);
                if (*explain) {
                    out << cert.report();
                } else if (cert.valid) {
                    out << "valid " << kind_name(k) << " witness\n";
                } else {
                    out << "invalid: " << cert.failure << "\n";
                }
                if (!cert.valid) {
                    ctx.code = exit_no;
                    return;
                }
                if (*minimize) out << serialize_pattern(minimize_witness(wm, p, k));
            };
        });
    }

    // check-saturating
    {
        auto* c = app.add_subcommand("check-saturating", "Is the matrix saturating (or semisaturating)?");
        auto m = std::make_shared<std::string>(), pat = std::make_shared<std::string>();
        auto semi = std::make_shared<bool>(false), complete = std::make_shared<bool>(false);
        c->add_option("--matrix", *m, "matrix")->required();
        c->add_option("--pattern", *pat, "pattern")->required();
        c->add_flag("--semi", *semi, "test semisaturation instead");
        c->add_flag("--complete", *complete, "print the greedy saturated completion instead");
        c->callback([&, m, pat, semi, complete] {
            action = [&, m, pat, semi, complete] {
                Pattern mm = load(*m), p = load(*pat);
                if (*complete) {
                    if (auto pl = contains(mm, p)) {
                        out << "matrix already contains the pattern at " << format_placement(*pl) << "\n";
                        ctx.code = exit_no;
                        return;
                    }
                    out << serialize_pattern(complete_to_saturated(mm, p));
                    return;
                }
                if (*semi) {
                    auto r = is_semisaturating(mm, p);
                    if (r.semisaturating) {
                        out << "semisaturating\n";
                    } else {
                        out << "not semisaturating: flipping " << format_cell(*r.failing_zero)
                            << " creates no copy\n";
                        ctx.code = exit_no;
                    }
                    return;
                }
                auto r = is_saturating(mm, p);
                if (r.saturating) {
                    out << "saturating\n";
                } else if (r.contained) {
                    out << "not saturating: contains the pattern at " << format_placement(*r.contained) << "\n";
                    ctx.code = exit_no;
                } else {
                    out << "not saturating: flipping " << format_cell(*r.failing_zero) << " creates no copy\n";
                    ctx.code = exit_no;
                }
            };
        });
    }

    // classify
    {
        auto* c = app.add_subcommand("classify", "Known bounded/linear verdict for sat(n, P)");
        auto pat = std::make_shared<std::string>();
        auto explain = std::make_shared<bool>(false);
        c->add_option("--pattern", *pat, "pattern")->required();
        c->add_flag("--explain", *explain, "print the conditions behind the verdict");
        c->callback([&, pat, explain] {
            action = [&, pat, explain] {
                Pattern p = load(*pat);
                auto v = sat_verdict(p);
                out << status_name(v.status) << " (" << v.reason << ")\n";
                if (!*explain) return;
                out << "rule: " << v.rule << "\n";
                out << "ssat: " << growth_name(ssat_class(p)) << "\n";
                for (const auto& line : explain_ssat(p)) out << "  " << line << "\n";
                out << "ssat with rows fixed: " << growth_name(ssat_fixed_class(p)) << "\n";
                if (v.decomposition) {
                    const auto& d = *v.decomposition;
                    out << (d.anti_diagonal ? "anti-diagonal" : "diagonal") << " blocks split after row "
                        << d.row_split << ", column " << d.col_split << "\n";
                }
                if (!v.corpus_entry.empty()) out << "corpus entry: " << v.corpus_entry << "\n";
                for (const auto& n : v.notes) out << "note: " << n << "\n";
                if (v.certificate) out << v.certificate->report();
            };
        });
    }

    // sat-exact
    {
        auto* c = app.add_subcommand("sat-exact", "Exact sat(m, n, P)");
        auto m = std::make_shared<int>(0), n = std::make_shared<int>(0), threads = std::make_shared<int>(1);
        auto pat = std::make_shared<std::string>();
        auto budget = std::make_shared<std::uint64_t>(0);
        auto seconds = std::make_shared<double>(0);
        auto explain = std::make_shared<bool>(false), oracle = std::make_shared<bool>(false);
        c->add_option("--rows", *m, "m")->required()->check(CLI::Range(1, max_side));
        c->add_option("--cols", *n, "n")->required()->check(CLI::Range(1, max_side));
        c->add_option("--pattern", *pat, "pattern")->required();
        c->add_option("--budget", *budget, "node limit (SATMAT_BUDGET overrides)");
        c->add_option("--time-limit", *seconds, "seconds");
        c->add_option("--threads", *threads, "search workers")->check(CLI::Range(1, 256));
        c->add_flag("--explain", *explain, "print an optimal matrix and search statistics");
        c->add_flag("--oracle", *oracle, "use exhaustive enumeration (m*n <= 20)");
        c->callback([&, m, n, pat, budget, seconds, threads, explain, oracle] {
            action = [&, m, n, pat, budget, seconds, threads, explain, oracle] {
                Pattern p = load(*pat);
                if (*oracle) {
                    out << sat_exact_oracle(*m, *n, p) << "\n";
                    return;
                }
                SolveOptions o;
                o.threads = *threads;
                if (*budget) o.node_limit = *budget;
                if (*seconds > 0)
                    o.time_limit = std::chrono::milliseconds(static_cast<long long>(*seconds * 1000));
                auto r = sat_exact(*m, *n, p, o);
                if (r.complete) {
                    out << r.value << "\n";
                } else {
                    out << "<= " << r.value << " (search incomplete)\n";
                    ctx.code = exit_budget;
                }
                if (*explain) {
                    out << serialize_pattern(r.optimum);
                    out << "nodes " << r.nodes << ", " << r.seconds << " s\n";
                }
            };
        });
    }

    // emit-ilp
    {
        auto* c = app.add_subcommand("emit-ilp", "Write the binary program for sat(m, n, P) in LP format");
        auto m = std::make_shared<int>(0), n = std::make_shared<int>(0);
        auto pat = std::make_shared<std::string>(), file = std::make_shared<std::string>();
        c->add_option("--rows", *m, "m")->required()->check(CLI::Range(1, max_side));
        c->add_option("--cols", *n, "n")->required()->check(CLI::Range(1, max_side));
        c->add_option("--pattern", *pat, "pattern")->required();
        c->add_option("-o,--output", *file, "output file (default stdout)");
        c->callback([&, m, n, pat, file] {
            action = [&, m, n, pat, file] {
                auto text = emit_ilp(*m, *n, load(*pat));
                if (file->empty()) {
                    out << text;
                    return;
                }
                std::ofstream f(*file, std::ios::binary);
                if (!f) throw InputError("cannot write " + *file);
                f << text;
            };
        });
    }

    // decide-fixed-rows
    {
        auto* c = app.add_subcommand("decide-fixed-rows", "Search all m0-row horizontal witnesses");
        auto m0 = std::make_shared<int>(0);
        auto pat = std::make_shared<std::string>();
        auto budget = std::make_shared<std::uint64_t>(0);
        c->add_option("--rows", *m0, "m0")->required()->check(CLI::Range(1, max_side));
        c->add_option("--pattern", *pat, "pattern")->required();
        c->add_option("--budget", *budget, "node limit (SATMAT_BUDGET overrides)");
        c->callback([&, m0, pat, budget] {
            action = [&, m0, pat, budget] {
                std::optional<std::uint64_t> lim;
                if (*budget) lim = *budget;
                auto r = decide_fixed_rows(*m0, load(*pat), lim);
                out << outcome_name(r.outcome) << " (widths up to " << r.max_width << ", " << r.nodes
                    << " nodes)\n";
                if (r.witness) {
                    out << "expandable column " << r.expandable_col + 1 << "\n" << serialize_pattern(*r.witness);
                }
                if (r.outcome == FixedRowsOutcome::exhausted) ctx.code = exit_no;
                if (r.outcome == FixedRowsOutcome::inconclusive) ctx.code = exit_budget;
            };
        });
    }

    // construct
    {
        auto* c = app.add_subcommand("construct", "Explicit witness constructions");
        c->require_subcommand(1);
        auto pat = std::make_shared<std::string>(), w = std::make_shared<std::string>();
        auto w2 = std::make_shared<std::string>(), target = std::make_shared<std::string>();
        auto ints = std::make_shared<std::array<int, 4>>();

        auto simple = [&](const char* name, const char* help, std::function<Pattern(const Pattern&)> f) {
            auto* s = c->add_subcommand(name, help);
            s->add_option("--pattern", *pat, "pattern")->required();
            s->callback([&, pat, f] { action = [&, pat, f] { out << serialize_pattern(f(load(*pat))); }; });
        };
        simple("wv-q2like", "vertical witness for a q2-like pattern", build_wv_q2like);
        simple("wh-q2like", "horizontal witness for a q2-like pattern", build_wh_q2like);

        auto* wk = c->add_subcommand("wk", "W2 with rows repeated k-1 times");
        wk->add_option("--k", (*ints)[0], "k >= 2")->required()->check(CLI::Range(2, 21));
        wk->callback([&, ints] { action = [&, ints] { out << serialize_pattern(build_wk((*ints)[0])); }; });

        auto* ap = c->add_subcommand("append-row", "grow a horizontal witness by rows");
        (*ints)[1] = 1;
        ap->add_option("--witness", *w, "horizontal witness")->required();
        ap->add_option("--pattern", *pat, "pattern")->required();
        ap->add_option("--times", (*ints)[1], "rows to append")->check(CLI::Range(1, 60));
        ap->callback([&, w, pat, ints] {
            action = [&, w, pat, ints] {
                Pattern cur = load(*w), p = load(*pat);
                for (int i = 0; i < (*ints)[1]; ++i) cur = append_witness_row(cur, p);
                out << serialize_pattern(cur);
            };
        });

        auto* gl = c->add_subcommand("glue", "combine a horizontal and a vertical witness");
        gl->add_option("--wh", *w, "horizontal witness")->required();
        gl->add_option("--wv", *w2, "vertical witness")->required();
        gl->add_option("--pattern", *pat, "pattern")->required();
        gl->add_option("--row-split", (*ints)[2], "rows of the horizontal witness above the middle band")
            ->required();
        gl->add_option("--col-split", (*ints)[3], "columns of the vertical witness left of the middle band")
            ->required();
        gl->callback([&, w, w2, pat, ints] {
            action = [&, w, w2, pat, ints] {
                auto g = glue_witnesses(load(*w), load(*w2), load(*pat), (*ints)[2], (*ints)[3]);
                for (const auto& msg : g.warnings) err << "warning: " << msg << "\n";
                out << serialize_pattern(g.matrix);
                if (!g.check.valid) {
                    err << "glued matrix is not a witness: " << g.check.failure << "\n";
                    ctx.code = exit_no;
                }
            };
        });

        auto dil = [&](const char* name, const char* help, bool cols) {
            auto* s = c->add_subcommand(name, help);
            s->add_option("--witness", *w, "horizontal witness for the pattern")->required();
            s->add_option("--pattern", *pat, "pattern without empty lines")->required();
            s->add_option("--target", *target, "pattern with empty lines inserted")->required();
            s->callback([&, w, pat, target, cols] {
                action = [&, w, pat, target, cols] {
                    Pattern a = load(*w), p = load(*pat), t = load(*target);
                    out << serialize_pattern(cols ? dilate_columns(a, p, t) : dilate_rows(a, p, t));
                };
            });
        };
        dil("dilate-cols", "witness for the pattern with empty columns inserted", true);
        dil("dilate-rows", "witness for the pattern with empty interior rows inserted", false);

        auto* fs = c->add_subcommand("fixed-ssat", "[ones | zeros | ones] semisaturating matrix");
        fs->add_option("--rows", (*ints)[0], "m0")->required()->check(CLI::Range(1, max_side));
        fs->add_option("--cols", (*ints)[1], "n")->required()->check(CLI::Range(1, max_side));
        fs->add_option("--pattern", *pat, "pattern")->required();
        fs->callback([&, pat, ints] {
            action = [&, pat, ints] {
                out << serialize_pattern(build_fixed_ssat((*ints)[0], (*ints)[1], load(*pat)));
            };
        });

        auto* po = c->add_subcommand("prepend-ones", "all-ones column before a saturating matrix");
        po->add_option("--matrix", *w, "matrix saturating for the pattern")->required();
        po->add_option("--pattern", *pat, "pattern")->required();
        po->callback([&, w, pat] {
            action = [&, w, pat] { out << serialize_pattern(prepend_ones_column(load(*w), load(*pat))); };
        });
    }

    // graph
    {
        auto* c = app.add_subcommand("graph", "Witness graph of a horizontal or vertical witness");
        auto pat = std::make_shared<std::string>(), w = std::make_shared<std::string>();
        auto kind = std::make_shared<std::string>("h");
        auto all = std::make_shared<bool>(false);
        c->add_option("--pattern", *pat, "pattern")->required();
        c->add_option("--witness", *w, "witness")->required();
        c->add_option("--kind", *kind, "h | v")->capture_default_str();
        c->add_flag("--all-choices", *all, "one graph per combination of copy choices");
        c->callback([&, pat, w, kind, all] {
            action = [&, pat, w, kind, all] {
                auto k = kind_arg(*kind);
                if (k == WitnessKind::full) throw InputError("graph needs --kind h or v");
                Pattern p = load(*pat), wm = load(*w);
                const int deg = k == WitnessKind::vertical ? p.cols() : p.rows();
                if (!*all) {
                    auto g = build_witness_graph(wm, p, k);
                    out << graph_report(g, graph_checks(g, deg));
                    return;
                }
                auto gs = build_witness_graphs(wm, p, k, CopyPolicy::enumerate_all);
                for (std::size_t i = 0; i < gs.size(); ++i) {
                    out << "choice " << i + 1 << "\n" << graph_report(gs[i], graph_checks(gs[i], deg));
                }
            };
        });
    }

    // ddim
    {
        auto* c = app.add_subcommand("ddim", "d-dimensional patterns");
        c->require_subcommand(1);
        auto host = std::make_shared<std::string>(), pat = std::make_shared<std::string>();
        auto semi = std::make_shared<bool>(false);
        auto nums = std::make_shared<std::vector<int>>(), nums2 = std::make_shared<std::vector<int>>();
        auto ints = std::make_shared<std::array<int, 3>>();

        auto* ct = c->add_subcommand("contain", "does the host contain the pattern?");
        ct->add_option("--host", *host, "host")->required();
        ct->add_option("--pattern", *pat, "pattern")->required();
        ct->callback([&, host, pat] {
            action = [&, host, pat] {
                auto pl = contains_d(load_d(*host), load_d(*pat));
                if (pl) {
                    out << "contains " << placement_1based(*pl) << "\n";
                } else {
                    out << "avoids\n";
                    ctx.code = exit_no;
                }
            };
        });

        auto* cs = c->add_subcommand("check-saturating", "saturation or semisaturation");
        cs->add_option("--matrix", *host, "array")->required();
        cs->add_option("--pattern", *pat, "pattern")->required();
        cs->add_flag("--semi", *semi, "semisaturation");
        cs->callback([&, host, pat, semi] {
            action = [&, host, pat, semi] {
                DPattern m = load_d(*host), p = load_d(*pat);
                auto r = *semi ? is_semisaturating_d(m, p) : is_saturating_d(m, p);
                const char* what = *semi ? "semisaturating" : "saturating";
                if (r.ok) {
                    out << what << "\n";
                } else if (r.contained) {
                    out << "not " << what << ": contains the pattern at " << placement_1based(*r.contained) << "\n";
                    ctx.code = exit_no;
                } else {
                    out << "not " << what << ": flipping " << coord_1based(*r.failing_zero)
                        << " creates no copy\n";
                    ctx.code = exit_no;
                }
            };
        });

        auto* ex = c->add_subcommand("expandable", "is a layer empty with every flip completing a copy?");
        ex->add_option("--matrix", *host, "array")->required();
        ex->add_option("--pattern", *pat, "pattern")->required();
        ex->add_option("--axis", (*ints)[0], "1-based axis")->required();
        ex->add_option("--index", (*ints)[1], "1-based layer index")->required();
        ex->callback([&, host, pat, ints] {
            action = [&, host, pat, ints] {
                DPattern m = load_d(*host), p = load_d(*pat);
                const int axis = (*ints)[0] - 1, index = (*ints)[1] - 1;
                if (axis < 0 || axis >= m.d() || index < 0 || index >= m.dim(axis))
                    throw InputError("axis or index out of range");
                bool ok = is_expandable_layer(m, p, axis, index);
                out << (ok ? "expandable\n" : "not expandable\n");
                if (!ok) ctx.code = exit_no;
            };
        });

        auto* pa = c->add_subcommand("pattern-a", "the 4x4x6 pattern with bounded saturation");
        pa->callback([&] { action = [&] { out << serialize_dpattern(pattern_A()); }; });

        auto* wa = c->add_subcommand("witness-a", "6x6xn witness for pattern-a");
        wa->add_option("--n", (*ints)[0], "n >= 8")->required()->check(CLI::Range(8, max_side));
        wa->callback([&, ints] { action = [&, ints] { out << serialize_dpattern(witness_W_A((*ints)[0])); }; });

        auto* co = c->add_subcommand("corner", "saturated array for a single far-corner one");
        co->add_option("--n", *nums, "array sides")->required();
        co->add_option("--k", *nums2, "pattern sides")->required();
        co->callback([&, nums, nums2] {
            action = [&, nums, nums2] {
                auto m = corner_saturated(*nums, *nums2);
                out << serialize_dpattern(m);
                err << "weight " << m.weight() << " (bound " << max_sat_bound(*nums, *nums2) << ")\n";
            };
        });

        auto* se = c->add_subcommand("ssat-exponent", "growth exponent of ssat with some axes fixed");
        se->add_option("--pattern", *pat, "pattern")->required();
        se->add_option("--fixed", (*ints)[0], "number of leading fixed axes")->capture_default_str();
        se->callback([&, pat, ints] {
            action = [&, pat, ints] { out << compute_ssat_exponent(load_d(*pat), (*ints)[0]) << "\n"; };
        });

        auto* sc = c->add_subcommand("ssat-construct", "semisaturating array for the exponent k");
        sc->add_option("--pattern", *pat, "pattern")->required();
        sc->add_option("--fixed-sizes", *nums, "sizes of the leading fixed axes");
        sc->add_option("--n", (*ints)[1], "size of the free axes")->required();
        sc->add_option("--k", (*ints)[2], "exponent (default: computed)")->default_val(-1);
        sc->callback([&, pat, nums, ints] {
            action = [&, pat, nums, ints] {
                DPattern p = load_d(*pat);
                const int fixed = static_cast<int>(nums->size());
                int k = (*ints)[2] >= 0 ? (*ints)[2] : compute_ssat_exponent(p, fixed);
                auto m = build_ssat_construction(p, fixed, *nums, (*ints)[1], k);
                out << serialize_dpattern(m);
                err << "k " << k << ", weight " << m.weight() << "\n";
            };
        });
    }

    // corpus-verify
    {
        auto* c = app.add_subcommand("corpus-verify", "Re-check every corpus claim");
        auto dir = std::make_shared<std::string>();
        auto slow = std::make_shared<bool>(false);
        c->add_option("--dir", *dir, "read the corpus from a directory instead of the embedded copy");
        c->add_flag("--slow", *slow, "include long exact computations");
        c->callback([&, dir, slow] {
            action = [&, dir, slow] {
                auto store = dir->empty() ? CorpusStore::embedded() : CorpusStore::from_directory(*dir);
                auto rep = verify_corpus(store, *slow);
                out << rep.text();
                if (!rep.all_pass()) ctx.code = exit_no;
            };
        });
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? exit_yes : exit_usage;
    }
    if (!action) return exit_usage;
    try {
        action();
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const NoSaturatingMatrix& e) {
        err << "error: " << e.what() << "\n";
        return exit_no;
    } catch (const std::logic_error& e) {
        err << "internal check failed: " << e.what() << "\n";
        return exit_no;
    }
    return ctx.code;
}

}  // namespace satmat
