#ifndef RADOQ_CLI_HPP
#define RADOQ_CLI_HPP

#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "radoq/cache.hpp"
#include "radoq/coloring.hpp"
#include "radoq/io.hpp"
#include "radoq/numtheory.hpp"
#include "radoq/solver.hpp"

namespace radoq {

namespace detail {

inline std::int64_t parse_cli_int(const std::string& s, const char* what) {
    if (s.empty()) throw InvalidArgument(std::string(what) + " must be an integer");
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) throw InvalidArgument(std::string(what) + " must be an integer");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            throw InvalidArgument(std::string(what) + " must be an integer, got '" + s + "'");
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw InvalidArgument(std::string(what) + " out of range: '" + s + "'");
    }
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline bool log_enabled() {
    const char* v = std::getenv("RADOQ_LOG");
    return v && *v && std::string(v) != "0";
}

}  // namespace detail

// "E(q,n)" builds the standard family; a comma list gives the
// coefficients directly.
inline LinearEquation parse_equation(const std::string& text) {
    std::string s = detail::trim(text);
    if (s.empty()) throw InvalidArgument("empty equation");
    if ((s[0] == 'E' || s[0] == 'e') && s.size() > 2 && s[1] == '(' && s.back() == ')') {
        std::vector<std::string> parts = detail::split(s.substr(2, s.size() - 3), ',');
        if (parts.size() != 2) throw InvalidArgument("the family form is E(q,n): '" + text + "'");
        Rational q = Rational::parse(detail::trim(parts[0]));
        std::int64_t n = detail::parse_cli_int(detail::trim(parts[1]), "n in E(q,n)");
        if (n < 2) throw InvalidArgument("E(q,n) needs n >= 2");
        return make_equation_E(q, static_cast<std::size_t>(n));
    }
    std::vector<Rational> coeffs;
    for (const std::string& part : detail::split(s, ','))
        coeffs.push_back(Rational::parse(detail::trim(part)));
    return LinearEquation(std::move(coeffs));
}

// Seed grammar: '='-separated terms, each c(value) with at most one
// trailing color.  "c(1)=c(3)" ties the two values, "c(2)=1" pins one,
// "c(1)=c(3)=0" does both.
inline std::vector<SeedSpec> parse_seed(const std::string& text) {
    std::vector<Rational> values;
    std::optional<int> color;
    for (const std::string& raw : detail::split(text, '=')) {
        std::string part = detail::trim(raw);
        if (color) throw InvalidArgument("the color must be the last seed term: '" + text + "'");
        if (part.size() > 3 && part.compare(0, 2, "c(") == 0 && part.back() == ')') {
            values.push_back(Rational::parse(detail::trim(part.substr(2, part.size() - 3))));
        } else {
            color = static_cast<int>(detail::parse_cli_int(part, "seed color"));
        }
    }
    if (values.empty()) throw InvalidArgument("a seed needs at least one c(value) term: '" + text + "'");
    if (values.size() == 1 && !color)
        throw InvalidArgument("a single-value seed needs a color: '" + text + "'");
    std::vector<SeedSpec> out;
    if (values.size() > 1) out.push_back(SeedEquality{values});
    if (color) out.push_back(SeedPin{values.front(), *color});
    return out;
}

// Compact family strings: cpn:p:n, cpvn:p:v:n, cp:p, c4pi:a:b:c.
// "@path" loads any family, including the file-only ones, as JSON.
inline ColoringSpec parse_coloring(const std::string& text) {
    if (!text.empty() && text[0] == '@') return coloring_from_json(load_json_file(text.substr(1)));
    std::vector<std::string> parts = detail::split(text, ':');
    const std::string& kind = parts[0];
    auto want = [&](std::size_t n) {
        if (parts.size() != n)
            throw InvalidArgument("coloring '" + kind + "' takes " + std::to_string(n - 1) +
                                  " parameters: '" + text + "'");
    };
    if (kind == "cpn") {
        want(3);
        return Cpn(Integer(detail::parse_cli_int(parts[1], "p")),
                   detail::parse_cli_int(parts[2], "n"));
    }
    if (kind == "cpvn") {
        want(4);
        return Cpvn(Integer(detail::parse_cli_int(parts[1], "p")),
                    detail::parse_cli_int(parts[2], "v"), detail::parse_cli_int(parts[3], "n"));
    }
    if (kind == "cp") {
        want(2);
        return CapCp(Integer(detail::parse_cli_int(parts[1], "p")));
    }
    if (kind == "c4pi") {
        want(4);
        return C4pi(Permutation{detail::parse_cli_int(parts[1], "a"),
                                detail::parse_cli_int(parts[2], "b"),
                                detail::parse_cli_int(parts[3], "c")});
    }
    throw InvalidArgument("unknown coloring family '" + kind + "' (see the catalog command)");
}

// Default proving arena for an equation.  Up to three colors a compact
// closure over {2,3,5} and the coefficient support suffices; four and
// more colors force longer ratio chains, so the arena takes more
// primes with tight per-prime exponent windows to stay small.
inline NodeUniverse default_universe(const LinearEquation& eq, int colors) {
    std::set<Integer> support;
    for (const Rational& a : eq.coeffs())
        for (const auto& [p, e] : factor(a).factors) support.insert(p);
    std::set<Integer> primes = support;
    if (colors <= 3) {
        for (int p : {2, 3, 5}) primes.insert(Integer(p));
        std::vector<Integer> plist(primes.begin(), primes.end());
        ExponentBounds bounds(plist.size(), {-3, 3});
        return closure_universe(eq, std::move(plist), std::move(bounds), true,
                                ClosureOptions{3, 100'000, false});
    }
    for (int p : {2, 3, 5, 7, 11, 13, 17}) primes.insert(Integer(p));
    std::vector<Integer> plist(primes.begin(), primes.end());
    ExponentBounds bounds;
    for (const Integer& p : plist) {
        std::pair<std::int64_t, std::int64_t> b{0, 1};
        if (p == 2) b = {-3, 5};
        else if (p == 3) b = {-1, 3};
        if (support.count(p)) {
            b.first = std::min<std::int64_t>(b.first, -1);
            b.second = std::max<std::int64_t>(b.second, 1);
        }
        bounds.push_back(b);
    }
    return closure_universe(eq, std::move(plist), std::move(bounds), false,
                            ClosureOptions{2, 20'000, false});
}

// --universe values: empty picks the default arena, a leading '{' is
// inline JSON, anything else is a file path.
inline NodeUniverse resolve_universe(const std::string& arg, const LinearEquation& eq,
                                     int colors) {
    if (arg.empty()) return default_universe(eq, colors);
    if (arg[0] == '{') return universe_from_json(parse_json(arg), &eq);
    return universe_from_json(load_json_file(arg), &eq);
}

namespace detail {

struct CliOptions {
    std::string equation;
    std::string universe;
    std::string coloring;
    std::string value;
    std::string table_path;
    std::string out_path;
    std::string format = "json";
    std::string family;
    std::vector<std::string> seeds;
    int colors = 0;
    std::uint64_t max_branches = SearchBudget{}.max_branches;
    std::uint64_t max_decisions = SearchBudget{}.max_decisions;
    std::uint64_t max_colorings = 10'000;
    std::uint64_t max_steps = 100'000'000;
    std::uint64_t hit_limit = 0;
    unsigned workers = 0;
    bool sequential_equivalence = false;
    bool strong = false;
    bool pretty = false;
};

inline void emit(const CliOptions& opt, std::ostream& out, const std::string& text) {
    if (opt.out_path.empty())
        out << text;
    else
        write_text_file(opt.out_path, text);
}

inline Json freeness_to_json(const FreenessReport& report) {
    Json hits = Json::array();
    for (const MonochromaticHit& h : report.hits)
        hits.push_back(Json{{"tuple", rationals_to_json(h.tuple.values)}, {"color", h.color}});
    return Json{{"free", report.free()},
                {"hits", std::move(hits)},
                {"checked", report.checked},
                {"truncated", report.truncated},
                {"setSize", report.set.size()}};
}

inline int run_catalog(const CliOptions& opt, std::ostream& out) {
    struct Family {
        const char* name;
        const char* form;
        const char* colors;
        const char* description;
    };
    static const Family families[] = {
        {"cpn", "cpn:p:n", "n", "p-adic valuation modulo n"},
        {"cpvn", "cpvn:p:v:n", "n", "p-adic valuation divided by v (floor), modulo n"},
        {"cp", "cp:p", "p-1", "unit residue of the p-free part modulo p"},
        {"cpi", "@file with kind \"cpi\"", "p-1",
         "unit residue with a per-level permutation window; level 0 keeps the identity"},
        {"c4pi", "c4pi:a:b:c", "3",
         "half the 2-adic valuation modulo 3; odd levels pass through the permutation"},
        {"oddprime", "@file with kind \"oddprime\"", "n",
         "valuation modulo n, permuted per unit-residue class {w, p-w}"},
        {"explicit", "@file with kind \"explicit\"", "as listed",
         "finite lookup table over an explicit domain"},
    };
    Json list = Json::array();
    for (const Family& f : families) {
        if (!opt.family.empty() && opt.family != f.name) continue;
        list.push_back(Json{{"name", f.name},
                            {"form", f.form},
                            {"colors", f.colors},
                            {"description", f.description}});
    }
    if (!opt.family.empty() && list.empty())
        throw InvalidArgument("unknown coloring family '" + opt.family + "'");
    if (opt.pretty) {
        for (const auto& f : list)
            out << f["name"].get<std::string>() << "  (" << f["form"].get<std::string>()
                << ", colors: " << f["colors"].get<std::string>() << ")\n    "
                << f["description"].get<std::string>() << "\n";
        return 0;
    }
    out << Json{{"command", "catalog"}, {"families", std::move(list)}}.dump(2) << "\n";
    return 0;
}

inline int run_eval(const CliOptions& opt, std::ostream& out) {
    ColoringSpec spec = parse_coloring(opt.coloring);
    Rational q = Rational::parse(opt.value);
    std::int64_t color = eval(spec, q);
    if (opt.pretty) {
        out << "c(" << q.str() << ") = " << color << "\n";
        return 0;
    }
    out << Json{{"command", "eval"},
                {"coloring", coloring_to_json(spec)},
                {"value", q.str()},
                {"color", color}}
               .dump(2)
        << "\n";
    return 0;
}

inline int run_ratios(const CliOptions& opt, std::ostream& out) {
    LinearEquation eq = parse_equation(opt.equation);
    std::set<Rational, std::greater<Rational>> reps;
    for (const ForbiddenRatio& f : forbidden_ratios(eq)) reps.insert(ratio_representative(f.ratio));
    if (opt.pretty) {
        out << "forbidden ratios of [" << eq.str() << "]:";
        for (const Rational& r : reps) out << " " << r.str();
        out << "\n";
        return 0;
    }
    Json list = Json::array();
    for (const Rational& r : reps) list.push_back(r.str());
    out << Json{{"command", "ratios"},
                {"equation", rationals_to_json(eq.coeffs())},
                {"ratios", std::move(list)}}
               .dump(2)
        << "\n";
    return 0;
}

inline int run_verify(const CliOptions& opt, std::ostream& out) {
    ColoringSpec spec = parse_coloring(opt.coloring);
    LinearEquation eq = parse_equation(opt.equation);
    NodeUniverse u = resolve_universe(opt.universe, eq, 3);
    Json doc{{"command", "verify"},
             {"coloring", coloring_to_json(spec)},
             {"equation", rationals_to_json(eq.coeffs())}};
    bool free = true;
    if (opt.strong) {
        Json subsets = Json::array();
        for (const SubsetReport& sub :
             strongly_free_check(spec, eq.coeffs(), u.values(), opt.hit_limit)) {
            free = free && sub.report.free();
            Json entry = freeness_to_json(sub.report);
            entry["coeffs"] = rationals_to_json(sub.coeffs);
            subsets.push_back(std::move(entry));
        }
        doc["strong"] = true;
        doc["subsets"] = std::move(subsets);
        doc["free"] = free;
    } else {
        FreenessReport report = find_monochromatic(spec, eq, u.values(), opt.hit_limit);
        free = report.free();
        doc.update(freeness_to_json(report));
    }
    if (opt.pretty) {
        out << (free ? "free" : "monochromatic solutions found") << " over " << u.size()
            << " values\n";
    } else {
        out << doc.dump(2) << "\n";
    }
    return free ? 0 : 1;
}

inline int run_enumerate(const CliOptions& opt, std::ostream& out) {
    LinearEquation eq = parse_equation(opt.equation);
    if (opt.colors < 1) throw InvalidArgument("enumerate needs --colors >= 1");
    NodeUniverse u = resolve_universe(opt.universe, eq, opt.colors);
    ConstraintSet cs = derive_constraints(eq, u);
    std::vector<std::vector<int>> classes =
        enumerate_colorings(u, cs, opt.colors, opt.max_colorings, opt.max_steps);
    if (opt.pretty) {
        out << classes.size() << " canonical classes over " << u.size() << " values\n";
        return 0;
    }
    Json list = Json::array();
    for (const auto& coloring : classes) {
        Json row = Json::array();
        for (int c : coloring) row.push_back(c);
        list.push_back(std::move(row));
    }
    out << Json{{"command", "enumerate"},
                {"equation", rationals_to_json(eq.coeffs())},
                {"colors", opt.colors},
                {"universe", universe_to_json(u)},
                {"count", classes.size()},
                {"classes", std::move(list)}}
               .dump(2)
        << "\n";
    return 0;
}

// Accepts both bare table files and full prove output documents, which
// embed the table under "proof".
inline ProofTree load_table_argument(const std::string& path) {
    Json j = load_json_file(path);
    if (j.is_object() && !j.contains("rows") && j.contains("proof")) return proof_from_json(j["proof"]);
    return proof_from_json(j);
}

inline int run_check_table(const CliOptions& opt, std::ostream& out) {
    ProofTree tree = load_table_argument(opt.table_path);
    ProofCheckReport report = check_proof_table(tree);
    if (opt.pretty) {
        if (report.ok()) {
            out << "ok: " << report.rows_checked << " rows, " << report.contradictions
                << " contradictions, depth " << report.max_depth << "\n";
        } else {
            for (const ProofViolation& v : report.violations) {
                out << "row " << (v.row ? std::to_string(*v.row) : std::string("-")) << " ["
                    << v.code << "] " << v.detail << "\n";
            }
        }
        return report.ok() ? 0 : 1;
    }
    Json violations = Json::array();
    for (const ProofViolation& v : report.violations) {
        Json entry{{"code", v.code}, {"detail", v.detail}};
        if (v.row)
            entry["row"] = *v.row;
        else
            entry["row"] = nullptr;
        violations.push_back(std::move(entry));
    }
    out << Json{{"command", "check-table"},
                {"ok", report.ok()},
                {"rows", report.rows_checked},
                {"contradictions", report.contradictions},
                {"maxDepth", report.max_depth},
                {"violations", std::move(violations)}}
               .dump(2)
        << "\n";
    return report.ok() ? 0 : 1;
}

inline int run_export(const CliOptions& opt, std::ostream& out) {
    ProofTree tree = load_table_argument(opt.table_path);
    ProofCheckReport report = check_proof_table(tree);
    if (!report.ok())
        throw RefusedExport("the table has " + std::to_string(report.violations.size()) +
                            " violations; fix them or run check-table for details");
    emit(opt, out, proof_to_latex(tree));
    return 0;
}

inline int run_prove(const CliOptions& opt, std::ostream& out, std::ostream& err) {
    LinearEquation eq = parse_equation(opt.equation);
    if (opt.colors < 1) throw InvalidArgument("prove needs --colors >= 1");
    std::vector<SeedSpec> seeds;
    Json seeds_json = Json::array();
    for (const std::string& text : opt.seeds) {
        for (SeedSpec& spec : parse_seed(text)) {
            if (const SeedPin* pin = std::get_if<SeedPin>(&spec))
                seeds_json.push_back(Json::array({"pin", pin->value.str(), pin->color}));
            else
                seeds_json.push_back(Json::array(
                    {"tie", rationals_to_json(std::get<SeedEquality>(spec).values)}));
            seeds.push_back(std::move(spec));
        }
    }
    NodeUniverse u = resolve_universe(opt.universe, eq, opt.colors);
    SearchBudget budget{opt.max_branches, opt.max_decisions};

    Json config{{"command", "prove"},
                {"engine", engine_version},
                {"equation", rationals_to_json(eq.coeffs())},
                {"colors", opt.colors},
                {"seeds", seeds_json},
                {"universe", rationals_to_json(u.values())},
                {"budget", Json{{"branches", budget.max_branches},
                                {"decisions", budget.max_decisions}}},
                {"parallel", opt.workers},
                {"sequentialEquivalence", opt.sequential_equivalence},
                {"format", opt.format},
                {"pretty", opt.pretty}};
    CacheStore cache = CacheStore::from_environment();
    std::string key = cache_key(config);
    if (std::optional<Json> hit = cache.load(key, &err)) {
        if (hit->is_object() && hit->contains("status") && hit->contains("body") &&
            (*hit)["status"].is_number_integer() && (*hit)["body"].is_string()) {
            if (log_enabled()) err << "cache hit " << key << "\n";
            emit(opt, out, (*hit)["body"].get<std::string>());
            return (*hit)["status"].get<int>();
        }
        err << "warning: ignoring malformed cache entry " << cache.entry_path(key) << "\n";
    }
    if (log_enabled()) err << "cache miss " << key << "\n";

    ConstraintSet cs = derive_constraints(eq, u);
    SearchResult result = [&] {
        if (opt.workers > 0) return search_parallel(u, cs, opt.colors, seeds, budget, opt.workers);
        ColorSolver solver(u, cs, opt.colors, seeds);
        return solver.search(budget);
    }();

    bool unsat = result.status == SearchStatus::Unsatisfiable;
    std::string body;
    if (opt.format == "latex") {
        if (!unsat)
            throw InvalidArgument("latex output needs a refutation; this instance is satisfiable");
        body = proof_to_latex(*result.proof);
    } else if (opt.pretty) {
        std::ostringstream s;
        s << (unsat ? "unsatisfiable" : "satisfiable") << " over " << u.size() << " values ("
          << result.stats.branches << " branches, " << result.stats.decisions << " decisions)\n";
        if (unsat) s << "proof rows: " << result.proof->rows.size() << "\n";
        body = s.str();
    } else {
        Json doc{{"command", "prove"},
                 {"equation", rationals_to_json(eq.coeffs())},
                 {"colors", opt.colors},
                 {"status", unsat ? "unsatisfiable" : "satisfiable"},
                 {"universe", universe_to_json(u)},
                 {"stats", Json{{"branches", result.stats.branches},
                                {"decisions", result.stats.decisions},
                                {"propagations", result.stats.propagations}}}};
        if (unsat) {
            doc["proof"] = proof_to_json(*result.proof);
        } else {
            Json coloring = Json::array();
            for (std::size_t i = 0; i < u.size(); ++i)
                coloring.push_back(Json::array({u.value(i).str(), result.coloring[i]}));
            doc["coloring"] = std::move(coloring);
        }
        if (opt.workers > 0 && !opt.sequential_equivalence) doc["nondeterministic-tree"] = true;
        body = doc.dump(2) + "\n";
    }
    int status = unsat ? 0 : 1;
    cache.store(key, Json{{"status", status}, {"body", body}});
    emit(opt, out, body);
    return status;
}

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"colorings of the nonzero rationals: verification and regularity proofs"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* catalog = app.add_subcommand("catalog", "list the coloring families");
    catalog->add_option("family", opt.family, "describe one family");
    catalog->add_flag("--pretty", opt.pretty, "human-readable output");

    CLI::App* eval_cmd = app.add_subcommand("eval", "color of a value under a coloring");
    eval_cmd->add_option("--coloring", opt.coloring, "coloring spec")->required();
    eval_cmd->add_option("--value", opt.value, "rational value")->required();
    eval_cmd->add_flag("--pretty", opt.pretty, "human-readable output");

    CLI::App* ratios = app.add_subcommand("ratios", "forbidden ratios of an equation");
    ratios->add_option("equation", opt.equation, "E(q,n) or a coefficient list")->required();
    ratios->add_flag("--pretty", opt.pretty, "human-readable output");

    CLI::App* verify = app.add_subcommand("verify", "scan a coloring for monochromatic solutions");
    verify->add_option("--coloring", opt.coloring, "coloring spec")->required();
    verify->add_option("--eq,--coeffs", opt.equation, "E(q,n) or a coefficient list")->required();
    verify->add_option("--universe", opt.universe, "universe JSON file or inline object");
    verify->add_option("--limit", opt.hit_limit, "stop after this many hits (0: all)");
    verify->add_flag("--strong", opt.strong, "check every coefficient sub-multiset");
    verify->add_flag("--pretty", opt.pretty, "human-readable output");

    CLI::App* prove = app.add_subcommand("prove", "search for a refutation of r-colorability");
    prove->add_option("--eq,--coeffs", opt.equation, "E(q,n) or a coefficient list")->required();
    prove->add_option("--colors", opt.colors, "number of colors")->required();
    prove->add_option("--seed", opt.seeds, "seed, e.g. \"c(1)=c(3)\" or \"c(2)=1\"");
    prove->add_option("--universe", opt.universe, "universe JSON file or inline object");
    prove->add_option("--max-branches", opt.max_branches, "branch budget");
    prove->add_option("--max-decisions", opt.max_decisions, "decision budget");
    prove->add_option("--parallel", opt.workers, "worker count for root-branch parallelism");
    prove->add_flag("--sequential-equivalence", opt.sequential_equivalence,
                    "make parallel output byte-identical to sequential");
    prove->add_option("--format", opt.format, "json or latex")
        ->check(CLI::IsMember({"json", "latex"}));
    prove->add_option("--out", opt.out_path, "write the document here instead of stdout");
    prove->add_flag("--pretty", opt.pretty, "human-readable output");

    CLI::App* enumerate = app.add_subcommand("enumerate", "canonical valid colorings");
    enumerate->add_option("--eq,--coeffs", opt.equation, "E(q,n) or a coefficient list")
        ->required();
    enumerate->add_option("--colors", opt.colors, "number of colors")->required();
    enumerate->add_option("--universe", opt.universe, "universe JSON file or inline object");
    enumerate->add_option("--max", opt.max_colorings, "coloring budget");
    enumerate->add_option("--max-steps", opt.max_steps, "search step budget");
    enumerate->add_flag("--pretty", opt.pretty, "human-readable output");

    CLI::App* check = app.add_subcommand("check-table", "validate a derivation table");
    check->add_option("table", opt.table_path, "proof JSON file")->required();
    check->add_flag("--pretty", opt.pretty, "human-readable output");

    CLI::App* exp = app.add_subcommand("export", "render a checked derivation table as LaTeX");
    exp->add_option("table", opt.table_path, "proof JSON file")->required();
    exp->add_option("--out", opt.out_path, "write the document here instead of stdout");

    std::vector<const char*> argv;
    argv.push_back("radoq");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 64;
    }

    if (catalog->parsed()) return run_catalog(opt, out);
    if (eval_cmd->parsed()) return run_eval(opt, out);
    if (ratios->parsed()) return run_ratios(opt, out);
    if (verify->parsed()) return run_verify(opt, out);
    if (prove->parsed()) return run_prove(opt, out, err);
    if (enumerate->parsed()) return run_enumerate(opt, out);
    if (check->parsed()) return run_check_table(opt, out);
    if (exp->parsed()) return run_export(opt, out);
    throw InvalidArgument("no command given");
}

}  // namespace detail

// Exit statuses are a stable contract: 0 success (Unsat, free, table
// ok), 1 the negative outcome (Sat, hits, violations), 64 usage
// errors, 65 malformed data files and refused exports, 70 exhausted
// budgets with partial statistics as JSON on stderr.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return detail::run_command(args, out, err);
    } catch (const BudgetExceeded& e) {
        err << Json{{"error", "budget"},
                    {"message", e.what()},
                    {"branches", e.branches},
                    {"decisions", e.decisions},
                    {"nodes", e.nodes}}
                   .dump()
            << "\n";
        return 70;
    } catch (const MalformedData& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    } catch (const RefusedExport& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 64;
    }
}

}  // namespace radoq

#endif
