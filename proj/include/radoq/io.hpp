#ifndef RADOQ_IO_HPP
#define RADOQ_IO_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "radoq/coloring.hpp"
#include "radoq/equation.hpp"
#include "radoq/error.hpp"
#include "radoq/proof.hpp"
#include "radoq/rational.hpp"
#include "radoq/universe.hpp"

namespace radoq {

using Json = nlohmann::json;

namespace detail {

inline const Json& member(const Json& j, const char* key) {
    if (!j.is_object()) throw MalformedData("expected an object with field '" + std::string(key) + "'");
    auto it = j.find(key);
    if (it == j.end()) throw MalformedData("missing field '" + std::string(key) + "'");
    return *it;
}

inline const Json* member_opt(const Json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

inline std::int64_t as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw MalformedData(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

inline bool as_bool(const Json& j, const char* what) {
    if (!j.is_boolean()) throw MalformedData(std::string(what) + " must be a boolean");
    return j.get<bool>();
}

inline std::string as_string(const Json& j, const char* what) {
    if (!j.is_string()) throw MalformedData(std::string(what) + " must be a string");
    return j.get<std::string>();
}

// Accepts a JSON integer or a decimal string, so values past 2^53 stay
// exact in files.
inline Integer integer_from_json(const Json& j, const char* what) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t i = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw MalformedData(std::string(what) + " must be an integer");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9')
                throw MalformedData(std::string(what) + " must be an integer");
        return Integer(s);
    }
    throw MalformedData(std::string(what) + " must be an integer");
}

// Decimal string to int, rejecting anything a JSON object key for a
// color or level must not be.
inline std::int64_t parse_int_key(const std::string& s) {
    if (s.empty()) throw MalformedData("empty integer key");
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) throw MalformedData("bad integer key '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw MalformedData("bad integer key '" + s + "'");
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw MalformedData("integer key out of range: '" + s + "'");
    }
}

}  // namespace detail

// --- rationals -------------------------------------------------------

inline Json rational_to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw MalformedData("expected a rational string, got " + j.dump());
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const InvalidRational& e) {
        throw MalformedData(e.what());
    }
}

inline Json rationals_to_json(const std::vector<Rational>& values) {
    Json a = Json::array();
    for (const auto& v : values) a.push_back(v.str());
    return a;
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
    if (!j.is_array()) throw MalformedData("expected an array of rationals, got " + j.dump());
    std::vector<Rational> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(rational_from_json(e));
    return out;
}

// --- files -----------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
    out.flush();
    if (!out) throw InvalidArgument("short write to " + path);
}

inline Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw MalformedData("invalid JSON");
    return j;
}

inline Json load_json_file(const std::string& path) {
    std::string text = read_text_file(path);
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw MalformedData("invalid JSON in " + path);
    return j;
}

// --- universes -------------------------------------------------------

inline Json universe_to_json(const NodeUniverse& u) {
    Json j;
    j["elements"] = rationals_to_json(u.values());
    return j;
}

// Accepts either an explicit element list
//   {"elements": ["1", "3/2", ...]}
// or a box recipe
//   {"primes": [2, 3], "bounds": [[-3, 3], [-3, 3]], "negatives": true}
// optionally with "maxNodes".  A "closureRounds" field turns the box
// into a closure grown from the given equation, which must then be
// supplied; "exactArithmetic" routes the closure through exact
// rationals.
inline NodeUniverse universe_from_json(const Json& j, const LinearEquation* eq = nullptr) {
    if (const Json* elems = detail::member_opt(j, "elements")) {
        try {
            return universe_from_values(rationals_from_json(*elems));
        } catch (const InvalidArgument& e) {
            throw MalformedData(e.what());
        }
    }
    const Json& jp = detail::member(j, "primes");
    if (!jp.is_array()) throw MalformedData("'primes' must be an array");
    std::vector<Integer> primes;
    for (const auto& e : jp) primes.push_back(detail::integer_from_json(e, "prime"));
    const Json& jb = detail::member(j, "bounds");
    if (!jb.is_array()) throw MalformedData("'bounds' must be an array of [lo, hi] pairs");
    ExponentBounds bounds;
    for (const auto& e : jb) {
        if (!e.is_array() || e.size() != 2)
            throw MalformedData("'bounds' must be an array of [lo, hi] pairs");
        bounds.emplace_back(detail::as_int(e[0], "bound"), detail::as_int(e[1], "bound"));
    }
    bool negatives = detail::as_bool(detail::member(j, "negatives"), "'negatives'");
    const Json* rounds = detail::member_opt(j, "closureRounds");
    const Json* max_nodes = detail::member_opt(j, "maxNodes");
    try {
        if (rounds) {
            if (!eq) throw MalformedData("a closure universe needs an equation");
            ClosureOptions options;
            options.rounds = static_cast<int>(detail::as_int(*rounds, "'closureRounds'"));
            if (max_nodes)
                options.max_nodes =
                    static_cast<std::uint64_t>(detail::as_int(*max_nodes, "'maxNodes'"));
            if (const Json* exact = detail::member_opt(j, "exactArithmetic"))
                options.exact_arithmetic = detail::as_bool(*exact, "'exactArithmetic'");
            return closure_universe(*eq, std::move(primes), std::move(bounds), negatives, options);
        }
        std::uint64_t limit = 1'000'000;
        if (max_nodes) limit = static_cast<std::uint64_t>(detail::as_int(*max_nodes, "'maxNodes'"));
        return generate_universe(std::move(primes), std::move(bounds), negatives, limit);
    } catch (const InvalidArgument& e) {
        throw MalformedData(e.what());
    } catch (const InvalidPrime& e) {
        throw MalformedData(e.what());
    } catch (const UnsupportedPrime& e) {
        throw MalformedData(e.what());
    }
}

// --- coloring specifications -----------------------------------------

namespace detail {

inline Json permutation_to_json(const Permutation& perm) {
    Json a = Json::array();
    for (std::int64_t v : perm) a.push_back(v);
    return a;
}

inline Permutation permutation_from_json(const Json& j) {
    if (!j.is_array()) throw MalformedData("a permutation must be an array of integers");
    Permutation perm;
    perm.reserve(j.size());
    for (const auto& e : j) perm.push_back(as_int(e, "permutation entry"));
    return perm;
}

inline std::map<std::int64_t, Permutation> permutation_map_from_json(const Json& j,
                                                                     const char* what) {
    if (!j.is_object()) throw MalformedData(std::string(what) + " must be an object");
    std::map<std::int64_t, Permutation> out;
    for (const auto& [key, value] : j.items()) out[parse_int_key(key)] = permutation_from_json(value);
    return out;
}

inline Integer prime_from_json(const Json& j) { return integer_from_json(j, "'p'"); }

}  // namespace detail

inline Json coloring_to_json(const ColoringSpec& spec) {
    struct Visitor {
        Json operator()(const Cpn& c) const {
            return Json{{"kind", "cpn"}, {"p", c.p.str()}, {"n", c.n}};
        }
        Json operator()(const Cpvn& c) const {
            return Json{{"kind", "cpvn"}, {"p", c.p.str()}, {"v", c.v}, {"n", c.n}};
        }
        Json operator()(const CapCp& c) const { return Json{{"kind", "cp"}, {"p", c.p.str()}}; }
        Json operator()(const CPi& c) const {
            Json window = Json::object();
            for (const auto& [level, perm] : c.window)
                window[std::to_string(level)] = detail::permutation_to_json(perm);
            return Json{{"kind", "cpi"}, {"p", c.p.str()}, {"window", window}};
        }
        Json operator()(const C4pi& c) const {
            return Json{{"kind", "c4pi"}, {"perm", detail::permutation_to_json(c.perm)}};
        }
        Json operator()(const OddPrimeFamily& c) const {
            Json perms = Json::object();
            for (const auto& [key, perm] : c.perms)
                perms[std::to_string(key)] = detail::permutation_to_json(perm);
            return Json{{"kind", "oddprime"}, {"p", c.p.str()}, {"n", c.n}, {"perms", perms}};
        }
        Json operator()(const ExplicitColoring& c) const {
            Json colors = Json::array();
            for (std::int64_t k : c.colors) colors.push_back(k);
            return Json{{"kind", "explicit"},
                        {"domain", rationals_to_json(c.domain)},
                        {"colors", colors}};
        }
    };
    return std::visit(Visitor{}, spec);
}

inline ColoringSpec coloring_from_json(const Json& j) {
    std::string kind = detail::as_string(detail::member(j, "kind"), "'kind'");
    try {
        if (kind == "cpn")
            return Cpn(detail::prime_from_json(detail::member(j, "p")),
                       detail::as_int(detail::member(j, "n"), "'n'"));
        if (kind == "cpvn")
            return Cpvn(detail::prime_from_json(detail::member(j, "p")),
                        detail::as_int(detail::member(j, "v"), "'v'"),
                        detail::as_int(detail::member(j, "n"), "'n'"));
        if (kind == "cp") return CapCp(detail::prime_from_json(detail::member(j, "p")));
        if (kind == "cpi")
            return CPi(detail::prime_from_json(detail::member(j, "p")),
                       detail::permutation_map_from_json(detail::member(j, "window"), "'window'"));
        if (kind == "c4pi")
            return C4pi(detail::permutation_from_json(detail::member(j, "perm")));
        if (kind == "oddprime")
            return OddPrimeFamily(
                detail::prime_from_json(detail::member(j, "p")),
                detail::as_int(detail::member(j, "n"), "'n'"),
                detail::permutation_map_from_json(detail::member(j, "perms"), "'perms'"));
        if (kind == "explicit") {
            const Json& jc = detail::member(j, "colors");
            if (!jc.is_array()) throw MalformedData("'colors' must be an array of integers");
            std::vector<std::int64_t> colors;
            for (const auto& e : jc) colors.push_back(detail::as_int(e, "color"));
            return ExplicitColoring(rationals_from_json(detail::member(j, "domain")),
                                    std::move(colors));
        }
    } catch (const InvalidArgument& e) {
        throw MalformedData(e.what());
    } catch (const InvalidPrime& e) {
        throw MalformedData(e.what());
    }
    throw MalformedData("unknown coloring kind '" + kind + "'");
}

// --- derivation tables -----------------------------------------------

inline const char* row_kind_name(RowKind kind) {
    switch (kind) {
        case RowKind::ForcedColor: return "forcedColor";
        case RowKind::ForcedSet: return "forcedSet";
        case RowKind::Contradiction: return "contradiction";
    }
    throw InvalidArgument("unknown row kind");
}

inline RowKind row_kind_from_name(const std::string& name) {
    if (name == "forcedColor") return RowKind::ForcedColor;
    if (name == "forcedSet") return RowKind::ForcedSet;
    if (name == "contradiction") return RowKind::Contradiction;
    throw MalformedData("unknown row kind '" + name + "'");
}

inline Json reason_to_json(const ProofReason& reason) {
    struct Visitor {
        Json operator()(const SeedReason&) const { return Json{{"kind", "pinned"}}; }
        Json operator()(const SymmetryReason&) const { return Json{{"kind", "symmetry"}}; }
        Json operator()(const RatioReason& r) const {
            return Json{{"kind", "ratio"}, {"partner", r.partner.str()}, {"ratio", r.ratio.str()}};
        }
        Json operator()(const TupleReason& r) const {
            return Json{{"kind", "tuple"}, {"values", rationals_to_json(r.values)}};
        }
    };
    return std::visit(Visitor{}, reason);
}

inline ProofReason reason_from_json(const Json& j) {
    std::string kind = detail::as_string(detail::member(j, "kind"), "reason kind");
    if (kind == "pinned") return SeedReason{};
    if (kind == "symmetry") return SymmetryReason{};
    if (kind == "ratio")
        return RatioReason{rational_from_json(detail::member(j, "partner")),
                           rational_from_json(detail::member(j, "ratio"))};
    if (kind == "tuple") return TupleReason{rationals_from_json(detail::member(j, "values"))};
    throw MalformedData("unknown reason kind '" + kind + "'");
}

inline Json proof_to_json(const ProofTree& tree) {
    Json j;
    j["equation"] = rationals_to_json(tree.equation.coeffs());
    j["colors"] = tree.colors;
    Json seeds = Json::array();
    for (const auto& [value, color] : tree.seed_colors)
        seeds.push_back(Json::array({value.str(), color}));
    j["seedColors"] = std::move(seeds);
    Json equalities = Json::array();
    for (const auto& group : tree.seed_equalities) equalities.push_back(rationals_to_json(group));
    j["seedEqualities"] = std::move(equalities);
    Json rows = Json::array();
    for (const ProofRow& row : tree.rows) {
        Json r;
        r["depth"] = row.depth;
        if (row.assumption)
            r["assumption"] = Json::array({row.assumption->first.str(), row.assumption->second});
        r["node"] = row.node.str();
        r["kind"] = row_kind_name(row.kind);
        if (row.kind != RowKind::Contradiction) {
            Json options = Json::array();
            for (int k : row.options) options.push_back(k);
            r["options"] = std::move(options);
        }
        if (!row.reasons.empty()) {
            Json reasons = Json::object();
            for (const auto& [color, reason] : row.reasons)
                reasons[std::to_string(color)] = reason_to_json(reason);
            r["reasons"] = std::move(reasons);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline ProofTree proof_from_json(const Json& j) {
    std::vector<Rational> coeffs = rationals_from_json(detail::member(j, "equation"));
    std::optional<LinearEquation> eq;
    try {
        eq.emplace(std::move(coeffs));
    } catch (const DegenerateEquation& e) {
        throw MalformedData(e.what());
    }
    ProofTree tree{std::move(*eq),
                   static_cast<int>(detail::as_int(detail::member(j, "colors"), "'colors'")),
                   {},
                   {},
                   {}};
    const Json& seeds = detail::member(j, "seedColors");
    if (!seeds.is_array()) throw MalformedData("'seedColors' must be an array");
    for (const auto& e : seeds) {
        if (!e.is_array() || e.size() != 2)
            throw MalformedData("seed color entries must be [value, color] pairs");
        tree.seed_colors.emplace_back(rational_from_json(e[0]),
                                      static_cast<int>(detail::as_int(e[1], "seed color")));
    }
    const Json& equalities = detail::member(j, "seedEqualities");
    if (!equalities.is_array()) throw MalformedData("'seedEqualities' must be an array");
    for (const auto& e : equalities) tree.seed_equalities.push_back(rationals_from_json(e));
    const Json& rows = detail::member(j, "rows");
    if (!rows.is_array()) throw MalformedData("'rows' must be an array");
    for (const auto& e : rows) {
        ProofRow row;
        row.depth = static_cast<int>(detail::as_int(detail::member(e, "depth"), "'depth'"));
        if (const Json* a = detail::member_opt(e, "assumption")) {
            if (!a->is_array() || a->size() != 2)
                throw MalformedData("'assumption' must be a [node, color] pair");
            row.assumption.emplace(rational_from_json((*a)[0]),
                                   static_cast<int>(detail::as_int((*a)[1], "assumed color")));
        }
        row.node = rational_from_json(detail::member(e, "node"));
        row.kind = row_kind_from_name(detail::as_string(detail::member(e, "kind"), "'kind'"));
        if (const Json* options = detail::member_opt(e, "options")) {
            if (!options->is_array()) throw MalformedData("'options' must be an array");
            for (const auto& k : *options)
                row.options.push_back(static_cast<int>(detail::as_int(k, "option")));
        }
        if (const Json* reasons = detail::member_opt(e, "reasons")) {
            if (!reasons->is_object()) throw MalformedData("'reasons' must be an object");
            for (const auto& [key, value] : reasons->items())
                row.reasons.emplace(static_cast<int>(detail::parse_int_key(key)),
                                    reason_from_json(value));
        }
        tree.rows.push_back(std::move(row));
    }
    return tree;
}

inline void save_proof_file(const std::string& path, const ProofTree& tree) {
    write_text_file(path, proof_to_json(tree).dump(2) + "\n");
}

inline ProofTree load_proof_file(const std::string& path) {
    return proof_from_json(load_json_file(path));
}

// --- LaTeX export ----------------------------------------------------

// "3/2" renders as \tfrac{3}{2}; integers render verbatim.  The sign
// stays outside the fraction.
inline std::string latex_rational(const Rational& r) {
    std::string s = r.str();
    auto slash = s.find('/');
    if (slash == std::string::npos) return s;
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    std::string sign;
    if (!num.empty() && num[0] == '-') {
        sign = "-";
        num.erase(0, 1);
    }
    return sign + "\\tfrac{" + num + "}{" + den + "}";
}

namespace detail {

inline std::string latex_reason(int color, const Rational& node, const ProofReason& reason) {
    struct Visitor {
        const Rational& node;
        std::string operator()(const SeedReason&) const { return "\\text{premise}"; }
        std::string operator()(const SymmetryReason&) const { return "\\text{symmetry}"; }
        std::string operator()(const RatioReason& r) const {
            return latex_rational(node) + " = " + latex_rational(r.ratio) + " \\cdot " +
                   latex_rational(r.partner);
        }
        std::string operator()(const TupleReason& r) const {
            std::string s = "(";
            for (std::size_t i = 0; i < r.values.size(); ++i) {
                if (i) s += ", ";
                s += latex_rational(r.values[i]);
            }
            return s + ")";
        }
    };
    return "$" + std::to_string(color) + "\\colon " + std::visit(Visitor{node}, reason) + "$";
}

inline std::string latex_seed_cell(const ProofTree& tree) {
    std::map<Rational, int> colors(tree.seed_colors.begin(), tree.seed_colors.end());
    std::set<Rational> merged;
    std::vector<std::string> parts;
    for (const auto& group : tree.seed_equalities) {
        if (group.empty()) continue;
        bool uniform = !group.empty() && colors.count(group.front());
        for (const auto& v : group)
            if (!colors.count(v) || colors[v] != colors[group.front()]) uniform = false;
        std::string s;
        for (const auto& v : group) {
            if (!s.empty()) s += " = ";
            s += "c(" + latex_rational(v) + ")";
        }
        if (uniform) {
            s += " = " + std::to_string(colors[group.front()]);
            for (const auto& v : group) merged.insert(v);
        }
        parts.push_back("$" + s + "$");
    }
    for (const auto& [value, color] : tree.seed_colors) {
        if (merged.count(value)) continue;
        parts.push_back("$c(" + latex_rational(value) + ") = " + std::to_string(color) + "$");
    }
    std::string cell;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) cell += ", ";
        cell += parts[i];
    }
    return cell;
}

}  // namespace detail

// Renders the table as a LaTeX longtable with one row per claim.
// Depth shows as indentation of the assumption column; the first row
// carries the seeds instead of an assumption.
inline std::string proof_to_latex(const ProofTree& tree) {
    std::ostringstream out;
    out << "% derivation table for " << tree.equation.str() << " with " << tree.colors
        << " colors\n";
    out << "\\begin{longtable}{@{}lll@{}}\n";
    out << "\\toprule\nassumption & claim & justification \\\\\n\\midrule\n\\endhead\n";
    out << "\\bottomrule\n\\endfoot\n";
    for (std::size_t i = 0; i < tree.rows.size(); ++i) {
        const ProofRow& row = tree.rows[i];
        int indent = row.depth > 1 ? row.depth - 1 : 0;
        std::string assumption;
        if (indent > 0) assumption = "\\hspace*{" + std::to_string(indent) + "em}";
        if (row.assumption) {
            assumption += "$c(" + latex_rational(row.assumption->first) + ") = " +
                          std::to_string(row.assumption->second) + "$";
        } else if (i == 0) {
            assumption += detail::latex_seed_cell(tree);
        }
        std::string claim = "$c(" + latex_rational(row.node) + ")";
        switch (row.kind) {
            case RowKind::ForcedColor:
                claim += row.options.empty() ? "" : " = " + std::to_string(row.options.front());
                break;
            case RowKind::ForcedSet: {
                claim += " \\in \\{";
                for (std::size_t k = 0; k < row.options.size(); ++k) {
                    if (k) claim += ", ";
                    claim += std::to_string(row.options[k]);
                }
                claim += "\\}";
                break;
            }
            case RowKind::Contradiction: claim += " \\in \\emptyset"; break;
        }
        claim += "$";
        std::string justification;
        for (const auto& [color, reason] : row.reasons) {
            if (!justification.empty()) justification += ";\\ ";
            justification += detail::latex_reason(color, row.node, reason);
        }
        out << assumption << " & " << claim << " & " << justification << " \\\\\n";
    }
    out << "\\end{longtable}\n";
    return out.str();
}

}  // namespace radoq

#endif
