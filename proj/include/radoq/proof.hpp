#ifndef RADOQ_PROOF_HPP
#define RADOQ_PROOF_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "radoq/equation.hpp"
#include "radoq/error.hpp"
#include "radoq/rational.hpp"

namespace radoq {

// One claim of a derivation table.  A row asserts, under its premises,
// that its node is confined to the listed options (forced rows) or to
// nothing at all (contradiction rows).
enum class RowKind { ForcedColor, ForcedSet, Contradiction };

// The row's premises already color the claim node's class with some
// other color.
struct SeedReason {};

// The excluded color is fresh and interchangeable with the least fresh
// color, which the row handles directly.
struct SymmetryReason {};

// A node already colored with the excluded color sits at a forbidden
// ratio from the claim node: partner * ratio == claim node.
struct RatioReason {
    Rational partner;
    Rational ratio;
};

// A position-ordered solution of the equation through the claim node
// whose other member classes are all colored with the excluded color.
struct TupleReason {
    std::vector<Rational> values;
};

using ProofReason = std::variant<SeedReason, RatioReason, TupleReason, SymmetryReason>;

struct ProofRow {
    int depth = 0;
    // Color assumed for the parent row's claim node; absent only on the
    // first row.
    std::optional<std::pair<Rational, int>> assumption;
    Rational node;
    RowKind kind = RowKind::Contradiction;
    std::vector<int> options;            // ascending; one entry for ForcedColor, none here
    std::map<int, ProofReason> reasons;  // excluded color -> justification
};

// A complete derivation table.  Rows are serialized in depth-first
// order: each row's children are the later rows one level deeper whose
// assumptions consume its options in ascending order.  The table is
// independent of any node universe; every claim is justified by exact
// arithmetic over the cited values.
struct ProofTree {
    LinearEquation equation;
    int colors = 0;
    std::vector<std::pair<Rational, int>> seed_colors;
    std::vector<std::vector<Rational>> seed_equalities;
    std::vector<ProofRow> rows;
};

struct ProofViolation {
    std::optional<std::size_t> row;  // absent: the defect is table-wide
    std::string code;
    std::string detail;
};

struct ProofCheckReport {
    std::vector<ProofViolation> violations;
    std::size_t rows_checked = 0;
    std::size_t contradictions = 0;
    int max_depth = 0;

    bool ok() const { return violations.empty(); }
};

// Canonical form of a cited ratio for the forbidden-ratio lookup.
inline Rational ratio_representative(const Rational& r) {
    return r.abs() >= Rational(1) ? r : r.inverse();
}

// Replays a derivation table and reports every defect: malformed
// structure, non-exhaustive branching, and invalid or missing
// justifications.  Never throws on malformed tables; the report lists
// what is wrong instead.
inline ProofCheckReport check_proof_table(const ProofTree& tree) {
    ProofCheckReport report;
    auto add = [&](std::optional<std::size_t> row, const char* code, std::string detail) {
        report.violations.push_back(ProofViolation{row, code, std::move(detail)});
    };

    const int r = tree.colors;
    if (r < 1) {
        add(std::nullopt, "colors", "the color count must be positive");
        return report;
    }

    // Equality seeds induce classes over cited values; colors attach to
    // class representatives.
    std::map<Rational, Rational> up;
    auto find = [&](Rational v) {
        while (true) {
            auto it = up.find(v);
            if (it == up.end() || it->second == v) return v;
            v = it->second;
        }
    };
    for (const auto& group : tree.seed_equalities) {
        for (const auto& v : group)
            if (v.is_zero()) add(std::nullopt, "seed", "zero value in an equality seed");
        for (std::size_t i = 1; i < group.size(); ++i) {
            if (group[i].is_zero() || group[0].is_zero()) continue;
            Rational a = find(group[0]), b = find(group[i]);
            if (a != b) up[b] = a;
        }
    }
    std::map<Rational, int> seed_pins;
    for (const auto& [v, c] : tree.seed_colors) {
        if (v.is_zero()) {
            add(std::nullopt, "seed", "zero value in a color seed");
            continue;
        }
        if (c < 0 || c >= r) {
            add(std::nullopt, "seed", "color seed outside the color range");
            continue;
        }
        auto [it, fresh] = seed_pins.emplace(find(v), c);
        if (!fresh && it->second != c)
            add(std::nullopt, "seed", "conflicting color seeds for the class of " + v.str());
    }

    std::set<Rational> forbidden;
    for (const auto& f : forbidden_ratios(tree.equation)) forbidden.insert(f.ratio);

    if (tree.rows.empty()) {
        add(std::nullopt, "shape", "a derivation table needs at least one row");
        return report;
    }

    report.rows_checked = tree.rows.size();
    std::vector<std::size_t> stack;                       // row index per depth
    std::vector<std::size_t> children(tree.rows.size(), 0);

    for (std::size_t i = 0; i < tree.rows.size(); ++i) {
        const ProofRow& row = tree.rows[i];
        report.max_depth = std::max(report.max_depth, row.depth);
        if (row.kind == RowKind::Contradiction) ++report.contradictions;

        if (row.node.is_zero()) add(i, "node", "the claim node must be nonzero");
        switch (row.kind) {
            case RowKind::ForcedColor:
                if (row.options.size() != 1)
                    add(i, "shape", "a forced-color row carries exactly one option");
                break;
            case RowKind::ForcedSet:
                if (row.options.size() < 2)
                    add(i, "shape", "a forced-set row carries at least two options");
                break;
            case RowKind::Contradiction:
                if (!row.options.empty())
                    add(i, "shape", "a contradiction row carries no options");
                break;
        }
        for (std::size_t k = 0; k < row.options.size(); ++k) {
            if (row.options[k] < 0 || row.options[k] >= r)
                add(i, "shape", "option outside the color range");
            if (k > 0 && row.options[k] <= row.options[k - 1])
                add(i, "shape", "options must be strictly ascending");
        }

        // Attach the row to its parent.
        if (i == 0) {
            if (row.depth != 0) add(i, "shape", "the first row sits at depth zero");
            if (row.assumption) add(i, "shape", "the first row carries no assumption");
            stack.assign(1, 0);
        } else {
            if (!row.assumption) {
                add(i, "shape", "only the first row omits its assumption");
                continue;
            }
            if (row.depth < 1 || static_cast<std::size_t>(row.depth) > stack.size()) {
                add(i, "shape", "row depth does not attach to an earlier row");
                continue;
            }
            std::size_t p = stack[static_cast<std::size_t>(row.depth) - 1];
            const ProofRow& prow = tree.rows[p];
            const auto& [av, ac] = *row.assumption;
            if (av != prow.node)
                add(i, "shape", "the assumption names a node the parent row does not claim");
            if (ac < 0 || ac >= r) add(i, "shape", "assumption color outside the color range");
            switch (prow.kind) {
                case RowKind::ForcedColor:
                    if (children[p] >= 1)
                        add(i, "shape", "a forced-color row admits one continuation");
                    else if (!prow.options.empty() && ac != prow.options[0])
                        add(i, "shape", "the continuation must assume the forced color");
                    break;
                case RowKind::ForcedSet:
                    if (children[p] >= prow.options.size())
                        add(i, "shape", "more continuations than branch options");
                    else if (ac != prow.options[children[p]])
                        add(i, "shape", "continuations must take the options in ascending order");
                    break;
                case RowKind::Contradiction:
                    add(i, "shape", "a contradiction row admits no continuation");
                    break;
            }
            ++children[p];
            stack.resize(static_cast<std::size_t>(row.depth));
            stack.push_back(i);
        }

        // Premises: seed pins plus every assumption on the path, the
        // row's own included.
        std::map<Rational, int> premise = seed_pins;
        bool consistent = true;
        for (std::size_t s : stack) {
            const auto& a = tree.rows[s].assumption;
            if (!a) continue;
            auto [it, fresh] = premise.emplace(find(a->first), a->second);
            if (!fresh && it->second != a->second) {
                add(i, "premise", "path assumptions color one class twice");
                consistent = false;
            }
        }
        if (!consistent) continue;

        std::set<int> claimed(row.options.begin(), row.options.end());
        auto reason_error = [&](int c, const ProofReason& reason) -> std::optional<std::string> {
            if (std::holds_alternative<SeedReason>(reason)) {
                auto it = premise.find(find(row.node));
                if (it == premise.end()) return "the premises do not color the claim node";
                if (it->second == c) return "the premises give exactly the excluded color";
                return std::nullopt;
            }
            if (const auto* rr = std::get_if<RatioReason>(&reason)) {
                if (rr->partner.is_zero() || rr->ratio.is_zero())
                    return "zero value in a ratio citation";
                if (find(rr->partner * rr->ratio) != find(row.node))
                    return "the cited ratio does not land on the claim node's class";
                if (!forbidden.count(ratio_representative(rr->ratio)))
                    return "the cited ratio is not forbidden for this equation";
                auto it = premise.find(find(rr->partner));
                if (it == premise.end()) return "the cited partner is not colored by the premises";
                if (it->second != c) return "the cited partner does not carry the excluded color";
                return std::nullopt;
            }
            if (const auto* tr = std::get_if<TupleReason>(&reason)) {
                if (tr->values.size() != tree.equation.arity())
                    return "the cited tuple does not match the equation arity";
                for (const auto& v : tr->values)
                    if (v.is_zero()) return "zero value in a tuple citation";
                if (!tree.equation.satisfied_by(tr->values))
                    return "the cited tuple does not solve the equation";
                Rational cls = find(row.node);
                bool through = false;
                for (const auto& v : tr->values)
                    if (find(v) == cls) through = true;
                if (!through) return "the cited tuple does not pass through the claim node";
                for (const auto& v : tr->values) {
                    Rational k = find(v);
                    if (k == cls) continue;
                    auto it = premise.find(k);
                    if (it == premise.end())
                        return "a tuple member is not colored by the premises";
                    if (it->second != c)
                        return "a tuple member does not carry the excluded color";
                }
                return std::nullopt;
            }
            // Symmetry: sound only above the least color the premises
            // never use, and only when that color is itself handled.
            std::set<int> used;
            for (const auto& [cls, col] : premise) used.insert(col);
            if (used.count(c)) return "the excluded color is already in use";
            int fresh = -1;
            for (int k = 0; k < r; ++k)
                if (!used.count(k)) {
                    fresh = k;
                    break;
                }
            if (c <= fresh) return "only colors above the least fresh one are interchangeable";
            if (claimed.count(fresh)) return std::nullopt;
            auto it = row.reasons.find(fresh);
            if (it == row.reasons.end() || std::holds_alternative<SymmetryReason>(it->second))
                return "the least fresh color needs a direct justification";
            return std::nullopt;
        };

        for (const auto& [c, reason] : row.reasons)
            if (c < 0 || c >= r)
                add(i, "coverage", "justification for a color outside the range");
        for (int c = 0; c < r; ++c) {
            bool need = claimed.count(c) == 0;
            auto it = row.reasons.find(c);
            if (need && it == row.reasons.end()) {
                add(i, "coverage", "missing a justification for color " + std::to_string(c));
                continue;
            }
            if (!need && it != row.reasons.end()) {
                add(i, "coverage",
                    "claimed color " + std::to_string(c) + " carries a justification");
                continue;
            }
            if (!need) continue;
            if (auto err = reason_error(c, it->second))
                add(i, "reason", "color " + std::to_string(c) + ": " + *err);
        }
    }

    for (std::size_t i = 0; i < tree.rows.size(); ++i) {
        std::size_t expected = 0;
        switch (tree.rows[i].kind) {
            case RowKind::ForcedColor: expected = 1; break;
            case RowKind::ForcedSet: expected = tree.rows[i].options.size(); break;
            case RowKind::Contradiction: expected = 0; break;
        }
        if (children[i] != expected)
            add(i, "shape",
                "row has " + std::to_string(children[i]) + " of " + std::to_string(expected) +
                    " required continuations");
    }

    return report;
}

}  // namespace radoq

#endif
