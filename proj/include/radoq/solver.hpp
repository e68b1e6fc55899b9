#ifndef RADOQ_SOLVER_HPP
#define RADOQ_SOLVER_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <future>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "radoq/constraints.hpp"
#include "radoq/error.hpp"
#include "radoq/proof.hpp"
#include "radoq/universe.hpp"

namespace radoq {

// Candidate colors of one class as a bitmask; at most 32 colors.
using ColorMask = std::uint32_t;

inline constexpr int max_colors = 32;

// Pins one universe value to a color.
struct SeedPin {
    Rational value;
    int color = 0;
};

// Requires the listed universe values to share one color.
struct SeedEquality {
    std::vector<Rational> values;
};

using SeedSpec = std::variant<SeedPin, SeedEquality>;

struct SearchBudget {
    std::uint64_t max_branches = 1'000'000;
    std::uint64_t max_decisions = 50'000'000;
};

enum class SearchStatus { Satisfiable, Unsatisfiable };

struct SearchStats {
    std::uint64_t branches = 0;
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
};

struct SearchResult {
    SearchStatus status = SearchStatus::Unsatisfiable;
    std::vector<int> coloring;        // one color per universe node when satisfiable
    std::optional<ProofTree> proof;   // derivation table when unsatisfiable
    SearchStats stats;
};

// Subtree outcome used by the parallel driver.
struct OptionOutcome {
    bool satisfiable = false;
    std::vector<ProofRow> rows;
    std::vector<int> coloring;
    SearchStats stats;
};

// State of the root of the search tree after seed propagation, before
// the first branch.
struct RootFrontier {
    bool contradiction = false;      // the whole instance is refuted at the root
    bool satisfiable = false;        // seed propagation already decided every class
    std::vector<ProofRow> rows;      // root forced chain, plus the branch row if any
    std::size_t branch_class = 0;
    Rational branch_node;
    int branch_depth = 0;
    std::vector<int> options;
};

// Exhaustive backtracking search for colorings of a universe avoiding
// every constraint violation, with unit propagation over classes and a
// machine-checkable derivation table on unsatisfiable instances.
class ColorSolver {
  public:
    ColorSolver(const NodeUniverse& universe, const ConstraintSet& constraints, int colors,
                const std::vector<SeedSpec>& seeds = {})
        : u_(universe), cs_(constraints), r_(colors), n_(universe.size()) {
        if (r_ < 1 || r_ > max_colors)
            throw InvalidArgument("color count must lie in [1, " + std::to_string(max_colors) +
                                  "]");
        full_ = r_ == max_colors ? ~ColorMask{0} : (ColorMask{1} << r_) - 1;

        // Classes: union by minimum node index, so a class representative
        // is its canonically first member.
        rep_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) rep_[i] = i;
        for (const SeedSpec& s : seeds)
            if (const auto* eqs = std::get_if<SeedEquality>(&s)) {
                if (eqs->values.size() < 2)
                    throw InvalidArgument("an equality seed needs at least two values");
                std::size_t first = index_of(eqs->values[0]);
                for (std::size_t k = 1; k < eqs->values.size(); ++k)
                    unite(first, index_of(eqs->values[k]));
                seed_equalities_out_.push_back(eqs->values);
            }
        for (std::size_t i = 0; i < n_; ++i) rep_[i] = find(i);

        cand_.assign(n_, full_);
        color_.assign(n_, -1);
        decided_.assign(n_, 0);
        slots_.assign(n_ * static_cast<std::size_t>(r_), Reason{});
        used_count_.assign(static_cast<std::size_t>(r_), 0);
        rows_sink_ = &rows_;

        // Per-class incidence, in constraint id order.
        class_edges_.resize(n_);
        for (std::size_t e = 0; e < cs_.edges().size(); ++e) {
            std::size_t a = rep_[cs_.edges()[e].from], b = rep_[cs_.edges()[e].to];
            class_edges_[a].push_back(e);
            if (b != a) class_edges_[b].push_back(e);
        }
        tuple_reps_.resize(cs_.tuples().size());
        class_tuples_.resize(n_);
        for (std::size_t t = 0; t < cs_.tuples().size(); ++t) {
            std::vector<std::size_t> reps;
            for (std::size_t m : cs_.tuples()[t].members) reps.push_back(rep_[m]);
            std::sort(reps.begin(), reps.end());
            reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
            tuple_reps_[t] = std::move(reps);
            for (std::size_t c : tuple_reps_[t]) class_tuples_[c].push_back(t);
        }

        apply_color_seeds(seeds);
        find_root_contradiction();
    }

    int colors() const { return r_; }
    const NodeUniverse& universe() const { return u_; }

    // Test hooks over the mutable state.
    std::size_t class_of(std::size_t node) const { return rep_.at(node); }
    ColorMask candidate_colors(std::size_t node) const { return cand_[rep_.at(node)]; }
    bool decided(std::size_t node) const { return decided_[rep_.at(node)] != 0; }
    int color_of(std::size_t node) const { return color_[rep_.at(node)]; }
    const SearchStats& stats() const { return stats_; }

    // Pins one node by hand and propagates; false means a contradiction
    // was reached.  Leaves the solver unusable for search().
    bool assume(std::size_t node, int color) {
        dirty_ = true;
        if (node >= n_) throw InvalidArgument("node index out of range");
        if (color < 0 || color >= r_) throw InvalidArgument("color out of range");
        std::size_t c = rep_[node];
        if (decided_[c]) throw PreconditionViolation("the node's class is already decided");
        cur_assumption_ = std::make_pair(u_.value(c), color);
        cur_depth_ += 1;
        if (!decide(c, color, Reason{Reason::Kind::Pin, 0})) return false;
        return propagate();
    }

    // Runs pending propagation to a fixpoint; false means contradiction.
    bool propagate() {
        dirty_ = true;
        if (root_contradiction_) return false;
        return run_queue();
    }

    SearchResult search(const SearchBudget& budget = {}) {
        require_pristine();
        budget_ = budget;
        SearchResult result;
        if (root_contradiction_) {
            result.status = SearchStatus::Unsatisfiable;
            result.proof = make_tree({*root_contradiction_});
            result.stats = stats_;
            return result;
        }
        std::vector<ProofRow> rows;
        bool sat = dfs(std::nullopt, 0, std::nullopt, rows);
        if (sat) {
            result.status = SearchStatus::Satisfiable;
            result.coloring = sat_coloring_;
        } else {
            result.status = SearchStatus::Unsatisfiable;
            result.proof = make_tree(std::move(rows));
        }
        result.stats = stats_;
        return result;
    }

    // Parallel-driver entry: propagates the seeds and stops at the first
    // branch point, reporting its options.
    RootFrontier root_frontier(const SearchBudget& budget = {}) {
        require_pristine();
        dirty_ = true;  // the root state stays in place for search_option()
        budget_ = budget;
        RootFrontier f;
        if (root_contradiction_) {
            f.contradiction = true;
            f.rows.push_back(*root_contradiction_);
            return f;
        }
        rows_sink_ = &f.rows;
        cur_assumption_ = std::nullopt;
        cur_depth_ = 0;
        if (!run_queue()) {
            f.contradiction = true;
            return f;
        }
        auto pick = pick_branch_class();
        if (!pick) {
            f.satisfiable = true;
            sat_coloring_.assign(n_, -1);
            for (std::size_t i = 0; i < n_; ++i) sat_coloring_[i] = color_[rep_[i]];
            return f;
        }
        ProofRow row = branch_row(*pick);
        frontier_class_ = *pick;
        frontier_depth_ = cur_depth_;
        f.branch_class = *pick;
        f.branch_node = row.node;
        f.branch_depth = cur_depth_;
        f.options = row.options;
        bool dead = row.kind == RowKind::Contradiction;
        f.rows.push_back(std::move(row));
        f.contradiction = dead;
        return f;
    }

    // Parallel-driver entry: explores one option of the root branch.
    // root_frontier() must have been called on this solver.
    OptionOutcome search_option(int option) {
        OptionOutcome out;
        out.satisfiable = dfs(std::make_pair(u_.value(frontier_class_), option),
                              frontier_depth_ + 1, std::make_pair(frontier_class_, option),
                              out.rows);
        if (out.satisfiable) out.coloring = sat_coloring_;
        out.stats = stats_;
        return out;
    }

    const std::vector<int>& last_coloring() const { return sat_coloring_; }

    ProofTree make_tree(std::vector<ProofRow> rows) const {
        return ProofTree{cs_.equation(), r_, seed_colors_out_, seed_equalities_out_,
                         std::move(rows)};
    }

  private:
    struct Reason {
        enum class Kind { Pin, Edge, Tuple } kind = Kind::Pin;
        std::size_t id = 0;
    };
    struct Removal {
        std::size_t cls;
        int color;
    };

    std::size_t index_of(const Rational& v) const {
        auto i = u_.index_of(v);
        if (!i) throw InvalidArgument("seed value " + v.str() + " is not in the universe");
        return *i;
    }

    std::size_t find(std::size_t i) {
        while (rep_[i] != i) i = rep_[i] = rep_[rep_[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b)
            rep_[b] = a;
        else
            rep_[a] = b;
    }

    Reason& slot(std::size_t cls, int c) { return slots_[cls * static_cast<std::size_t>(r_) + c]; }
    const Reason& slot(std::size_t cls, int c) const {
        return slots_[cls * static_cast<std::size_t>(r_) + c];
    }

    void apply_color_seeds(const std::vector<SeedSpec>& seeds) {
        bool any_pin = false;
        for (const SeedSpec& s : seeds) any_pin = any_pin || std::holds_alternative<SeedPin>(s);
        if (!any_pin && !seed_equalities_out_.empty()) {
            // With equalities only, color names are interchangeable, so
            // the earliest nontrivial class may take color 0 outright.
            std::optional<std::size_t> cls;
            for (std::size_t i = 0; i < n_; ++i)
                if (rep_[i] != i && (!cls || rep_[i] < *cls)) cls = rep_[i];
            if (cls) {
                for (std::size_t j = 0; j < n_; ++j)
                    if (rep_[j] == *cls) seed_colors_out_.emplace_back(u_.value(j), 0);
                decide(*cls, 0, Reason{Reason::Kind::Pin, 0});
            }
            return;
        }
        for (const SeedSpec& s : seeds)
            if (const auto* pin = std::get_if<SeedPin>(&s)) {
                if (pin->color < 0 || pin->color >= r_)
                    throw InvalidArgument("seed color out of range");
                std::size_t cls = rep_[index_of(pin->value)];
                if (decided_[cls]) {
                    if (color_[cls] != pin->color)
                        throw InvalidArgument("conflicting color seeds for one class");
                    seed_colors_out_.emplace_back(pin->value, pin->color);
                    continue;
                }
                seed_colors_out_.emplace_back(pin->value, pin->color);
                decide(cls, pin->color, Reason{Reason::Kind::Pin, 0});
            }
    }

    // A constraint that no coloring can meet is refuted in one root row:
    // a solution tuple whose members all share the claim node's class
    // excludes every color at once.
    void find_root_contradiction() {
        std::optional<ProofRow> row;
        if (!cs_.universal().empty()) {
            const UniversalTuple& t = cs_.universal().front();
            row = universal_row(u_.value(t.node), t.witness.values);
        }
        if (!row)
            for (const RatioEdge& e : cs_.edges()) {
                if (rep_[e.from] != rep_[e.to]) continue;
                for (const ForbiddenRatio& f : forbidden_ratios(cs_.equation()))
                    if (f.ratio == e.ratio) {
                        std::vector<Rational> scaled = f.witness;
                        for (Rational& v : scaled) v *= u_.value(e.from);
                        row = universal_row(u_.value(rep_[e.from]), scaled);
                        break;
                    }
                if (row) break;
            }
        if (!row)
            for (std::size_t t = 0; t < tuple_reps_.size(); ++t)
                if (tuple_reps_[t].size() == 1) {
                    row = universal_row(u_.value(tuple_reps_[t][0]),
                                        cs_.tuples()[t].witness.values);
                    break;
                }
        root_contradiction_ = std::move(row);
    }

    ProofRow universal_row(const Rational& node, const std::vector<Rational>& witness) const {
        ProofRow row;
        row.depth = 0;
        row.node = node;
        row.kind = RowKind::Contradiction;
        for (int c = 0; c < r_; ++c) row.reasons.emplace(c, TupleReason{witness});
        return row;
    }

    void require_pristine() const {
        if (dirty_)
            throw PreconditionViolation("search needs a solver without hand-made assumptions");
    }

    bool decide(std::size_t cls, int k, Reason why) {
        if (++stats_.decisions > budget_.max_decisions)
            throw BudgetExceeded("decision budget exhausted", stats_.branches, stats_.decisions,
                                 n_);
        if (decided_[cls]) throw PreconditionViolation("class decided twice");
        if (!(cand_[cls] & (ColorMask{1} << k))) {
            emit_pinned_contradiction(cls, k);
            return false;
        }
        decided_[cls] = 1;
        color_[cls] = k;
        if (used_count_[static_cast<std::size_t>(k)]++ == 0) used_mask_ |= ColorMask{1} << k;
        decision_trail_.push_back(cls);
        ColorMask rest = cand_[cls] & ~(ColorMask{1} << k);
        while (rest) {
            int c = std::countr_zero(rest);
            rest &= rest - 1;
            remove(cls, c, why);  // cannot empty the set: k stays
        }
        queue_.push_back(cls);
        return true;
    }

    bool remove(std::size_t cls, int c, Reason why) {
        ColorMask bit = ColorMask{1} << c;
        if (!(cand_[cls] & bit)) return true;
        cand_[cls] &= ~bit;
        trail_.push_back(Removal{cls, c});
        slot(cls, c) = why;
        ColorMask left = cand_[cls];
        if (left == 0) {
            emit_contradiction(cls);
            return false;
        }
        if (!decided_[cls] && (left & (left - 1)) == 0) {
            int k = std::countr_zero(left);
            emit_forced(cls, k);
            return decide(cls, k, Reason{Reason::Kind::Pin, 0});
        }
        return true;
    }

    bool run_queue() {
        while (qhead_ < queue_.size()) {
            std::size_t v = queue_[qhead_++];
            ++stats_.propagations;
            int k = color_[v];
            for (std::size_t e : class_edges_[v]) {
                const RatioEdge& edge = cs_.edges()[e];
                std::size_t a = rep_[edge.from], b = rep_[edge.to];
                std::size_t w = a == v ? b : a;
                if (!remove(w, k, Reason{Reason::Kind::Edge, e})) return drain_fail();
            }
            for (std::size_t t : class_tuples_[v]) {
                std::size_t open = 0, lone = 0;
                bool all_k = true;
                for (std::size_t m : tuple_reps_[t]) {
                    if (!decided_[m]) {
                        lone = m;
                        if (++open > 1) break;
                    } else if (color_[m] != k) {
                        all_k = false;
                        break;
                    }
                }
                if (!all_k || open > 1) continue;
                std::size_t target = open == 1 ? lone : v;
                if (!remove(target, k, Reason{Reason::Kind::Tuple, t})) return drain_fail();
            }
        }
        queue_.clear();
        qhead_ = 0;
        return true;
    }

    bool drain_fail() {
        queue_.clear();
        qhead_ = 0;
        return false;
    }

    std::optional<std::size_t> pick_branch_class() const {
        std::optional<std::size_t> best;
        int best_count = max_colors + 1;
        for (std::size_t i = 0; i < n_; ++i) {
            if (rep_[i] != i || decided_[i]) continue;
            int count = std::popcount(cand_[i]);
            if (count < best_count) {
                best_count = count;
                best = i;
            }
        }
        return best;
    }

    ProofReason build_reason(std::size_t cls, int c) const {
        const Reason& why = slot(cls, c);
        switch (why.kind) {
            case Reason::Kind::Pin: return SeedReason{};
            case Reason::Kind::Edge: {
                const RatioEdge& e = cs_.edges()[why.id];
                if (rep_[e.to] == cls) return RatioReason{u_.value(e.from), e.ratio};
                return RatioReason{u_.value(e.to), e.ratio.inverse()};
            }
            case Reason::Kind::Tuple: return TupleReason{cs_.tuples()[why.id].witness.values};
        }
        return SeedReason{};
    }

    void emit_forced(std::size_t cls, int k) {
        ProofRow row;
        row.depth = cur_depth_;
        row.assumption = cur_assumption_;
        row.node = u_.value(cls);
        row.kind = RowKind::ForcedColor;
        row.options = {k};
        for (int c = 0; c < r_; ++c)
            if (c != k) row.reasons.emplace(c, build_reason(cls, c));
        rows_sink_->push_back(std::move(row));
        cur_assumption_ = std::make_pair(u_.value(cls), k);
        cur_depth_ += 1;
    }

    void emit_contradiction(std::size_t cls) {
        ProofRow row;
        row.depth = cur_depth_;
        row.assumption = cur_assumption_;
        row.node = u_.value(cls);
        row.kind = RowKind::Contradiction;
        for (int c = 0; c < r_; ++c) row.reasons.emplace(c, build_reason(cls, c));
        rows_sink_->push_back(std::move(row));
    }

    // The class is pinned to a color it can no longer take: that color
    // keeps its recorded reason, all others follow from the pin itself.
    void emit_pinned_contradiction(std::size_t cls, int k) {
        ProofRow row;
        row.depth = cur_depth_;
        row.assumption = cur_assumption_;
        row.node = u_.value(cls);
        row.kind = RowKind::Contradiction;
        for (int c = 0; c < r_; ++c) {
            if (c == k)
                row.reasons.emplace(c, build_reason(cls, c));
            else
                row.reasons.emplace(c, SeedReason{});
        }
        rows_sink_->push_back(std::move(row));
    }

    // Branch row over the undecided class: colors outside the candidate
    // set keep their recorded reasons; fresh candidate colors beyond the
    // least fresh one are interchangeable with it and are not explored.
    ProofRow branch_row(std::size_t cls) {
        ColorMask cand = cand_[cls];
        ColorMask fresh_bit = 0;
        ColorMask unused = full_ & ~used_mask_;
        if (unused) fresh_bit = unused & (~unused + 1);
        ColorMask allowed = cand & (used_mask_ | fresh_bit);

        ProofRow row;
        row.depth = cur_depth_;
        row.assumption = cur_assumption_;
        row.node = u_.value(cls);
        for (int c = 0; c < r_; ++c) {
            ColorMask bit = ColorMask{1} << c;
            if (!(cand & bit))
                row.reasons.emplace(c, build_reason(cls, c));
            else if (!(allowed & bit))
                row.reasons.emplace(c, SymmetryReason{});
        }
        if (allowed == 0) {
            row.kind = RowKind::Contradiction;
        } else if ((allowed & (allowed - 1)) == 0) {
            row.kind = RowKind::ForcedColor;
            row.options = {std::countr_zero(allowed)};
        } else {
            row.kind = RowKind::ForcedSet;
            ColorMask rest = allowed;
            while (rest) {
                row.options.push_back(std::countr_zero(rest));
                rest &= rest - 1;
            }
        }
        return row;
    }

    bool dfs(std::optional<std::pair<Rational, int>> assumption, int depth,
             std::optional<std::pair<std::size_t, int>> pin, std::vector<ProofRow>& out) {
        std::size_t tmark = trail_.size(), dmark = decision_trail_.size();
        rows_sink_ = &out;
        cur_assumption_ = std::move(assumption);
        cur_depth_ = depth;

        bool ok = true;
        if (pin) ok = decide(pin->first, pin->second, Reason{Reason::Kind::Pin, 0});
        if (ok) ok = run_queue();

        bool sat = false;
        if (ok) {
            auto pick = pick_branch_class();
            if (!pick) {
                sat = true;
                sat_coloring_.assign(n_, -1);
                for (std::size_t i = 0; i < n_; ++i) sat_coloring_[i] = color_[rep_[i]];
            } else {
                if (++stats_.branches > budget_.max_branches)
                    throw BudgetExceeded("branch budget exhausted", stats_.branches,
                                         stats_.decisions, n_);
                ProofRow row = branch_row(*pick);
                Rational node = row.node;
                RowKind kind = row.kind;
                std::vector<int> options = row.options;
                out.push_back(std::move(row));
                if (kind != RowKind::Contradiction) {
                    int child_depth = cur_depth_ + 1;
                    for (int c : options) {
                        sat = dfs(std::make_pair(node, c), child_depth,
                                  std::make_pair(*pick, c), out);
                        if (sat) break;
                    }
                }
            }
        }

        while (trail_.size() > tmark) {
            const Removal& rm = trail_.back();
            cand_[rm.cls] |= ColorMask{1} << rm.color;
            trail_.pop_back();
        }
        while (decision_trail_.size() > dmark) {
            std::size_t cls = decision_trail_.back();
            decision_trail_.pop_back();
            int k = color_[cls];
            if (--used_count_[static_cast<std::size_t>(k)] == 0)
                used_mask_ &= ~(ColorMask{1} << k);
            decided_[cls] = 0;
            color_[cls] = -1;
        }
        return sat;
    }

    const NodeUniverse& u_;
    const ConstraintSet& cs_;
    int r_;
    std::size_t n_;
    ColorMask full_ = 0;

    std::vector<std::size_t> rep_;
    std::vector<ColorMask> cand_;
    std::vector<int> color_;
    std::vector<char> decided_;
    std::vector<Reason> slots_;
    std::vector<std::vector<std::size_t>> class_edges_;
    std::vector<std::vector<std::size_t>> class_tuples_;
    std::vector<std::vector<std::size_t>> tuple_reps_;

    std::vector<Removal> trail_;
    std::vector<std::size_t> decision_trail_;
    std::vector<std::size_t> queue_;
    std::size_t qhead_ = 0;
    std::vector<std::uint64_t> used_count_;
    ColorMask used_mask_ = 0;

    std::vector<ProofRow> rows_;
    std::vector<ProofRow>* rows_sink_ = nullptr;
    std::optional<std::pair<Rational, int>> cur_assumption_;
    int cur_depth_ = 0;

    std::vector<std::pair<Rational, int>> seed_colors_out_;
    std::vector<std::vector<Rational>> seed_equalities_out_;
    std::optional<ProofRow> root_contradiction_;

    SearchBudget budget_;
    SearchStats stats_;
    std::vector<int> sat_coloring_;
    bool dirty_ = false;

    std::size_t frontier_class_ = 0;
    int frontier_depth_ = 0;
};

// Searches the root options concurrently with one fresh solver per
// option and stitches the row blocks back in option order, so the
// resulting table and verdict match the sequential search exactly.
inline SearchResult search_parallel(const NodeUniverse& universe,
                                    const ConstraintSet& constraints, int colors,
                                    const std::vector<SeedSpec>& seeds,
                                    const SearchBudget& budget = {},
                                    unsigned workers = 0) {
    (void)workers;  // one task per root option; the pool size is the runtime's affair
    ColorSolver root(universe, constraints, colors, seeds);
    RootFrontier frontier = root.root_frontier(budget);
    SearchResult result;
    result.stats = root.stats();
    if (frontier.contradiction) {
        result.status = SearchStatus::Unsatisfiable;
        result.proof = root.make_tree(std::move(frontier.rows));
        return result;
    }
    if (frontier.satisfiable) {
        result.status = SearchStatus::Satisfiable;
        result.coloring = root.last_coloring();
        return result;
    }

    std::vector<std::future<OptionOutcome>> futures;
    for (int option : frontier.options)
        futures.push_back(std::async(std::launch::async, [&, option]() {
            ColorSolver worker(universe, constraints, colors, seeds);
            worker.root_frontier(budget);
            return worker.search_option(option);
        }));

    std::vector<OptionOutcome> outcomes;
    outcomes.reserve(futures.size());
    for (auto& f : futures) outcomes.push_back(f.get());

    for (const OptionOutcome& o : outcomes) {
        result.stats.branches += o.stats.branches;
        result.stats.decisions += o.stats.decisions;
        result.stats.propagations += o.stats.propagations;
    }
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (!outcomes[k].satisfiable) continue;
        result.status = SearchStatus::Satisfiable;
        result.coloring = outcomes[k].coloring;
        return result;
    }
    result.status = SearchStatus::Unsatisfiable;
    std::vector<ProofRow> rows = std::move(frontier.rows);
    for (OptionOutcome& o : outcomes)
        for (ProofRow& row : o.rows) rows.push_back(std::move(row));
    result.proof = root.make_tree(std::move(rows));
    return result;
}

// All colorings of the universe with no constraint violation, one
// representative per color permutation class, in lexicographic order.
// Assigns colors in canonical node order; a color is eligible only if
// it is at most one past the colors already in use, which enumerates
// exactly the first-occurrence canonical forms.
inline std::vector<std::vector<int>> enumerate_colorings(const NodeUniverse& universe,
                                                         const ConstraintSet& constraints,
                                                         int colors,
                                                         std::uint64_t max_colorings = 1'000'000,
                                                         std::uint64_t max_steps = 100'000'000) {
    if (colors < 1 || colors > max_colors)
        throw InvalidArgument("color count must lie in [1, " + std::to_string(max_colors) + "]");
    std::vector<std::vector<int>> out;
    if (!constraints.universal().empty()) return out;
    std::size_t n = universe.size();
    if (n == 0) return out;

    // Backward adjacency: a constraint is checked at its last node.
    std::vector<std::vector<std::size_t>> back_edges(n);
    for (const RatioEdge& e : constraints.edges())
        back_edges[std::max(e.from, e.to)].push_back(std::min(e.from, e.to));
    std::vector<std::vector<const NaeTuple*>> back_tuples(n);
    for (const NaeTuple& t : constraints.tuples())
        back_tuples[t.members.back()].push_back(&t);

    std::vector<int> assign(n, -1);
    std::uint64_t steps = 0;
    auto rec = [&](auto&& self, std::size_t i, int used) -> void {
        if (i == n) {
            if (out.size() == max_colorings)
                throw BudgetExceeded("coloring budget exhausted", 0, steps, n);
            out.push_back(assign);
            return;
        }
        int limit = std::min(colors - 1, used);
        for (int c = 0; c <= limit; ++c) {
            if (++steps > max_steps)
                throw BudgetExceeded("enumeration step budget exhausted", 0, steps, n);
            bool ok = true;
            for (std::size_t other : back_edges[i])
                if (assign[other] == c) {
                    ok = false;
                    break;
                }
            if (ok)
                for (const NaeTuple* t : back_tuples[i]) {
                    bool mono = true;
                    for (std::size_t m : t->members)
                        if (m != i && assign[m] != c) {
                            mono = false;
                            break;
                        }
                    if (mono) {
                        ok = false;
                        break;
                    }
                }
            if (!ok) continue;
            assign[i] = c;
            self(self, i + 1, std::max(used, c + 1));
            assign[i] = -1;
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace radoq

#endif
