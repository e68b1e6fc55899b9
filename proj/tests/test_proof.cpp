#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "radoq/proof.hpp"

using namespace radoq;

namespace {

LinearEquation e23() { return make_equation_E(Rational(2), 3); }

ProofRow make_row(int depth, std::optional<std::pair<Rational, int>> assumption, Rational node,
                  RowKind kind, std::vector<int> options, std::map<int, ProofReason> reasons) {
    ProofRow row;
    row.depth = depth;
    row.assumption = std::move(assumption);
    row.node = std::move(node);
    row.kind = kind;
    row.options = std::move(options);
    row.reasons = std::move(reasons);
    return row;
}

std::size_t count_code(const ProofCheckReport& report, const std::string& code) {
    std::size_t n = 0;
    for (const ProofViolation& v : report.violations)
        if (v.code == code) ++n;
    return n;
}

// A complete refutation of two-coloring {1, 2, 3, 4} against x + 2y = 4z:
// color 1 first (its two candidate colors are interchangeable), then the
// chain 2, 4 is forced and 3 has no color left.
ProofTree chain_tree() {
    ProofTree t{e23(), 2, {}, {}, {}};
    t.rows.push_back(make_row(0, std::nullopt, Rational(1), RowKind::ForcedColor, {0},
                              {{1, SymmetryReason{}}}));
    t.rows.push_back(make_row(1, std::make_pair(Rational(1), 0), Rational(2),
                              RowKind::ForcedColor, {1}, {{0, RatioReason{Rational(1), Rational(2)}}}));
    t.rows.push_back(make_row(2, std::make_pair(Rational(2), 1), Rational(4),
                              RowKind::ForcedColor, {0}, {{1, RatioReason{Rational(2), Rational(2)}}}));
    t.rows.push_back(make_row(3, std::make_pair(Rational(4), 0), Rational(3),
                              RowKind::Contradiction, {},
                              {{0, RatioReason{Rational(4), Rational(3, 4)}},
                               {1, RatioReason{Rational(2), Rational(3, 2)}}}));
    return t;
}

// The same refutation started from the color seed on 1 instead of a
// branch, exercising the pinned-class justification.
ProofTree seeded_chain_tree() {
    ProofTree t{e23(), 2, {{Rational(1), 0}}, {}, {}};
    t.rows.push_back(
        make_row(0, std::nullopt, Rational(1), RowKind::ForcedColor, {0}, {{1, SeedReason{}}}));
    t.rows.push_back(make_row(1, std::make_pair(Rational(1), 0), Rational(2),
                              RowKind::ForcedColor, {1}, {{0, RatioReason{Rational(1), Rational(2)}}}));
    t.rows.push_back(make_row(2, std::make_pair(Rational(2), 1), Rational(4),
                              RowKind::ForcedColor, {0}, {{1, RatioReason{Rational(2), Rational(2)}}}));
    t.rows.push_back(make_row(3, std::make_pair(Rational(4), 0), Rational(3),
                              RowKind::Contradiction, {},
                              {{0, RatioReason{Rational(4), Rational(3, 4)}},
                               {1, RatioReason{Rational(2), Rational(3, 2)}}}));
    return t;
}

// A two-row refutation under seeds on 1 and 3 with a solution-tuple
// justification at the leaf.
ProofTree tuple_tree() {
    ProofTree t{e23(), 2, {{Rational(1), 0}, {Rational(3), 0}}, {}, {}};
    t.rows.push_back(make_row(0, std::nullopt, Rational(2), RowKind::ForcedColor, {1},
                              {{0, RatioReason{Rational(1), Rational(2)}}}));
    t.rows.push_back(make_row(
        1, std::make_pair(Rational(2), 1), Rational(4), RowKind::Contradiction, {},
        {{0, TupleReason{{Rational(4), Rational(4), Rational(3)}}},
         {1, RatioReason{Rational(2), Rational(2)}}}));
    return t;
}

// A branch whose two options both die on the same exhausted node.
ProofTree branch_tree() {
    ProofTree t{e23(), 2, {{Rational(1), 0}, {Rational(3), 1}}, {}, {}};
    t.rows.push_back(make_row(0, std::nullopt, Rational(7), RowKind::ForcedSet, {0, 1}, {}));
    std::map<int, ProofReason> dead{{0, RatioReason{Rational(1), Rational(2)}},
                                    {1, RatioReason{Rational(3), Rational(2, 3)}}};
    t.rows.push_back(make_row(1, std::make_pair(Rational(7), 0), Rational(2),
                              RowKind::Contradiction, {}, dead));
    t.rows.push_back(make_row(1, std::make_pair(Rational(7), 1), Rational(2),
                              RowKind::Contradiction, {}, dead));
    return t;
}

}  // namespace

TEST_CASE("the canonical ratio representative inverts proper fractions") {
    CHECK(ratio_representative(Rational(1, 2)) == Rational(2));
    CHECK(ratio_representative(Rational(3, 2)) == Rational(3, 2));
    CHECK(ratio_representative(Rational(-1, 3)) == Rational(-3));
    CHECK(ratio_representative(Rational(-2)) == Rational(-2));
    CHECK(ratio_representative(Rational(-1)) == Rational(-1));
    CHECK(ratio_representative(Rational(1)) == Rational(1));
}

TEST_CASE("a forced chain refutation verifies cleanly") {
    ProofCheckReport report = check_proof_table(chain_tree());
    CHECK(report.ok());
    CHECK(report.violations.empty());
    CHECK(report.rows_checked == 4);
    CHECK(report.contradictions == 1);
    CHECK(report.max_depth == 3);
}

TEST_CASE("a seeded chain refutation verifies cleanly") {
    CHECK(check_proof_table(seeded_chain_tree()).ok());
}

TEST_CASE("a refutation with a tuple justification verifies cleanly") {
    ProofCheckReport report = check_proof_table(tuple_tree());
    CHECK(report.ok());
    CHECK(report.contradictions == 1);
}

TEST_CASE("a branch with two refuted options verifies cleanly") {
    ProofCheckReport report = check_proof_table(branch_tree());
    CHECK(report.ok());
    CHECK(report.contradictions == 2);
}

TEST_CASE("a tuple whose members share the claim class excludes every color") {
    LinearEquation sum_two{{Rational(1), Rational(1), Rational(-2)}};
    ProofTree t{sum_two, 3, {}, {}, {}};
    TupleReason all_one{{Rational(1), Rational(1), Rational(1)}};
    t.rows.push_back(make_row(0, std::nullopt, Rational(1), RowKind::Contradiction, {},
                              {{0, all_one}, {1, all_one}, {2, all_one}}));
    ProofCheckReport report = check_proof_table(t);
    CHECK(report.ok());
    CHECK(report.max_depth == 0);
    CHECK(report.rows_checked == 1);
}

TEST_CASE("a corrupted tuple witness is rejected") {
    ProofTree t = tuple_tree();
    t.rows[1].reasons[0] = TupleReason{{Rational(4), Rational(4), Rational(5)}};
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "reason") >= 1);
    CHECK(report.violations.front().row == std::optional<std::size_t>{1});
}

TEST_CASE("a tuple witness missing the claim node is rejected") {
    ProofTree t = tuple_tree();
    t.rows[1].reasons[0] = TupleReason{{Rational(2), Rational(1), Rational(1)}};
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "reason") >= 1);
}

TEST_CASE("a ratio that does not land on the claim node is rejected") {
    ProofTree t = chain_tree();
    t.rows[1].reasons[0] = RatioReason{Rational(1), Rational(3, 2)};
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "reason") == 1);
}

TEST_CASE("a ratio outside the forbidden set is rejected") {
    ProofTree t = seeded_chain_tree();
    // 1 * 2 = 2 still lands on the claim, but 2 stays justified by a
    // ratio of 5 from a node nobody colored.
    t.rows[1].reasons[0] = RatioReason{Rational(2, 5), Rational(5)};
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "reason") >= 1);
}

TEST_CASE("a ratio from a partner with the wrong premise color is rejected") {
    ProofTree t = tuple_tree();
    // The partner 2 carries color 1 on this path, not color 0.
    t.rows[1].reasons = {{0, RatioReason{Rational(2), Rational(2)}},
                         {1, TupleReason{{Rational(4), Rational(4), Rational(3)}}}};
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "reason") == 2);
}

TEST_CASE("a pinned-class justification without a matching premise is rejected") {
    ProofTree t = tuple_tree();
    t.rows[0].reasons[0] = SeedReason{};
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "reason") == 1);
}

TEST_CASE("the interchangeability argument only covers colors above the least fresh one") {
    ProofTree t = chain_tree();
    for (ProofRow& row : t.rows) {
        if (row.assumption) row.assumption->second ^= 1;
        std::map<int, ProofReason> swapped;
        for (auto& [c, reason] : row.reasons) swapped.emplace(c ^ 1, std::move(reason));
        row.reasons = std::move(swapped);
        for (int& c : row.options) c ^= 1;
    }
    // The color-swapped table is internally consistent everywhere except
    // the first row, which now skips color 0 by symmetry although 0 is
    // itself the least fresh color.
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].code == "reason");
    CHECK(report.violations[0].row == std::optional<std::size_t>{0});
}

TEST_CASE("the interchangeability argument needs an unused color") {
    ProofTree t = branch_tree();
    t.rows[1].reasons[1] = SymmetryReason{};
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "reason") == 1);
}

TEST_CASE("a missing justification is reported as a coverage gap") {
    ProofTree t = chain_tree();
    t.rows[3].reasons.erase(1);
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "coverage") == 1);
}

TEST_CASE("a justification for a branch option is reported as a coverage overlap") {
    ProofTree t = chain_tree();
    t.rows[1].reasons.emplace(1, SeedReason{});
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "coverage") == 1);
}

TEST_CASE("a justification outside the color range is reported") {
    ProofTree t = tuple_tree();
    t.rows[1].reasons.emplace(5, SeedReason{});
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "coverage") == 1);
}

TEST_CASE("path assumptions pinning one class twice are rejected") {
    ProofTree t{e23(), 2, {}, {{Rational(1), Rational(2)}}, {}};
    t.rows.push_back(make_row(0, std::nullopt, Rational(1), RowKind::ForcedColor, {0},
                              {{1, SymmetryReason{}}}));
    t.rows.push_back(make_row(1, std::make_pair(Rational(1), 0), Rational(2),
                              RowKind::ForcedColor, {1}, {{0, RatioReason{Rational(1), Rational(2)}}}));
    t.rows.push_back(make_row(2, std::make_pair(Rational(2), 1), Rational(4),
                              RowKind::Contradiction, {},
                              {{0, RatioReason{Rational(2), Rational(2)}}, {1, SeedReason{}}}));
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].code == "premise");
    CHECK(report.violations[0].row == std::optional<std::size_t>{2});
}

TEST_CASE("equality seeds merge classes for ratio landing checks") {
    // With 1 and 2 equal, a ratio into 1 lands on the class of 2.
    ProofTree t{e23(), 2, {{Rational(2), 1}}, {{Rational(1), Rational(2)}}, {}};
    t.rows.push_back(make_row(0, std::nullopt, Rational(4), RowKind::ForcedColor, {0},
                              {{1, RatioReason{Rational(2), Rational(2)}}}));
    t.rows.push_back(make_row(1, std::make_pair(Rational(4), 0), Rational(1),
                              RowKind::Contradiction, {},
                              {{0, RatioReason{Rational(4), Rational(1, 2)}},
                               {1, RatioReason{Rational(1), Rational(2)}}}));
    // 4 * 1/2 = 2 sits in the claim class of 1, and 1 * 2 = 2 relates the
    // class to itself, so neither color is left for it once 4 holds 0.
    ProofCheckReport report = check_proof_table(t);
    CHECK(report.ok());
}

TEST_CASE("a forced row without its continuation is rejected") {
    ProofTree t = chain_tree();
    t.rows.pop_back();
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "shape") >= 1);
}

TEST_CASE("a continuation must assume the forced color") {
    ProofTree t = chain_tree();
    t.rows[1].assumption = std::make_pair(Rational(1), 1);
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "shape") >= 1);
}

TEST_CASE("a continuation must assume the claimed node") {
    ProofTree t = chain_tree();
    t.rows[1].assumption = std::make_pair(Rational(8), 0);
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "shape") >= 1);
}

TEST_CASE("a row whose depth skips a level is rejected") {
    ProofTree t = chain_tree();
    t.rows[2].depth = 4;
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "shape") >= 1);
}

TEST_CASE("branch continuations must take the options in ascending order") {
    ProofTree t = branch_tree();
    std::swap(t.rows[1].assumption, t.rows[2].assumption);
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "shape") >= 1);
}

TEST_CASE("option lists are validated per row kind") {
    ProofTree bad_set = branch_tree();
    bad_set.rows[0].options = {1, 0};
    CHECK(count_code(check_proof_table(bad_set), "shape") >= 1);

    ProofTree out_of_range = branch_tree();
    out_of_range.rows[0].options = {0, 5};
    CHECK(count_code(check_proof_table(out_of_range), "shape") >= 1);

    ProofTree contra_with_options = tuple_tree();
    contra_with_options.rows[1].options = {0};
    CHECK(count_code(check_proof_table(contra_with_options), "shape") >= 1);

    ProofTree forced_two = chain_tree();
    forced_two.rows[2].options = {0, 1};
    CHECK_FALSE(check_proof_table(forced_two).ok());
}

TEST_CASE("seed validation catches zeros, ranges, and conflicts") {
    ProofTree conflict = tuple_tree();
    conflict.seed_colors.emplace_back(Rational(1), 1);
    CHECK(count_code(check_proof_table(conflict), "seed") >= 1);

    ProofTree zero_pin = tuple_tree();
    zero_pin.seed_colors.emplace_back(Rational(0), 0);
    CHECK(count_code(check_proof_table(zero_pin), "seed") == 1);

    ProofTree range = tuple_tree();
    range.seed_colors.emplace_back(Rational(5), 7);
    CHECK(count_code(check_proof_table(range), "seed") == 1);

    ProofTree zero_eq = tuple_tree();
    zero_eq.seed_equalities.push_back({Rational(0), Rational(1)});
    CHECK(count_code(check_proof_table(zero_eq), "seed") == 1);
}

TEST_CASE("an equality seed conflicting with color seeds is rejected") {
    ProofTree t = tuple_tree();  // seeds pin 1 and 3 to 0
    t.seed_colors.emplace_back(Rational(5), 1);
    t.seed_equalities.push_back({Rational(1), Rational(5)});
    CHECK(count_code(check_proof_table(t), "seed") >= 1);
}

TEST_CASE("a table with no rows is rejected") {
    ProofTree t{e23(), 2, {}, {}, {}};
    ProofCheckReport report = check_proof_table(t);
    CHECK_FALSE(report.ok());
    CHECK(count_code(report, "shape") == 1);
}

TEST_CASE("a nonpositive color count is rejected") {
    ProofTree t{e23(), 0, {}, {}, {}};
    t.rows.push_back(make_row(0, std::nullopt, Rational(1), RowKind::Contradiction, {}, {}));
    CHECK(count_code(check_proof_table(t), "colors") == 1);
}

TEST_CASE("a zero claim node is rejected") {
    ProofTree t = tuple_tree();
    t.rows[0].node = Rational(0);
    CHECK(count_code(check_proof_table(t), "node") >= 1);
}

TEST_CASE("the first row must open the table at depth zero without an assumption") {
    ProofTree dangling = tuple_tree();
    dangling.rows[0].depth = 1;
    CHECK(count_code(check_proof_table(dangling), "shape") >= 1);

    ProofTree assumed = tuple_tree();
    assumed.rows[0].assumption = std::make_pair(Rational(1), 0);
    CHECK(count_code(check_proof_table(assumed), "shape") >= 1);

    ProofTree missing = tuple_tree();
    missing.rows[1].assumption.reset();
    CHECK(count_code(check_proof_table(missing), "shape") >= 1);
}
