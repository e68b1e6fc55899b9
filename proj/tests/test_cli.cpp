#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "radoq/cli.hpp"

using namespace radoq;

namespace {

struct CliRun {
    int status = 0;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun r;
    r.status = dispatch(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

const std::string small_universe = R"({"elements":["1","2","3","4"]})";

}  // namespace

TEST_CASE("equation strings cover the family form and coefficient lists") {
    CHECK(parse_equation("E(2,3)") ==
          LinearEquation({Rational(1), Rational(2), Rational(-4)}));
    CHECK(parse_equation("e(3/2, 3)") ==
          LinearEquation({Rational(1), Rational(3, 2), Rational(-9, 4)}));
    CHECK(parse_equation("1, 1, 1, -4") ==
          LinearEquation({Rational(1), Rational(1), Rational(1), Rational(-4)}));
    CHECK_THROWS_AS(parse_equation(""), InvalidArgument);
    CHECK_THROWS_AS(parse_equation("E(2)"), InvalidArgument);
    CHECK_THROWS_AS(parse_equation("E(0,3)"), InvalidArgument);
    CHECK_THROWS_AS(parse_equation("E(2,1)"), InvalidArgument);
    CHECK_THROWS_AS(parse_equation("1,x,3"), InvalidRational);
    CHECK_THROWS_AS(parse_equation("1"), DegenerateEquation);
}

TEST_CASE("seed strings split into ties and pins") {
    std::vector<SeedSpec> tie = parse_seed("c(1)=c(3)");
    REQUIRE(tie.size() == 1);
    CHECK(std::get<SeedEquality>(tie[0]).values == std::vector<Rational>{Rational(1), Rational(3)});

    std::vector<SeedSpec> pin = parse_seed("c(2)=1");
    REQUIRE(pin.size() == 1);
    CHECK(std::get<SeedPin>(pin[0]).value == Rational(2));
    CHECK(std::get<SeedPin>(pin[0]).color == 1);

    std::vector<SeedSpec> both = parse_seed("c(1)=c(3)=0");
    REQUIRE(both.size() == 2);
    CHECK(std::get<SeedEquality>(both[0]).values.size() == 2);
    CHECK(std::get<SeedPin>(both[1]).value == Rational(1));
    CHECK(std::get<SeedPin>(both[1]).color == 0);

    CHECK_THROWS_AS(parse_seed("c(1)"), InvalidArgument);
    CHECK_THROWS_AS(parse_seed("5"), InvalidArgument);
    CHECK_THROWS_AS(parse_seed("c(1)=0=c(3)"), InvalidArgument);
    CHECK_THROWS_AS(parse_seed("c(1/x)=1"), InvalidRational);

    std::vector<SeedSpec> spaced = parse_seed(" c( -8/3 ) = c(2) ");
    REQUIRE(spaced.size() == 1);
    CHECK(std::get<SeedEquality>(spaced[0]).values.front() == Rational(-8, 3));
}

TEST_CASE("coloring strings cover the compact families") {
    CHECK(eval(parse_coloring("cpn:2:3"), Rational(12)) == 2);
    CHECK(eval(parse_coloring("cpvn:2:2:2"), Rational(4)) == 1);
    CHECK(eval(parse_coloring("cp:5"), Rational(2)) == 2);
    CHECK(eval(parse_coloring("c4pi:0:1:2"), Rational(4)) == 1);
    CHECK_THROWS_AS(parse_coloring("cpn:2"), InvalidArgument);
    CHECK_THROWS_AS(parse_coloring("cpn:2:x"), InvalidArgument);
    CHECK_THROWS_AS(parse_coloring("mystery:1"), InvalidArgument);
    CHECK_THROWS_AS(parse_coloring("@" + temp_path("radoq_cli_missing.json")), InvalidArgument);

    std::string path = temp_path("radoq_cli_coloring.json");
    write_text_file(path, coloring_to_json(ExplicitColoring({Rational(5)}, {3})).dump());
    CHECK(eval(parse_coloring("@" + path), Rational(5)) == 3);
    std::remove(path.c_str());
}

TEST_CASE("default arenas scale with the color count") {
    NodeUniverse two = default_universe(make_equation_E(Rational(2), 3), 2);
    CHECK(two.size() > 300);
    CHECK(two.contains(Rational(-8)));
    CHECK(two.contains(Rational(3, 2)));

    LinearEquation xyz4w({Rational(1), Rational(1), Rational(1), Rational(-4)});
    NodeUniverse four = default_universe(xyz4w, 4);
    CHECK(four.size() == 243);
    CHECK_FALSE(four.contains(Rational(-1)));
    CHECK(four.contains(Rational(27, 8)));
    CHECK(four.contains(Rational(11)));
}

TEST_CASE("sha256 matches the published test vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    CHECK(sha256_hex(std::string(1'000'000, 'a')) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("the cache store round-trips and shrugs off corruption") {
    std::string dir = temp_path("radoq_cli_cache");
    std::filesystem::remove_all(dir);
    CacheStore store(dir);
    REQUIRE(store.enabled());
    CHECK_FALSE(store.load("deadbeef").has_value());
    store.store("deadbeef", Json{{"status", 0}, {"body", "hello"}});
    auto hit = store.load("deadbeef");
    REQUIRE(hit.has_value());
    CHECK((*hit)["body"] == "hello");

    write_text_file(store.entry_path("deadbeef"), "{nope");
    std::ostringstream warn;
    CHECK_FALSE(store.load("deadbeef", &warn).has_value());
    CHECK(warn.str().find("corrupt") != std::string::npos);

    CacheStore disabled("");
    CHECK_FALSE(disabled.enabled());
    disabled.store("k", Json{{"x", 1}});
    CHECK_FALSE(disabled.load("k").has_value());
    std::filesystem::remove_all(dir);
}

TEST_CASE("ratios reports the canonical representatives") {
    CliRun r = run_cli({"ratios", "E(2,4)"});
    CHECK(r.status == 0);
    Json doc = parse_json(r.out);
    CHECK(doc["ratios"] == Json::array({"2", "3/2", "4/3", "5/4", "6/5", "7/6", "8/7"}));

    r = run_cli({"ratios", "1,1,1,-4"});
    CHECK(r.status == 0);
    CHECK(parse_json(r.out)["ratios"] == Json::array({"2", "3/2", "4/3"}));
}

TEST_CASE("eval and catalog answer directly") {
    CliRun r = run_cli({"eval", "--coloring", "cpn:2:3", "--value", "12"});
    CHECK(r.status == 0);
    CHECK(parse_json(r.out)["color"] == 2);

    r = run_cli({"catalog"});
    CHECK(r.status == 0);
    Json families = parse_json(r.out)["families"];
    CHECK(families.size() == 7);

    r = run_cli({"catalog", "cpn"});
    CHECK(parse_json(r.out)["families"].size() == 1);

    r = run_cli({"catalog", "unheard-of"});
    CHECK(r.status == 64);
}

TEST_CASE("verify separates free colorings from hits") {
    CliRun free = run_cli({"verify", "--coloring", "cpn:2:3", "--eq", "E(2,3)", "--universe",
                           small_universe});
    CHECK(free.status == 0);
    Json doc = parse_json(free.out);
    CHECK(doc["free"] == true);
    CHECK(doc["hits"].empty());

    std::string path = temp_path("radoq_cli_mono.json");
    write_text_file(path, coloring_to_json(ExplicitColoring({Rational(1), Rational(2), Rational(4)},
                                                            {0, 0, 0}))
                              .dump());
    CliRun hits = run_cli({"verify", "--coloring", "@" + path, "--eq", "E(2,3)", "--universe",
                           R"({"elements":["1","2","4"]})"});
    CHECK(hits.status == 1);
    doc = parse_json(hits.out);
    CHECK(doc["free"] == false);
    CHECK(doc["hits"].size() > 0);
    std::remove(path.c_str());
}

TEST_CASE("verify --strong aggregates the sub-multiset reports") {
    CliRun r = run_cli({"verify", "--coloring", "cpn:2:3", "--eq", "E(2,3)", "--universe",
                        small_universe, "--strong"});
    Json doc = parse_json(r.out);
    REQUIRE(doc.contains("subsets"));
    bool all_free = true;
    for (const auto& sub : doc["subsets"]) all_free = all_free && sub["free"].get<bool>();
    CHECK(doc["free"] == all_free);
    CHECK(r.status == (all_free ? 0 : 1));
}

TEST_CASE("prove writes a checkable certificate and exit statuses") {
    CliRun unsat = run_cli({"prove", "--eq", "E(2,3)", "--colors", "2", "--universe",
                            small_universe, "--seed", "c(1)=0"});
    CHECK(unsat.status == 0);
    Json doc = parse_json(unsat.out);
    CHECK(doc["status"] == "unsatisfiable");
    ProofTree tree = proof_from_json(doc["proof"]);
    CHECK(check_proof_table(tree).ok());
    CHECK(tree.rows.size() >= 2);

    CliRun sat = run_cli({"prove", "--eq", "E(2,3)", "--colors", "3", "--universe",
                          small_universe});
    CHECK(sat.status == 1);
    doc = parse_json(sat.out);
    CHECK(doc["status"] == "satisfiable");
    CHECK(doc["coloring"].size() == 4);
}

TEST_CASE("prove renders latex on demand and rejects it for sat runs") {
    CliRun tex = run_cli({"prove", "--eq", "E(2,3)", "--colors", "2", "--universe",
                          small_universe, "--format", "latex"});
    CHECK(tex.status == 0);
    CHECK(tex.out.find("\\begin{longtable}") != std::string::npos);

    CliRun sat = run_cli({"prove", "--eq", "E(2,3)", "--colors", "3", "--universe",
                          small_universe, "--format", "latex"});
    CHECK(sat.status == 64);
}

TEST_CASE("prove --out writes the document to a file") {
    std::string path = temp_path("radoq_cli_out.json");
    CliRun r = run_cli({"prove", "--eq", "E(2,3)", "--colors", "2", "--universe", small_universe,
                        "--out", path});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    CHECK(parse_json(read_text_file(path))["status"] == "unsatisfiable");

    // the written document feeds straight back into the table commands
    CHECK(run_cli({"check-table", path}).status == 0);
    CliRun tex = run_cli({"export", path});
    CHECK(tex.status == 0);
    CHECK(tex.out.find("\\begin{longtable}") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("budget exhaustion exits 70 with partial stats on stderr") {
    CliRun r = run_cli({"prove", "--eq", "E(2,3)", "--colors", "2", "--universe", small_universe,
                        "--max-branches", "0"});
    CHECK(r.status == 70);
    Json stats = parse_json(r.err);
    CHECK(stats["error"] == "budget");
    CHECK(stats["branches"].get<std::uint64_t>() >= 1);
}

TEST_CASE("the prove cache serves identical bytes and survives corruption") {
    std::string dir = temp_path("radoq_cli_prove_cache");
    std::filesystem::remove_all(dir);
    REQUIRE(setenv("RADOQ_CACHE_DIR", dir.c_str(), 1) == 0);
    REQUIRE(setenv("RADOQ_LOG", "1", 1) == 0);
    std::vector<std::string> argv = {"prove", "--eq", "E(2,3)", "--colors", "2", "--universe",
                                     small_universe};
    CliRun first = run_cli(argv);
    CliRun second = run_cli(argv);
    CHECK(first.status == 0);
    CHECK(second.status == 0);
    CHECK(first.out == second.out);
    CHECK(first.err.find("cache miss") != std::string::npos);
    CHECK(second.err.find("cache hit") != std::string::npos);

    // different budgets key different entries
    std::vector<std::string> other = argv;
    other.push_back("--max-branches");
    other.push_back("999");
    CliRun third = run_cli(other);
    CHECK(third.err.find("cache miss") != std::string::npos);

    for (const auto& entry : std::filesystem::directory_iterator(dir))
        write_text_file(entry.path().string(), "garbage");
    CliRun fourth = run_cli(argv);
    CHECK(fourth.status == 0);
    CHECK(fourth.out == first.out);
    CHECK(fourth.err.find("corrupt") != std::string::npos);

    std::filesystem::remove_all(dir);
    CliRun fifth = run_cli(argv);
    CHECK(fifth.status == 0);
    CHECK(fifth.out == first.out);

    unsetenv("RADOQ_CACHE_DIR");
    unsetenv("RADOQ_LOG");
    std::filesystem::remove_all(dir);
}

TEST_CASE("parallel proves mark nondeterministic trees unless equivalence is pledged") {
    std::vector<std::string> base = {"prove", "--eq", "E(2,3)", "--colors", "2", "--universe",
                                     small_universe, "--seed", "c(1)=0"};
    CliRun sequential = run_cli(base);

    std::vector<std::string> par = base;
    par.push_back("--parallel");
    par.push_back("2");
    CliRun parallel = run_cli(par);
    CHECK(parallel.status == 0);
    Json doc = parse_json(parallel.out);
    CHECK(doc["nondeterministic-tree"] == true);
    CHECK(doc["proof"] == parse_json(sequential.out)["proof"]);

    par.push_back("--sequential-equivalence");
    CliRun pledged = run_cli(par);
    doc = parse_json(pledged.out);
    CHECK_FALSE(doc.contains("nondeterministic-tree"));
    CHECK(doc["proof"] == parse_json(sequential.out)["proof"]);
}

TEST_CASE("enumerate counts canonical classes over the given universe") {
    CliRun r = run_cli({"enumerate", "--eq", "E(2,3)", "--colors", "2", "--universe",
                        small_universe});
    CHECK(r.status == 0);
    Json doc = parse_json(r.out);
    NodeUniverse u = universe_from_values({Rational(1), Rational(2), Rational(3), Rational(4)});
    LinearEquation eq = make_equation_E(Rational(2), 3);
    ConstraintSet cs = derive_constraints(eq, u);
    CHECK(doc["count"].get<std::size_t>() == enumerate_colorings(u, cs, 2).size());

    CliRun budget = run_cli({"enumerate", "--eq", "E(2,3)", "--colors", "3", "--universe",
                             small_universe, "--max-steps", "2"});
    CHECK(budget.status == 70);
}

TEST_CASE("check-table and export agree on the shipped table") {
    std::string table = std::string(RADOQ_SOURCE_DIR) + "/data/xyz4w_four_colors.json";
    CliRun check = run_cli({"check-table", table});
    CHECK(check.status == 0);
    Json doc = parse_json(check.out);
    CHECK(doc["ok"] == true);
    CHECK(doc["rows"] == 58);
    CHECK(doc["contradictions"] == 10);
    CHECK(doc["maxDepth"] == 11);

    CliRun tex = run_cli({"export", table});
    CHECK(tex.status == 0);
    CHECK(tex.out.find("\\begin{longtable}") != std::string::npos);
    CHECK(tex.out.find("$c(1) = c(3) = 0$") != std::string::npos);
}

TEST_CASE("check-table flags violations and export refuses them") {
    ProofTree tree = load_proof_file(std::string(RADOQ_SOURCE_DIR) +
                                     "/data/xyz4w_four_colors.json");
    tree.rows[5].node = Rational(7);
    std::string path = temp_path("radoq_cli_broken.json");
    save_proof_file(path, tree);

    CliRun check = run_cli({"check-table", path});
    CHECK(check.status == 1);
    Json doc = parse_json(check.out);
    CHECK(doc["ok"] == false);
    CHECK(doc["violations"].size() > 0);

    CliRun refused = run_cli({"export", path});
    CHECK(refused.status == 65);
    CHECK(refused.err.find("violations") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("usage and data errors map to the documented exit codes") {
    CHECK(run_cli({}).status == 64);
    CHECK(run_cli({"conjure"}).status == 64);
    CHECK(run_cli({"prove", "--eq", "E(2,3)"}).status == 64);
    CHECK(run_cli({"prove", "--eq", "E(2,3)", "--colors", "zero"}).status == 64);
    CHECK(run_cli({"prove", "--eq", "nonsense", "--colors", "2"}).status == 64);
    CHECK(run_cli({"prove", "--eq", "E(2,3)", "--colors", "0", "--universe", small_universe})
              .status == 64);
    CHECK(run_cli({"eval", "--coloring", "cpn:2:3", "--value", "0"}).status == 64);
    CHECK(run_cli({"--help"}).status == 0);
    CHECK(run_cli({"prove", "--help"}).status == 0);

    std::string path = temp_path("radoq_cli_bad.json");
    write_text_file(path, "{broken");
    CHECK(run_cli({"check-table", path}).status == 65);
    CHECK(run_cli({"prove", "--eq", "E(2,3)", "--colors", "2", "--universe", path}).status == 65);
    std::remove(path.c_str());
    CHECK(run_cli({"check-table", path}).status == 64);
}
