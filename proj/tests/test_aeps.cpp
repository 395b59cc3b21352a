#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "adasync/aeps.hpp"
#include "adasync/format.hpp"
#include "adasync/oracle.hpp"

using namespace adasync;

static Aeps load(const char* name) {
    std::ifstream f(std::string(FIXTURE_DIR "/") + name);
    REQUIRE(f);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_instance(os.str()).aeps();
}

TEST_CASE("enabled and fork semantics") {
    Aeps a = load("sat2.aeps");
    AepsConfig c = initial_config(a);
    CHECK(c.state == a.init);
    CHECK(c.stack == StackWord{a.bottom});
    CHECK(c.valuation == Valuation(2, 0));

    const AepsRule& fork_rule = a.rules[0];
    REQUIRE(enabled(a, fork_rule, c));
    auto kids = fork(a, fork_rule, c);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].valuation == Valuation{1, 0});
    CHECK(kids[1].valuation == Valuation{0, 1});

    // The guarded rules need their flag set.
    CHECK(!enabled(a, a.rules[1], c));
    CHECK(enabled(a, a.rules[1], kids[0]));
    CHECK(!enabled(a, a.rules[1], kids[1]));

    auto done = fork(a, a.rules[1], kids[0]);
    REQUIRE(done.size() == 1);
    CHECK(done[0] == accepting_config(a));
}

TEST_CASE("fork on a disabled rule throws") {
    Aeps a = load("sat2.aeps");
    CHECK_THROWS_AS(fork(a, a.rules[1], initial_config(a)), NotEnabled);
}

TEST_CASE("contradictory guard is never enabled") {
    Aeps a = load("contra.aeps");
    AepsConfig c = initial_config(a);
    CHECK(!enabled(a, a.rules[0], c));
    c.valuation = {1};
    CHECK(!enabled(a, a.rules[0], c));
    CHECK(bounded_aeps_run_search(a, Bounds{}) == OracleStatus::NoWithinBounds);
}

TEST_CASE("neps recognition") {
    CHECK(load("neps1.aeps").is_neps());
    CHECK(!load("sat2.aeps").is_neps());
}

TEST_CASE("normalization makes pushes distinct and preserves acceptance") {
    Aeps a = load("sat2.aeps");
    CHECK(!has_distinct_pushes(a));
    Aeps n = normalize_distinct_pushes(a);
    CHECK(has_distinct_pushes(n));
    // Already-distinct systems pass through untouched.
    CHECK(normalize_distinct_pushes(n).rules.size() == n.rules.size());

    CHECK(bounded_aeps_run_search(a, Bounds{}) == OracleStatus::Yes);
    CHECK(bounded_aeps_run_search(n, Bounds{}) == OracleStatus::Yes);
}

TEST_CASE("pda encoding requires distinct pushes") {
    CHECK_THROWS_AS(aeps_to_pda(load("sat2.aeps")), NotNormalized);
}

TEST_CASE("neps encodes to a deterministic pda") {
    Aeps a = load("neps1.aeps");
    AepsPdaInstance out = aeps_to_pda(a);
    CHECK(is_complete(out.pda));
    CHECK(is_deterministic(out.pda));
    // Root knowledge: init plus one zero-tracking state per variable.
    CHECK(out.root.states.size() == 1 + a.var_names.size());
}

TEST_CASE("encoding agrees with the direct run search") {
    Bounds bounds;
    bounds.depth_bound = 14;

    SUBCASE("satisfiable forking system: YES both ways") {
        Aeps a = normalize_distinct_pushes(load("sat2.aeps"));
        CHECK(bounded_aeps_run_search(a, bounds) == OracleStatus::Yes);
        AepsPdaInstance out = aeps_to_pda(a);
        GameResult r = bounded_game_solve(out.pda, out.root,
                                          WitnessKind::super_synchroniser(out.target), bounds);
        CHECK(r.yes());
        CHECK(check_witness(out.pda, out.root, WitnessKind::super_synchroniser(out.target),
                            *r.witness)
                  .ok);
    }
    SUBCASE("contradictory system: NO both ways") {
        Aeps a = load("contra.aeps");
        CHECK(bounded_aeps_run_search(a, bounds) == OracleStatus::NoWithinBounds);
        AepsPdaInstance out = aeps_to_pda(a);
        GameResult r = bounded_game_solve(out.pda, out.root,
                                          WitnessKind::super_synchroniser(out.target), bounds);
        CHECK(!r.yes());
    }
    SUBCASE("single-branch system: YES both ways") {
        Aeps a = load("neps1.aeps");
        CHECK(bounded_aeps_run_search(a, bounds) == OracleStatus::Yes);
        AepsPdaInstance out = aeps_to_pda(a);
        GameResult r = bounded_game_solve(out.pda, out.root,
                                          WitnessKind::super_synchroniser(out.target), bounds);
        CHECK(r.yes());
    }
}
