#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "adasync/format.hpp"
#include "adasync/pda.hpp"
#include "util.hpp"

using namespace adasync;

static Pda load_run4() {
    std::ifstream f(FIXTURE_DIR "/run4.pda");
    std::ostringstream os;
    os << f.rdbuf();
    return parse_instance(os.str()).pda();
}

TEST_CASE("completion adds exactly the missing self loops") {
    Pda pda = load_run4();
    CHECK(is_complete(pda));
    // The fixture leaves (q, dia, bot) unspecified for every q.
    int self_loops = 0;
    for (const Rule& r : pda.rules)
        if (r.letter == pda.input("dia") && r.pop == pda.bottom) {
            CHECK(r.src == r.dst);
            CHECK(r.push == StackWord{pda.bottom});
            ++self_loops;
        }
    CHECK(self_loops == 4);
    CHECK(pda.rules.size() == 24);
    // Idempotent.
    CHECK(complete(pda).rules.size() == pda.rules.size());
}

TEST_CASE("determinism check") {
    Pda pda = load_run4();
    CHECK(is_deterministic(pda));
    Rule extra{pda.state("1"), pda.input("box"), pda.sym("red"), pda.state("2"), {}};
    pda.rules.push_back(extra);
    CHECK(!is_deterministic(pda));
}

TEST_CASE("bottom discipline validation") {
    Pda pda;
    pda.state_names = {"q"};
    pda.input_names = {"a"};
    pda.sym_names = {"s", "bot"};
    pda.bottom = 1;
    // Popping bottom but pushing a bottom-free word.
    pda.rules.push_back(Rule{0, 0, 1, 0, {0}});
    CHECK_THROWS_AS(pda.validate(), ValidationError);
    pda.rules.back().push = {0, 1};
    CHECK_NOTHROW(pda.validate());
    // Bottom inside a word popping a plain letter.
    pda.rules.push_back(Rule{0, 0, 0, 0, {1}});
    CHECK_THROWS_AS(pda.validate(), ValidationError);
}

TEST_CASE("observation classes partition the enabled transitions") {
    Pda pda = load_run4();
    StateSet all{0, 1, 2, 3};
    SymId bot = pda.bottom;
    LetterId box = pda.input("box");

    auto classes = obs_classes(pda, all, box, bot);
    REQUIRE(classes.size() == 2);
    // Canonical order is lexicographic in the pushed word, over declaration
    // order of the stack letters (red < blue < bot here).
    CHECK(classes[0].push == StackWord{pda.sym("red"), bot});
    CHECK(classes[1].push == StackWord{pda.sym("blue"), bot});
    CHECK(classes[0].targets == StateSet{0, 1});   // 3 -> 2, 4 -> 1
    CHECK(classes[1].targets == StateSet{2, 3});   // 1 -> 4, 2 -> 3
    size_t members = 0;
    for (const auto& c : classes) members += c.members.size();
    CHECK(members == transitions_from(pda, all, box, bot).size());
}

TEST_CASE("succ applies the class push word to the observed stack") {
    Pda pda = load_run4();
    PseudoConfig pc{{0, 1, 2, 3}, {pda.bottom}};
    auto next = succ(pda, pc, pda.input("box"));
    REQUIRE(next.size() == 2);
    CHECK(next[0].states == StateSet{0, 1});
    CHECK(next[0].stack == StackWord{pda.sym("red"), pda.bottom});
    CHECK(next[1].states == StateSet{2, 3});
    CHECK(next[1].stack == StackWord{pda.sym("blue"), pda.bottom});

    // dia from {1,2} on red: state 2 pushes red red (first class), state 1
    // pushes blue red (second class).
    PseudoConfig pc2{{0, 1}, {pda.sym("red"), pda.bottom}};
    auto next2 = succ(pda, pc2, pda.input("dia"));
    REQUIRE(next2.size() == 2);
    CHECK(next2[0].states == StateSet{0});
    CHECK(next2[0].stack == StackWord{pda.sym("red"), pda.sym("red"), pda.bottom});
    CHECK(next2[1].states == StateSet{1});
    CHECK(next2[1].stack == StackWord{pda.sym("blue"), pda.sym("red"), pda.bottom});
}

TEST_CASE("state set helper sorts and dedupes") {
    CHECK(make_state_set({3, 1, 3, 2}) == StateSet{1, 2, 3});
}

TEST_CASE("random deterministic PDAs stay deterministic after completion") {
    std::mt19937 rng(1);
    for (int i = 0; i < 50; ++i) {
        Pda pda = testutil::random_det_pda(rng, 4, 2, 3);
        CHECK(is_complete(pda));
        CHECK(is_deterministic(pda));
    }
}

TEST_CASE("succ preserves the stack discipline") {
    std::mt19937 rng(2);
    for (int i = 0; i < 30; ++i) {
        Pda pda = complete(testutil::random_pda(rng, 4, 2, 3, 4));
        PseudoConfig pc{{0, 1, 2, 3}, {pda.bottom}};
        for (int step = 0; step < 3; ++step) {
            auto nexts = succ(pda, pc, step % pda.num_inputs());
            REQUIRE(!nexts.empty());
            for (const auto& n : nexts) {
                CHECK(stack_word_valid(n.stack, pda.bottom));
                CHECK(!n.states.empty());
            }
            pc = nexts.front();
        }
    }
}
