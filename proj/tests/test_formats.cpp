#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "adasync/format.hpp"

using namespace adasync;

static std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

TEST_CASE("run4 fixture parses and round-trips") {
    auto doc = parse_instance(slurp(FIXTURE_DIR "/run4.pda"));
    REQUIRE(doc.is_pda());
    const Pda& pda = doc.pda();
    CHECK(pda.num_states() == 4);
    CHECK(pda.num_inputs() == 2);
    CHECK(pda.num_syms() == 3);
    CHECK(pda.sym_names[pda.bottom] == "bot");
    REQUIRE(doc.problem);
    CHECK(doc.problem->variant == Variant::SpecialSync);

    std::string text = serialize_pda(pda, doc.problem);
    auto doc2 = parse_instance(text);
    CHECK(doc2.pda().rules == pda.rules);
    CHECK(serialize_pda(doc2.pda(), doc2.problem) == text);
}

TEST_CASE("missing bottom line is a parse error") {
    CHECK_THROWS_AS(parse_instance("pda\nstates q\ninputs a\nstack bot\n"), ParseError);
}

TEST_CASE("unknown identifiers are rejected with location") {
    try {
        parse_instance("pda\nstates q\ninputs a\nstack bot\nbottom bot\n"
                       "trans q a bot -> r bot\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 6);
    }
}

TEST_CASE("bottom discipline enforced at load") {
    // A rule popping bottom without restoring it.
    CHECK_THROWS_AS(parse_instance("pda\nstates q\ninputs a\nstack s bot\nbottom bot\n"
                                   "trans q a bot -> q s\n"),
                    ValidationError);
}

TEST_CASE("comments and hash-bearing names coexist") {
    std::string text =
        "pda # header comment\n"
        "states q g:#\n"
        "inputs a\n"
        "stack bot\n"
        "bottom bot\n"
        "trans g:# a bot -> q bot  # inline\n";
    auto doc = parse_instance(text);
    CHECK(doc.pda().num_states() == 2);
    CHECK(doc.pda().state_names[1] == "g:#");
    // Round trip keeps the name intact.
    auto doc2 = parse_instance(serialize_pda(doc.pda()));
    CHECK(doc2.pda().state_names == doc.pda().state_names);
}

TEST_CASE("parsing completes the body") {
    auto doc = parse_instance("pda\nstates p q\ninputs a\nstack bot\nbottom bot\n"
                              "trans p a bot -> q bot\n");
    // (q, a, bot) is unspecified and becomes a self loop.
    CHECK(doc.pda().rules.size() == 2);
}

TEST_CASE("problem resolution") {
    std::string base = "pda\nstates p q\ninputs a\nstack bot\nbottom bot\n"
                       "trans p a bot -> q bot\ntrans q a bot -> q bot\n";

    SUBCASE("ada lowers to subset with I = Q") {
        auto inst = resolve_problem(parse_instance(base + "problem ada\n"));
        CHECK(inst.variant == Variant::SubsetAdaSync);
        CHECK(inst.I == StateSet{0, 1});
    }
    SUBCASE("homing keeps I = Q") {
        auto inst = resolve_problem(parse_instance(base + "problem homing I=q\n"));
        CHECK(inst.variant == Variant::Homing);
        CHECK(inst.I == StateSet{0, 1});
    }
    SUBCASE("header fields land in the instance") {
        auto inst = resolve_problem(parse_instance(base + "problem given I=p,q s=q\n"));
        CHECK(inst.variant == Variant::GivenSync);
        CHECK(inst.s == 1);
        CHECK(inst.start_stack == StackWord{0});
    }
    SUBCASE("variant override wins") {
        auto inst = resolve_problem(parse_instance(base + "problem given I=p,q s=q\n"),
                                    Variant::SuperSync);
        CHECK(inst.variant == Variant::SuperSync);
    }
    SUBCASE("no variant anywhere is an error") {
        CHECK_THROWS_AS(resolve_problem(parse_instance(base)), ValidationError);
    }
}

TEST_CASE("aeps documents round-trip") {
    std::string text = slurp(FIXTURE_DIR "/sat2.aeps");
    auto doc = parse_instance(text);
    const Aeps& a = doc.aeps();
    CHECK(a.num_vars() == 2);
    CHECK(a.rules.size() == 3);
    CHECK(a.rules[0].branches.size() == 2);
    auto doc2 = parse_instance(serialize_aeps(a));
    CHECK(serialize_aeps(doc2.aeps()) == serialize_aeps(a));
}

TEST_CASE("aps documents round-trip") {
    std::string text =
        "aps\nstates p q\nstack s bot\nbottom bot\ninit p\nfin q\n"
        "rule p bot -> (q, s bot) ; (p, bot)\n"
        "rule p s -> (q, eps)\n";
    auto doc = parse_instance(text);
    const Aps& a = doc.aps();
    CHECK(a.rules.size() == 2);
    CHECK(a.rules[0].branches.size() == 2);
    CHECK(a.rules[1].branches[0].push.empty());
    auto doc2 = parse_instance(serialize_aps(a));
    CHECK(serialize_aps(doc2.aps()) == serialize_aps(a));
}

TEST_CASE("guards may be contradictory at parse time") {
    auto doc = parse_instance(slurp(FIXTURE_DIR "/contra.aeps"));
    CHECK(doc.aeps().rules[0].guard.size() == 2);
}
