#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "adasync/decide.hpp"
#include "adasync/format.hpp"
#include "adasync/oracle.hpp"
#include "adasync/reductions.hpp"

using namespace adasync;

static ProblemInstance load(const char* name) {
    std::ifstream f(std::string(FIXTURE_DIR "/") + name);
    REQUIRE(f);
    std::ostringstream os;
    os << f.rdbuf();
    return resolve_problem(parse_instance(os.str()));
}

// The bounded game solver is the reference decision procedure at this scale.
static bool oracle_decides(const ProblemInstance& inst, const Bounds& bounds = Bounds{}) {
    std::vector<WitnessKind> kinds;
    switch (inst.variant) {
        case Variant::AdaSync:
        case Variant::SubsetAdaSync:
            for (StateId q = 0; q < inst.pda.num_states(); ++q)
                kinds.push_back(WitnessKind::synchroniser(q));
            break;
        case Variant::Homing:
        case Variant::SubsetHoming:
            kinds.push_back(WitnessKind::homing());
            break;
        default:
            kinds.push_back(inst.witness_kind(-1));
            break;
    }
    for (const WitnessKind& k : kinds)
        if (bounded_game_solve(inst.pda, inst.root(), k, bounds).yes()) return true;
    return false;
}

TEST_CASE("each gadget preserves the answer on the running example") {
    ProblemInstance given = load("run4_given.pda");
    ProblemInstance super = load("run4_super.pda");
    ProblemInstance subset = load("run4_subset.pda");

    struct Case {
        const char* label;
        ReductionOutput red;
        bool source_yes;
        // Quadratic gadgets are answered by the game oracle; another round of
        // lowering would square their size again.
        bool via_oracle = false;
    };
    std::vector<Case> cases;
    cases.push_back({"subset->ada", subset_to_ada(subset.pda, subset.I, subset.start_stack),
                     oracle_decides(subset), true});
    cases.push_back({"subset->given", subset_to_given(subset.pda, subset.I, subset.start_stack),
                     oracle_decides(subset)});
    cases.push_back(
        {"given->subset", given_to_subset(given.pda, given.I, *given.s, given.start_stack),
         oracle_decides(given), true});
    cases.push_back(
        {"given->super", given_to_super(given.pda, given.I, *given.s, given.start_stack),
         oracle_decides(given)});
    cases.push_back(
        {"super->given", super_to_given(super.pda, super.I, *super.s, super.start_stack),
         oracle_decides(super)});
    cases.push_back(
        {"super->special", super_to_special(super.pda, super.I, *super.s, super.start_stack),
         oracle_decides(super)});
    cases.push_back(
        {"homing->given", homing_to_given(given.pda, given.start_stack),
         oracle_decides(load("run4_homing.pda"))});
    cases.push_back({"given->subset-homing",
                     given_to_subset_homing(given.pda, given.I, *given.s, given.start_stack),
                     oracle_decides(given), true});
    cases.push_back(
        {"subset-homing->homing", subset_homing_to_homing(subset.pda, subset.I, subset.start_stack),
         [&] {
             ProblemInstance sh = subset;
             sh.variant = Variant::SubsetHoming;
             sh.s = std::nullopt;
             return oracle_decides(sh);
         }()});

    for (const Case& c : cases) {
        CAPTURE(c.label);
        c.red.instance.validate();
        bool reduced_yes;
        if (c.via_oracle) {
            Bounds bounds;
            bounds.depth_bound = 14;
            bounds.node_budget = 50'000'000;
            reduced_yes = oracle_decides(c.red.instance, bounds);
        } else {
            DecideOptions opts;
            opts.want_witness = false;
            reduced_yes = decide(c.red.instance, opts).yes;
        }
        CHECK(reduced_yes == c.source_yes);
        CHECK(!c.red.name_map.empty());
    }
}

TEST_CASE("pull-back of solver witnesses validates against the source") {
    ProblemInstance given = load("run4_given.pda");
    ProblemInstance super = load("run4_super.pda");
    ProblemInstance subset = load("run4_subset.pda");
    ProblemInstance homing = load("run4_homing.pda");

    // Reduced-instance witnesses come from the decide pipeline, or from the
    // game oracle when the reduced instance is too large to lower again.
    auto reduced_witness = [](const ProblemInstance& inst, bool via_oracle) {
        if (!via_oracle) {
            Decision d = decide(inst);
            REQUIRE(d.yes);
            REQUIRE(d.witness);
            return *d.witness;
        }
        Bounds bounds;
        bounds.depth_bound = 14;
        bounds.node_budget = 50'000'000;
        std::vector<WitnessKind> kinds;
        switch (inst.variant) {
            case Variant::AdaSync:
            case Variant::SubsetAdaSync:
                for (StateId q = 0; q < inst.pda.num_states(); ++q)
                    kinds.push_back(WitnessKind::synchroniser(q));
                break;
            case Variant::Homing:
            case Variant::SubsetHoming:
                kinds.push_back(WitnessKind::homing());
                break;
            default:
                kinds.push_back(inst.witness_kind(-1));
                break;
        }
        for (const WitnessKind& k : kinds) {
            GameResult r = bounded_game_solve(inst.pda, inst.root(), k, bounds);
            if (r.yes()) return *r.witness;
        }
        REQUIRE(false);
        return StrategyTree{};
    };

    auto pull = [&](const ReductionOutput& red, const ProblemInstance& src,
                    bool via_oracle = false) {
        StrategyTree tree = reduced_witness(red.instance, via_oracle);
        PulledBack back = pull_back_witness(red, src.pda, src, tree);
        // pull_back_witness re-validates internally; confirm independently.
        Verdict v = check_witness(src.pda, src.root(), back.kind, back.tree);
        CHECK(v.ok);
    };

    SUBCASE("subset->given") { pull(subset_to_given(subset.pda, subset.I, subset.start_stack), subset); }
    SUBCASE("subset->ada") {
        pull(subset_to_ada(subset.pda, subset.I, subset.start_stack), subset, true);
    }
    SUBCASE("given->super") {
        pull(given_to_super(given.pda, given.I, *given.s, given.start_stack), given);
    }
    SUBCASE("super->given") {
        pull(super_to_given(super.pda, super.I, *super.s, super.start_stack), super);
    }
    SUBCASE("super->special") {
        pull(super_to_special(super.pda, super.I, *super.s, super.start_stack), super);
    }
    SUBCASE("given->subset") {
        pull(given_to_subset(given.pda, given.I, *given.s, given.start_stack), given, true);
    }
    SUBCASE("homing->given") { pull(homing_to_given(homing.pda, homing.start_stack), homing); }
    SUBCASE("given->subset-homing") {
        pull(given_to_subset_homing(given.pda, given.I, *given.s, given.start_stack), given, true);
    }
    SUBCASE("subset-homing->homing") {
        ProblemInstance sh = subset;
        sh.variant = Variant::SubsetHoming;
        sh.s = std::nullopt;
        pull(subset_homing_to_homing(sh.pda, sh.I, sh.start_stack), sh);
    }
}

TEST_CASE("pull-back rejects foreign trees") {
    ProblemInstance super = load("run4_super.pda");
    ReductionOutput red = super_to_special(super.pda, super.I, *super.s, super.start_stack);
    // A tree over the wrong automaton (the source) lacks the gadget shape.
    Decision d = decide(super);
    REQUIRE(d.yes);
    CHECK_THROWS_AS(pull_back_witness(red, super.pda, super, *d.witness), PullBackFailure);
}

TEST_CASE("gadget shapes") {
    ProblemInstance subset = load("run4_subset.pda");
    int n = subset.pda.num_states();

    SUBCASE("hash gadget adds one stack letter and no states") {
        ReductionOutput red = subset_to_ada(subset.pda, subset.I, subset.start_stack);
        CHECK(red.instance.pda.num_states() == n);
        CHECK(red.instance.pda.num_syms() == subset.pda.num_syms() + 1);
        CHECK(red.instance.variant == Variant::AdaSync);
        CHECK(red.instance.I == StateSet{0, 1, 2, 3});
        // Start stack is the fresh letter on top of gamma.
        CHECK(red.instance.start_stack.size() == subset.start_stack.size() + 1);
    }
    SUBCASE("pair gadget is quadratic") {
        ReductionOutput red = subset_to_given(subset.pda, subset.I, subset.start_stack);
        CHECK(red.instance.pda.num_states() == n * n + n + 2);
        CHECK(red.instance.variant == Variant::GivenSync);
        CHECK(red.instance.I.size() == subset.I.size());
    }
    SUBCASE("two-copy gadget doubles the states") {
        ProblemInstance given = load("run4_given.pda");
        ReductionOutput red = given_to_subset(given.pda, given.I, *given.s, given.start_stack);
        CHECK(red.instance.pda.num_states() == 2 * n + 3);
        CHECK(red.instance.variant == Variant::SubsetAdaSync);
        // Both copies of every initial state are in the subset.
        CHECK(red.instance.I.size() == 2 * given.I.size());
    }
    SUBCASE("probe gadget adds one letter per state") {
        ProblemInstance homing = load("run4_homing.pda");
        ReductionOutput red = homing_to_given(homing.pda, homing.start_stack);
        CHECK(red.instance.pda.num_inputs() == homing.pda.num_inputs() + n);
        CHECK(red.instance.variant == Variant::GivenSync);
    }
}

TEST_CASE("instances validate their own shape") {
    ProblemInstance inst = load("run4.pda");
    SUBCASE("missing target") {
        inst.s = std::nullopt;
        CHECK_THROWS_AS(inst.validate(), ValidationError);
    }
    SUBCASE("empty subset") {
        inst.I.clear();
        CHECK_THROWS_AS(inst.validate(), InvalidSubset);
    }
    SUBCASE("special requires a bare bottom stack") {
        inst.start_stack = {inst.pda.sym("red"), inst.pda.bottom};
        CHECK_THROWS_AS(inst.validate(), ValidationError);
    }
}
