#include "adasync/decide.hpp"

#include "adasync/aps.hpp"
#include "adasync/oracle.hpp"
#include "adasync/sparse.hpp"

namespace adasync {

namespace {

ReductionOutput lower_once(const ProblemInstance& cur) {
    switch (cur.variant) {
        case Variant::AdaSync:
        case Variant::SubsetAdaSync:
            return subset_to_given(cur.pda, cur.I, cur.start_stack);
        case Variant::GivenSync:
            return given_to_super(cur.pda, cur.I, *cur.s, cur.start_stack);
        case Variant::SuperSync:
            return super_to_special(cur.pda, cur.I, *cur.s, cur.start_stack);
        case Variant::Homing:
            return homing_to_given(cur.pda, cur.start_stack);
        case Variant::SubsetHoming:
            return subset_homing_to_homing(cur.pda, cur.I, cur.start_stack);
        case Variant::SpecialSync:
            break;
    }
    throw ValidationError("nothing to lower");
}

// Last resort when a pull-back fails: re-solve the source instance with the
// bounded game search, trying every target when the variant leaves it open.
std::optional<std::pair<StrategyTree, WitnessKind>> direct_solve(const ProblemInstance& inst) {
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
    for (const WitnessKind& kind : kinds) {
        try {
            GameResult r = bounded_game_solve(inst.pda, inst.root(), kind, Bounds{});
            if (r.yes()) return std::make_pair(std::move(*r.witness), kind);
        } catch (const BudgetExceeded&) {
        }
    }
    return std::nullopt;
}

}  // namespace

Decision decide(const ProblemInstance& instance, const DecideOptions& opts) {
    instance.validate();
    Decision out;

    std::vector<ReductionOutput> reds;
    std::vector<ProblemInstance> sources;
    ProblemInstance cur = instance;
    while (cur.variant != Variant::SpecialSync) {
        sources.push_back(cur);
        reds.push_back(lower_once(cur));
        out.reduction_trace.push_back(reds.back().tag);
        cur = reds.back().instance;
    }

    std::optional<StrategyTree> witness;
    if (is_deterministic(cur.pda)) {
        out.deterministic_path = true;
        int k = opts.k.value_or(static_cast<int>(cur.I.size()));
        PdaAps pa = build_aps(cur.pda, cur.I, *cur.s, k, opts.state_budget);
        auto [yes, run] = sparse_empty(pa.aps, k, opts.state_budget);
        out.yes = yes;
        if (yes && opts.want_witness) witness = run_to_supersync(pa, *run);
    } else {
        PdaAps pa = build_aps(cur.pda, cur.I, *cur.s, std::nullopt, opts.state_budget);
        auto [yes, prov] = aps_emptiness(pa.aps);
        out.yes = yes;
        if (yes && opts.want_witness)
            witness = run_to_supersync(pa, extract_run(pa.aps, prov));
    }

    if (!out.yes || !opts.want_witness) return out;

    WitnessKind kind = cur.witness_kind(-1);
    for (size_t i = reds.size(); i-- > 0;) {
        try {
            PulledBack back = pull_back_witness(reds[i], sources[i].pda, sources[i], *witness);
            witness = std::move(back.tree);
            kind = back.kind;
        } catch (const PullBackFailure&) {
            auto direct = direct_solve(instance);
            if (direct) {
                out.witness = std::move(direct->first);
                out.kind = direct->second;
            }
            return out;
        }
    }

    Verdict v = check_witness(instance.pda, instance.root(), kind, *witness);
    if (!v) throw Error("decision witness fails validation: " + v.violation);
    out.witness = std::move(witness);
    out.kind = kind;
    return out;
}

}  // namespace adasync
