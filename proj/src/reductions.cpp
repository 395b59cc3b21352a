#include "adasync/reductions.hpp"

#include <algorithm>
#include <functional>

namespace adasync {

void ProblemInstance::validate() const {
    if (!is_complete(pda)) throw ValidationError("instance PDA must be completed");
    if (I.empty()) throw InvalidSubset("state subset I must be nonempty");
    for (StateId q : I)
        if (q < 0 || q >= pda.num_states()) throw InvalidSubset("I contains an unknown state");
    if (!std::is_sorted(I.begin(), I.end()) || std::adjacent_find(I.begin(), I.end()) != I.end())
        throw InvalidSubset("I must be sorted and duplicate-free");
    bool needs_s = variant == Variant::GivenSync || variant == Variant::SuperSync ||
                   variant == Variant::SpecialSync;
    if (needs_s && !s) throw ValidationError("variant requires a target state s");
    if (s && (*s < 0 || *s >= pda.num_states())) throw ValidationError("target state out of range");
    if (!stack_word_valid(start_stack, pda.bottom))
        throw ValidationError("start stack breaks the bottom-symbol discipline");
    if (variant == Variant::SpecialSync && start_stack != StackWord{pda.bottom})
        throw ValidationError("special variant requires the empty start stack");
}

PseudoConfig ProblemInstance::root() const { return PseudoConfig{I, start_stack}; }

WitnessKind ProblemInstance::witness_kind(StateId target) const {
    switch (variant) {
        case Variant::AdaSync:
        case Variant::SubsetAdaSync:
            return WitnessKind::synchroniser(target);
        case Variant::GivenSync:
            return WitnessKind::synchroniser(*s);
        case Variant::SuperSync:
        case Variant::SpecialSync:
            return WitnessKind::super_synchroniser(*s);
        case Variant::Homing:
        case Variant::SubsetHoming:
            return WitnessKind::homing();
    }
    throw ValidationError("unknown variant");
}

namespace {

void require_subset(const Pda& pda, const StateSet& I) {
    if (I.empty()) throw InvalidSubset("state subset I must be nonempty");
    for (StateId q : I)
        if (q < 0 || q >= pda.num_states()) throw InvalidSubset("I contains an unknown state");
}

// "Moves to dst without touching the stack": one rule per stack top.
void move_rules(Pda& pda, StateId src, LetterId letter, StateId dst) {
    for (SymId a = 0; a < pda.num_syms(); ++a)
        pda.rules.push_back(Rule{src, letter, a, dst, {a}});
}

ReductionOutput finish(Pda&& built, ProblemInstance inst, std::string tag,
                       std::map<std::string, std::string> name_map) {
    built.validate();
    inst.pda = complete(built);
    inst.validate();
    return ReductionOutput{std::move(inst), std::move(tag), std::move(name_map)};
}

ReductionOutput hash_gadget(const Pda& pda, const StateSet& I, const StackWord& gamma,
                            Variant out_variant, std::string tag) {
    require_subset(pda, I);
    Pda out = pda;
    SymId hash = static_cast<SymId>(out.sym_names.size());
    out.sym_names.push_back("g:#");
    StateId q_I = I.front();
    for (LetterId a = 0; a < out.num_inputs(); ++a)
        for (StateId q = 0; q < out.num_states(); ++q) {
            bool in_I = std::binary_search(I.begin(), I.end(), q);
            out.rules.push_back(Rule{q, a, hash, in_I ? q : q_I, {}});
        }

    ProblemInstance inst;
    inst.variant = out_variant;
    for (StateId q = 0; q < out.num_states(); ++q) inst.I.push_back(q);
    inst.start_stack.push_back(hash);
    inst.start_stack.insert(inst.start_stack.end(), gamma.begin(), gamma.end());
    return finish(std::move(out), std::move(inst), std::move(tag), {{"g:#", "hash"}});
}

ReductionOutput two_copy_gadget(const Pda& pda, const StateSet& I, StateId s,
                                const StackWord& gamma, Variant out_variant, std::string tag) {
    require_subset(pda, I);
    int n = pda.num_states();
    auto copy = [&](StateId q, int b) { return q + b * n; };
    Pda out;
    out.sym_names = pda.sym_names;
    out.bottom = pda.bottom;
    out.input_names = pda.input_names;
    for (int b : {0, 1})
        for (StateId q = 0; q < n; ++q)
            out.state_names.push_back(pda.state_names[q] + ":" + std::to_string(b));
    StateId q_acc = 2 * n;
    out.state_names.push_back("g:acc");
    StateId q_rej0 = 2 * n + 1, q_rej1 = 2 * n + 2;
    out.state_names.push_back("g:rej:0");
    out.state_names.push_back("g:rej:1");
    LetterId end = static_cast<LetterId>(out.input_names.size());
    out.input_names.push_back("g:end");

    for (const Rule& r : pda.rules)
        for (int b : {0, 1})
            out.rules.push_back(Rule{copy(r.src, b), r.letter, r.pop, copy(r.dst, b), r.push});
    for (int b : {0, 1})
        for (StateId q = 0; q < n; ++q)
            move_rules(out, copy(q, b), end,
                       q == s ? q_acc : (b == 0 ? q_rej0 : q_rej1));
    move_rules(out, q_acc, end, q_acc);
    move_rules(out, q_rej0, end, q_rej0);
    move_rules(out, q_rej1, end, q_rej1);

    ProblemInstance inst;
    inst.variant = out_variant;
    for (int b : {0, 1})
        for (StateId q : I) inst.I.push_back(copy(q, b));
    inst.I = make_state_set(std::move(inst.I));
    inst.start_stack = gamma;
    std::map<std::string, std::string> nm{{"g:acc", "acc"}, {"g:rej:0", "rej"},
                                          {"g:rej:1", "rej"}, {"g:end", "end"}};
    for (int b : {0, 1})
        for (StateId q = 0; q < n; ++q)
            nm[out.state_names[copy(q, b)]] =
                "copy" + std::to_string(b) + ":" + pda.state_names[q];
    return finish(std::move(out), std::move(inst), std::move(tag), std::move(nm));
}

}  // namespace

ReductionOutput subset_to_ada(const Pda& pda, const StateSet& I, const StackWord& gamma) {
    return hash_gadget(pda, I, gamma, Variant::AdaSync, "subset_to_ada");
}

ReductionOutput subset_homing_to_homing(const Pda& pda, const StateSet& I,
                                        const StackWord& gamma) {
    return hash_gadget(pda, I, gamma, Variant::Homing, "subset_homing_to_homing");
}

ReductionOutput subset_to_given(const Pda& pda, const StateSet& I, const StackWord& gamma) {
    require_subset(pda, I);
    int n = pda.num_states();
    auto pair = [&](StateId p, StateId q) { return p * n + q; };
    auto undecided = [&](StateId p) { return n * n + p; };
    StateId q_acc = n * n + n, q_rej = n * n + n + 1;

    Pda out;
    out.sym_names = pda.sym_names;
    out.bottom = pda.bottom;
    out.input_names = pda.input_names;
    for (StateId p = 0; p < n; ++p)
        for (StateId q = 0; q < n; ++q)
            out.state_names.push_back(pda.state_names[p] + ":" + pda.state_names[q]);
    for (StateId p = 0; p < n; ++p) out.state_names.push_back(pda.state_names[p] + ":~");
    out.state_names.push_back("g:acc");
    out.state_names.push_back("g:rej");

    LetterId first_decide = static_cast<LetterId>(out.input_names.size());
    for (StateId q = 0; q < n; ++q) out.input_names.push_back("g:dec:" + pda.state_names[q]);
    LetterId first_done = static_cast<LetterId>(out.input_names.size());
    for (StateId q = 0; q < n; ++q) out.input_names.push_back("g:done:" + pda.state_names[q]);

    for (const Rule& r : pda.rules)
        for (StateId q = 0; q < n; ++q)
            out.rules.push_back(Rule{pair(r.src, q), r.letter, r.pop, pair(r.dst, q), r.push});
    for (StateId q = 0; q < n; ++q)
        for (StateId p = 0; p < n; ++p)
            move_rules(out, undecided(p), first_decide + q, pair(p, q));
    for (StateId q = 0; q < n; ++q) {
        LetterId done = first_done + q;
        for (StateId st = 0; st < q_rej; ++st) {
            if (st == pair(q, q) || st == q_acc)
                move_rules(out, st, done, q_acc);
            else
                move_rules(out, st, done, q_rej);
        }
        move_rules(out, q_rej, done, q_rej);
    }

    ProblemInstance inst;
    inst.variant = Variant::GivenSync;
    for (StateId q : I) inst.I.push_back(undecided(q));
    inst.I = make_state_set(std::move(inst.I));
    inst.s = q_acc;
    inst.start_stack = gamma;
    std::map<std::string, std::string> nm{{"g:acc", "acc"}, {"g:rej", "rej"}};
    for (StateId p = 0; p < n; ++p) {
        nm[out.state_names[undecided(p)]] = "undecided:" + pda.state_names[p];
        nm[out.input_names[first_decide + p]] = "decide:" + pda.state_names[p];
        nm[out.input_names[first_done + p]] = "done:" + pda.state_names[p];
        for (StateId q = 0; q < n; ++q)
            nm[out.state_names[pair(p, q)]] =
                "pair:" + pda.state_names[p] + ":" + pda.state_names[q];
    }
    return finish(std::move(out), std::move(inst), "subset_to_given", std::move(nm));
}

ReductionOutput given_to_subset(const Pda& pda, const StateSet& I, StateId s,
                                const StackWord& gamma) {
    return two_copy_gadget(pda, I, s, gamma, Variant::SubsetAdaSync, "given_to_subset");
}

ReductionOutput given_to_subset_homing(const Pda& pda, const StateSet& I, StateId s,
                                       const StackWord& gamma) {
    return two_copy_gadget(pda, I, s, gamma, Variant::SubsetHoming, "given_to_subset_homing");
}

ReductionOutput given_to_super(const Pda& pda, const StateSet& I, StateId s,
                               const StackWord& gamma) {
    require_subset(pda, I);
    Pda out = pda;
    StateId q_acc = out.num_states(), q_rej = q_acc + 1;
    out.state_names.push_back("g:acc");
    out.state_names.push_back("g:rej");
    LetterId end = out.num_inputs(), pop = end + 1;
    out.input_names.push_back("g:end");
    out.input_names.push_back("g:pop");

    for (StateId q = 0; q < pda.num_states(); ++q) move_rules(out, q, end, q == s ? q_acc : q_rej);
    move_rules(out, q_acc, end, q_acc);
    move_rules(out, q_rej, end, q_rej);
    for (StateId q = 0; q < pda.num_states(); ++q) move_rules(out, q, pop, q_rej);
    for (SymId a = 0; a < out.num_syms(); ++a)
        out.rules.push_back(
            Rule{q_acc, pop, a, q_acc, a == out.bottom ? StackWord{out.bottom} : StackWord{}});
    move_rules(out, q_rej, pop, q_rej);

    ProblemInstance inst;
    inst.variant = Variant::SuperSync;
    inst.I = I;
    inst.s = q_acc;
    inst.start_stack = gamma;
    return finish(std::move(out), std::move(inst), "given_to_super",
                  {{"g:acc", "acc"}, {"g:rej", "rej"}, {"g:end", "end"}, {"g:pop", "pop"}});
}

ReductionOutput super_to_given(const Pda& pda, const StateSet& I, StateId s,
                               const StackWord& gamma) {
    require_subset(pda, I);
    Pda out = pda;
    StateId q_acc = out.num_states(), q_rej = q_acc + 1;
    out.state_names.push_back("g:acc");
    out.state_names.push_back("g:rej");
    LetterId end = out.num_inputs();
    out.input_names.push_back("g:end");

    for (StateId q = 0; q < pda.num_states(); ++q) {
        for (SymId a = 0; a < out.num_syms(); ++a) {
            StateId dst = (q == s && a == out.bottom) ? q_acc : q_rej;
            out.rules.push_back(Rule{q, end, a, dst, {a}});
        }
    }
    move_rules(out, q_acc, end, q_acc);
    move_rules(out, q_rej, end, q_rej);

    ProblemInstance inst;
    inst.variant = Variant::GivenSync;
    inst.I = I;
    inst.s = q_acc;
    inst.start_stack = gamma;
    return finish(std::move(out), std::move(inst), "super_to_given",
                  {{"g:acc", "acc"}, {"g:rej", "rej"}, {"g:end", "end"}});
}

ReductionOutput super_to_special(const Pda& pda, const StateSet& I, StateId s,
                                 const StackWord& gamma) {
    require_subset(pda, I);
    if (!stack_word_valid(gamma, pda.bottom))
        throw ValidationError("gamma breaks the bottom-symbol discipline");
    Pda out = pda;
    StateSet primed;
    for (StateId q : I) {
        StateId qp = out.num_states();
        out.state_names.push_back("g:in:" + pda.state_names[q]);
        primed.push_back(qp);
        for (LetterId a = 0; a < out.num_inputs(); ++a)
            out.rules.push_back(Rule{qp, a, out.bottom, q, gamma});
    }

    ProblemInstance inst;
    inst.variant = Variant::SpecialSync;
    inst.I = make_state_set(std::move(primed));
    inst.s = s;
    inst.start_stack = {out.bottom};
    std::map<std::string, std::string> nm;
    for (StateId q : I) nm["g:in:" + pda.state_names[q]] = "entry:" + pda.state_names[q];
    return finish(std::move(out), std::move(inst), "super_to_special", std::move(nm));
}

ReductionOutput homing_to_given(const Pda& pda, const StackWord& gamma) {
    Pda out = pda;
    StateId q_acc = out.num_states(), q_rej = q_acc + 1;
    out.state_names.push_back("g:acc");
    out.state_names.push_back("g:rej");
    LetterId first_probe = out.num_inputs();
    std::map<std::string, std::string> nm{{"g:acc", "acc"}, {"g:rej", "rej"}};
    for (StateId q = 0; q < pda.num_states(); ++q) {
        out.input_names.push_back("g:probe:" + pda.state_names[q]);
        nm["g:probe:" + pda.state_names[q]] = "probe:" + pda.state_names[q];
    }
    for (StateId q = 0; q < pda.num_states(); ++q)
        for (StateId p = 0; p < pda.num_states(); ++p)
            move_rules(out, p, first_probe + q, p == q ? q_acc : q_rej);

    ProblemInstance inst;
    inst.variant = Variant::GivenSync;
    for (StateId q = 0; q < pda.num_states(); ++q) inst.I.push_back(q);
    inst.s = q_acc;
    inst.start_stack = gamma;
    return finish(std::move(out), std::move(inst), "homing_to_given", std::move(nm));
}

namespace {

StrategyNode map_states(const StrategyNode& node, const std::function<StateId(StateId)>& f) {
    StrategyNode out;
    std::vector<StateId> mapped;
    for (StateId q : node.label.states) mapped.push_back(f(q));
    out.label.states = make_state_set(std::move(mapped));
    out.label.stack = node.label.stack;
    out.out_letter = node.out_letter;
    for (const StrategyNode& c : node.children) out.children.push_back(map_states(c, f));
    return out;
}

// Turns nodes whose outgoing letter is `cut` into leaves, dropping everything
// below them.
StrategyNode cut_at_letter(const StrategyNode& node, LetterId cut) {
    StrategyNode out;
    out.label = node.label;
    if (node.out_letter && *node.out_letter == cut) return out;
    out.out_letter = node.out_letter;
    for (const StrategyNode& c : node.children) out.children.push_back(cut_at_letter(c, cut));
    return out;
}

const StrategyNode& sole_child_of_root(const StrategyTree& t) {
    if (t.root.children.size() != 1)
        throw PullBackFailure("expected a single decision below the root");
    return t.root.children[0];
}

StateId leaf_target(const StrategyNode& node) {
    const StrategyNode* n = &node;
    while (!n->children.empty()) n = &n->children[0];
    if (n->label.states.size() != 1) throw PullBackFailure("leaf label is not a singleton");
    return n->label.states[0];
}

}  // namespace

PulledBack pull_back_witness(const ReductionOutput& red, const Pda& source_pda,
                             const ProblemInstance& source_instance,
                             const StrategyTree& target_witness) {
    const Pda& rp = red.instance.pda;
    StrategyTree tree;

    if (red.tag == "subset_to_ada" || red.tag == "subset_homing_to_homing" ||
        red.tag == "super_to_special") {
        tree.root = sole_child_of_root(target_witness);
    } else if (red.tag == "subset_to_given") {
        int n = source_pda.num_states();
        const StrategyNode& below = sole_child_of_root(target_witness);
        LetterId root_letter = target_witness.root.out_letter.value_or(-1);
        LetterId first_done = rp.input("g:done:" + source_pda.state_names[0]);
        if (root_letter < first_done - n || root_letter >= first_done)
            throw PullBackFailure("root edge is not a decision letter");
        LetterId done = first_done + (root_letter - (first_done - n));
        StrategyNode cut = cut_at_letter(below, done);
        tree.root = map_states(cut, [&](StateId q) {
            if (q >= n * n) throw PullBackFailure("gadget state survives the cut");
            return q / n;
        });
    } else if (red.tag == "given_to_subset" || red.tag == "given_to_subset_homing") {
        int n = source_pda.num_states();
        LetterId end = rp.input("g:end");
        StrategyNode cut = cut_at_letter(target_witness.root, end);
        tree.root = map_states(cut, [&](StateId q) {
            if (q >= 2 * n) throw PullBackFailure("gadget state survives the cut");
            return q % n;
        });
    } else if (red.tag == "given_to_super" || red.tag == "super_to_given" ||
               red.tag == "homing_to_given") {
        StateId q_acc = rp.state("g:acc");
        LetterId first_gadget = source_pda.num_inputs();
        StrategyNode cut = target_witness.root;
        // Truncate at the first gadget letter along every branch.
        std::function<StrategyNode(const StrategyNode&)> trunc =
            [&](const StrategyNode& nd) -> StrategyNode {
            StrategyNode out;
            out.label = nd.label;
            if (std::binary_search(nd.label.states.begin(), nd.label.states.end(), q_acc))
                throw PullBackFailure("gadget sink reached before the cut point");
            if (nd.out_letter && *nd.out_letter >= first_gadget) {
                if (red.tag == "homing_to_given") {
                    // A probe edge pins down the state the branch homed to.
                    StateId probed = *nd.out_letter - first_gadget;
                    if (nd.label.states != StateSet{probed})
                        throw PullBackFailure("probe letter disagrees with the branch label");
                }
                return out;
            }
            out.out_letter = nd.out_letter;
            for (const StrategyNode& c : nd.children) out.children.push_back(trunc(c));
            return out;
        };
        tree.root = trunc(cut);
    } else {
        throw PullBackFailure("unknown reduction tag: " + red.tag);
    }

    StateId target = -1;
    switch (source_instance.variant) {
        case Variant::GivenSync:
        case Variant::SuperSync:
        case Variant::SpecialSync:
            target = *source_instance.s;
            break;
        case Variant::AdaSync:
        case Variant::SubsetAdaSync:
            target = leaf_target(tree.root);
            break;
        default:
            break;
    }
    WitnessKind kind = source_instance.witness_kind(target);
    Verdict v = check_witness(source_pda, source_instance.root(), kind, tree);
    if (!v) throw PullBackFailure("pulled-back tree fails validation: " + v.violation);
    return PulledBack{std::move(tree), kind};
}

}  // namespace adasync
