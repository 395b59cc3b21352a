#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "adasync/aps.hpp"

namespace adasync {

// Finite automaton over the stack alphabet with one designated entry state
// per system state. Transitions carry the saturation cost/rule provenance
// used for path extraction (cost 0, rule -1 for original transitions).
struct NAutomaton {
    int num_states = 0;
    std::vector<int> entry;  // per system state
    struct Tr {
        int src;
        SymId sym;
        int dst;
        long long cost = 0;
        int nps_rule = -1;
    };
    std::vector<Tr> transitions;
    std::vector<char> accepting;  // size num_states

    int add_state(bool accept = false);
    // Adds or improves (src, sym, dst); returns true on change.
    bool add_transition(int src, SymId sym, int dst, long long cost = 0, int nps_rule = -1);

    // NFA word acceptance from an arbitrary automaton state.
    bool accepts_from(int state, const StackWord& word) const;
    // States reachable by reading `word` from `state`.
    std::vector<int> read(int state, const StackWord& word) const;
};

// Automaton storing exactly {(fin, bot)}.
NAutomaton leaf_automaton(const Aps& aps);

bool stores(const NAutomaton& m, int system_state, const StackWord& stack);

// Saturates m with the NPS rules so that the result stores pre*(C(m)); the
// state set is unchanged.
NAutomaton prestar(const Nps& nps, const NAutomaton& m);

// NPS rule chain from (state, stack) to some configuration stored by the
// automaton `prestar` was applied to. Requires stores(saturated, ...).
struct NpsStep {
    int rule;
    int state;        // configuration after the step
    StackWord stack;
};
std::vector<NpsStep> extract_nps_chain(const Nps& nps, const NAutomaton& saturated, int state,
                                       const StackWord& stack);

// Unlabelled ordered tree; a vertex is simple iff it has exactly one child.
struct StructuredTree {
    std::vector<StructuredTree> children;

    bool is_simple() const { return children.size() == 1; }
    int leaf_count() const;
    int vertex_count() const;
    bool well_formed() const;  // the child of every simple vertex is complex
};

// All structured trees with at most k leaves, exactly once, ordered by leaf
// count then canonical grammar order.
std::vector<StructuredTree> enumerate_structured(int k);

struct CheckResult {
    bool ok;
    // Automata per vertex in preorder (root first), for reconstruction.
    std::vector<NAutomaton> automata;
};

// Bottom-up labelling feasibility of a structured tree against the APS; true
// iff the tree can be labelled into a compressed accepting run from
// (init, bot).
CheckResult check(const Aps& aps, const StructuredTree& tree, int state_budget = 1 << 20);

// Sparse emptiness: an accepting run with at most k leaves. YES answers carry
// a plain (expanded) accepting run.
std::pair<bool, std::optional<ApsRun>> sparse_empty(const Aps& aps, int k,
                                                    int state_budget = 1 << 20);

// Deterministic Special-Sync pipeline: build_aps with size_cap = |I|, then
// sparse_empty with k = |I|, then run_to_supersync.
std::pair<bool, std::optional<StrategyTree>> det_special_sync(const Pda& pda, const StateSet& I,
                                                              StateId s,
                                                              int state_budget = 1 << 20);

}  // namespace adasync
