#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adasync/pda.hpp"
#include "adasync/witness.hpp"

namespace adasync {

struct ApsBranch {
    int dst;
    StackWord push;

    friend bool operator==(const ApsBranch&, const ApsBranch&) = default;
};

struct ApsRule {
    int src;
    SymId pop;
    std::vector<ApsBranch> branches;  // nonempty

    friend bool operator==(const ApsRule&, const ApsRule&) = default;
};

// Variable-free alternating pushdown system.
struct Aps {
    std::vector<std::string> state_names;
    std::vector<std::string> sym_names;
    SymId bottom = -1;
    int init = -1;
    int fin = -1;
    std::vector<ApsRule> rules;

    int num_states() const { return static_cast<int>(state_names.size()); }
    int num_syms() const { return static_cast<int>(sym_names.size()); }

    void validate() const;
};

// Single-branch restriction, with a back-map into the source APS rules.
struct NpsRule {
    int src;
    SymId pop;
    int dst;
    StackWord push;
    int aps_rule = -1;  // index into the originating Aps::rules, when derived
};

struct Nps {
    std::vector<std::string> state_names;
    std::vector<std::string> sym_names;
    SymId bottom = -1;
    std::vector<NpsRule> rules;

    int num_states() const { return static_cast<int>(state_names.size()); }
};

Nps derive_nps(const Aps& aps);

struct ApsRunNode {
    int state;
    StackWord stack;
    int rule = -1;  // rule applied at this node; -1 for leaves
    std::vector<ApsRunNode> children;

    bool is_leaf() const { return children.empty(); }
};

struct ApsRun {
    ApsRunNode root;

    int leaf_count() const;
};

// Checks the run-tree conditions from a given root configuration to (fin, bot).
bool validate_run(const Aps& aps, const ApsRun& run, int root_state, const StackWord& root_stack);

// The APS derived from a PDA whose accepting runs are exactly the
// super-synchronisers between (I, stack) and s.
struct PdaAps {
    Aps aps;
    Pda pda;                           // the (completed) source PDA
    std::vector<StateSet> subset_of;   // APS state -> PDA state subset
    std::vector<LetterId> rule_letter; // APS rule -> PDA input letter
    StateId target = -1;               // s
};

// Forward-closure construction over reachable subsets starting from I. When
// size_cap is set, subsets larger than the cap are never generated (rules
// that would produce one are dropped; sound for the deterministic pipeline).
PdaAps build_aps(const Pda& pda, const StateSet& I, StateId s,
                 std::optional<int> size_cap = std::nullopt, int state_budget = 1 << 20);

// Saturation provenance: cost-annotated alternating transitions. The cost of
// an added transition is 1 + the total cost of the transitions justifying it,
// which yields a well-founded measure for run extraction.
struct AmaTransition {
    int src;
    SymId sym;
    std::vector<int> targets;  // sorted obligation set
    long long cost = 0;
    int rule = -1;  // justifying APS rule; -1 for the initial transition
};

struct SaturationProvenance {
    int num_states = 0;  // entry states are 0..aps.num_states()-1, accepting sink last
    int accept_state = -1;
    std::vector<AmaTransition> transitions;
    int rounds = 0;
};

// Emptiness of the APS from (init, bot) via alternating pre* saturation.
std::pair<bool, SaturationProvenance> aps_emptiness(const Aps& aps);

// Membership of an arbitrary configuration in pre*({(fin, bot)}).
bool aps_prestar_member(const Aps& aps, const SaturationProvenance& prov, int state,
                        const StackWord& stack);

// Reconstructs an accepting run from (init, bot); requires emptiness == true.
ApsRun extract_run(const Aps& aps, const SaturationProvenance& prov);
ApsRun extract_run_from(const Aps& aps, const SaturationProvenance& prov, int state,
                        const StackWord& stack);

// Reinterprets an accepting run of a PDA-derived APS as a super-synchroniser.
StrategyTree run_to_supersync(const PdaAps& pa, const ApsRun& run);

}  // namespace adasync
