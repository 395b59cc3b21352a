#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adasync/pda.hpp"
#include "adasync/witness.hpp"

namespace adasync {

enum class Variant {
    AdaSync,
    SubsetAdaSync,
    GivenSync,
    SuperSync,
    SpecialSync,
    Homing,
    SubsetHoming,
};

std::string variant_name(Variant v);
std::optional<Variant> parse_variant(const std::string& name);

struct ProblemInstance {
    Pda pda;  // completed
    Variant variant;
    StateSet I;                      // meaningful for all variants (AdaSync/Homing: Q)
    std::optional<StateId> s;        // GivenSync / SuperSync / SpecialSync
    StackWord start_stack;           // SpecialSync: forced to bot

    void validate() const;
    PseudoConfig root() const;
    // The witness kind a YES answer carries (for AdaSync-like variants the
    // target is discovered at solve time; `target` fills it in).
    WitnessKind witness_kind(StateId target) const;
};

struct ReductionOutput {
    ProblemInstance instance;
    std::string tag;
    // new state/letter name -> gadget role (e.g. "acc", "pair:1:4", "copy0:2")
    std::map<std::string, std::string> name_map;
};

// Subset-Ada-Sync -> Ada-Sync: fresh stack letter '#', start stack '# gamma'.
ReductionOutput subset_to_ada(const Pda& pda, const StateSet& I, const StackWord& gamma);

// Subset-Ada-Sync -> Given-Sync: decide/done letters over Q x (Q + smiley).
ReductionOutput subset_to_given(const Pda& pda, const StateSet& I, const StackWord& gamma);

// Given-Sync -> Subset-Ada-Sync: two disjoint copies joined at q_acc.
ReductionOutput given_to_subset(const Pda& pda, const StateSet& I, StateId s,
                                const StackWord& gamma);

// Given-Sync -> Super-Sync: 'end' then a 'pop' chain down to bottom.
ReductionOutput given_to_super(const Pda& pda, const StateSet& I, StateId s,
                               const StackWord& gamma);

// Super-Sync -> Given-Sync: 'end' fires only on an empty (bottom-only) stack.
ReductionOutput super_to_given(const Pda& pda, const StateSet& I, StateId s,
                               const StackWord& gamma);

// Super-Sync -> Special-Sync: primed entry states that push gamma.
ReductionOutput super_to_special(const Pda& pda, const StateSet& I, StateId s,
                                 const StackWord& gamma);

// Homing -> Given-Sync: one probe letter per state.
ReductionOutput homing_to_given(const Pda& pda, const StackWord& gamma);

// Given-Sync -> Subset-Homing: the two-copy construction, asked as homing.
ReductionOutput given_to_subset_homing(const Pda& pda, const StateSet& I, StateId s,
                                       const StackWord& gamma);

// Subset-Homing -> Homing: the '#' gadget of subset_to_ada, asked as homing.
ReductionOutput subset_homing_to_homing(const Pda& pda, const StateSet& I,
                                        const StackWord& gamma);

// Translates a witness for the reduced instance back to one for the source
// instance, following the per-gadget rule extracted from the equivalence
// proof. Throws PullBackFailure when the target witness does not exhibit the
// expected gadget shape.
struct PulledBack {
    StrategyTree tree;
    WitnessKind kind;
};

PulledBack pull_back_witness(const ReductionOutput& red, const Pda& source_pda,
                             const ProblemInstance& source_instance,
                             const StrategyTree& target_witness);

}  // namespace adasync
