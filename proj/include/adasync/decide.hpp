#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adasync/reductions.hpp"
#include "adasync/witness.hpp"

namespace adasync {

struct DecideOptions {
    std::optional<int> k;            // override for the sparse leaf bound
    int state_budget = 1 << 20;
    bool want_witness = true;
};

struct Decision {
    bool yes = false;
    std::optional<StrategyTree> witness;
    std::optional<WitnessKind> kind;          // kind of the carried witness
    std::vector<std::string> reduction_trace; // gadget tags applied, in order
    bool deterministic_path = false;
};

// Decides the instance by lowering it through the gadget chain to
// Special-Sync and solving with the deterministic (sparse) or alternating
// (saturation) pipeline; YES answers carry a witness pulled back to the
// source instance when possible.
Decision decide(const ProblemInstance& instance, const DecideOptions& opts = {});

}  // namespace adasync
