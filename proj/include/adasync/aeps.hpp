#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adasync/pda.hpp"

namespace adasync {

using VarId = int;
using Bit = std::uint8_t;

// Total valuation of the Boolean variables, indexed by VarId.
using Valuation = std::vector<Bit>;

struct AepsBranch {
    int dst;
    StackWord push;
    std::vector<std::pair<VarId, Bit>> command;  // partial map, consistent by representation
};

struct AepsRule {
    int src;
    SymId pop;
    std::vector<std::pair<VarId, Bit>> guard;  // may contain contradictory tests
    std::vector<AepsBranch> branches;          // nonempty
};

struct Aeps {
    std::vector<std::string> state_names;
    std::vector<std::string> var_names;
    std::vector<std::string> sym_names;
    SymId bottom = -1;
    int init = -1;
    int fin = -1;
    std::vector<AepsRule> rules;

    int num_states() const { return static_cast<int>(state_names.size()); }
    int num_vars() const { return static_cast<int>(var_names.size()); }
    int num_syms() const { return static_cast<int>(sym_names.size()); }

    void validate() const;
    bool is_neps() const;  // every rule single-branch
};

struct AepsConfig {
    int state;
    StackWord stack;
    Valuation valuation;

    friend bool operator==(const AepsConfig&, const AepsConfig&) = default;
    friend auto operator<=>(const AepsConfig&, const AepsConfig&) = default;
};

AepsConfig initial_config(const Aeps& a);
AepsConfig accepting_config(const Aeps& a);

bool enabled(const Aeps& a, const AepsRule& rule, const AepsConfig& config);

// Forks the configuration into one child per branch; requires enabled().
std::vector<AepsConfig> fork(const Aeps& a, const AepsRule& rule, const AepsConfig& config);

// Rewrites the system so that within each rule the branch push-words are
// pairwise distinct, by prefixing fresh stack letters routed through fresh
// intermediate states. Acceptance-preserving.
Aeps normalize_distinct_pushes(const Aeps& a);

bool has_distinct_pushes(const Aeps& a);

// The PDA encoding of an AEPS: the AEPS has an accepting run iff the
// pseudo-configuration `root` super-synchronises to `target` in `pda`.
struct AepsPdaInstance {
    Pda pda;
    PseudoConfig root;
    StateId target;
};

AepsPdaInstance aeps_to_pda(const Aeps& a);

}  // namespace adasync
