#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adasync/errors.hpp"

namespace adasync {

using StateId = int;
using LetterId = int;
using SymId = int;

// Stack words are stored top-first; well-formed words end with the bottom
// symbol, which occurs exactly once.
using StackWord = std::vector<SymId>;

// Sorted, duplicate-free set of states.
using StateSet = std::vector<StateId>;

struct Rule {
    StateId src;
    LetterId letter;
    SymId pop;
    StateId dst;
    StackWord push;  // leftmost = new top; may be empty

    friend bool operator==(const Rule&, const Rule&) = default;
    friend auto operator<=>(const Rule&, const Rule&) = default;
};

struct Pda {
    std::vector<std::string> state_names;
    std::vector<std::string> input_names;
    std::vector<std::string> sym_names;  // declaration order defines the canonical symbol order
    SymId bottom = -1;
    std::vector<Rule> rules;

    int num_states() const { return static_cast<int>(state_names.size()); }
    int num_inputs() const { return static_cast<int>(input_names.size()); }
    int num_syms() const { return static_cast<int>(sym_names.size()); }

    std::optional<StateId> find_state(const std::string& name) const;
    std::optional<LetterId> find_input(const std::string& name) const;
    std::optional<SymId> find_sym(const std::string& name) const;

    StateId state(const std::string& name) const;
    LetterId input(const std::string& name) const;
    SymId sym(const std::string& name) const;

    // Structural validation: alphabet membership and the bottom-symbol
    // discipline (a rule popping bottom pushes a word ending in bottom, and
    // bottom occurs nowhere else in any pushed word).
    void validate() const;
};

struct PseudoConfig {
    StateSet states;  // nonempty
    StackWord stack;  // nonempty, ends with bottom exactly once

    friend bool operator==(const PseudoConfig&, const PseudoConfig&) = default;
    friend auto operator<=>(const PseudoConfig&, const PseudoConfig&) = default;
};

struct Config {
    StateId state;
    StackWord stack;

    friend bool operator==(const Config&, const Config&) = default;
    friend auto operator<=>(const Config&, const Config&) = default;
};

struct ObsClass {
    StackWord push;      // word(E)
    StateSet targets;    // next(E)
    std::vector<Rule> members;
};

StateSet make_state_set(std::vector<StateId> states);

// Checks the stack discipline for a word relative to a bottom symbol.
bool stack_word_valid(const StackWord& w, SymId bottom);

PseudoConfig make_pseudo_config(StateSet states, StackWord stack, const Pda& pda);

// Adds the missing self-loop rules (q,a,A) -> (q,A) so that every
// (state, input, stack letter) triple has at least one rule. Idempotent.
Pda complete(const Pda& pda);

bool is_complete(const Pda& pda);

// True iff every (state, input, stack letter) triple has exactly one rule.
bool is_deterministic(const Pda& pda);

// The set of transitions T that might take place from knowledge set S on
// input a with stack top A.
std::vector<Rule> transitions_from(const Pda& pda, const StateSet& S, LetterId a, SymId A);

// Partition of transitions_from by identical pushed word, in canonical
// (lexicographic by push word) order.
std::vector<ObsClass> obs_classes(const Pda& pda, const StateSet& S, LetterId a, SymId A);

// Possible successor pseudo-configurations under input a, in canonical class
// order.
std::vector<PseudoConfig> succ(const Pda& pda, const PseudoConfig& pc, LetterId a);

std::string format_state_set(const Pda& pda, const StateSet& S);
std::string format_stack(const Pda& pda, const StackWord& w);

}  // namespace adasync
