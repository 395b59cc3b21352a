#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adasync/pda.hpp"

namespace adasync {

struct StrategyNode {
    PseudoConfig label;
    std::optional<LetterId> out_letter;  // present iff the node is internal
    std::vector<StrategyNode> children;

    bool is_leaf() const { return children.empty(); }

    friend bool operator==(const StrategyNode&, const StrategyNode&) = default;
};

struct StrategyTree {
    StrategyNode root;

    int leaf_count() const;
    int depth() const;

    friend bool operator==(const StrategyTree&, const StrategyTree&) = default;
};

enum class WitnessKindTag { Synchroniser, SuperSynchroniser, HomingWord };

struct WitnessKind {
    WitnessKindTag tag;
    StateId target = -1;  // meaningful for (Super)Synchroniser

    static WitnessKind synchroniser(StateId s) { return {WitnessKindTag::Synchroniser, s}; }
    static WitnessKind super_synchroniser(StateId s) {
        return {WitnessKindTag::SuperSynchroniser, s};
    }
    static WitnessKind homing() { return {WitnessKindTag::HomingWord, -1}; }
};

struct Verdict {
    bool ok;
    std::string violation;  // path of the first violating node, with reason

    explicit operator bool() const { return ok; }
};

// Validates a strategy tree against the PDA: root label, exact succ-match of
// children (in canonical order), and the leaf condition of the claimed kind.
Verdict check_witness(const Pda& pda, const PseudoConfig& root_pc, const WitnessKind& kind,
                      const StrategyTree& tree);

// Canonical text format: one node per line,
//   <2*depth spaces>[<letter>] {s1,s2,...} | <stack word top-first>
// where the bracketed letter is present exactly on internal nodes.
std::string serialize_tree(const Pda& pda, const StrategyTree& tree);
StrategyTree deserialize_tree(const Pda& pda, const std::string& text);

std::string tree_to_dot(const Pda& pda, const StrategyTree& tree);

}  // namespace adasync
