#pragma once

#include <optional>
#include <set>
#include <vector>

#include "adasync/aeps.hpp"
#include "adasync/aps.hpp"
#include "adasync/witness.hpp"

namespace adasync {

struct Bounds {
    int stack_bound = 6;
    int depth_bound = 12;
    long long node_budget = 2'000'000;
};

enum class OracleStatus { Yes, NoWithinBounds };

struct GameResult {
    OracleStatus status;
    std::optional<StrategyTree> witness;

    bool yes() const { return status == OracleStatus::Yes; }
};

// Exhaustive AND-OR search over pseudo-configurations with iterative
// deepening and memoization. NoWithinBounds is not a proof of NO. Throws
// BudgetExceeded when the node budget runs out.
GameResult bounded_game_solve(const Pda& pda, const PseudoConfig& root, const WitnessKind& kind,
                              const Bounds& bounds);

struct RunSearchResult {
    OracleStatus status;
    std::optional<ApsRun> run;

    bool yes() const { return status == OracleStatus::Yes; }
};

// Bounded search for an accepting APS run from (init, bot), optionally with a
// leaf-count cap.
RunSearchResult bounded_aps_run_search(const Aps& aps, std::optional<int> max_leaves,
                                       const Bounds& bounds);
RunSearchResult bounded_aps_run_search_from(const Aps& aps, int state, const StackWord& stack,
                                            std::optional<int> max_leaves, const Bounds& bounds);

// Bounded search for a compressed accepting run with at most max_leaves
// leaves; simple-edge chains count their NPS steps against the depth bound,
// so the search space matches bounded_aps_run_search step for step.
OracleStatus bounded_compressed_run_search(const Aps& aps, std::optional<int> max_leaves,
                                           const Bounds& bounds);
OracleStatus bounded_compressed_run_search_from(const Aps& aps, int state, const StackWord& stack,
                                                std::optional<int> max_leaves,
                                                const Bounds& bounds);

// Bounded search for an accepting AEPS run from (init, bot, all-zero).
OracleStatus bounded_aeps_run_search(const Aeps& aeps, const Bounds& bounds);

// Backward BFS closure of the target set under NPS predecessors, within the
// stack bound. The independent oracle for prestar.
std::set<std::pair<int, StackWord>> brute_prestar(const Nps& nps,
                                                  const std::set<std::pair<int, StackWord>>& targets,
                                                  const Bounds& bounds);

}  // namespace adasync
