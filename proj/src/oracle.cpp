#include "adasync/oracle.hpp"

#include <algorithm>
#include <map>

namespace adasync {

namespace {

constexpr int kInf = 1 << 28;

bool is_goal(const PseudoConfig& pc, const WitnessKind& kind, SymId bottom) {
    switch (kind.tag) {
        case WitnessKindTag::Synchroniser:
            return pc.states.size() == 1 && pc.states[0] == kind.target;
        case WitnessKindTag::SuperSynchroniser:
            return pc.states.size() == 1 && pc.states[0] == kind.target &&
                   pc.stack == StackWord{bottom};
        case WitnessKindTag::HomingWord:
            return pc.states.size() == 1;
    }
    return false;
}

struct GameSolver {
    const Pda& pda;
    const WitnessKind& kind;
    const Bounds& bounds;
    long long explored = 0;
    // 1 = winning at this depth, 0 = not winning within this depth.
    std::map<std::pair<PseudoConfig, int>, char> memo;

    bool win(const PseudoConfig& pc, int depth) {
        if (is_goal(pc, kind, pda.bottom)) return true;
        if (depth == 0) return false;
        if (static_cast<int>(pc.stack.size()) > bounds.stack_bound) return false;
        auto key = std::make_pair(pc, depth);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second != 0;
        if (++explored > bounds.node_budget) throw BudgetExceeded("game search budget exhausted");
        bool w = false;
        for (LetterId a = 0; a < pda.num_inputs() && !w; ++a) {
            bool all = true;
            for (const PseudoConfig& child : succ(pda, pc, a))
                if (!win(child, depth - 1)) {
                    all = false;
                    break;
                }
            w = all;
        }
        memo[key] = w ? 1 : 0;
        return w;
    }

    StrategyNode rebuild(const PseudoConfig& pc, int depth) {
        StrategyNode node;
        node.label = pc;
        if (is_goal(pc, kind, pda.bottom)) return node;
        for (LetterId a = 0; a < pda.num_inputs(); ++a) {
            std::vector<PseudoConfig> children = succ(pda, pc, a);
            bool all = true;
            for (const PseudoConfig& child : children)
                if (!win(child, depth - 1)) {
                    all = false;
                    break;
                }
            if (!all) continue;
            node.out_letter = a;
            for (const PseudoConfig& child : children)
                node.children.push_back(rebuild(child, depth - 1));
            return node;
        }
        throw Error("winning position lost during witness rebuild");
    }
};

}  // namespace

GameResult bounded_game_solve(const Pda& pda, const PseudoConfig& root, const WitnessKind& kind,
                              const Bounds& bounds) {
    GameSolver solver{pda, kind, bounds, 0, {}};
    for (int depth = 0; depth <= bounds.depth_bound; ++depth) {
        if (solver.win(root, depth)) {
            StrategyTree tree{solver.rebuild(root, depth)};
            return GameResult{OracleStatus::Yes, std::move(tree)};
        }
    }
    return GameResult{OracleStatus::NoWithinBounds, std::nullopt};
}

namespace {

// Minimal leaf count of a run from the configuration within the depth bound.
struct RunSolver {
    const Aps& aps;
    const Bounds& bounds;
    long long explored = 0;
    std::map<std::pair<std::pair<int, StackWord>, int>, int> memo;

    int leaves(int state, const StackWord& stack, int depth) {
        if (state == aps.fin && stack == StackWord{aps.bottom}) return 1;
        if (depth == 0) return kInf;
        if (static_cast<int>(stack.size()) > bounds.stack_bound) return kInf;
        auto key = std::make_pair(std::make_pair(state, stack), depth);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        if (++explored > bounds.node_budget) throw BudgetExceeded("run search budget exhausted");
        int best = kInf;
        for (const ApsRule& r : aps.rules) {
            if (r.src != state || stack.empty() || r.pop != stack.front()) continue;
            int total = 0;
            for (const ApsBranch& b : r.branches) {
                StackWord child = b.push;
                child.insert(child.end(), stack.begin() + 1, stack.end());
                int c = leaves(b.dst, child, depth - 1);
                if (c >= kInf) {
                    total = kInf;
                    break;
                }
                total += c;
            }
            best = std::min(best, total);
        }
        memo[key] = best;
        return best;
    }

    ApsRunNode rebuild(int state, const StackWord& stack, int depth, int target) {
        ApsRunNode node;
        node.state = state;
        node.stack = stack;
        if (state == aps.fin && stack == StackWord{aps.bottom}) return node;
        for (size_t ri = 0; ri < aps.rules.size(); ++ri) {
            const ApsRule& r = aps.rules[ri];
            if (r.src != state || stack.empty() || r.pop != stack.front()) continue;
            std::vector<int> costs;
            std::vector<StackWord> stacks;
            int total = 0;
            for (const ApsBranch& b : r.branches) {
                StackWord child = b.push;
                child.insert(child.end(), stack.begin() + 1, stack.end());
                int c = leaves(b.dst, child, depth - 1);
                costs.push_back(c);
                stacks.push_back(std::move(child));
                total = (c >= kInf || total >= kInf) ? kInf : total + c;
            }
            if (total != target) continue;
            node.rule = static_cast<int>(ri);
            for (size_t j = 0; j < r.branches.size(); ++j)
                node.children.push_back(
                    rebuild(r.branches[j].dst, stacks[j], depth - 1, costs[j]));
            return node;
        }
        throw Error("feasible run lost during rebuild");
    }
};

}  // namespace

RunSearchResult bounded_aps_run_search_from(const Aps& aps, int state, const StackWord& stack,
                                            std::optional<int> max_leaves, const Bounds& bounds) {
    RunSolver solver{aps, bounds, 0, {}};
    int limit = max_leaves.value_or(kInf - 1);
    for (int depth = 0; depth <= bounds.depth_bound; ++depth) {
        int best = solver.leaves(state, stack, depth);
        if (best <= limit) {
            ApsRun run{solver.rebuild(state, stack, depth, best)};
            return RunSearchResult{OracleStatus::Yes, std::move(run)};
        }
    }
    return RunSearchResult{OracleStatus::NoWithinBounds, std::nullopt};
}

RunSearchResult bounded_aps_run_search(const Aps& aps, std::optional<int> max_leaves,
                                       const Bounds& bounds) {
    return bounded_aps_run_search_from(aps, aps.init, {aps.bottom}, max_leaves, bounds);
}

namespace {

// Compressed-run search: single-branch steps form chains (each step still
// costs one level of depth), multi-branch rules fork. The minimal leaf counts
// therefore coincide with the plain search level for level.
struct CompressedSolver {
    const Aps& aps;
    const Nps nps;
    const Bounds& bounds;
    long long explored = 0;
    std::map<std::pair<std::pair<int, StackWord>, int>, int> memo;

    CompressedSolver(const Aps& a, const Bounds& b) : aps(a), nps(derive_nps(a)), bounds(b) {}

    int leaves(int state, const StackWord& stack, int depth) {
        if (state == aps.fin && stack == StackWord{aps.bottom}) return 1;
        if (depth == 0) return kInf;
        if (static_cast<int>(stack.size()) > bounds.stack_bound) return kInf;
        auto key = std::make_pair(std::make_pair(state, stack), depth);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        if (++explored > bounds.node_budget)
            throw BudgetExceeded("compressed run search budget exhausted");
        int best = kInf;
        for (const NpsRule& r : nps.rules) {
            if (r.src != state || stack.empty() || r.pop != stack.front()) continue;
            StackWord next = r.push;
            next.insert(next.end(), stack.begin() + 1, stack.end());
            best = std::min(best, leaves(r.dst, next, depth - 1));
        }
        for (const ApsRule& r : aps.rules) {
            if (r.branches.size() < 2) continue;
            if (r.src != state || stack.empty() || r.pop != stack.front()) continue;
            int total = 0;
            for (const ApsBranch& b : r.branches) {
                StackWord child = b.push;
                child.insert(child.end(), stack.begin() + 1, stack.end());
                int c = leaves(b.dst, child, depth - 1);
                if (c >= kInf) {
                    total = kInf;
                    break;
                }
                total += c;
            }
            best = std::min(best, total);
        }
        memo[key] = best;
        return best;
    }
};

}  // namespace

OracleStatus bounded_compressed_run_search_from(const Aps& aps, int state, const StackWord& stack,
                                                std::optional<int> max_leaves,
                                                const Bounds& bounds) {
    CompressedSolver solver(aps, bounds);
    int limit = max_leaves.value_or(kInf - 1);
    for (int depth = 0; depth <= bounds.depth_bound; ++depth)
        if (solver.leaves(state, stack, depth) <= limit) return OracleStatus::Yes;
    return OracleStatus::NoWithinBounds;
}

OracleStatus bounded_compressed_run_search(const Aps& aps, std::optional<int> max_leaves,
                                           const Bounds& bounds) {
    return bounded_compressed_run_search_from(aps, aps.init, {aps.bottom}, max_leaves, bounds);
}

namespace {

struct AepsSolver {
    const Aeps& aeps;
    const Bounds& bounds;
    long long explored = 0;
    std::map<std::pair<AepsConfig, int>, char> memo;

    bool accepts(const AepsConfig& c, int depth) {
        if (c == accepting_config(aeps)) return true;
        if (depth == 0) return false;
        if (static_cast<int>(c.stack.size()) > bounds.stack_bound) return false;
        auto key = std::make_pair(c, depth);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second != 0;
        if (++explored > bounds.node_budget)
            throw BudgetExceeded("extended run search budget exhausted");
        bool ok = false;
        for (const AepsRule& r : aeps.rules) {
            if (!enabled(aeps, r, c)) continue;
            bool all = true;
            for (const AepsConfig& child : fork(aeps, r, c))
                if (!accepts(child, depth - 1)) {
                    all = false;
                    break;
                }
            if (all) {
                ok = true;
                break;
            }
        }
        memo[key] = ok ? 1 : 0;
        return ok;
    }
};

}  // namespace

OracleStatus bounded_aeps_run_search(const Aeps& aeps, const Bounds& bounds) {
    AepsSolver solver{aeps, bounds, 0, {}};
    for (int depth = 0; depth <= bounds.depth_bound; ++depth)
        if (solver.accepts(initial_config(aeps), depth)) return OracleStatus::Yes;
    return OracleStatus::NoWithinBounds;
}

std::set<std::pair<int, StackWord>> brute_prestar(
    const Nps& nps, const std::set<std::pair<int, StackWord>>& targets, const Bounds& bounds) {
    std::set<std::pair<int, StackWord>> out = targets;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const NpsRule& r : nps.rules) {
            std::vector<std::pair<int, StackWord>> add;
            for (const auto& [q, stack] : out) {
                if (q != r.dst) continue;
                if (stack.size() < r.push.size()) continue;
                if (!std::equal(r.push.begin(), r.push.end(), stack.begin())) continue;
                StackWord pred{r.pop};
                pred.insert(pred.end(), stack.begin() + r.push.size(), stack.end());
                if (static_cast<int>(pred.size()) > bounds.stack_bound) continue;
                add.emplace_back(r.src, std::move(pred));
            }
            for (auto& c : add) changed |= out.insert(std::move(c)).second;
        }
    }
    return out;
}

}  // namespace adasync
