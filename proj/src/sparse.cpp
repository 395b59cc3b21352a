#include "adasync/sparse.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace adasync {

int NAutomaton::add_state(bool accept) {
    accepting.push_back(accept ? 1 : 0);
    return num_states++;
}

bool NAutomaton::add_transition(int src, SymId sym, int dst, long long cost, int nps_rule) {
    for (Tr& t : transitions)
        if (t.src == src && t.sym == sym && t.dst == dst) {
            if (cost < t.cost) {
                t.cost = cost;
                t.nps_rule = nps_rule;
                return true;
            }
            return false;
        }
    transitions.push_back(Tr{src, sym, dst, cost, nps_rule});
    return true;
}

std::vector<int> NAutomaton::read(int state, const StackWord& word) const {
    std::set<int> cur{state};
    for (SymId a : word) {
        std::set<int> next;
        for (const Tr& t : transitions)
            if (t.sym == a && cur.count(t.src)) next.insert(t.dst);
        cur = std::move(next);
        if (cur.empty()) break;
    }
    return std::vector<int>(cur.begin(), cur.end());
}

bool NAutomaton::accepts_from(int state, const StackWord& word) const {
    for (int s : read(state, word))
        if (accepting[s]) return true;
    return false;
}

NAutomaton leaf_automaton(const Aps& aps) {
    NAutomaton m;
    for (int q = 0; q < aps.num_states(); ++q) m.entry.push_back(m.add_state(false));
    int acc = m.add_state(true);
    m.add_transition(m.entry[aps.fin], aps.bottom, acc);
    return m;
}

bool stores(const NAutomaton& m, int system_state, const StackWord& stack) {
    return m.accepts_from(m.entry.at(system_state), stack);
}

namespace {

constexpr long long kInf = (1LL << 60);

// dp[pos][state] = min cost of reading word[pos:] from state into acceptance.
std::vector<std::vector<long long>> accept_costs(const NAutomaton& m, const StackWord& word) {
    size_t n = word.size();
    std::vector<std::vector<long long>> dp(n + 1, std::vector<long long>(m.num_states, kInf));
    for (int s = 0; s < m.num_states; ++s)
        if (m.accepting[s]) dp[n][s] = 0;
    for (size_t pos = n; pos-- > 0;)
        for (const NAutomaton::Tr& t : m.transitions)
            if (t.sym == word[pos] && dp[pos + 1][t.dst] < kInf)
                dp[pos][t.src] = std::min(dp[pos][t.src], t.cost + dp[pos + 1][t.dst]);
    return dp;
}

// Minimal costs of reaching each state by reading `word` from `state`.
std::map<int, long long> reach_costs(const NAutomaton& m, int state, const StackWord& word) {
    std::map<int, long long> cur{{state, 0}};
    for (SymId a : word) {
        std::map<int, long long> next;
        for (const NAutomaton::Tr& t : m.transitions) {
            if (t.sym != a) continue;
            auto it = cur.find(t.src);
            if (it == cur.end()) continue;
            long long c = it->second + t.cost;
            auto [jt, fresh] = next.emplace(t.dst, c);
            if (!fresh && c < jt->second) jt->second = c;
        }
        cur = std::move(next);
        if (cur.empty()) break;
    }
    return cur;
}

}  // namespace

NAutomaton prestar(const Nps& nps, const NAutomaton& m) {
    NAutomaton out = m;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t ri = 0; ri < nps.rules.size(); ++ri) {
            const NpsRule& r = nps.rules[ri];
            for (const auto& [s, c] : reach_costs(out, out.entry.at(r.dst), r.push))
                changed |= out.add_transition(out.entry.at(r.src), r.pop, s, c + 1,
                                              static_cast<int>(ri));
        }
    }
    return out;
}

std::vector<NpsStep> extract_nps_chain(const Nps& nps, const NAutomaton& saturated, int state,
                                       const StackWord& stack) {
    std::vector<NpsStep> chain;
    int q = state;
    StackWord w = stack;
    for (;;) {
        auto dp = accept_costs(saturated, w);
        int entry = saturated.entry.at(q);
        long long best = dp[0][entry];
        if (best >= kInf) throw Error("configuration is not stored by the saturated automaton");
        if (best == 0) return chain;  // only original transitions: already stored
        // A positive-cost read from an entry starts with a saturation
        // transition; its rule gives the next chain step.
        const NAutomaton::Tr* pick = nullptr;
        for (const NAutomaton::Tr& t : saturated.transitions)
            if (t.src == entry && t.sym == w.front() && dp[1][t.dst] < kInf &&
                t.cost + dp[1][t.dst] == best) {
                pick = &t;
                break;
            }
        if (!pick || pick->nps_rule < 0) throw Error("no saturation step justifies the read");
        const NpsRule& r = nps.rules[pick->nps_rule];
        StackWord next = r.push;
        next.insert(next.end(), w.begin() + 1, w.end());
        chain.push_back(NpsStep{pick->nps_rule, r.dst, next});
        q = r.dst;
        w = std::move(next);
    }
}

int StructuredTree::leaf_count() const {
    if (children.empty()) return 1;
    int n = 0;
    for (const StructuredTree& c : children) n += c.leaf_count();
    return n;
}

int StructuredTree::vertex_count() const {
    int n = 1;
    for (const StructuredTree& c : children) n += c.vertex_count();
    return n;
}

bool StructuredTree::well_formed() const {
    if (is_simple() && children[0].is_simple()) return false;
    return std::all_of(children.begin(), children.end(),
                       [](const StructuredTree& c) { return c.well_formed(); });
}

namespace {

// Grammar: Tree ::= C | Simple(C);  C ::= Leaf | Complex(>= 2 Trees).
std::vector<StructuredTree> complexes_exact(int leaves, std::vector<std::vector<StructuredTree>>&);

std::vector<StructuredTree> trees_exact(int leaves,
                                        std::vector<std::vector<StructuredTree>>& memo) {
    std::vector<StructuredTree> out;
    for (const StructuredTree& c : complexes_exact(leaves, memo)) {
        out.push_back(c);
        StructuredTree simple;
        simple.children.push_back(c);
        out.push_back(std::move(simple));
    }
    return out;
}

std::vector<StructuredTree> complexes_exact(int leaves,
                                            std::vector<std::vector<StructuredTree>>& memo) {
    if (static_cast<int>(memo.size()) > leaves && !memo[leaves].empty()) return memo[leaves];
    std::vector<StructuredTree> out;
    if (leaves == 1) out.push_back(StructuredTree{});
    // Compositions of `leaves` into >= 2 parts, lexicographic.
    std::vector<StructuredTree> partial;
    std::function<void(int, int)> rec = [&](int remaining, int parts) {
        if (remaining == 0) {
            if (parts >= 2) {
                StructuredTree t;
                t.children = partial;
                out.push_back(std::move(t));
            }
            return;
        }
        for (int first = 1; first <= remaining; ++first) {
            if (remaining - first == 0 && parts + 1 < 2 && first == leaves) continue;
            for (const StructuredTree& sub : trees_exact(first, memo)) {
                partial.push_back(sub);
                rec(remaining - first, parts + 1);
                partial.pop_back();
            }
        }
    };
    if (leaves >= 2) rec(leaves, 0);
    if (static_cast<int>(memo.size()) <= leaves) memo.resize(leaves + 1);
    memo[leaves] = out;
    return out;
}

}  // namespace

std::vector<StructuredTree> enumerate_structured(int k) {
    if (k < 1) throw ValidationError("leaf bound must be at least 1");
    std::vector<std::vector<StructuredTree>> memo;
    std::vector<StructuredTree> out;
    for (int leaves = 1; leaves <= k; ++leaves)
        for (StructuredTree& t : trees_exact(leaves, memo)) out.push_back(std::move(t));
    return out;
}

namespace {

// Product automaton plus fresh entry states; transitions from entries follow
// the alternating rules of matching arity. Only tuples reachable from the
// entry transitions are materialized.
NAutomaton product_automaton(const Aps& aps, const std::vector<const NAutomaton*>& parts,
                             int state_budget) {
    NAutomaton m;
    for (int q = 0; q < aps.num_states(); ++q) m.entry.push_back(m.add_state(false));

    std::map<std::vector<int>, int> tuple_id;
    std::deque<std::vector<int>> work;
    auto intern = [&](const std::vector<int>& comp) {
        auto [it, fresh] = tuple_id.emplace(comp, m.num_states);
        if (fresh) {
            bool acc = true;
            for (size_t j = 0; j < comp.size(); ++j) acc = acc && parts[j]->accepting[comp[j]];
            m.add_state(acc);
            if (m.num_states > state_budget)
                throw CapExceeded("product automaton exceeds the state budget");
            work.push_back(comp);
        }
        return it->second;
    };
    auto for_each_combo = [&](const std::vector<std::vector<int>>& choices,
                              const std::function<void(const std::vector<int>&)>& f) {
        std::vector<size_t> pick(choices.size(), 0);
        std::vector<int> comp(choices.size());
        for (;;) {
            for (size_t j = 0; j < choices.size(); ++j) comp[j] = choices[j][pick[j]];
            f(comp);
            size_t j = 0;
            for (; j < choices.size(); ++j) {
                if (++pick[j] < choices[j].size()) break;
                pick[j] = 0;
            }
            if (j == choices.size()) return;
        }
    };

    for (const ApsRule& r : aps.rules) {
        if (r.branches.size() != parts.size()) continue;
        std::vector<std::vector<int>> reach(parts.size());
        bool feasible = true;
        for (size_t j = 0; j < parts.size(); ++j) {
            reach[j] = parts[j]->read(parts[j]->entry.at(r.branches[j].dst), r.branches[j].push);
            if (reach[j].empty()) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        std::set<int> dsts;
        for_each_combo(reach, [&](const std::vector<int>& comp) { dsts.insert(intern(comp)); });
        for (int d : dsts) m.transitions.push_back(NAutomaton::Tr{m.entry[r.src], r.pop, d, 0, -1});
    }

    // Forward closure of synchronous component moves between tuples.
    std::set<SymId> syms;
    for (const NAutomaton* p : parts)
        for (const auto& t : p->transitions) syms.insert(t.sym);
    while (!work.empty()) {
        std::vector<int> comp = work.front();
        work.pop_front();
        int src = tuple_id.at(comp);
        for (SymId a : syms) {
            std::vector<std::vector<int>> moves(parts.size());
            bool all = true;
            for (size_t j = 0; j < parts.size(); ++j) {
                std::set<int> d;
                for (const auto& t : parts[j]->transitions)
                    if (t.sym == a && t.src == comp[j]) d.insert(t.dst);
                if (d.empty()) {
                    all = false;
                    break;
                }
                moves[j].assign(d.begin(), d.end());
            }
            if (!all) continue;
            std::set<int> dsts;
            for_each_combo(moves, [&](const std::vector<int>& c) { dsts.insert(intern(c)); });
            for (int d : dsts) m.transitions.push_back(NAutomaton::Tr{src, a, d, 0, -1});
        }
    }
    return m;
}

int label_automata(const Aps& aps, const Nps& nps, const StructuredTree& tree, int state_budget,
                   std::vector<NAutomaton>& out) {
    int my_index = static_cast<int>(out.size());
    out.emplace_back();
    if (tree.children.empty()) {
        out[my_index] = leaf_automaton(aps);
    } else if (tree.is_simple()) {
        int child = label_automata(aps, nps, tree.children[0], state_budget, out);
        out[my_index] = prestar(nps, out[child]);
    } else {
        std::vector<int> kids;
        for (const StructuredTree& c : tree.children)
            kids.push_back(label_automata(aps, nps, c, state_budget, out));
        std::vector<const NAutomaton*> parts;
        for (int k : kids) parts.push_back(&out[k]);
        out[my_index] = product_automaton(aps, parts, state_budget);
    }
    return my_index;
}

// Expands the structured tree at `index` into run nodes, reading labels off
// the per-vertex automata.
ApsRunNode expand_vertex(const Aps& aps, const Nps& nps, const StructuredTree& tree,
                         const std::vector<NAutomaton>& automata, int& index, int state,
                         const StackWord& stack) {
    int my_index = index++;
    ApsRunNode node;
    node.state = state;
    node.stack = stack;
    if (tree.children.empty()) {
        if (state != aps.fin || stack != StackWord{aps.bottom})
            throw Error("leaf vertex reached with a non-final configuration");
        return node;
    }
    if (tree.is_simple()) {
        std::vector<NpsStep> chain = extract_nps_chain(nps, automata[my_index], state, stack);
        ApsRunNode* at = &node;
        for (const NpsStep& step : chain) {
            at->rule = nps.rules[step.rule].aps_rule;
            ApsRunNode child;
            child.state = step.state;
            child.stack = step.stack;
            at->children.push_back(std::move(child));
            at = &at->children[0];
        }
        // The chain's endpoint carries the complex child's subtree.
        ApsRunNode sub = expand_vertex(aps, nps, tree.children[0], automata, index, at->state,
                                       at->stack);
        *at = std::move(sub);
        return node;
    }
    // Complex vertex: find an alternating rule of matching arity whose branch
    // configurations are stored by the child automata.
    StackWord rest(stack.begin() + 1, stack.end());
    for (size_t ri = 0; ri < aps.rules.size(); ++ri) {
        const ApsRule& r = aps.rules[ri];
        if (r.src != state || stack.empty() || r.pop != stack.front()) continue;
        if (r.branches.size() != tree.children.size()) continue;
        std::vector<StackWord> child_stacks;
        bool ok = true;
        int probe = my_index + 1;
        for (size_t j = 0; j < r.branches.size(); ++j) {
            StackWord cs = r.branches[j].push;
            cs.insert(cs.end(), rest.begin(), rest.end());
            if (!stores(automata[probe], r.branches[j].dst, cs)) {
                ok = false;
                break;
            }
            child_stacks.push_back(std::move(cs));
            probe += tree.children[j].vertex_count();
        }
        if (!ok) continue;
        node.rule = static_cast<int>(ri);
        for (size_t j = 0; j < r.branches.size(); ++j)
            node.children.push_back(expand_vertex(aps, nps, tree.children[j], automata, index,
                                                  r.branches[j].dst, child_stacks[j]));
        return node;
    }
    throw Error("no rule labels the complex vertex");
}

}  // namespace

CheckResult check(const Aps& aps, const StructuredTree& tree, int state_budget) {
    if (!tree.well_formed()) throw ValidationError("tree is not structured");
    Nps nps = derive_nps(aps);
    CheckResult res;
    label_automata(aps, nps, tree, state_budget, res.automata);
    res.ok = stores(res.automata[0], aps.init, {aps.bottom});
    return res;
}

std::pair<bool, std::optional<ApsRun>> sparse_empty(const Aps& aps, int k, int state_budget) {
    if (k < 1) throw ValidationError("leaf bound must be at least 1");
    Nps nps = derive_nps(aps);
    for (const StructuredTree& tree : enumerate_structured(k)) {
        CheckResult res = check(aps, tree, state_budget);
        if (!res.ok) continue;
        int index = 0;
        ApsRun run{expand_vertex(aps, nps, tree, res.automata, index, aps.init,
                                 {aps.bottom})};
        if (!validate_run(aps, run, aps.init, {aps.bottom}))
            throw Error("reconstructed run fails validation");
        return {true, std::move(run)};
    }
    return {false, std::nullopt};
}

std::pair<bool, std::optional<StrategyTree>> det_special_sync(const Pda& pda, const StateSet& I,
                                                              StateId s, int state_budget) {
    if (!is_deterministic(pda)) throw NotDeterministic("pipeline requires a deterministic PDA");
    if (I.empty()) throw InvalidSubset("state subset I must be nonempty");
    int k = static_cast<int>(I.size());
    PdaAps pa = build_aps(pda, I, s, k, state_budget);
    auto [yes, run] = sparse_empty(pa.aps, k, state_budget);
    if (!yes) return {false, std::nullopt};
    return {true, run_to_supersync(pa, *run)};
}

}  // namespace adasync
