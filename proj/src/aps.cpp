#include "adasync/aps.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace adasync {

namespace {

bool push_word_ok(const StackWord& push, SymId pop, SymId bottom) {
    long bots = std::count(push.begin(), push.end(), bottom);
    if (pop == bottom) return bots == 1 && !push.empty() && push.back() == bottom;
    return bots == 0;
}

}  // namespace

void Aps::validate() const {
    if (bottom < 0 || bottom >= num_syms()) throw ValidationError("bottom symbol out of range");
    if (init < 0 || init >= num_states()) throw ValidationError("init state out of range");
    if (fin < 0 || fin >= num_states()) throw ValidationError("fin state out of range");
    for (const ApsRule& r : rules) {
        if (r.src < 0 || r.src >= num_states()) throw ValidationError("rule source out of range");
        if (r.pop < 0 || r.pop >= num_syms()) throw ValidationError("rule pop out of range");
        if (r.branches.empty()) throw ValidationError("rule without branches");
        for (const ApsBranch& b : r.branches) {
            if (b.dst < 0 || b.dst >= num_states())
                throw ValidationError("branch target out of range");
            for (SymId a : b.push)
                if (a < 0 || a >= num_syms()) throw ValidationError("pushed symbol out of range");
            if (!push_word_ok(b.push, r.pop, bottom))
                throw ValidationError("pushed word breaks the bottom-symbol discipline");
        }
    }
}

Nps derive_nps(const Aps& aps) {
    Nps out;
    out.state_names = aps.state_names;
    out.sym_names = aps.sym_names;
    out.bottom = aps.bottom;
    for (size_t i = 0; i < aps.rules.size(); ++i) {
        const ApsRule& r = aps.rules[i];
        if (r.branches.size() != 1) continue;
        out.rules.push_back(
            NpsRule{r.src, r.pop, r.branches[0].dst, r.branches[0].push, static_cast<int>(i)});
    }
    return out;
}

int ApsRun::leaf_count() const {
    int n = 0;
    std::vector<const ApsRunNode*> stack{&root};
    while (!stack.empty()) {
        const ApsRunNode* nd = stack.back();
        stack.pop_back();
        if (nd->is_leaf()) ++n;
        for (const ApsRunNode& c : nd->children) stack.push_back(&c);
    }
    return n;
}

bool validate_run(const Aps& aps, const ApsRun& run, int root_state, const StackWord& root_stack) {
    std::vector<const ApsRunNode*> stack{&run.root};
    if (run.root.state != root_state || run.root.stack != root_stack) return false;
    while (!stack.empty()) {
        const ApsRunNode* nd = stack.back();
        stack.pop_back();
        if (nd->is_leaf()) {
            if (nd->state != aps.fin || nd->stack != StackWord{aps.bottom}) return false;
            continue;
        }
        if (nd->rule < 0 || nd->rule >= static_cast<int>(aps.rules.size())) return false;
        const ApsRule& r = aps.rules[nd->rule];
        if (r.src != nd->state) return false;
        if (nd->stack.empty() || nd->stack.front() != r.pop) return false;
        if (nd->children.size() != r.branches.size()) return false;
        for (size_t i = 0; i < r.branches.size(); ++i) {
            StackWord expect = r.branches[i].push;
            expect.insert(expect.end(), nd->stack.begin() + 1, nd->stack.end());
            if (nd->children[i].state != r.branches[i].dst || nd->children[i].stack != expect)
                return false;
            stack.push_back(&nd->children[i]);
        }
    }
    return true;
}

PdaAps build_aps(const Pda& pda, const StateSet& I, StateId s, std::optional<int> size_cap,
                 int state_budget) {
    if (!is_complete(pda)) throw ValidationError("build requires a completed PDA");
    if (I.empty()) throw InvalidSubset("state subset I must be nonempty");
    PdaAps out;
    out.pda = pda;
    out.target = s;

    std::map<StateSet, int> index;
    std::deque<StateSet> work;
    auto intern = [&](const StateSet& S) {
        auto [it, fresh] = index.emplace(S, static_cast<int>(out.subset_of.size()));
        if (fresh) {
            out.subset_of.push_back(S);
            out.aps.state_names.push_back(format_state_set(pda, S));
            work.push_back(S);
            if (static_cast<int>(out.subset_of.size()) > state_budget)
                throw CapExceeded("subset-state budget exceeded");
        }
        return it->second;
    };

    out.aps.sym_names = pda.sym_names;
    out.aps.bottom = pda.bottom;
    out.aps.init = intern(I);
    out.aps.fin = intern(StateSet{s});

    while (!work.empty()) {
        StateSet S = work.front();
        work.pop_front();
        int src = index.at(S);
        for (LetterId a = 0; a < pda.num_inputs(); ++a) {
            for (SymId A = 0; A < pda.num_syms(); ++A) {
                std::vector<ObsClass> classes = obs_classes(pda, S, a, A);
                if (size_cap && std::any_of(classes.begin(), classes.end(), [&](const ObsClass& c) {
                        return static_cast<int>(c.targets.size()) > *size_cap;
                    }))
                    continue;
                ApsRule rule;
                rule.src = src;
                rule.pop = A;
                for (const ObsClass& c : classes)
                    rule.branches.push_back(ApsBranch{intern(c.targets), c.push});
                out.aps.rules.push_back(std::move(rule));
                out.rule_letter.push_back(a);
            }
        }
    }
    out.aps.validate();
    return out;
}

namespace {

// All obligation sets (with minimal cost) reachable by alternately reading
// `word` from `state` in the cost-annotated automaton.
struct Reader {
    const SaturationProvenance& prov;
    std::map<std::pair<int, StackWord>, std::map<std::set<int>, long long>> memo;

    const std::map<std::set<int>, long long>& sets(int state, const StackWord& word) {
        auto key = std::make_pair(state, word);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::map<std::set<int>, long long> out;
        if (word.empty()) {
            out[{state}] = 0;
        } else {
            StackWord rest(word.begin() + 1, word.end());
            for (const AmaTransition& t : prov.transitions) {
                if (t.src != state || t.sym != word.front()) continue;
                // One frontier choice per target; union the obligations.
                std::map<std::set<int>, long long> acc{{{}, t.cost}};
                for (int u : t.targets) {
                    const auto& part = sets(u, rest);
                    std::map<std::set<int>, long long> next;
                    for (const auto& [sa, ca] : acc)
                        for (const auto& [sb, cb] : part) {
                            std::set<int> un = sa;
                            un.insert(sb.begin(), sb.end());
                            long long c = ca + cb;
                            auto [jt, fresh] = next.emplace(std::move(un), c);
                            if (!fresh && c < jt->second) jt->second = c;
                        }
                    acc = std::move(next);
                }
                for (const auto& [su, cu] : acc) {
                    auto [jt, fresh] = out.emplace(su, cu);
                    if (!fresh && cu < jt->second) jt->second = cu;
                }
            }
        }
        return memo.emplace(std::move(key), std::move(out)).first->second;
    }
};

constexpr long long kInf = (1LL << 60);

// Minimal total cost of an accepting alternating read, or kInf.
struct Acceptor {
    const SaturationProvenance& prov;
    std::map<std::pair<int, StackWord>, long long> memo;

    long long cost(int state, const StackWord& word) {
        if (word.empty()) return state == prov.accept_state ? 0 : kInf;
        auto key = std::make_pair(state, word);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        memo[key] = kInf;  // cycles cannot be accepting at lower cost
        StackWord rest(word.begin() + 1, word.end());
        long long best = kInf;
        for (const AmaTransition& t : prov.transitions) {
            if (t.src != state || t.sym != word.front()) continue;
            long long total = t.cost;
            for (int u : t.targets) {
                long long c = cost(u, rest);
                if (c >= kInf) {
                    total = kInf;
                    break;
                }
                total += c;
            }
            best = std::min(best, total);
        }
        return memo[key] = best;
    }
};

bool add_transition(SaturationProvenance& prov, int src, SymId sym, std::vector<int> targets,
                    long long cost, int rule) {
    for (AmaTransition& t : prov.transitions)
        if (t.src == src && t.sym == sym && t.targets == targets) {
            if (cost < t.cost) {
                t.cost = cost;
                t.rule = rule;
                return true;
            }
            return false;
        }
    prov.transitions.push_back(AmaTransition{src, sym, std::move(targets), cost, rule});
    return true;
}

}  // namespace

std::pair<bool, SaturationProvenance> aps_emptiness(const Aps& aps) {
    aps.validate();
    SaturationProvenance prov;
    prov.num_states = aps.num_states() + 1;
    prov.accept_state = aps.num_states();
    // Start automaton stores exactly {(fin, bot)}.
    prov.transitions.push_back(
        AmaTransition{aps.fin, aps.bottom, {prov.accept_state}, 0, -1});

    bool changed = true;
    while (changed) {
        changed = false;
        ++prov.rounds;
        Reader reader{prov, {}};
        std::vector<AmaTransition> to_add;
        for (size_t ri = 0; ri < aps.rules.size(); ++ri) {
            const ApsRule& r = aps.rules[ri];
            // Cartesian product of frontier choices across the branches.
            std::map<std::set<int>, long long> acc{{{}, 1}};
            for (const ApsBranch& b : r.branches) {
                const auto& part = reader.sets(b.dst, b.push);
                std::map<std::set<int>, long long> next;
                for (const auto& [sa, ca] : acc)
                    for (const auto& [sb, cb] : part) {
                        std::set<int> un = sa;
                        un.insert(sb.begin(), sb.end());
                        long long c = ca + cb;
                        auto [jt, fresh] = next.emplace(std::move(un), c);
                        if (!fresh && c < jt->second) jt->second = c;
                    }
                acc = std::move(next);
                if (acc.empty()) break;
            }
            for (const auto& [su, cu] : acc)
                to_add.push_back(AmaTransition{r.src, r.pop, std::vector<int>(su.begin(), su.end()),
                                               cu, static_cast<int>(ri)});
        }
        for (AmaTransition& t : to_add)
            changed |= add_transition(prov, t.src, t.sym, std::move(t.targets), t.cost, t.rule);
    }

    Acceptor acceptor{prov, {}};
    bool yes = acceptor.cost(aps.init, {aps.bottom}) < kInf;
    return {yes, prov};
}

bool aps_prestar_member(const Aps& aps, const SaturationProvenance& prov, int state,
                        const StackWord& stack) {
    (void)aps;
    Acceptor acceptor{prov, {}};
    return acceptor.cost(state, stack) < kInf;
}

namespace {

ApsRunNode extract_node(const Aps& aps, const SaturationProvenance& prov, Acceptor& acceptor,
                        int state, const StackWord& stack) {
    ApsRunNode node;
    node.state = state;
    node.stack = stack;
    long long best = acceptor.cost(state, stack);
    if (best >= kInf) throw Error("extraction from a configuration outside the predecessor set");

    StackWord rest(stack.begin() + 1, stack.end());
    const AmaTransition* pick = nullptr;
    for (const AmaTransition& t : prov.transitions) {
        if (t.src != state || t.sym != stack.front()) continue;
        long long total = t.cost;
        for (int u : t.targets) {
            long long c = acceptor.cost(u, rest);
            if (c >= kInf) {
                total = kInf;
                break;
            }
            total += c;
        }
        if (total == best) {
            pick = &t;
            break;
        }
    }
    if (!pick) throw Error("no transition achieves the optimal read cost");
    if (pick->rule < 0) return node;  // the initial (fin, bot) transition: a leaf

    const ApsRule& r = aps.rules[pick->rule];
    node.rule = pick->rule;
    for (const ApsBranch& b : r.branches) {
        StackWord child = b.push;
        child.insert(child.end(), rest.begin(), rest.end());
        // The child's optimal cost is strictly below `best`, so this recursion
        // is well-founded.
        node.children.push_back(extract_node(aps, prov, acceptor, b.dst, child));
    }
    return node;
}

}  // namespace

ApsRun extract_run_from(const Aps& aps, const SaturationProvenance& prov, int state,
                        const StackWord& stack) {
    Acceptor acceptor{prov, {}};
    ApsRun run{extract_node(aps, prov, acceptor, state, stack)};
    if (!validate_run(aps, run, state, stack))
        throw Error("extracted run fails validation");
    return run;
}

ApsRun extract_run(const Aps& aps, const SaturationProvenance& prov) {
    return extract_run_from(aps, prov, aps.init, {aps.bottom});
}

namespace {

StrategyNode run_node_to_strategy(const PdaAps& pa, const ApsRunNode& nd) {
    StrategyNode out;
    if (nd.state < 0 || nd.state >= static_cast<int>(pa.subset_of.size()))
        throw ValidationError("run node does not come from this construction");
    out.label.states = pa.subset_of[nd.state];
    out.label.stack = nd.stack;
    if (!nd.is_leaf()) {
        if (nd.rule < 0 || nd.rule >= static_cast<int>(pa.rule_letter.size()))
            throw ValidationError("run node rule does not come from this construction");
        out.out_letter = pa.rule_letter[nd.rule];
        for (const ApsRunNode& c : nd.children)
            out.children.push_back(run_node_to_strategy(pa, c));
    }
    return out;
}

}  // namespace

StrategyTree run_to_supersync(const PdaAps& pa, const ApsRun& run) {
    if (!validate_run(pa.aps, run, run.root.state, run.root.stack))
        throw ValidationError("tree is not a run of this construction");
    return StrategyTree{run_node_to_strategy(pa, run.root)};
}

}  // namespace adasync
