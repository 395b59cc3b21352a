#include "adasync/aeps.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace adasync {

namespace {

bool push_word_ok(const StackWord& push, SymId pop, SymId bottom) {
    // A rule popping bottom re-pushes it last; bottom appears nowhere else.
    long bots = std::count(push.begin(), push.end(), bottom);
    if (pop == bottom) return bots == 1 && !push.empty() && push.back() == bottom;
    return bots == 0;
}

}  // namespace

void Aeps::validate() const {
    if (bottom < 0 || bottom >= num_syms()) throw ValidationError("bottom symbol out of range");
    if (init < 0 || init >= num_states()) throw ValidationError("init state out of range");
    if (fin < 0 || fin >= num_states()) throw ValidationError("fin state out of range");
    for (const AepsRule& r : rules) {
        if (r.src < 0 || r.src >= num_states()) throw ValidationError("rule source out of range");
        if (r.pop < 0 || r.pop >= num_syms()) throw ValidationError("rule pop out of range");
        if (r.branches.empty()) throw ValidationError("rule without branches");
        for (const auto& [v, b] : r.guard) {
            if (v < 0 || v >= num_vars()) throw ValidationError("guard variable out of range");
            if (b > 1) throw ValidationError("guard bit out of range");
        }
        for (const AepsBranch& br : r.branches) {
            if (br.dst < 0 || br.dst >= num_states())
                throw ValidationError("branch target out of range");
            for (SymId a : br.push)
                if (a < 0 || a >= num_syms()) throw ValidationError("pushed symbol out of range");
            if (!push_word_ok(br.push, r.pop, bottom))
                throw ValidationError("pushed word breaks the bottom-symbol discipline");
            std::set<VarId> seen;
            for (const auto& [v, b] : br.command) {
                if (v < 0 || v >= num_vars()) throw ValidationError("command variable out of range");
                if (b > 1) throw ValidationError("command bit out of range");
                if (!seen.insert(v).second)
                    throw ValidationError("command assigns a variable twice");
            }
        }
    }
}

bool Aeps::is_neps() const {
    return std::all_of(rules.begin(), rules.end(),
                       [](const AepsRule& r) { return r.branches.size() == 1; });
}

AepsConfig initial_config(const Aeps& a) {
    return AepsConfig{a.init, {a.bottom}, Valuation(a.num_vars(), 0)};
}

AepsConfig accepting_config(const Aeps& a) {
    return AepsConfig{a.fin, {a.bottom}, Valuation(a.num_vars(), 0)};
}

bool enabled(const Aeps& a, const AepsRule& rule, const AepsConfig& config) {
    (void)a;
    if (config.state != rule.src) return false;
    if (config.stack.empty() || config.stack.front() != rule.pop) return false;
    for (const auto& [v, b] : rule.guard)
        if (config.valuation.at(v) != b) return false;
    return true;
}

std::vector<AepsConfig> fork(const Aeps& a, const AepsRule& rule, const AepsConfig& config) {
    if (!enabled(a, rule, config)) throw NotEnabled("rule is not enabled at the configuration");
    std::vector<AepsConfig> out;
    for (const AepsBranch& br : rule.branches) {
        AepsConfig child;
        child.state = br.dst;
        child.stack = br.push;
        child.stack.insert(child.stack.end(), config.stack.begin() + 1, config.stack.end());
        child.valuation = config.valuation;
        for (const auto& [v, b] : br.command) child.valuation[v] = b;
        out.push_back(std::move(child));
    }
    return out;
}

bool has_distinct_pushes(const Aeps& a) {
    for (const AepsRule& r : a.rules) {
        std::set<StackWord> seen;
        for (const AepsBranch& br : r.branches)
            if (!seen.insert(br.push).second) return false;
    }
    return true;
}

Aeps normalize_distinct_pushes(const Aeps& a) {
    Aeps out = a;
    std::vector<AepsRule> extra;
    for (size_t ri = 0; ri < out.rules.size(); ++ri) {
        AepsRule& r = out.rules[ri];
        std::set<StackWord> seen;
        for (size_t bi = 0; bi < r.branches.size(); ++bi) {
            AepsBranch& br = r.branches[bi];
            if (seen.insert(br.push).second) continue;
            // Duplicate push word: detour through a fresh letter and state.
            SymId fresh_sym = static_cast<SymId>(out.sym_names.size());
            // A leading '#' would clash with the text format's comments.
            out.sym_names.push_back("t#:" + std::to_string(ri) + ":" + std::to_string(bi));
            int fresh_state = static_cast<int>(out.state_names.size());
            out.state_names.push_back("mid:" + std::to_string(ri) + ":" + std::to_string(bi));
            AepsRule follow;
            follow.src = fresh_state;
            follow.pop = fresh_sym;
            follow.branches.push_back(AepsBranch{br.dst, {}, {}});
            extra.push_back(std::move(follow));
            StackWord detour{fresh_sym};
            detour.insert(detour.end(), br.push.begin(), br.push.end());
            br.push = std::move(detour);
            br.dst = fresh_state;
        }
    }
    out.rules.insert(out.rules.end(), extra.begin(), extra.end());
    out.validate();
    return out;
}

AepsPdaInstance aeps_to_pda(const Aeps& a) {
    if (!has_distinct_pushes(a))
        throw NotNormalized("branch push words must be pairwise distinct (normalize first)");

    Pda pda;
    pda.sym_names = a.sym_names;
    pda.bottom = a.bottom;
    pda.state_names = a.state_names;
    // Variable-tracking states (v,b), then the two sinks.
    auto var_state = [&](VarId v, Bit b) { return a.num_states() + 2 * v + int(b); };
    for (int v = 0; v < a.num_vars(); ++v) {
        pda.state_names.push_back(a.var_names[v] + ":0");
        pda.state_names.push_back(a.var_names[v] + ":1");
    }
    StateId q_acc = static_cast<StateId>(pda.state_names.size());
    pda.state_names.push_back("acc");
    StateId q_rej = static_cast<StateId>(pda.state_names.size());
    pda.state_names.push_back("rej");

    for (size_t t = 0; t < a.rules.size(); ++t)
        pda.input_names.push_back("in:" + std::to_string(t));
    LetterId end = static_cast<LetterId>(pda.input_names.size());
    pda.input_names.push_back("end");

    auto keep = [&](StateId p, LetterId l, SymId top, StateId dst) {
        StackWord push{top};
        if (top == a.bottom) push = {a.bottom};
        pda.rules.push_back(Rule{p, l, top, dst, push});
    };

    for (size_t ti = 0; ti < a.rules.size(); ++ti) {
        const AepsRule& t = a.rules[ti];
        LetterId l = static_cast<LetterId>(ti);
        for (SymId top = 0; top < a.num_syms(); ++top) {
            for (int q = 0; q < a.num_states(); ++q) {
                if (q != t.src || top != t.pop) {
                    keep(q, l, top, q_rej);
                    continue;
                }
                for (const AepsBranch& br : t.branches)
                    pda.rules.push_back(Rule{q, l, top, br.dst, br.push});
            }
            for (int v = 0; v < a.num_vars(); ++v) {
                for (Bit b : {Bit(0), Bit(1)}) {
                    StateId p = var_state(v, b);
                    bool refuted = std::any_of(t.guard.begin(), t.guard.end(), [&](auto g) {
                        return g.first == v && g.second == Bit(1 - b);
                    });
                    if (refuted || top != t.pop) {
                        keep(p, l, top, q_rej);
                        continue;
                    }
                    for (const AepsBranch& br : t.branches) {
                        Bit nb = b;
                        for (const auto& [cv, cb] : br.command)
                            if (cv == v) nb = cb;
                        pda.rules.push_back(Rule{p, l, top, var_state(v, nb), br.push});
                    }
                }
            }
        }
    }

    // end routes the accepting pseudo-configuration to acc, the rest to rej.
    for (SymId top = 0; top < a.num_syms(); ++top) {
        for (int q = 0; q < a.num_states(); ++q)
            keep(q, end, top, q == a.fin ? q_acc : q_rej);
        for (int v = 0; v < a.num_vars(); ++v) {
            keep(var_state(v, 0), end, top, q_acc);
            keep(var_state(v, 1), end, top, q_rej);
        }
    }

    // The sinks absorb every letter without touching the stack.
    for (LetterId l = 0; l <= end; ++l)
        for (SymId top = 0; top < a.num_syms(); ++top) {
            keep(q_acc, l, top, q_acc);
            keep(q_rej, l, top, q_rej);
        }

    pda.validate();

    AepsPdaInstance inst;
    inst.pda = complete(pda);
    std::vector<StateId> root_states{a.init};
    for (int v = 0; v < a.num_vars(); ++v) root_states.push_back(var_state(v, 0));
    inst.root = make_pseudo_config(make_state_set(std::move(root_states)), {a.bottom}, inst.pda);
    inst.target = q_acc;
    return inst;
}

}  // namespace adasync
