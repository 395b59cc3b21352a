#include "adasync/pda.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace adasync {

namespace {

std::optional<int> find_name(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<int>(it - names.begin());
}

}  // namespace

std::optional<StateId> Pda::find_state(const std::string& name) const {
    return find_name(state_names, name);
}
std::optional<LetterId> Pda::find_input(const std::string& name) const {
    return find_name(input_names, name);
}
std::optional<SymId> Pda::find_sym(const std::string& name) const {
    return find_name(sym_names, name);
}

StateId Pda::state(const std::string& name) const {
    auto id = find_state(name);
    if (!id) throw ValidationError("unknown state: " + name);
    return *id;
}
LetterId Pda::input(const std::string& name) const {
    auto id = find_input(name);
    if (!id) throw ValidationError("unknown input letter: " + name);
    return *id;
}
SymId Pda::sym(const std::string& name) const {
    auto id = find_sym(name);
    if (!id) throw ValidationError("unknown stack letter: " + name);
    return *id;
}

bool stack_word_valid(const StackWord& w, SymId bottom) {
    if (w.empty()) return false;
    if (w.back() != bottom) return false;
    return std::count(w.begin(), w.end(), bottom) == 1;
}

void Pda::validate() const {
    if (bottom < 0 || bottom >= num_syms())
        throw ValidationError("bottom symbol is not a declared stack letter");
    auto rule_str = [&](const Rule& r) {
        std::ostringstream os;
        os << "(" << state_names.at(r.src) << "," << input_names.at(r.letter) << ","
           << sym_names.at(r.pop) << ") -> (" << state_names.at(r.dst) << ",";
        if (r.push.empty()) os << "eps";
        for (size_t i = 0; i < r.push.size(); ++i) os << (i ? " " : "") << sym_names.at(r.push[i]);
        os << ")";
        return os.str();
    };
    for (const Rule& r : rules) {
        if (r.src < 0 || r.src >= num_states() || r.dst < 0 || r.dst >= num_states())
            throw ValidationError("rule references unknown state");
        if (r.letter < 0 || r.letter >= num_inputs())
            throw ValidationError("rule references unknown input letter");
        if (r.pop < 0 || r.pop >= num_syms())
            throw ValidationError("rule references unknown stack letter");
        for (SymId s : r.push)
            if (s < 0 || s >= num_syms())
                throw ValidationError("rule pushes unknown stack letter");
        long bottoms = std::count(r.push.begin(), r.push.end(), bottom);
        if (r.pop == bottom) {
            if (r.push.empty() || r.push.back() != bottom || bottoms != 1)
                throw ValidationError("rule popping bottom must push it back last: " + rule_str(r));
        } else if (bottoms != 0) {
            throw ValidationError("rule pushes bottom without popping it: " + rule_str(r));
        }
    }
}

StateSet make_state_set(std::vector<StateId> states) {
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    return states;
}

PseudoConfig make_pseudo_config(StateSet states, StackWord stack, const Pda& pda) {
    StateSet s = make_state_set(std::move(states));
    if (s.empty()) throw ValidationError("pseudo-configuration with empty knowledge set");
    for (StateId q : s)
        if (q < 0 || q >= pda.num_states())
            throw ValidationError("pseudo-configuration references unknown state");
    if (!stack_word_valid(stack, pda.bottom))
        throw ValidationError("pseudo-configuration stack violates bottom discipline");
    return PseudoConfig{std::move(s), std::move(stack)};
}

Pda complete(const Pda& pda) {
    pda.validate();
    Pda out = pda;
    std::vector<char> covered(
        static_cast<size_t>(pda.num_states()) * pda.num_inputs() * pda.num_syms(), 0);
    auto idx = [&](StateId q, LetterId a, SymId A) {
        return (static_cast<size_t>(q) * pda.num_inputs() + a) * pda.num_syms() + A;
    };
    for (const Rule& r : pda.rules) covered[idx(r.src, r.letter, r.pop)] = 1;
    for (StateId q = 0; q < pda.num_states(); ++q)
        for (LetterId a = 0; a < pda.num_inputs(); ++a)
            for (SymId A = 0; A < pda.num_syms(); ++A)
                if (!covered[idx(q, a, A)]) out.rules.push_back(Rule{q, a, A, q, {A}});
    return out;
}

bool is_complete(const Pda& pda) {
    std::vector<char> covered(
        static_cast<size_t>(pda.num_states()) * pda.num_inputs() * pda.num_syms(), 0);
    auto idx = [&](StateId q, LetterId a, SymId A) {
        return (static_cast<size_t>(q) * pda.num_inputs() + a) * pda.num_syms() + A;
    };
    for (const Rule& r : pda.rules) covered[idx(r.src, r.letter, r.pop)] = 1;
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

bool is_deterministic(const Pda& pda) {
    std::vector<int> count(
        static_cast<size_t>(pda.num_states()) * pda.num_inputs() * pda.num_syms(), 0);
    auto idx = [&](StateId q, LetterId a, SymId A) {
        return (static_cast<size_t>(q) * pda.num_inputs() + a) * pda.num_syms() + A;
    };
    for (const Rule& r : pda.rules) count[idx(r.src, r.letter, r.pop)]++;
    return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

std::vector<Rule> transitions_from(const Pda& pda, const StateSet& S, LetterId a, SymId A) {
    std::vector<Rule> out;
    for (const Rule& r : pda.rules)
        if (r.letter == a && r.pop == A && std::binary_search(S.begin(), S.end(), r.src))
            out.push_back(r);
    return out;
}

std::vector<ObsClass> obs_classes(const Pda& pda, const StateSet& S, LetterId a, SymId A) {
    std::map<StackWord, ObsClass> classes;
    for (const Rule& r : transitions_from(pda, S, a, A)) {
        ObsClass& c = classes[r.push];
        c.push = r.push;
        c.targets.push_back(r.dst);
        c.members.push_back(r);
    }
    std::vector<ObsClass> out;
    out.reserve(classes.size());
    for (auto& [push, c] : classes) {
        c.targets = make_state_set(std::move(c.targets));
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<PseudoConfig> succ(const Pda& pda, const PseudoConfig& pc, LetterId a) {
    SymId top = pc.stack.front();
    StackWord rest(pc.stack.begin() + 1, pc.stack.end());
    std::vector<PseudoConfig> out;
    for (const ObsClass& c : obs_classes(pda, pc.states, a, top)) {
        StackWord stack = c.push;
        stack.insert(stack.end(), rest.begin(), rest.end());
        out.push_back(PseudoConfig{c.targets, std::move(stack)});
    }
    return out;
}

std::string format_state_set(const Pda& pda, const StateSet& S) {
    std::string out = "{";
    for (size_t i = 0; i < S.size(); ++i) {
        if (i) out += ",";
        out += pda.state_names.at(S[i]);
    }
    return out + "}";
}

std::string format_stack(const Pda& pda, const StackWord& w) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += pda.sym_names.at(w[i]);
    }
    return out;
}

}  // namespace adasync
