#include "adasync/format.hpp"

#include <algorithm>
#include <sstream>

namespace adasync {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::AdaSync: return "ada";
        case Variant::SubsetAdaSync: return "subset";
        case Variant::GivenSync: return "given";
        case Variant::SuperSync: return "super";
        case Variant::SpecialSync: return "special";
        case Variant::Homing: return "homing";
        case Variant::SubsetHoming: return "subset-homing";
    }
    return "?";
}

std::optional<Variant> parse_variant(const std::string& name) {
    for (Variant v : {Variant::AdaSync, Variant::SubsetAdaSync, Variant::GivenSync,
                      Variant::SuperSync, Variant::SpecialSync, Variant::Homing,
                      Variant::SubsetHoming})
        if (variant_name(v) == name) return v;
    return std::nullopt;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Line {
    int no;
    std::vector<std::string> toks;
    std::string raw;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream is(text);
    std::string line;
    int no = 0;
    while (std::getline(is, line)) {
        ++no;
        size_t hash = line.find('#');
        // '#' starts a comment only at start of line or after whitespace, so
        // gadget names containing '#' survive round-trips.
        while (hash != std::string::npos && hash > 0 && !isspace((unsigned char)line[hash - 1]))
            hash = line.find('#', hash + 1);
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        auto toks = split_ws(body);
        if (toks.empty()) continue;
        out.push_back(Line{no, std::move(toks), trim(body)});
    }
    return out;
}

StackWord parse_push_word(const std::vector<std::string>& toks, size_t from,
                          const std::vector<std::string>& sym_names, int lineno) {
    StackWord w;
    if (from < toks.size() && toks[from] == "eps") {
        if (from + 1 != toks.size()) throw ParseError("tokens after 'eps'", lineno);
        return w;
    }
    for (size_t i = from; i < toks.size(); ++i) {
        auto it = std::find(sym_names.begin(), sym_names.end(), toks[i]);
        if (it == sym_names.end()) throw ParseError("unknown stack letter: " + toks[i], lineno);
        w.push_back(static_cast<SymId>(it - sym_names.begin()));
    }
    return w;
}

int lookup(const std::vector<std::string>& names, const std::string& name, const char* what,
           int lineno) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw ParseError(std::string("unknown ") + what + ": " + name, lineno);
    return static_cast<int>(it - names.begin());
}

ProblemHeader parse_problem_line(const Line& ln) {
    if (ln.toks.size() < 2) throw ParseError("problem line needs a variant", ln.no);
    auto v = parse_variant(ln.toks[1]);
    if (!v) throw ParseError("unknown problem variant: " + ln.toks[1], ln.no);
    ProblemHeader h{*v, std::nullopt, std::nullopt, std::nullopt};
    for (size_t i = 2; i < ln.toks.size(); ++i) {
        const std::string& t = ln.toks[i];
        size_t eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("malformed problem field: " + t, ln.no);
        std::string key = t.substr(0, eq);
        std::string val = t.substr(eq + 1);
        if (key == "I")
            h.I = split_on(val, ',');
        else if (key == "s")
            h.s = val;
        else if (key == "gamma")
            h.gamma = split_on(val, ',');
        else
            throw ParseError("unknown problem field: " + key, ln.no);
    }
    return h;
}

// Parses the branch list of an aeps/aps rule: "(dst, push, [cmds]) ; (...)".
std::vector<std::string> split_branches(const std::string& rhs, int lineno) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : rhs) {
        if (c == '(') depth++;
        if (c == ')') depth--;
        if (c == ';' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    if (depth != 0) throw ParseError("unbalanced parentheses", lineno);
    if (out.empty()) throw ParseError("rule without branches", lineno);
    return out;
}

std::vector<std::pair<int, Bit>> parse_var_list(const std::string& inner, const std::string& op,
                                                const std::vector<std::string>& var_names,
                                                int lineno) {
    std::vector<std::pair<int, Bit>> out;
    for (const std::string& tok : split_ws(inner)) {
        size_t p = tok.find(op);
        if (p == std::string::npos)
            throw ParseError("malformed test/command: " + tok, lineno);
        std::string v = tok.substr(0, p);
        std::string b = tok.substr(p + op.size());
        if (b != "0" && b != "1") throw ParseError("bit must be 0 or 1: " + tok, lineno);
        out.emplace_back(lookup(var_names, v, "variable", lineno),
                         static_cast<Bit>(b == "1" ? 1 : 0));
    }
    return out;
}

std::string bracket_inner(const std::string& s, int lineno) {
    std::string t = trim(s);
    if (t.empty()) return "";
    if (t.front() != '[' || t.back() != ']') throw ParseError("expected [...]: " + s, lineno);
    return t.substr(1, t.size() - 2);
}

}  // namespace

InstanceDocument parse_instance(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError("empty document", 1);
    const std::string& kind = lines[0].toks[0];
    if (kind != "pda" && kind != "aeps" && kind != "aps")
        throw ParseError("document must start with 'pda', 'aeps' or 'aps'", lines[0].no);

    std::vector<std::string> state_names, input_names, var_names, sym_names;
    std::optional<std::string> bottom_name, init_name, fin_name;
    std::vector<Line> rule_lines;
    std::optional<ProblemHeader> problem;

    for (size_t i = 1; i < lines.size(); ++i) {
        const Line& ln = lines[i];
        const std::string& key = ln.toks[0];
        auto rest = [&] { return std::vector<std::string>(ln.toks.begin() + 1, ln.toks.end()); };
        if (key == "states")
            state_names = rest();
        else if (key == "inputs" && kind == "pda")
            input_names = rest();
        else if (key == "vars" && kind == "aeps")
            var_names = rest();
        else if (key == "stack")
            sym_names = rest();
        else if (key == "bottom") {
            if (ln.toks.size() != 2) throw ParseError("bottom takes one symbol", ln.no);
            bottom_name = ln.toks[1];
        } else if (key == "init" && kind != "pda") {
            if (ln.toks.size() != 2) throw ParseError("init takes one state", ln.no);
            init_name = ln.toks[1];
        } else if (key == "fin" && kind != "pda") {
            if (ln.toks.size() != 2) throw ParseError("fin takes one state", ln.no);
            fin_name = ln.toks[1];
        } else if ((key == "trans" && kind == "pda") || (key == "rule" && kind != "pda"))
            rule_lines.push_back(ln);
        else if (key == "problem")
            problem = parse_problem_line(ln);
        else
            throw ParseError("unexpected directive: " + key, ln.no);
    }

    if (!bottom_name) throw ParseError("missing 'bottom' line", lines.back().no);
    auto check_dups = [&](const std::vector<std::string>& names, const char* what) {
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError(std::string("duplicate ") + what + " name", lines[0].no);
    };
    check_dups(state_names, "state");
    check_dups(input_names, "input");
    check_dups(var_names, "variable");
    check_dups(sym_names, "stack letter");

    InstanceDocument doc;
    doc.problem = problem;

    if (kind == "pda") {
        Pda pda;
        pda.state_names = state_names;
        pda.input_names = input_names;
        pda.sym_names = sym_names;
        pda.bottom = lookup(sym_names, *bottom_name, "stack letter", lines[0].no);
        for (const Line& ln : rule_lines) {
            // trans <src> <letter> <pop> -> <dst> <push...|eps>
            auto arrow = std::find(ln.toks.begin(), ln.toks.end(), "->");
            if (arrow == ln.toks.end() || arrow - ln.toks.begin() != 4 ||
                arrow + 1 == ln.toks.end())
                throw ParseError("malformed trans line", ln.no);
            Rule r;
            r.src = lookup(state_names, ln.toks[1], "state", ln.no);
            r.letter = lookup(input_names, ln.toks[2], "input letter", ln.no);
            r.pop = lookup(sym_names, ln.toks[3], "stack letter", ln.no);
            r.dst = lookup(state_names, ln.toks[5], "state", ln.no);
            r.push = parse_push_word(ln.toks, 6, sym_names, ln.no);
            pda.rules.push_back(std::move(r));
        }
        pda.validate();
        doc.body = complete(pda);
        return doc;
    }

    auto parse_rule_common = [&](const Line& ln, bool with_vars) {
        // rule <src> <pop> [tests...] -> branches
        size_t arrow = ln.raw.find("->");
        if (arrow == std::string::npos) throw ParseError("malformed rule line", ln.no);
        std::string lhs = trim(ln.raw.substr(0, arrow));
        std::string rhs = trim(ln.raw.substr(arrow + 2));
        auto ltoks = split_ws(lhs);
        if (ltoks.size() < 3) throw ParseError("malformed rule head", ln.no);
        AepsRule rule;
        rule.src = lookup(state_names, ltoks[1], "state", ln.no);
        rule.pop = lookup(sym_names, ltoks[2], "stack letter", ln.no);
        if (with_vars) {
            size_t ob = lhs.find('[');
            if (ob != std::string::npos) {
                size_t cb = lhs.find(']', ob);
                if (cb == std::string::npos) throw ParseError("unterminated guard", ln.no);
                rule.guard = parse_var_list(lhs.substr(ob + 1, cb - ob - 1), "?=", var_names, ln.no);
            }
        } else if (ltoks.size() != 3) {
            throw ParseError("malformed rule head", ln.no);
        }
        for (const std::string& br : split_branches(rhs, ln.no)) {
            std::string t = trim(br);
            if (t.size() < 2 || t.front() != '(' || t.back() != ')')
                throw ParseError("branch must be parenthesised: " + br, ln.no);
            auto parts = split_on(t.substr(1, t.size() - 2), ',');
            size_t expected = with_vars ? 3 : 2;
            if (parts.size() != expected)
                throw ParseError("branch needs " + std::to_string(expected) + " fields", ln.no);
            AepsBranch b;
            b.dst = lookup(state_names, trim(parts[0]), "state", ln.no);
            auto push_toks = split_ws(parts[1]);
            if (push_toks.empty()) throw ParseError("missing push word (use 'eps')", ln.no);
            b.push = parse_push_word(push_toks, 0, sym_names, ln.no);
            if (with_vars)
                b.command = parse_var_list(bracket_inner(parts[2], ln.no), ":=", var_names, ln.no);
            rule.branches.push_back(std::move(b));
        }
        return rule;
    };

    if (!init_name || !fin_name) throw ParseError("missing init/fin", lines.back().no);

    if (kind == "aeps") {
        Aeps a;
        a.state_names = state_names;
        a.var_names = var_names;
        a.sym_names = sym_names;
        a.bottom = lookup(sym_names, *bottom_name, "stack letter", lines[0].no);
        a.init = lookup(state_names, *init_name, "state", lines[0].no);
        a.fin = lookup(state_names, *fin_name, "state", lines[0].no);
        for (const Line& ln : rule_lines) a.rules.push_back(parse_rule_common(ln, true));
        a.validate();
        doc.body = std::move(a);
    } else {
        Aps a;
        a.state_names = state_names;
        a.sym_names = sym_names;
        a.bottom = lookup(sym_names, *bottom_name, "stack letter", lines[0].no);
        a.init = lookup(state_names, *init_name, "state", lines[0].no);
        a.fin = lookup(state_names, *fin_name, "state", lines[0].no);
        for (const Line& ln : rule_lines) {
            AepsRule r = parse_rule_common(ln, false);
            ApsRule ar;
            ar.src = r.src;
            ar.pop = r.pop;
            for (auto& b : r.branches) ar.branches.push_back(ApsBranch{b.dst, std::move(b.push)});
            a.rules.push_back(std::move(ar));
        }
        a.validate();
        doc.body = std::move(a);
    }
    return doc;
}

ProblemInstance resolve_problem(const InstanceDocument& doc, std::optional<Variant> variant_override) {
    if (!doc.is_pda()) throw ValidationError("problem resolution requires a PDA document");
    const Pda& pda = doc.pda();
    std::optional<Variant> v = variant_override;
    if (!v && doc.problem) v = doc.problem->variant;
    if (!v) throw ValidationError("no problem variant given (header or flag)");

    ProblemInstance inst;
    inst.pda = pda;
    inst.variant = *v;

    const ProblemHeader* h = doc.problem ? &*doc.problem : nullptr;
    if (h && h->I) {
        std::vector<StateId> ids;
        for (const auto& n : *h->I) ids.push_back(pda.state(n));
        inst.I = make_state_set(std::move(ids));
    }
    if (h && h->s) inst.s = pda.state(*h->s);
    if (h && h->gamma) {
        for (const auto& n : *h->gamma) inst.start_stack.push_back(pda.sym(n));
    }

    // Ada-Sync and Homing are Subset variants with I = Q.
    if (inst.variant == Variant::AdaSync || inst.variant == Variant::Homing || inst.I.empty()) {
        inst.I.clear();
        for (StateId q = 0; q < pda.num_states(); ++q) inst.I.push_back(q);
    }
    if (inst.variant == Variant::AdaSync) inst.variant = Variant::SubsetAdaSync;
    if (inst.start_stack.empty() || inst.variant == Variant::SpecialSync)
        inst.start_stack = {pda.bottom};
    inst.validate();
    return inst;
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

std::string push_str(const StackWord& w, const std::vector<std::string>& sym_names) {
    if (w.empty()) return "eps";
    std::vector<std::string> parts;
    for (SymId s : w) parts.push_back(sym_names.at(s));
    return join(parts, " ");
}

std::string problem_line(const ProblemHeader& h) {
    std::string out = "problem " + variant_name(h.variant);
    if (h.I) out += " I=" + join(*h.I, ",");
    if (h.s) out += " s=" + *h.s;
    if (h.gamma) out += " gamma=" + join(*h.gamma, ",");
    return out + "\n";
}

}  // namespace

std::string serialize_pda(const Pda& pda, const std::optional<ProblemHeader>& header) {
    std::ostringstream os;
    os << "pda\n";
    os << "states " << join(pda.state_names, " ") << "\n";
    os << "inputs " << join(pda.input_names, " ") << "\n";
    os << "stack " << join(pda.sym_names, " ") << "\n";
    os << "bottom " << pda.sym_names.at(pda.bottom) << "\n";
    for (const Rule& r : pda.rules)
        os << "trans " << pda.state_names.at(r.src) << " " << pda.input_names.at(r.letter) << " "
           << pda.sym_names.at(r.pop) << " -> " << pda.state_names.at(r.dst) << " "
           << push_str(r.push, pda.sym_names) << "\n";
    if (header) os << problem_line(*header);
    return os.str();
}

std::string serialize_problem_instance(const ProblemInstance& inst) {
    ProblemHeader h;
    h.variant = inst.variant;
    std::vector<std::string> I;
    for (StateId q : inst.I) I.push_back(inst.pda.state_names.at(q));
    h.I = I;
    if (inst.s) h.s = inst.pda.state_names.at(*inst.s);
    std::vector<std::string> gamma;
    for (SymId a : inst.start_stack) gamma.push_back(inst.pda.sym_names.at(a));
    h.gamma = gamma;
    return serialize_pda(inst.pda, h);
}

std::string serialize_aeps(const Aeps& a) {
    std::ostringstream os;
    os << "aeps\n";
    os << "states " << join(a.state_names, " ") << "\n";
    os << "vars " << join(a.var_names, " ") << "\n";
    os << "stack " << join(a.sym_names, " ") << "\n";
    os << "bottom " << a.sym_names.at(a.bottom) << "\n";
    os << "init " << a.state_names.at(a.init) << "\n";
    os << "fin " << a.state_names.at(a.fin) << "\n";
    for (const AepsRule& r : a.rules) {
        os << "rule " << a.state_names.at(r.src) << " " << a.sym_names.at(r.pop) << " [";
        for (size_t i = 0; i < r.guard.size(); ++i)
            os << (i ? " " : "") << a.var_names.at(r.guard[i].first) << "?="
               << int(r.guard[i].second);
        os << "] ->";
        for (size_t i = 0; i < r.branches.size(); ++i) {
            const AepsBranch& b = r.branches[i];
            os << (i ? " ; (" : " (") << a.state_names.at(b.dst) << ", "
               << push_str(b.push, a.sym_names) << ", [";
            for (size_t j = 0; j < b.command.size(); ++j)
                os << (j ? " " : "") << a.var_names.at(b.command[j].first) << ":="
                   << int(b.command[j].second);
            os << "])";
        }
        os << "\n";
    }
    return os.str();
}

std::string serialize_aps(const Aps& a) {
    std::ostringstream os;
    os << "aps\n";
    os << "states " << join(a.state_names, " ") << "\n";
    os << "stack " << join(a.sym_names, " ") << "\n";
    os << "bottom " << a.sym_names.at(a.bottom) << "\n";
    os << "init " << a.state_names.at(a.init) << "\n";
    os << "fin " << a.state_names.at(a.fin) << "\n";
    for (const ApsRule& r : a.rules) {
        os << "rule " << a.state_names.at(r.src) << " " << a.sym_names.at(r.pop) << " ->";
        for (size_t i = 0; i < r.branches.size(); ++i)
            os << (i ? " ; (" : " (") << a.state_names.at(r.branches[i].dst) << ", "
               << push_str(r.branches[i].push, a.sym_names) << ")";
        os << "\n";
    }
    return os.str();
}

std::string serialize_name_map(const std::map<std::string, std::string>& name_map) {
    std::ostringstream os;
    for (const auto& [name, role] : name_map) os << name << " = " << role << "\n";
    return os.str();
}

}  // namespace adasync
