#include "adasync/witness.hpp"

#include <algorithm>
#include <sstream>

namespace adasync {

namespace {

int leaf_count_of(const StrategyNode& n) {
    if (n.is_leaf()) return 1;
    int c = 0;
    for (const auto& ch : n.children) c += leaf_count_of(ch);
    return c;
}

int depth_of(const StrategyNode& n) {
    int d = 0;
    for (const auto& ch : n.children) d = std::max(d, 1 + depth_of(ch));
    return d;
}

bool leaf_ok(const PseudoConfig& pc, const WitnessKind& kind, SymId bottom) {
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

struct Checker {
    const Pda& pda;
    const WitnessKind& kind;

    Verdict visit(const StrategyNode& n, const std::string& path) const {
        if (n.is_leaf()) {
            if (n.out_letter)
                throw MalformedTree("leaf node carries an output letter at " + path);
            if (!leaf_ok(n.label, kind, pda.bottom))
                return {false, path + ": leaf does not satisfy the witness kind"};
            return {true, ""};
        }
        if (!n.out_letter) throw MalformedTree("internal node without output letter at " + path);
        std::vector<PseudoConfig> expected = succ(pda, n.label, *n.out_letter);
        if (expected.size() != n.children.size())
            throw MalformedTree("child count mismatch at " + path + ": expected " +
                                std::to_string(expected.size()) + ", got " +
                                std::to_string(n.children.size()));
        for (size_t i = 0; i < expected.size(); ++i) {
            const std::string child_path = path + "/" + std::to_string(i);
            if (n.children[i].label != expected[i])
                return {false, child_path + ": child label does not match succ"};
            Verdict v = visit(n.children[i], child_path);
            if (!v.ok) return v;
        }
        return {true, ""};
    }
};

}  // namespace

int StrategyTree::leaf_count() const { return leaf_count_of(root); }
int StrategyTree::depth() const { return depth_of(root); }

Verdict check_witness(const Pda& pda, const PseudoConfig& root_pc, const WitnessKind& kind,
                      const StrategyTree& tree) {
    if (kind.tag != WitnessKindTag::HomingWord &&
        (kind.target < 0 || kind.target >= pda.num_states()))
        throw ValidationError("witness target state not in the PDA");
    if (tree.root.label != root_pc) return {false, "root: label does not match the instance"};
    return Checker{pda, kind}.visit(tree.root, "root");
}

namespace {

void serialize_node(const Pda& pda, const StrategyNode& n, int depth, std::ostream& os) {
    os << std::string(static_cast<size_t>(2 * depth), ' ');
    if (n.out_letter) os << "[" << pda.input_names.at(*n.out_letter) << "] ";
    os << format_state_set(pda, n.label.states) << " | " << format_stack(pda, n.label.stack)
       << "\n";
    for (const auto& ch : n.children) serialize_node(pda, ch, depth + 1, os);
}

struct ParsedLine {
    int depth;
    StrategyNode node;  // children empty
    int lineno;
};

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

std::string serialize_tree(const Pda& pda, const StrategyTree& tree) {
    std::ostringstream os;
    serialize_node(pda, tree.root, 0, os);
    return os.str();
}

StrategyTree deserialize_tree(const Pda& pda, const std::string& text) {
    std::vector<ParsedLine> lines;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t indent = 0;
        while (indent < line.size() && line[indent] == ' ') ++indent;
        std::string body = line.substr(indent);
        if (body.empty() || body[0] == '#') continue;
        if (indent % 2 != 0) throw ParseError("odd indentation", lineno, 1);

        ParsedLine pl;
        pl.depth = static_cast<int>(indent / 2);
        pl.lineno = lineno;

        if (body[0] == '[') {
            size_t close = body.find(']');
            if (close == std::string::npos) throw ParseError("unterminated letter", lineno, 1);
            pl.node.out_letter = pda.input(body.substr(1, close - 1));
            body = body.substr(close + 1);
        }
        size_t bar = body.find('|');
        if (bar == std::string::npos) throw ParseError("missing '|'", lineno, 1);
        std::string states_part = body.substr(0, bar);
        std::string stack_part = body.substr(bar + 1);

        size_t open = states_part.find('{');
        size_t close = states_part.find('}');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw ParseError("malformed state set", lineno, 1);
        std::vector<StateId> states;
        std::string inner = states_part.substr(open + 1, close - open - 1);
        std::string item;
        std::istringstream ss(inner);
        while (std::getline(ss, item, ',')) {
            auto toks = split_ws(item);
            if (toks.size() != 1) throw ParseError("malformed state set entry", lineno, 1);
            auto id = pda.find_state(toks[0]);
            if (!id) throw ParseError("unknown state: " + toks[0], lineno, 1);
            states.push_back(*id);
        }
        StackWord stack;
        for (const std::string& tok : split_ws(stack_part)) {
            auto id = pda.find_sym(tok);
            if (!id) throw ParseError("unknown stack letter: " + tok, lineno, 1);
            stack.push_back(*id);
        }
        try {
            pl.node.label = make_pseudo_config(std::move(states), std::move(stack), pda);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), lineno, 1);
        }
        lines.push_back(std::move(pl));
    }
    if (lines.empty()) throw ParseError("empty witness document", 1, 1);
    if (lines[0].depth != 0) throw ParseError("root must have no indentation", lines[0].lineno, 1);

    // Rebuild the tree from the depth-indented preorder listing.
    size_t pos = 0;
    struct Builder {
        const std::vector<ParsedLine>& lines;
        size_t& pos;
        StrategyNode build(int depth) {
            ParsedLine pl = lines[pos++];
            StrategyNode node = pl.node;
            while (pos < lines.size() && lines[pos].depth == depth + 1)
                node.children.push_back(build(depth + 1));
            if (pos < lines.size() && lines[pos].depth > depth + 1)
                throw ParseError("indentation jump", lines[pos].lineno, 1);
            if (node.out_letter && node.children.empty())
                throw ParseError("node declares a letter but has no children", pl.lineno, 1);
            if (!node.out_letter && !node.children.empty())
                throw ParseError("node has children but no letter", pl.lineno, 1);
            return node;
        }
    };
    StrategyNode root = Builder{lines, pos}.build(0);
    if (pos != lines.size()) throw ParseError("multiple roots", lines[pos].lineno, 1);
    return StrategyTree{std::move(root)};
}

namespace {

void dot_node(const Pda& pda, const StrategyNode& n, int& next_id, int my_id, std::ostream& os) {
    os << "  n" << my_id << " [label=\"" << format_state_set(pda, n.label.states) << " / "
       << format_stack(pda, n.label.stack) << "\"];\n";
    for (const auto& ch : n.children) {
        int child_id = next_id++;
        os << "  n" << my_id << " -> n" << child_id << " [label=\""
           << pda.input_names.at(*n.out_letter) << "\"];\n";
        dot_node(pda, ch, next_id, child_id, os);
    }
}

}  // namespace

std::string tree_to_dot(const Pda& pda, const StrategyTree& tree) {
    std::ostringstream os;
    os << "digraph witness {\n  node [shape=box];\n";
    int next_id = 1;
    dot_node(pda, tree.root, next_id, 0, os);
    os << "}\n";
    return os.str();
}

}  // namespace adasync
