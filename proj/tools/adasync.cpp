// Command line front end: decide / reduce / aeps-to-pda / oracle /
// check-witness / gen. Exit codes: 0 = YES, 1 = NO, 2 = error. All report
// bytes on stdout are deterministic for a given input and flag set; timing
// goes to stderr.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "adasync/decide.hpp"
#include "adasync/format.hpp"
#include "adasync/oracle.hpp"
#include "adasync/sparse.hpp"

using namespace adasync;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::optional<Variant> variant_flag(const std::string& name) {
    if (name.empty()) return std::nullopt;
    auto v = parse_variant(name);
    if (!v) throw Error("unknown variant: " + name);
    return v;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cerr << "elapsed: " << ms << " ms\n";
    }
};

int cmd_decide(const std::string& file, const std::string& variant, const std::string& witness_path,
               bool dot, std::optional<int> k, int state_budget) {
    auto doc = parse_instance(slurp(file));
    ProblemInstance inst = resolve_problem(doc, variant_flag(variant));
    DecideOptions opts;
    opts.k = k;
    opts.state_budget = state_budget;
    Timer timer;
    Decision d = decide(inst, opts);
    std::cout << (d.yes ? "YES" : "NO") << "\n";
    std::cout << "variant: " << variant_name(inst.variant) << "\n";
    std::cout << "path: " << (d.deterministic_path ? "sparse" : "saturation") << "\n";
    std::cout << "reductions:";
    for (const auto& t : d.reduction_trace) std::cout << " " << t;
    std::cout << "\n";
    if (d.yes && d.witness) {
        std::cout << "witness-leaves: " << d.witness->leaf_count() << "\n";
        if (!witness_path.empty()) {
            std::ofstream out(witness_path);
            out << (dot ? tree_to_dot(inst.pda, *d.witness) : serialize_tree(inst.pda, *d.witness));
            std::cout << "witness-file: " << witness_path << "\n";
        }
    }
    return d.yes ? 0 : 1;
}

int cmd_reduce(const std::string& file, const std::string& gadget, const std::string& variant) {
    auto doc = parse_instance(slurp(file));
    ProblemInstance inst = resolve_problem(doc, variant_flag(variant));
    ReductionOutput red = [&] {
        if (gadget == "subset-to-ada") return subset_to_ada(inst.pda, inst.I, inst.start_stack);
        if (gadget == "subset-to-given") return subset_to_given(inst.pda, inst.I, inst.start_stack);
        if (gadget == "given-to-subset")
            return given_to_subset(inst.pda, inst.I, *inst.s, inst.start_stack);
        if (gadget == "given-to-super")
            return given_to_super(inst.pda, inst.I, *inst.s, inst.start_stack);
        if (gadget == "super-to-given")
            return super_to_given(inst.pda, inst.I, *inst.s, inst.start_stack);
        if (gadget == "super-to-special")
            return super_to_special(inst.pda, inst.I, *inst.s, inst.start_stack);
        if (gadget == "homing-to-given") return homing_to_given(inst.pda, inst.start_stack);
        if (gadget == "given-to-subset-homing")
            return given_to_subset_homing(inst.pda, inst.I, *inst.s, inst.start_stack);
        if (gadget == "subset-homing-to-homing")
            return subset_homing_to_homing(inst.pda, inst.I, inst.start_stack);
        throw Error("unknown gadget: " + gadget);
    }();
    std::cout << serialize_problem_instance(red.instance);
    std::cout << "# gadget: " << red.tag << "\n";
    std::istringstream map_lines(serialize_name_map(red.name_map));
    std::string line;
    while (std::getline(map_lines, line)) std::cout << "# map: " << line << "\n";
    return 0;
}

int cmd_aeps_to_pda(const std::string& file, bool normalize) {
    auto doc = parse_instance(slurp(file));
    if (!std::holds_alternative<Aeps>(doc.body)) throw Error("aeps-to-pda expects an aeps document");
    Aeps a = doc.aeps();
    if (normalize) a = normalize_distinct_pushes(a);
    AepsPdaInstance out = aeps_to_pda(a);
    ProblemHeader h;
    h.variant = Variant::SuperSync;
    std::vector<std::string> I;
    for (StateId q : out.root.states) I.push_back(out.pda.state_names.at(q));
    h.I = I;
    h.s = out.pda.state_names.at(out.target);
    std::vector<std::string> gamma;
    for (SymId s : out.root.stack) gamma.push_back(out.pda.sym_names.at(s));
    h.gamma = gamma;
    std::cout << serialize_pda(out.pda, h);
    std::cout << "# deterministic: " << (is_deterministic(out.pda) ? "true" : "false") << "\n";
    return 0;
}

int cmd_oracle(const std::string& file, const std::string& variant, int stack_bound,
               int depth_bound, long long node_budget) {
    auto doc = parse_instance(slurp(file));
    ProblemInstance inst = resolve_problem(doc, variant_flag(variant));
    Bounds bounds;
    bounds.stack_bound = stack_bound;
    bounds.depth_bound = depth_bound;
    bounds.node_budget = node_budget;
    Timer timer;
    // Variants that leave the target open try every state.
    std::vector<WitnessKind> kinds;
    switch (inst.variant) {
        case Variant::AdaSync:
        case Variant::SubsetAdaSync:
            for (StateId q = 0; q < inst.pda.num_states(); ++q)
                kinds.push_back(WitnessKind::synchroniser(q));
            break;
        case Variant::Homing:
        case Variant::SubsetHoming:
            kinds.push_back(WitnessKind::homing());
            break;
        default:
            kinds.push_back(inst.witness_kind(-1));
            break;
    }
    for (const WitnessKind& kind : kinds) {
        GameResult r = bounded_game_solve(inst.pda, inst.root(), kind, bounds);
        if (r.yes()) {
            std::cout << "YES\n";
            std::cout << serialize_tree(inst.pda, *r.witness);
            return 0;
        }
    }
    std::cout << "NO-WITHIN-BOUNDS\n";
    return 1;
}

int cmd_check_witness(const std::string& file, const std::string& witness_path,
                      const std::string& variant) {
    auto doc = parse_instance(slurp(file));
    ProblemInstance inst = resolve_problem(doc, variant_flag(variant));
    StrategyTree tree = deserialize_tree(inst.pda, slurp(witness_path));
    WitnessKind kind = [&] {
        switch (inst.variant) {
            case Variant::AdaSync:
            case Variant::SubsetAdaSync: {
                // Target discovered from the first leaf.
                const StrategyNode* n = &tree.root;
                while (!n->is_leaf()) n = &n->children.front();
                StateId t = n->label.states.empty() ? -1 : n->label.states.front();
                return WitnessKind::synchroniser(t);
            }
            case Variant::Homing:
            case Variant::SubsetHoming:
                return WitnessKind::homing();
            default:
                return inst.witness_kind(-1);
        }
    }();
    Verdict v = check_witness(inst.pda, inst.root(), kind, tree);
    std::cout << (v.ok ? "VALID" : "INVALID") << "\n";
    if (!v.ok) std::cout << v.violation << "\n";
    return v.ok ? 0 : 1;
}

// Random complete deterministic PDA, printed as a document. Meant for fuzz
// harnesses; the distribution favours shallow stacks.
int cmd_gen(unsigned seed, int states, int inputs, int syms) {
    std::mt19937 rng(seed);
    Pda pda;
    for (int q = 0; q < states; ++q) pda.state_names.push_back("q" + std::to_string(q));
    for (int a = 0; a < inputs; ++a) pda.input_names.push_back("a" + std::to_string(a));
    for (int s = 0; s + 1 < syms; ++s) pda.sym_names.push_back("s" + std::to_string(s));
    pda.sym_names.push_back("bot");
    pda.bottom = syms - 1;
    std::uniform_int_distribution<int> state_d(0, states - 1);
    std::uniform_int_distribution<int> len_d(0, 2);
    std::uniform_int_distribution<int> sym_d(0, syms > 1 ? syms - 2 : 0);
    for (StateId q = 0; q < states; ++q)
        for (LetterId a = 0; a < inputs; ++a)
            for (SymId A = 0; A < syms; ++A) {
                Rule r;
                r.src = q;
                r.letter = a;
                r.pop = A;
                r.dst = state_d(rng);
                int len = len_d(rng);
                for (int i = 0; i < len && syms > 1; ++i) r.push.push_back(sym_d(rng));
                if (A == pda.bottom) r.push.push_back(pda.bottom);
                pda.rules.push_back(std::move(r));
            }
    pda.validate();
    std::cout << serialize_pda(pda);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive synchronisation for pushdown automata with observable stack"};
    app.require_subcommand(1);

    std::string file, variant, witness_path, gadget;
    bool dot = false, normalize = false;
    int k = -1, state_budget = 1 << 20, stack_bound = 6, depth_bound = 12;
    long long node_budget = 2'000'000;
    unsigned seed = 0;
    int gen_states = 3, gen_inputs = 2, gen_syms = 2;

    auto* dec = app.add_subcommand("decide", "decide an instance");
    dec->add_option("file", file)->required();
    dec->add_option("--variant", variant, "problem variant override");
    dec->add_option("--witness", witness_path, "write the witness tree here");
    dec->add_flag("--dot", dot, "witness in dot format");
    dec->add_option("--k", k, "sparse leaf bound override");
    dec->add_option("--state-budget", state_budget);

    auto* red = app.add_subcommand("reduce", "apply one gadget reduction");
    red->add_option("file", file)->required();
    red->add_option("--gadget", gadget)->required();
    red->add_option("--variant", variant);

    auto* a2p = app.add_subcommand("aeps-to-pda", "encode an extended system as a PDA");
    a2p->add_option("file", file)->required();
    a2p->add_flag("--normalize", normalize, "make branch push words distinct first");

    auto* orc = app.add_subcommand("oracle", "bounded game search");
    orc->add_option("file", file)->required();
    orc->add_option("--variant", variant);
    orc->add_option("--stack-bound", stack_bound);
    orc->add_option("--depth-bound", depth_bound);
    orc->add_option("--node-budget", node_budget);

    auto* chk = app.add_subcommand("check-witness", "validate a witness tree");
    chk->add_option("file", file)->required();
    chk->add_option("--witness", witness_path)->required();
    chk->add_option("--variant", variant);

    auto* gen = app.add_subcommand("gen", "random deterministic instance");
    gen->add_option("--seed", seed)->required();
    gen->add_option("--states", gen_states);
    gen->add_option("--inputs", gen_inputs);
    gen->add_option("--syms", gen_syms);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed())
            return cmd_decide(file, variant, witness_path, dot,
                              k >= 0 ? std::optional<int>(k) : std::nullopt, state_budget);
        if (red->parsed()) return cmd_reduce(file, gadget, variant);
        if (a2p->parsed()) return cmd_aeps_to_pda(file, normalize);
        if (orc->parsed())
            return cmd_oracle(file, variant, stack_bound, depth_bound, node_budget);
        if (chk->parsed()) return cmd_check_witness(file, witness_path, variant);
        if (gen->parsed()) return cmd_gen(seed, gen_states, gen_inputs, gen_syms);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
