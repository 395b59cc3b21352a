// Python surface: text in, text out. Documents use the same line format as
// the CLI, witnesses the tree text format.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adasync/decide.hpp"
#include "adasync/format.hpp"
#include "adasync/oracle.hpp"
#include "adasync/sparse.hpp"

namespace py = pybind11;
using namespace adasync;

namespace {

std::optional<Variant> variant_opt(const std::string& name) {
    if (name.empty()) return std::nullopt;
    auto v = parse_variant(name);
    if (!v) throw Error("unknown variant: " + name);
    return v;
}

py::dict decide_text(const std::string& text, const std::string& variant, int k,
                     bool want_witness, int state_budget) {
    ProblemInstance inst = resolve_problem(parse_instance(text), variant_opt(variant));
    DecideOptions opts;
    if (k >= 0) opts.k = k;
    opts.want_witness = want_witness;
    opts.state_budget = state_budget;
    Decision d = decide(inst, opts);
    py::dict out;
    out["yes"] = d.yes;
    out["variant"] = variant_name(inst.variant);
    out["deterministic_path"] = d.deterministic_path;
    out["reductions"] = d.reduction_trace;
    if (d.witness) {
        out["witness"] = serialize_tree(inst.pda, *d.witness);
        out["witness_leaves"] = d.witness->leaf_count();
    } else {
        out["witness"] = py::none();
    }
    return out;
}

py::dict check_witness_text(const std::string& instance_text, const std::string& witness_text,
                            const std::string& variant) {
    ProblemInstance inst = resolve_problem(parse_instance(instance_text), variant_opt(variant));
    StrategyTree tree = deserialize_tree(inst.pda, witness_text);
    WitnessKind kind = [&] {
        switch (inst.variant) {
            case Variant::AdaSync:
            case Variant::SubsetAdaSync: {
                const StrategyNode* n = &tree.root;
                while (!n->is_leaf()) n = &n->children.front();
                return WitnessKind::synchroniser(n->label.states.empty() ? -1
                                                                         : n->label.states[0]);
            }
            case Variant::Homing:
            case Variant::SubsetHoming:
                return WitnessKind::homing();
            default:
                return inst.witness_kind(-1);
        }
    }();
    Verdict v = check_witness(inst.pda, inst.root(), kind, tree);
    py::dict out;
    out["ok"] = v.ok;
    out["violation"] = v.violation;
    return out;
}

py::dict reduce_text(const std::string& text, const std::string& gadget,
                     const std::string& variant) {
    ProblemInstance inst = resolve_problem(parse_instance(text), variant_opt(variant));
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
    py::dict out;
    out["instance"] = serialize_problem_instance(red.instance);
    out["tag"] = red.tag;
    out["name_map"] = red.name_map;
    return out;
}

py::dict aeps_to_pda_text(const std::string& text, bool normalize) {
    auto doc = parse_instance(text);
    Aeps a = doc.aeps();
    if (normalize) a = normalize_distinct_pushes(a);
    AepsPdaInstance enc = aeps_to_pda(a);
    ProblemHeader h;
    h.variant = Variant::SuperSync;
    std::vector<std::string> I;
    for (StateId q : enc.root.states) I.push_back(enc.pda.state_names.at(q));
    h.I = I;
    h.s = enc.pda.state_names.at(enc.target);
    std::vector<std::string> gamma;
    for (SymId s : enc.root.stack) gamma.push_back(enc.pda.sym_names.at(s));
    h.gamma = gamma;
    py::dict out;
    out["pda"] = serialize_pda(enc.pda, h);
    out["deterministic"] = is_deterministic(enc.pda);
    return out;
}

int structured_tree_count(int k) { return static_cast<int>(enumerate_structured(k).size()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "adaptive synchronisation for pushdown automata with observable stack";

    py::register_exception<Error>(m, "AdasyncError");

    m.def("decide", &decide_text, py::arg("text"), py::arg("variant") = "", py::arg("k") = -1,
          py::arg("want_witness") = true, py::arg("state_budget") = 1 << 20,
          "Decide an instance document; returns a dict with the answer and witness text.");
    m.def("check_witness", &check_witness_text, py::arg("instance_text"),
          py::arg("witness_text"), py::arg("variant") = "",
          "Validate a witness tree against an instance document.");
    m.def("reduce", &reduce_text, py::arg("text"), py::arg("gadget"), py::arg("variant") = "",
          "Apply one gadget reduction; returns the reduced document and name map.");
    m.def("aeps_to_pda", &aeps_to_pda_text, py::arg("text"), py::arg("normalize") = false,
          "Encode an extended pushdown system as a PDA instance document.");
    m.def("structured_tree_count", &structured_tree_count, py::arg("k"),
          "Number of structured trees with at most k leaves.");
}
