#pragma once

#include <optional>
#include <string>
#include <variant>

#include "adasync/aeps.hpp"
#include "adasync/aps.hpp"
#include "adasync/reductions.hpp"

namespace adasync {

struct ProblemHeader {
    Variant variant;
    std::optional<std::vector<std::string>> I;     // state names
    std::optional<std::string> s;                  // state name
    std::optional<std::vector<std::string>> gamma; // stack letter names, top-first
};

struct InstanceDocument {
    std::variant<Pda, Aeps, Aps> body;
    std::optional<ProblemHeader> problem;

    bool is_pda() const { return std::holds_alternative<Pda>(body); }
    const Pda& pda() const { return std::get<Pda>(body); }
    const Aeps& aeps() const { return std::get<Aeps>(body); }
    const Aps& aps() const { return std::get<Aps>(body); }
};

// Line-oriented instance format, '#' comments. The PDA body is completed and
// validated on load.
InstanceDocument parse_instance(const std::string& text);

// Builds a ProblemInstance from a PDA document; header fields can be
// overridden (e.g. by CLI flags). Ada-Sync lowers to Subset-Ada-Sync with
// I = Q at this point.
ProblemInstance resolve_problem(const InstanceDocument& doc,
                                std::optional<Variant> variant_override = std::nullopt);

std::string serialize_pda(const Pda& pda, const std::optional<ProblemHeader>& header = std::nullopt);
std::string serialize_aeps(const Aeps& a);
std::string serialize_aps(const Aps& a);

std::string serialize_problem_instance(const ProblemInstance& inst);

std::string serialize_name_map(const std::map<std::string, std::string>& name_map);

}  // namespace adasync
