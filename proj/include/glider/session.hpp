#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glider/geometry.hpp"
#include "glider/induct.hpp"

namespace glider {

/// A fully resolved computation request: one file determines one run.
struct SessionSpec {
    unsigned field_order = 4;
    GroupPtr group;
    SubgroupChain chain;

    ElemList subgroup;        ///< H; empty when the file has none
    ElemList second_subgroup; ///< E for mackey; empty when absent

    std::vector<IrrepCatalog> catalogs;

    ModulePtr ambient;                 ///< module over the chain top
    std::optional<Fragment> fragment;  ///< over `chain` in `ambient`

    ModulePtr sub_ambient;                ///< module over H
    std::optional<Fragment> sub_fragment; ///< over the intersected chain

    ModulePtr simple; ///< distinguished simple component for the geometry commands
    std::vector<std::pair<std::string, unsigned>> decomposition; ///< (name, dim) tiling of ambient

    std::optional<unsigned> stage;
    std::optional<Vec> point;
    std::optional<ElemList> transversal; ///< expected top-level representatives
};

/// Loads and fully resolves a session file (ParseError, UnresolvedReference,
/// DimensionMismatch; table/chain/catalog validation errors propagate).
SessionSpec parse_session(const std::string& path);

/// Canonical self-contained JSON for a resolved spec: the group is inlined,
/// module actions are written in full, numbers use the machine encoding.
/// parse_session on the output reproduces the spec (round-trip identity on
/// the canonical form).
std::string print_session(const SessionSpec& spec);

/// One verified fact in a report.
struct ReportItem {
    std::string check;
    bool pass = false;
    std::string witness; ///< populated when the check fails
};

/// Deterministic, ordered command output.
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> results;
    std::vector<ReportItem> ledger;
    bool pass = true;

    std::string text() const;
    std::string json() const; ///< stable field order, 2-space indent
};

/// Executes one command against a resolved spec.
Report run(const SessionSpec& spec, const std::string& command);

/// Exit codes: 0 = pass, 1 = a verification in the report failed,
/// 2 = input/parse error (message on stderr).
int run_command_line(int argc, const char* const* argv);

} // namespace glider
