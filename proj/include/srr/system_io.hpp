#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "srr/lp_oracle.hpp"
#include "srr/storage_model.hpp"

namespace srr {

// Syntax error with a 1-based source position.
struct SpecParseError : std::runtime_error {
    int line;
    int column;
    SpecParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg), line(line_), column(column_) {}
};

// Parsed form of the system spec file:
//   {"K": 2, "mu": 1, "systematic": [1, 1], "coded": 1}
// plus optional "mode" ("rational"/"float"), "tol", and "grid_step".
// Unknown keys are rejected. mu defaults to 1 when omitted.
struct SystemSpecFile {
    StorageSystem system;
    std::optional<LpMode> default_mode;
    std::optional<Rat> grid_step;
};

SystemSpecFile parse_system_spec(const std::string& text);
SystemSpecFile load_system_spec(const std::filesystem::path& path);

// Witness exchange format: exact rationals as strings, node ids 1-based,
// strategy rows mirroring the canonical repair-group ordering.
void write_witness_json(std::ostream& os, const DemandVector& demand,
                        const FeasibilityWitness& witness);

struct WitnessFile {
    bool feasible = false;
    DemandVector demand;
    std::optional<SplittingStrategy> strategy;
    std::vector<NodeId> binding_nodes;  // 0-based after loading
};

WitnessFile parse_witness_json(const std::string& text);

}  // namespace srr
