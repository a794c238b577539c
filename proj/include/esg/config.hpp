#pragma once

// Run configuration: a strict nested key/value text format. Keys are exactly
// the RunConfig field names below; unknown keys are errors. The file format
// is "section.key = value" lines with '#' comments.

#include <string>

#include "esg/core.hpp"
#include "esg/reconstruct.hpp"
#include "esg/rh.hpp"
#include "esg/verify.hpp"

namespace esg {

struct OutputConfig {
    std::string directory = ".";
    std::string formats = "csv,json";
};

struct RunConfig {
    ProblemParams params;
    ContourConfig contour;
    GridSpec grid;
    SolverOptions solver;
    OracleSeries oracle;  // d, L mirror params at use time; n_terms configured
    OutputConfig output;

    void validate() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace esg
