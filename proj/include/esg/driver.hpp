#pragma once

// Pipeline entry points shared by the CLI and the acceptance suite.

#include <string>
#include <vector>

#include "esg/config.hpp"
#include "esg/io.hpp"
#include "esg/verify.hpp"

namespace esg {

struct SolveArtifacts {
    SolutionField field;
    double pde_res = 0.0;
    BcRecovery bc;
    RoundtripReport roundtrip;
    VerificationReport verification;
};

// Full pipeline: spectrum -> contour -> sweep -> verification checks.
// run_checks = false skips the verify-module passes (used by sweep-only runs).
SolveArtifacts run_solve(const RunConfig& cfg, int threads = 0, bool run_checks = true);

// Verification checks on an existing field (the CLI `verify` command).
SolveArtifacts verify_field(const RunConfig& cfg, const SolutionField& field);

// Oracle field on the configured grid.
std::vector<double> oracle_field(const RunConfig& cfg, std::vector<double>& xs,
                                 std::vector<double>& ys);

// Default residual tolerances for the verification report.
struct VerifyTolerances {
    double pde;
    double bc;
    double roundtrip;
    double route_consistency;
    double imag_leak;
    VerifyTolerances(const RunConfig& cfg);
};

}  // namespace esg
