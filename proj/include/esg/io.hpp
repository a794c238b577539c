#pragma once

// Data-file writers/readers. CSV numbers carry 17 significant digits so
// doubles round-trip; the first line is a '#' metadata comment (the only
// non-deterministic line, it carries the timestamp).

#include <string>
#include <vector>

#include "esg/boundary.hpp"
#include "esg/config.hpp"
#include "esg/reconstruct.hpp"
#include "esg/verify.hpp"

namespace esg {

inline constexpr const char* version_string = "1.0.0";

std::string fmt_double(double v);  // %.17g

struct SpectralRow {
    cplx lambda;
    cplx a;
    cplx b;
    int side;
};

void write_field_csv(const std::string& path, const SolutionField& field);
void write_field_json(const std::string& path, const SolutionField& field,
                      const RunConfig& cfg);
SolutionField load_field_csv(const std::string& path, const ProblemParams& params);

void write_spectral_csv(const std::string& path, const std::vector<SpectralRow>& rows);
void write_oracle_csv(const std::string& path, const std::vector<double>& xs,
                      const std::vector<double>& ys, const std::vector<double>& q);

struct CheckEntry {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckEntry> checks;

    void add(const std::string& name, double value, double tol) {
        checks.push_back({name, value, tol, value <= tol});
    }
    void add_flag(const std::string& name, bool ok) {
        checks.push_back({name, ok ? 0.0 : 1.0, 0.5, ok});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

void write_verification_json(const std::string& path, const VerificationReport& report,
                             const RunConfig& cfg);

// boundary-trace input for the spectral command: CSV with header
// node,dirichlet,neumann
BoundarySideData read_boundary_csv(const std::string& path, Side side, double tail_tol = 1e-8);

}  // namespace esg
