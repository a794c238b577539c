#pragma once

// Independent correctness checks: the small-amplitude separation-of-variables
// oracle, the 5-point Laplacian PDE residual, boundary-condition recovery by
// extrapolation, and the spectral round-trip audit (traces -> Volterra ->
// global relations).

#include <vector>

#include "esg/linearizable.hpp"
#include "esg/reconstruct.hpp"
#include "esg/volterra.hpp"

namespace esg {

struct OracleSeries {
    double d = 0.0;
    double L = 1.0;
    int n_terms = 25;
};

// Solution of q_xx + q_yy = q with q(x,0) = q(x,L) = 0, q(0,y) = d:
//   q = sum_{n odd} (4 d / (n pi)) sin(n pi y / L) e^{-x sqrt(1 + (n pi/L)^2)}
double linear_oracle(const PhysicalPoint& p, const OracleSeries& oracle);
// d/dx and d/dy of the series (cross-checks for the derivative route)
double linear_oracle_dx(const PhysicalPoint& p, const OracleSeries& oracle);
double linear_oracle_dy(const PhysicalPoint& p, const OracleSeries& oracle);

// max over interior grid points of |Laplacian_5 q - sin q|
double pde_residual(const SolutionField& field);

struct BcRecovery {
    double side1 = 0.0;  // y = L, target 0
    double side2 = 0.0;  // x = 0, target d
    double side3 = 0.0;  // y = 0, target 0
};

// Quadratic extrapolation of the field to each wall; corner-adjacent cells
// (2 per corner) are excluded because the data is discontinuous there.
BcRecovery bc_recovery(const SolutionField& field, const ProblemParams& params);

struct RoundtripOptions {
    int volterra_steps = 3000;
    std::vector<cplx> upper_samples = {{0.5, 0.3}, {1.0, 0.6}, {1.6, 0.9},
                                       {0.4, 0.8}, {2.2, 0.4}, {0.3, 0.2}};
    std::vector<double> real_samples = {0.35, 0.6, 0.9, 1.3, 1.9, 2.6};
};

struct RoundtripReport {
    double grab1 = 0.0, grab2 = 0.0;    // global relations
    RelationAuditReport audit;          // rel1/rel2/fact0/sol2/sol2a3/finid
    double unit_det1 = 0.0, unit_det2 = 0.0, unit_det3 = 0.0;
    double tail_side1 = 0.0, tail_side3 = 0.0;

    double worst() const;
};

// Extract boundary-normal derivatives from the field with 4th-order one-sided
// stencils (Dirichlet values on the walls come from the boundary conditions),
// build the three sides' trace data, and audit the spectral identities.
RoundtripReport spectral_roundtrip(const SolutionField& field,
                                   const LinearizableSpectrum& spec,
                                   const ProblemParams& params,
                                   const RoundtripOptions& opts = {});

// The side traces themselves (exposed for the CLI spectral command and tests)
std::vector<BoundarySideData> extract_side_traces(const SolutionField& field,
                                                  const ProblemParams& params);

}  // namespace esg
