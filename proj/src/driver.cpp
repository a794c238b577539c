#include "esg/driver.hpp"

#include <algorithm>
#include <cmath>

namespace esg {

VerifyTolerances::VerifyTolerances(const RunConfig& cfg) {
    const double d_scale = std::max(1.0, std::abs(cfg.params.d) / 0.01);
    pde = 1e-2;
    bc = 1e-3 * std::max(std::abs(cfg.params.d), 1.0);
    roundtrip = 5e-4 * d_scale;
    route_consistency = std::max(1e-4, 10.0 * cfg.solver.tol);
    imag_leak = 1e-6;
}

namespace {

void fill_checks(SolveArtifacts& art, const RunConfig& cfg) {
    const VerifyTolerances tol(cfg);
    VerificationReport& rep = art.verification;
    rep.add("pde_residual", art.pde_res, tol.pde);
    rep.add("bc_side1", art.bc.side1, tol.bc);
    rep.add("bc_side2", art.bc.side2, tol.bc);
    rep.add("bc_side3", art.bc.side3, tol.bc);
    rep.add("global_relation_1", art.roundtrip.grab1, tol.roundtrip);
    rep.add("global_relation_2", art.roundtrip.grab2, tol.roundtrip);
    rep.add("rel1", art.roundtrip.audit.rel1, tol.roundtrip);
    rep.add("rel2", art.roundtrip.audit.rel2, tol.roundtrip);
    rep.add("unit_det_side1", art.roundtrip.unit_det1, tol.roundtrip);
    rep.add("unit_det_side2", art.roundtrip.unit_det2, tol.roundtrip);
    rep.add("unit_det_side3", art.roundtrip.unit_det3, tol.roundtrip);

    if (art.field.has_alt) {
        double route = 0.0;
        for (std::size_t i = 0; i < art.field.q.size(); ++i)
            route = std::max(route, std::abs(art.field.q[i] - art.field.q_alt[i]));
        rep.add("route_consistency", route, tol.route_consistency);
    }
    rep.add("imag_leak", art.field.imag_leak, tol.imag_leak);

    // far-field decay: |q(x_max, y)| <= |q(x_min, y)| row by row
    bool decay = true;
    const std::size_t nx = art.field.xs.size();
    for (std::size_t iy = 0; iy < art.field.ys.size(); ++iy) {
        const double qa = std::abs(art.field.q[iy * nx + 0]);
        const double qb = std::abs(art.field.q[iy * nx + (nx - 1)]);
        if (qb > qa + 1e-12) decay = false;
    }
    rep.add_flag("far_field_decay", decay);
    rep.add_flag("sweep_complete", !art.field.partial);
}

}  // namespace

SolveArtifacts run_solve(const RunConfig& cfg, int threads, bool run_checks) {
    cfg.validate();
    const LinearizableSpectrum spectrum(cfg.params);
    const ContourDiscretization disc(spectrum, cfg.contour);

    SweepConfig sweep;
    sweep.solver = cfg.solver;
    sweep.threads = threads;
    for (double r : sweep.probe.radii)
        if (r <= cfg.contour.r_min)
            throw config_error("probe radii must exceed contour.r_min");

    SolveArtifacts art;
    art.field = field_sweep(cfg.grid, disc, sweep);
    if (art.field.partial) {
        std::string pts;
        for (auto [ix, iy] : art.field.failed_points)
            pts += " (" + std::to_string(ix) + "," + std::to_string(iy) + ")";
        throw solver_error("field sweep failed at grid points:" + pts);
    }
    if (run_checks) {
        art.pde_res = (cfg.grid.nx >= 3 && cfg.grid.ny >= 3) ? pde_residual(art.field) : 0.0;
        art.bc = bc_recovery(art.field, cfg.params);
        art.roundtrip = spectral_roundtrip(art.field, spectrum, cfg.params);
        fill_checks(art, cfg);
    }
    return art;
}

SolveArtifacts verify_field(const RunConfig& cfg, const SolutionField& field) {
    cfg.validate();
    const LinearizableSpectrum spectrum(cfg.params);
    SolveArtifacts art;
    art.field = field;
    art.pde_res = pde_residual(art.field);
    art.bc = bc_recovery(art.field, cfg.params);
    art.roundtrip = spectral_roundtrip(art.field, spectrum, cfg.params);
    fill_checks(art, cfg);
    return art;
}

std::vector<double> oracle_field(const RunConfig& cfg, std::vector<double>& xs,
                                 std::vector<double>& ys) {
    cfg.validate();
    OracleSeries oracle = cfg.oracle;
    oracle.d = cfg.params.d;
    oracle.L = cfg.params.L;
    xs = cfg.grid.xs();
    ys = cfg.grid.ys(cfg.params.L);
    std::vector<double> q(xs.size() * ys.size());
    for (std::size_t iy = 0; iy < ys.size(); ++iy)
        for (std::size_t ix = 0; ix < xs.size(); ++ix)
            q[iy * xs.size() + ix] = linear_oracle({xs[ix], ys[iy]}, oracle);
    return q;
}

}  // namespace esg
