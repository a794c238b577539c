// Command-line driver: spectral / solve / oracle / verify.
//
// Exit codes: 0 success, 2 config/parse errors, 3 domain/region errors,
// 4 solver failures. Flags override ESG_* environment variables, which
// override the config file.

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esg/driver.hpp"
#include "esg/io.hpp"

namespace {

std::optional<std::string> env_value(const char* name) {
    const char* v = std::getenv(name);
    if (v && *v) return std::string(v);
    return std::nullopt;
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    int threads = 0;
    std::string backend;
};

esg::RunConfig resolve_config(CommonOpts& c) {
    if (c.config_path.empty())
        if (auto e = env_value("ESG_CONFIG")) c.config_path = *e;
    if (c.config_path.empty()) throw esg::config_error("no --config given (or ESG_CONFIG)");
    esg::RunConfig cfg = esg::load_config(c.config_path);
    if (c.out_dir.empty())
        if (auto e = env_value("ESG_OUT")) c.out_dir = *e;
    if (!c.out_dir.empty()) cfg.output.directory = c.out_dir;
    if (c.threads == 0)
        if (auto e = env_value("ESG_THREADS")) c.threads = std::stoi(*e);
    if (c.backend.empty())
        if (auto e = env_value("ESG_BACKEND")) c.backend = *e;
    if (!c.backend.empty()) cfg.solver.backend = esg::backend_from_string(c.backend);
    std::filesystem::create_directories(cfg.output.directory);
    return cfg;
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

bool wants(const esg::RunConfig& cfg, const std::string& fmt) {
    return cfg.output.formats.find(fmt) != std::string::npos;
}

std::vector<esg::cplx> parse_lambda_list(const std::string& text) {
    // "re:im,re:im,..."
    std::vector<esg::cplx> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw esg::config_error("bad lambda token '" + tok + "' (want re:im)");
        out.emplace_back(std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1)));
    }
    if (out.empty()) throw esg::config_error("empty lambda list");
    return out;
}

std::vector<esg::cplx> default_lambdas(esg::Side side) {
    std::vector<esg::cplx> out;
    const double radii[] = {0.3, 0.6, 1.0, 1.7, 2.8, 4.5};
    for (double r : radii) {
        out.emplace_back(r, 0.0);
        out.emplace_back(-r, 0.0);
        out.emplace_back(r * 0.8, r * 0.6);
        if (side == esg::Side::Two) out.emplace_back(-r * 0.8, -r * 0.6);
    }
    return out;
}

int cmd_spectral(CommonOpts& common, const std::string& data_path, int side_num,
                 const std::string& lambda_text) {
    const esg::RunConfig cfg = resolve_config(common);
    if (side_num < 1 || side_num > 3) throw esg::config_error("--side must be 1, 2, or 3");
    const esg::Side side = static_cast<esg::Side>(side_num);
    const esg::BoundarySideData data = esg::read_boundary_csv(data_path, side);

    const esg::SpectralPair pair(data, cfg.params);
    if (side != esg::Side::Two && !pair.tail_decayed())
        std::cerr << "warning: boundary trace tail " << pair.tail_magnitude()
                  << " above tolerance at the last node; spectral functions truncate there\n";

    std::vector<esg::cplx> lambdas =
        lambda_text.empty() ? default_lambdas(side) : parse_lambda_list(lambda_text);
    std::vector<esg::SpectralRow> rows;
    for (const esg::cplx& l : lambdas) {
        const esg::SpectralEval ev = pair.eval(l);
        rows.push_back({l, ev.a, ev.b, side_num});
    }
    esg::write_spectral_csv(join(cfg.output.directory, "spectral.csv"), rows);
    return 0;
}

int cmd_solve(CommonOpts& common) {
    const esg::RunConfig cfg = resolve_config(common);
    const esg::SolveArtifacts art = esg::run_solve(cfg, common.threads);
    if (wants(cfg, "csv")) esg::write_field_csv(join(cfg.output.directory, "field.csv"), art.field);
    if (wants(cfg, "json"))
        esg::write_field_json(join(cfg.output.directory, "field.json"), art.field, cfg);
    esg::write_verification_json(join(cfg.output.directory, "verification.json"),
                                 art.verification, cfg);
    for (const auto& c : art.verification.checks)
        std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " = " << c.value
                  << " (tol " << c.tolerance << ")\n";
    return art.verification.all_pass() ? 0 : 4;
}

int cmd_oracle(CommonOpts& common) {
    const esg::RunConfig cfg = resolve_config(common);
    std::vector<double> xs, ys;
    const std::vector<double> q = esg::oracle_field(cfg, xs, ys);
    esg::write_oracle_csv(join(cfg.output.directory, "oracle.csv"), xs, ys, q);
    return 0;
}

int cmd_verify(CommonOpts& common, const std::string& field_path) {
    const esg::RunConfig cfg = resolve_config(common);
    const esg::SolutionField field = esg::load_field_csv(field_path, cfg.params);
    const esg::SolveArtifacts art = esg::verify_field(cfg, field);
    esg::write_verification_json(join(cfg.output.directory, "verification.json"),
                                 art.verification, cfg);
    for (const auto& c : art.verification.checks)
        std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " = " << c.value
                  << " (tol " << c.tolerance << ")\n";
    return art.verification.all_pass() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elliptic sine-Gordon semistrip solver (Riemann-Hilbert collocation)"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string data_path, lambda_text, field_path;
    int side_num = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "run configuration file");
        sub->add_option("--out", common.out_dir, "output directory override");
        sub->add_option("--threads", common.threads, "worker threads (0 = auto)");
        sub->add_option("--backend", common.backend, "solver backend: neumann|direct");
    };

    CLI::App* spectral = app.add_subcommand("spectral", "spectral functions from a trace file");
    add_common(spectral);
    spectral->add_option("--data", data_path, "boundary trace CSV (node,dirichlet,neumann)")
        ->required();
    spectral->add_option("--side", side_num, "side index: 1 (y=L), 2 (x=0), 3 (y=0)");
    spectral->add_option("--lambdas", lambda_text, "lambda samples re:im,re:im,...");

    CLI::App* solve = app.add_subcommand("solve", "full pipeline: field + verification");
    add_common(solve);

    CLI::App* oracle = app.add_subcommand("oracle", "small-amplitude oracle field");
    add_common(oracle);

    CLI::App* verify = app.add_subcommand("verify", "re-run checks on an existing field file");
    add_common(verify);
    verify->add_option("--field", field_path, "field CSV produced by solve")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (spectral->parsed()) return cmd_spectral(common, data_path, side_num, lambda_text);
        if (solve->parsed()) return cmd_solve(common);
        if (oracle->parsed()) return cmd_oracle(common);
        if (verify->parsed()) return cmd_verify(common, field_path);
        throw esg::config_error("no subcommand");
    } catch (const esg::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
