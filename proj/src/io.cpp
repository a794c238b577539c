#include "esg/io.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace esg {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string timestamp() {
    char buf[64];
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("io: cannot open '" + path + "' for writing");
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

}  // namespace

void write_field_csv(const std::string& path, const SolutionField& field) {
    auto out = open_out(path);
    out << "# esg field v" << version_string << " generated=" << timestamp() << "\n";
    out << "x,y,q,q_alt,residual,iterations\n";
    for (std::size_t iy = 0; iy < field.ys.size(); ++iy) {
        for (std::size_t ix = 0; ix < field.xs.size(); ++ix) {
            const std::size_t idx = iy * field.xs.size() + ix;
            out << fmt_double(field.xs[ix]) << ',' << fmt_double(field.ys[iy]) << ','
                << fmt_double(field.q[idx]) << ',' << fmt_double(field.q_alt[idx]) << ','
                << fmt_double(field.residuals[idx]) << ',' << field.iterations[idx] << "\n";
        }
    }
}

void write_field_json(const std::string& path, const SolutionField& field,
                      const RunConfig& cfg) {
    nlohmann::json j;
    j["version"] = version_string;
    j["generated"] = timestamp();
    j["d"] = cfg.params.d;
    j["L"] = cfg.params.L;
    j["contour"] = {{"r_min", cfg.contour.r_min},
                    {"r_max", cfg.contour.r_max},
                    {"n_per_ray", cfg.contour.n_per_ray},
                    {"grading", cfg.contour.grading}};
    j["grid"] = {{"x_min", cfg.grid.x_min},
                 {"x_max", cfg.grid.x_max},
                 {"nx", cfg.grid.nx},
                 {"y_margin", cfg.grid.y_margin},
                 {"ny", cfg.grid.ny}};
    j["imag_leak"] = field.imag_leak;
    j["partial"] = field.partial;
    j["x"] = field.xs;
    j["y"] = field.ys;
    j["q"] = field.q;
    j["q_alt"] = field.q_alt;
    j["residual"] = field.residuals;
    j["iterations"] = field.iterations;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

SolutionField load_field_csv(const std::string& path, const ProblemParams& params) {
    std::ifstream in(path);
    if (!in) throw config_error("io: cannot open field file '" + path + "'");
    std::string line;
    bool header_seen = false;
    struct Row {
        double x, y, q, q_alt, resid;
        int iters;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("x,y,q", 0) != 0)
                throw config_error("io: field file missing x,y,q header");
            header_seen = true;
            continue;
        }
        const auto toks = split_csv_line(line);
        if (toks.size() != 6) throw config_error("io: malformed field row: '" + line + "'");
        try {
            rows.push_back({std::stod(toks[0]), std::stod(toks[1]), std::stod(toks[2]),
                            std::stod(toks[3]), std::stod(toks[4]), std::stoi(toks[5])});
        } catch (const std::exception&) {
            throw config_error("io: malformed field row: '" + line + "'");
        }
    }
    if (rows.empty()) throw config_error("io: field file has no rows");

    std::set<double> xs_set, ys_set;
    for (const Row& r : rows) {
        xs_set.insert(r.x);
        ys_set.insert(r.y);
    }
    SolutionField field;
    field.params = params;
    field.xs.assign(xs_set.begin(), xs_set.end());
    field.ys.assign(ys_set.begin(), ys_set.end());
    const std::size_t total = field.xs.size() * field.ys.size();
    if (rows.size() != total)
        throw config_error("io: field file is not a full rectangular grid");
    field.q.assign(total, 0.0);
    field.q_alt.assign(total, 0.0);
    field.residuals.assign(total, 0.0);
    field.iterations.assign(total, 0);
    auto index_of = [](const std::vector<double>& v, double t) {
        const auto it = std::lower_bound(v.begin(), v.end(), t - 1e-12);
        return std::size_t(it - v.begin());
    };
    for (const Row& r : rows) {
        const std::size_t idx = index_of(field.ys, r.y) * field.xs.size() +
                                index_of(field.xs, r.x);
        field.q[idx] = r.q;
        field.q_alt[idx] = r.q_alt;
        field.residuals[idx] = r.resid;
        field.iterations[idx] = r.iters;
    }
    field.grid.x_min = field.xs.front();
    field.grid.x_max = field.xs.back();
    field.grid.nx = int(field.xs.size());
    field.grid.y_margin = field.ys.front();
    field.grid.ny = int(field.ys.size());
    return field;
}

void write_spectral_csv(const std::string& path, const std::vector<SpectralRow>& rows) {
    auto out = open_out(path);
    out << "# esg spectral v" << version_string << " generated=" << timestamp() << "\n";
    out << "lambda_re,lambda_im,a_re,a_im,b_re,b_im,side\n";
    for (const auto& r : rows) {
        out << fmt_double(r.lambda.real()) << ',' << fmt_double(r.lambda.imag()) << ','
            << fmt_double(r.a.real()) << ',' << fmt_double(r.a.imag()) << ','
            << fmt_double(r.b.real()) << ',' << fmt_double(r.b.imag()) << ',' << r.side
            << "\n";
    }
}

void write_oracle_csv(const std::string& path, const std::vector<double>& xs,
                      const std::vector<double>& ys, const std::vector<double>& q) {
    auto out = open_out(path);
    out << "# esg oracle v" << version_string << " generated=" << timestamp() << "\n";
    out << "x,y,q\n";
    for (std::size_t iy = 0; iy < ys.size(); ++iy)
        for (std::size_t ix = 0; ix < xs.size(); ++ix)
            out << fmt_double(xs[ix]) << ',' << fmt_double(ys[iy]) << ','
                << fmt_double(q[iy * xs.size() + ix]) << "\n";
}

void write_verification_json(const std::string& path, const VerificationReport& report,
                             const RunConfig& cfg) {
    nlohmann::json j;
    j["version"] = version_string;
    j["generated"] = timestamp();
    j["d"] = cfg.params.d;
    j["L"] = cfg.params.L;
    j["all_pass"] = report.all_pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks)
        j["checks"].push_back(
            {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

BoundarySideData read_boundary_csv(const std::string& path, Side side, double tail_tol) {
    std::ifstream in(path);
    if (!in) throw config_error("io: cannot open boundary file '" + path + "'");
    std::string line;
    bool header_seen = false;
    std::vector<double> nodes, dir, neu;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("node,dirichlet,neumann", 0) != 0)
                throw config_error("io: boundary file missing node,dirichlet,neumann header");
            header_seen = true;
            continue;
        }
        const auto toks = split_csv_line(line);
        if (toks.size() != 3)
            throw config_error("io: malformed boundary row: '" + line + "'");
        try {
            nodes.push_back(std::stod(toks[0]));
            dir.push_back(std::stod(toks[1]));
            neu.push_back(std::stod(toks[2]));
        } catch (const std::exception&) {
            throw config_error("io: malformed boundary row: '" + line + "'");
        }
    }
    if (!header_seen) throw config_error("io: boundary file missing header");
    try {
        return BoundarySideData(side, std::move(nodes), std::move(dir), std::move(neu), tail_tol);
    } catch (const error& e) {
        throw config_error(std::string("io: invalid boundary data: ") + e.what());
    }
}

}  // namespace esg
