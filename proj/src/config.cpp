#include "esg/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace esg {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config: bad integer value for " + key + ": '" + v + "'");
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void RunConfig::validate() const {
    params.validate();
    contour.validate();
    grid.validate(params.L);
    if (!(solver.tol > 0.0 && solver.tol < 1.0))
        throw config_error("config: solver.tol must be in (0, 1)");
    if (solver.max_iter < 1) throw config_error("config: solver.max_iter must be >= 1");
    if (oracle.n_terms < 1) throw config_error("config: oracle.n_terms must be >= 1");
    if (output.formats.empty()) throw config_error("config: output.formats must not be empty");
    for (const std::string& f : {std::string("csv"), std::string("json")}) (void)f;
    std::stringstream ss(output.formats);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok != "csv" && tok != "json")
            throw config_error("config: output.formats entries must be csv or json");
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "params.d") cfg.params.d = parse_double(key, val);
        else if (key == "params.L") cfg.params.L = parse_double(key, val);
        else if (key == "contour.r_min") cfg.contour.r_min = parse_double(key, val);
        else if (key == "contour.r_max") cfg.contour.r_max = parse_double(key, val);
        else if (key == "contour.n_per_ray") cfg.contour.n_per_ray = parse_int(key, val);
        else if (key == "contour.grading") {
            // "hybrid", "log", or "hybrid:<r_lin>"
            const auto colon = val.find(':');
            if (colon == std::string::npos) {
                cfg.contour.grading = val;
            } else {
                cfg.contour.grading = val.substr(0, colon);
                cfg.contour.r_lin = parse_double(key, val.substr(colon + 1));
            }
        }
        else if (key == "grid.x_min") cfg.grid.x_min = parse_double(key, val);
        else if (key == "grid.x_max") cfg.grid.x_max = parse_double(key, val);
        else if (key == "grid.nx") cfg.grid.nx = parse_int(key, val);
        else if (key == "grid.y_margin") cfg.grid.y_margin = parse_double(key, val);
        else if (key == "grid.ny") cfg.grid.ny = parse_int(key, val);
        else if (key == "solver.backend") cfg.solver.backend = backend_from_string(val);
        else if (key == "solver.tol") cfg.solver.tol = parse_double(key, val);
        else if (key == "solver.max_iter") cfg.solver.max_iter = parse_int(key, val);
        else if (key == "oracle.n_terms") cfg.oracle.n_terms = parse_int(key, val);
        else if (key == "output.directory") cfg.output.directory = val;
        else if (key == "output.formats") cfg.output.formats = val;
        else throw config_error("config line " + std::to_string(lineno) + ": unknown key '" +
                                key + "'");
    }
    cfg.oracle.d = cfg.params.d;
    cfg.oracle.L = cfg.params.L;
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "params.d = " << fmt17(cfg.params.d) << "\n";
    out << "params.L = " << fmt17(cfg.params.L) << "\n";
    out << "contour.r_min = " << fmt17(cfg.contour.r_min) << "\n";
    out << "contour.r_max = " << fmt17(cfg.contour.r_max) << "\n";
    out << "contour.n_per_ray = " << cfg.contour.n_per_ray << "\n";
    out << "contour.grading = " << cfg.contour.grading << ":" << fmt17(cfg.contour.r_lin)
        << "\n";
    out << "grid.x_min = " << fmt17(cfg.grid.x_min) << "\n";
    out << "grid.x_max = " << fmt17(cfg.grid.x_max) << "\n";
    out << "grid.nx = " << cfg.grid.nx << "\n";
    out << "grid.y_margin = " << fmt17(cfg.grid.y_margin) << "\n";
    out << "grid.ny = " << cfg.grid.ny << "\n";
    out << "solver.backend = " << to_string(cfg.solver.backend) << "\n";
    out << "solver.tol = " << fmt17(cfg.solver.tol) << "\n";
    out << "solver.max_iter = " << cfg.solver.max_iter << "\n";
    out << "oracle.n_terms = " << cfg.oracle.n_terms << "\n";
    out << "output.directory = " << cfg.output.directory << "\n";
    out << "output.formats = " << cfg.output.formats << "\n";
    return out.str();
}

}  // namespace esg
