#include "vorwave/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace vorwave {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "': " + v);
    }
}

int parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw std::invalid_argument("config: bad integer value for '" + key + "': " + v);
    }
}

int parse_sign(const std::string& v, const std::string& key) {
    if (v == "+" || v == "+1" || v == "plus") return +1;
    if (v == "-" || v == "-1" || v == "minus") return -1;
    throw std::invalid_argument("config: bad sign value for '" + key + "': " + v);
}

}  // namespace

void RunConfig::validate() const {
    physical.validate();
    branch.validate();
    if (snapshot_every < 1) throw std::invalid_argument("config: snapshot_every must be >= 1");
    if (field_nx < 4 || (field_nx & (field_nx - 1)) != 0)
        throw std::invalid_argument("config: field_nx must be a power of two >= 4");
    if (field_ny < 2) throw std::invalid_argument("config: field_ny must be >= 2");
    if (n_max < 1) throw std::invalid_argument("config: n_max must be >= 1");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;

        if (full == "physical.g") cfg.physical.g = parse_double(value, full);
        else if (full == "physical.upsilon") cfg.physical.upsilon = parse_double(value, full);
        else if (full == "physical.k") cfg.physical.k = parse_double(value, full);
        else if (full == "physical.h") cfg.physical.h = parse_double(value, full);
        else if (full == "physical.modes") cfg.physical.n_modes = parse_int(value, full);
        else if (full == "branch.n") cfg.branch.n = parse_int(value, full);
        else if (full == "branch.sign") cfg.branch.sign = parse_sign(value, full);
        else if (full == "branch.s_init") cfg.branch.s_init = parse_double(value, full);
        else if (full == "branch.ds0") cfg.branch.ds0 = parse_double(value, full);
        else if (full == "branch.ds_min") cfg.branch.ds_min = parse_double(value, full);
        else if (full == "branch.ds_max") cfg.branch.ds_max = parse_double(value, full);
        else if (full == "branch.newton_tol") cfg.branch.newton_tol = parse_double(value, full);
        else if (full == "branch.newton_max_iter") cfg.branch.newton_max_iter = parse_int(value, full);
        else if (full == "branch.max_steps") cfg.branch.max_steps = parse_int(value, full);
        else if (full == "branch.q_floor") cfg.branch.q_floor = parse_double(value, full);
        else if (full == "branch.norm_ceiling") cfg.branch.norm_ceiling = parse_double(value, full);
        else if (full == "output.dir") cfg.output_dir = value;
        else if (full == "output.snapshot_every") cfg.snapshot_every = parse_int(value, full);
        else if (full == "output.field_nx") cfg.field_nx = parse_int(value, full);
        else if (full == "output.field_ny") cfg.field_ny = parse_int(value, full);
        else if (full == "output.n_max") cfg.n_max = parse_int(value, full);
        else throw std::invalid_argument("config: unknown key '" + full + "'");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_text(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[physical]\n";
    out << "g = " << format_full(cfg.physical.g) << "\n";
    out << "upsilon = " << format_full(cfg.physical.upsilon) << "\n";
    out << "k = " << format_full(cfg.physical.k) << "\n";
    out << "h = " << format_full(cfg.physical.h) << "\n";
    out << "modes = " << cfg.physical.n_modes << "\n";
    out << "[branch]\n";
    out << "n = " << cfg.branch.n << "\n";
    out << "sign = " << (cfg.branch.sign > 0 ? "+" : "-") << "\n";
    out << "s_init = " << format_full(cfg.branch.s_init) << "\n";
    out << "ds0 = " << format_full(cfg.branch.ds0) << "\n";
    out << "ds_min = " << format_full(cfg.branch.ds_min) << "\n";
    out << "ds_max = " << format_full(cfg.branch.ds_max) << "\n";
    out << "newton_tol = " << format_full(cfg.branch.newton_tol) << "\n";
    out << "newton_max_iter = " << cfg.branch.newton_max_iter << "\n";
    out << "max_steps = " << cfg.branch.max_steps << "\n";
    out << "q_floor = " << format_full(cfg.branch.q_floor) << "\n";
    out << "norm_ceiling = " << format_full(cfg.branch.norm_ceiling) << "\n";
    out << "[output]\n";
    out << "dir = " << cfg.output_dir << "\n";
    out << "snapshot_every = " << cfg.snapshot_every << "\n";
    out << "field_nx = " << cfg.field_nx << "\n";
    out << "field_ny = " << cfg.field_ny << "\n";
    out << "n_max = " << cfg.n_max << "\n";
    return out.str();
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_series_line(std::ostream& out, const std::string& key, const PeriodicSeries& f,
                       bool cosine) {
    out << key << " =";
    for (int n = 1; n <= f.modes(); ++n)
        out << " " << format_full(cosine ? f.cos_coeff(n) : f.sin_coeff(n));
    out << "\n";
}

std::vector<double> parse_series_line(const std::string& value) {
    std::istringstream in(value);
    std::vector<double> out;
    double x;
    while (in >> x) out.push_back(x);
    return out;
}

void write_point(std::ostream& out, const std::string& prefix, const SolutionPoint& pt) {
    out << prefix << "lambda = " << format_full(pt.lambda) << "\n";
    out << prefix << "mu = " << format_full(pt.mu) << "\n";
    out << prefix << "m = " << format_full(pt.m) << "\n";
    out << prefix << "Q = " << format_full(pt.Q) << "\n";
    out << prefix << "s = " << format_full(pt.s) << "\n";
    out << prefix << "res_f1 = " << format_full(pt.res_f1) << "\n";
    out << prefix << "res_f2 = " << format_full(pt.res_f2) << "\n";
    write_series_line(out, prefix + "w_cos", pt.w, true);
    write_series_line(out, prefix + "w_sin", pt.w, false);
}

}  // namespace

void save_snapshot(const std::string& path, const Snapshot& snap) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write snapshot: " + path);
    out << "# vorwave solution snapshot\n";
    out << "g = " << format_full(snap.params.g) << "\n";
    out << "upsilon = " << format_full(snap.params.upsilon) << "\n";
    out << "k = " << format_full(snap.params.k) << "\n";
    out << "h = " << format_full(snap.params.h) << "\n";
    out << "modes = " << snap.params.n_modes << "\n";
    out << "ds = " << format_full(snap.ds) << "\n";
    out << "newton_iters = " << snap.newton_iters << "\n";
    out << "prev_newton_iters = " << snap.prev_newton_iters << "\n";
    write_point(out, "", snap.point);
    if (snap.previous) write_point(out, "prev_", *snap.previous);
}

Snapshot load_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open snapshot: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw std::runtime_error("snapshot: malformed line: " + t);
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    const auto need = [&kv, &path](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw std::runtime_error("snapshot " + path + ": missing key '" + key + "'");
        return it->second;
    };

    Snapshot snap;
    snap.params.g = parse_double(need("g"), "g");
    snap.params.upsilon = parse_double(need("upsilon"), "upsilon");
    snap.params.k = parse_double(need("k"), "k");
    snap.params.h = parse_double(need("h"), "h");
    snap.params.n_modes = parse_int(need("modes"), "modes");
    snap.ds = parse_double(need("ds"), "ds");
    snap.newton_iters = parse_int(need("newton_iters"), "newton_iters");
    snap.prev_newton_iters = parse_int(need("prev_newton_iters"), "prev_newton_iters");

    const auto read_point = [&](const std::string& prefix) {
        const std::vector<double> ac = parse_series_line(need(prefix + "w_cos"));
        const std::vector<double> as = parse_series_line(need(prefix + "w_sin"));
        if (ac.size() != as.size())
            throw std::runtime_error("snapshot: coefficient lists differ in length");
        PeriodicSeries w(0.0, ac, as);
        SolutionPoint pt = SolutionPoint::from_speed(
            snap.params, parse_double(need(prefix + "lambda"), "lambda"),
            parse_double(need(prefix + "mu"), "mu"), w.padded(snap.params.n_modes),
            parse_double(need(prefix + "s"), "s"));
        return pt;
    };
    snap.point = read_point("");
    if (kv.count("prev_lambda")) snap.previous = read_point("prev_");
    return snap;
}

}  // namespace vorwave
