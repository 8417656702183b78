#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_helpers.hpp"
#include "vorwave/commands.hpp"
#include "vorwave/diagnostics.hpp"

using namespace vorwave;
using namespace vorwave::test;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "vorwave_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int count_data_rows(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++rows;
    return rows;
}

}  // namespace

TEST_CASE("config parsing: defaults, values, rejection") {
    const RunConfig cfg = parse_config_text(
        "[physical]\ng = 2.0\nupsilon = -1\nk = 1.5\nh = 0.5\nmodes = 16\n"
        "[branch]\nn = 2\nsign = -\nds0 = 0.001\n"
        "[output]\ndir = results\n");
    CHECK(cfg.physical.g == doctest::Approx(2.0));
    CHECK(cfg.physical.upsilon == doctest::Approx(-1.0));
    CHECK(cfg.physical.n_modes == 16);
    CHECK(cfg.branch.n == 2);
    CHECK(cfg.branch.sign == -1);
    CHECK(cfg.branch.ds0 == doctest::Approx(1e-3));
    CHECK(cfg.output_dir == "results");
    CHECK(cfg.branch.ds_max == doctest::Approx(5e-2));  // default preserved

    CHECK_THROWS_AS(parse_config_text("[physical]\nbogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("[physical]\ng = abc\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("just a line\n"), std::invalid_argument);

    // config round trip through text
    const RunConfig back = parse_config_text(config_to_text(cfg));
    CHECK(back.physical.g == cfg.physical.g);
    CHECK(back.branch.n == cfg.branch.n);
    CHECK(back.output_dir == cfg.output_dir);
}

TEST_CASE("full-precision formatting round trips") {
    for (const double v : {1.0 / 3.0, 0.8726936208978296, -2.761594155955765e-11, 0.0}) {
        const std::string s = format_full(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("snapshot round trip") {
    WaveParameters p;
    p.n_modes = 12;
    const SolutionPoint pt =
        SolutionPoint::from_speed(p, 0.93, 0.017, random_series(p.n_modes, 0.02, 5, true), 0.4);
    Snapshot snap;
    snap.params = p;
    snap.point = pt;
    snap.ds = 0.005;
    snap.newton_iters = 3;
    snap.prev_newton_iters = 2;
    snap.previous = SolutionPoint::from_speed(p, 0.929, 0.016, random_series(p.n_modes, 0.019, 6, true), 0.39);

    const fs::path dir = fresh_dir("snapshot");
    const std::string path = (dir / "pt.snap").string();
    save_snapshot(path, snap);
    const Snapshot back = load_snapshot(path);
    CHECK(back.point.lambda == pt.lambda);
    CHECK(back.point.mu == pt.mu);
    CHECK(back.point.s == pt.s);
    CHECK((back.point.w - pt.w).coeff_inf_norm() == 0.0);
    REQUIRE(back.previous.has_value());
    CHECK(back.previous->lambda == snap.previous->lambda);
    CHECK(back.ds == snap.ds);
    CHECK(back.newton_iters == 3);
    CHECK(back.prev_newton_iters == 2);
}

TEST_CASE("bifurcation-points command") {
    RunConfig cfg;
    cfg.n_max = 3;
    cfg.output_dir = fresh_dir("bif").string();
    std::ostringstream log;
    CHECK(cmd_bifurcation_points(cfg, log) == 0);
    const std::string csv = slurp(fs::path(cfg.output_dir) / "bifurcation_points.csv");
    CHECK(count_data_rows(csv) == 6);
    CHECK(csv.find("0.87269362") != std::string::npos);

    // every dispersion-residual column entry is tiny
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto last_comma = line.rfind(',');
        CHECK(std::stod(line.substr(last_comma + 1)) <= 1e-12);
    }

    RunConfig bad = cfg;
    bad.n_max = 0;
    CHECK_THROWS_AS(cmd_bifurcation_points(bad, log), std::invalid_argument);
}

TEST_CASE("continue command: schema, determinism, restart") {
    RunConfig cfg;
    cfg.physical.n_modes = 24;
    cfg.branch.ds0 = 5e-3;
    cfg.branch.ds_max = 1e-2;
    cfg.branch.max_steps = 8;
    cfg.snapshot_every = 2;
    cfg.output_dir = fresh_dir("cont_a").string();
    std::ostringstream log;
    REQUIRE(cmd_continue(cfg, log) == 0);
    const std::string csv = slurp(fs::path(cfg.output_dir) / "branch_n1_plus.csv");
    CHECK(count_data_rows(csv) == 8);
    CHECK(csv.find("# termination = max_steps") != std::string::npos);
    CHECK(csv.find("# points = 8") != std::string::npos);

    // determinism: identical config -> byte-identical CSV
    RunConfig cfg2 = cfg;
    cfg2.output_dir = fresh_dir("cont_b").string();
    REQUIRE(cmd_continue(cfg2, log) == 0);
    CHECK(slurp(fs::path(cfg2.output_dir) / "branch_n1_plus.csv") == csv);

    // restart from a stored snapshot reproduces subsequent rows
    const fs::path snap_path = fs::path(cfg.output_dir) / "snapshot_n1_plus_000004.snap";
    REQUIRE(fs::exists(snap_path));
    const Snapshot snap = load_snapshot(snap_path);
    REQUIRE(snap.previous.has_value());
    ContinuationConfig bc = cfg.branch;
    bc.max_steps = 3;
    const BranchRecord tail = continue_branch_from(cfg.physical, bc, *snap.previous, snap.point,
                                                   snap.ds, snap.prev_newton_iters,
                                                   snap.newton_iters);
    REQUIRE(tail.points.size() == 3);
    // compare with rows 5.. of the CSV (s, lambda columns)
    std::istringstream in(csv);
    std::string line;
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        rows.emplace_back(std::stod(line.substr(0, c1)), std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(tail.points[i].point.s - rows[5 + i].first) < 1e-8);
        CHECK(std::abs(tail.points[i].point.lambda - rows[5 + i].second) < 1e-8);
    }

    // the Theorem 3(iv) monitor column stays positive on all rows
    std::istringstream in2(csv);
    while (std::getline(in2, line)) {
        if (line.empty() || line[0] == '#') continue;
        int col = 0;
        std::size_t pos = 0;
        for (; col < 6; ++col) pos = line.find(',', pos) + 1;
        CHECK(std::stod(line.substr(pos, line.find(',', pos) - pos)) > 0.0);
    }
}

TEST_CASE("continue command surfaces corrector failure with exit code 2") {
    // at N = 16 the truncation floor rises above the tolerance well before the
    // step budget, ending the trace in newton_failure
    RunConfig cfg;
    cfg.physical.n_modes = 16;
    cfg.branch.ds0 = 5e-3;
    cfg.branch.ds_max = 2.5e-2;
    cfg.branch.max_steps = 60;
    cfg.output_dir = fresh_dir("cont_fail").string();
    std::ostringstream log;
    CHECK(cmd_continue(cfg, log) == 2);
    const std::string csv = slurp(fs::path(cfg.output_dir) / "branch_n1_plus.csv");
    CHECK(csv.find("# termination = newton_failure") != std::string::npos);
}

TEST_CASE("flowfield command writes field and critical-set files") {
    RunConfig cfg;
    cfg.physical.upsilon = 1.5;  // minus branch + positive vorticity -> no critical points
    cfg.physical.n_modes = 16;
    cfg.output_dir = fresh_dir("field").string();

    // laminar snapshot at the minus bifurcation point
    const auto bps = bifurcation_points(cfg.physical, 1);
    const BifurcationPoint bp = bps[0].sign < 0 ? bps[0] : bps[1];
    Snapshot snap;
    snap.params = cfg.physical;
    snap.point =
        SolutionPoint::from_speed(cfg.physical, bp.lambda_star, 0.0, PeriodicSeries(16), 0.0);
    const std::string spath = (fs::path(cfg.output_dir) / "trivial.snap").string();
    fs::create_directories(cfg.output_dir);
    save_snapshot(spath, snap);

    std::ostringstream log;
    REQUIRE(cmd_flowfield(cfg, spath, 32, 9, log) == 0);
    const std::string field = slurp(fs::path(cfg.output_dir) / "field.dat");
    CHECK(count_data_rows(field) == 32 * 9);
    {
        std::istringstream in(field);
        std::string header;
        std::getline(in, header);
        CHECK(header == "# x y X Y V U zeta psi psiY psiX");
        std::string first_row;
        std::getline(in, first_row);
        std::istringstream row(first_row);
        double val;
        int cols = 0;
        while (row >> val) ++cols;
        CHECK(cols == 10);
    }
    const std::string critical = slurp(fs::path(cfg.output_dir) / "critical.dat");
    CHECK(count_data_rows(critical) == 0);  // empty critical set for this flow

    CHECK_THROWS(cmd_flowfield(cfg, "/nonexistent/file.snap", 32, 9, log));
}

TEST_CASE("flowfield command reports the degenerate laminar line") {
    RunConfig cfg;
    cfg.physical.upsilon = -2.0;
    cfg.physical.k = 2.5;
    cfg.physical.n_modes = 16;
    cfg.output_dir = fresh_dir("field_degenerate").string();

    const auto bps = bifurcation_points(cfg.physical, 1);
    const BifurcationPoint bp = bps[0].sign < 0 ? bps[0] : bps[1];
    Snapshot snap;
    snap.params = cfg.physical;
    snap.point =
        SolutionPoint::from_speed(cfg.physical, bp.lambda_star, 0.0, PeriodicSeries(16), 0.0);
    const std::string spath = (fs::path(cfg.output_dir) / "trivial.snap").string();
    fs::create_directories(cfg.output_dir);
    save_snapshot(spath, snap);

    std::ostringstream log;
    REQUIRE(cmd_flowfield(cfg, spath, 32, 9, log) == 0);
    const std::string critical = slurp(fs::path(cfg.output_dir) / "critical.dat");
    CHECK(critical.find("degenerate_line Y ") != std::string::npos);
    const double yc = cfg.physical.h - bp.lambda_star / cfg.physical.upsilon;
    CHECK(critical.find(format_full(yc).substr(0, 10)) != std::string::npos);
}

TEST_CASE("laminar command") {
    RunConfig cfg;
    cfg.physical.upsilon = -2.0;
    cfg.physical.k = 2.5;
    cfg.n_max = 2;
    cfg.output_dir = fresh_dir("laminar").string();
    std::ostringstream log;
    REQUIRE(cmd_laminar(cfg, log) == 0);
    const std::string csv = slurp(fs::path(cfg.output_dir) / "laminar.csv");
    CHECK(count_data_rows(csv) == 4);
    CHECK(csv.find("1,-,") != std::string::npos);
}

TEST_CASE("check command: passes on healthy build, fails under mutation") {
    RunConfig cfg;
    cfg.physical.n_modes = 24;
    cfg.output_dir = fresh_dir("check").string();
    std::ostringstream log;
    CHECK(cmd_check(cfg, 99, log) == 0);
    CHECK(log.str().find("FAIL") == std::string::npos);
    CHECK(log.str().find("dh_identity") != std::string::npos);

    // inject a corrupted multiplier: the skew-adjointness check must catch it
    const ConjugationFn broken = [](const PeriodicSeries& f, StripDepth d) {
        PeriodicSeries out = conjugation(f, d);
        if (out.modes() >= 3) out.set_cos(3, out.cos_coeff(3) + 1e-3 * f.coeff_inf_norm());
        return out;
    };
    const DiagnosticsReport rep = run_diagnostics(cfg.physical, 99, broken);
    CHECK_FALSE(rep.all_passed());
    bool skew_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "skew_adjointness" && !c.passed) skew_failed = true;
    CHECK(skew_failed);
}
