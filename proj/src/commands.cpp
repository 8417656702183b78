#include "vorwave/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "vorwave/diagnostics.hpp"
#include "vorwave/flowfield.hpp"

namespace vorwave {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    return out;
}

std::string sign_tag(int sign) { return sign > 0 ? "plus" : "minus"; }

}  // namespace

int cmd_bifurcation_points(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    std::ofstream out = open_output(cfg.output_dir, "bifurcation_points.csv");
    out << "# n,sign,lambda_star,m_star,Q_star,dispersion_residual\n";
    const auto pts = bifurcation_points(cfg.physical, cfg.n_max);
    for (const auto& bp : pts) {
        out << bp.n << "," << (bp.sign > 0 ? "+" : "-") << "," << format_full(bp.lambda_star)
            << "," << format_full(bp.m_star) << "," << format_full(bp.Q_star) << ","
            << format_full(std::abs(dispersion_residual(cfg.physical, bp.n, bp.lambda_star)))
            << "\n";
    }
    out << "# rows = " << pts.size() << "\n";
    log << "wrote " << pts.size() << " bifurcation points to " << cfg.output_dir
        << "/bifurcation_points.csv\n";
    return 0;
}

int cmd_continue(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    const BranchRecord rec = continue_branch(cfg.physical, cfg.branch);

    std::ostringstream name;
    name << "branch_n" << cfg.branch.n << "_" << sign_tag(cfg.branch.sign) << ".csv";
    std::ofstream out = open_output(cfg.output_dir, name.str());
    out << "# s,lambda,mu,m,Q,amplitude,min_Q_minus_2gv,self_intersection_margin,det_sign,"
           "positivity,nontrivial,monotone,crest_trough_curvature,u_range,surface_Vy_pos,"
           "sign_condition,newton_iters\n";
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
        const BranchPoint& bp = rec.points[i];
        const double amplitude =
            0.5 * (bp.point.w(0.0) - bp.point.w(std::numbers::pi));
        out << format_full(bp.point.s) << "," << format_full(bp.point.lambda) << ","
            << format_full(bp.point.mu) << "," << format_full(bp.point.m) << ","
            << format_full(bp.point.Q) << "," << format_full(amplitude) << ","
            << format_full(bp.nodal.min_q_minus_2gv) << ","
            << format_full(bp.nodal.self_intersection_margin) << "," << bp.det_sign << ","
            << bp.nodal.positivity << "," << bp.nodal.nontrivial << "," << bp.nodal.monotone << ","
            << bp.nodal.crest_trough_curvature << "," << bp.nodal.u_range << ","
            << bp.nodal.surface_vy_pos << "," << bp.nodal.sign_condition << ","
            << bp.newton_iters << "\n";

        if (i % static_cast<std::size_t>(cfg.snapshot_every) == 0 || i + 1 == rec.points.size()) {
            Snapshot snap;
            snap.params = cfg.physical;
            snap.point = bp.point;
            snap.ds = bp.ds_used;
            snap.newton_iters = bp.newton_iters;
            if (i > 0) {
                snap.previous = rec.points[i - 1].point;
                snap.prev_newton_iters = rec.points[i - 1].newton_iters;
            }
            std::ostringstream sname;
            sname << "snapshot_n" << cfg.branch.n << "_" << sign_tag(cfg.branch.sign) << "_"
                  << std::setfill('0') << std::setw(6) << i << ".snap";
            save_snapshot((fs::path(cfg.output_dir) / sname.str()).string(), snap);
        }
    }
    out << "# termination = " << to_string(rec.termination) << "\n";
    out << "# points = " << rec.points.size() << "\n";
    log << "branch n=" << cfg.branch.n << " sign=" << (cfg.branch.sign > 0 ? "+" : "-") << ": "
        << rec.points.size() << " points, termination " << to_string(rec.termination) << "\n";
    return rec.termination == Termination::newton_failure ? 2 : 0;
}

int cmd_flowfield(const RunConfig& cfg, const std::string& snapshot_path, int grid_nx, int grid_ny,
                  std::ostream& log) {
    const Snapshot snap = load_snapshot(snapshot_path);
    FlowGridSpec grid;
    grid.nx = grid_nx > 0 ? grid_nx : cfg.field_nx;
    grid.ny = grid_ny > 0 ? grid_ny : cfg.field_ny;

    const FlowField flow = reconstruct_flow(snap.params, snap.point.m, snap.point.Q,
                                            snap.point.surface(snap.params), grid);
    std::ofstream out = open_output(cfg.output_dir, "field.dat");
    out << "# x y X Y V U zeta psi psiY psiX\n";
    for (int i = 0; i < flow.nx(); ++i) {
        for (int j = 0; j < flow.ny(); ++j) {
            out << format_full(flow.x(i)) << " " << format_full(flow.y(j)) << " "
                << format_full(flow.U(i, j)) << " " << format_full(flow.V(i, j)) << " "
                << format_full(flow.V(i, j)) << " " << format_full(flow.U(i, j)) << " "
                << format_full(flow.zeta(i, j)) << " " << format_full(flow.psi(i, j)) << " "
                << format_full(flow.psi_Y(i, j)) << " " << format_full(flow.psi_X(i, j)) << "\n";
        }
    }

    const CriticalSet cs = critical_set(flow);
    std::ofstream cout_ = open_output(cfg.output_dir, "critical.dat");
    cout_ << "# vorwave critical set\n";
    if (cs.degenerate_line)
        cout_ << "degenerate_line Y " << format_full(cs.degenerate_line_Y) << "\n";
    for (const auto& sp : cs.stagnation) {
        cout_ << "stagnation " << format_full(sp.X) << " " << format_full(sp.Y) << " "
              << format_full(sp.x) << " " << format_full(sp.y) << " "
              << (sp.kind == StagnationPoint::Kind::center
                      ? "center"
                      : sp.kind == StagnationPoint::Kind::saddle ? "saddle" : "degenerate")
              << " " << format_full(sp.grad_norm) << "\n";
    }
    for (std::size_t l = 0; l < cs.layers.size(); ++l) {
        cout_ << "layer " << l << " begin\n";
        for (const auto& pt : cs.layers[l])
            cout_ << format_full(pt[0]) << " " << format_full(pt[1]) << "\n";
        cout_ << "layer " << l << " end\n";
    }
    log << "field " << flow.nx() << "x" << flow.ny() << " written; " << cs.stagnation.size()
        << " stagnation points, " << cs.layers.size() << " critical-layer polylines\n";
    return 0;
}

int cmd_laminar(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    std::ofstream out = open_output(cfg.output_dir, "laminar.csv");
    out << "# n,sign,lambda_star,threshold_test,range_test,margin,critical_line_Y\n";
    for (int n = 1; n <= cfg.n_max; ++n) {
        for (const int sign : {+1, -1}) {
            const LaminarCriterion rep = laminar_critical_criterion(cfg.physical, n, sign);
            const LaminarFlow lam = LaminarFlow::from_lambda(cfg.physical, rep.lambda_star);
            out << n << "," << (sign > 0 ? "+" : "-") << "," << format_full(rep.lambda_star) << ","
                << rep.threshold_test << "," << rep.range_test << "," << format_full(rep.margin)
                << ","
                << (lam.has_critical_line() ? format_full(lam.critical_line_Y()) : std::string("nan"))
                << "\n";
        }
    }
    log << "laminar criterion table written to " << cfg.output_dir << "/laminar.csv\n";
    return 0;
}

int cmd_check(const RunConfig& cfg, std::uint64_t seed, std::ostream& log) {
    cfg.validate();
    const DiagnosticsReport rep = run_diagnostics(cfg.physical, seed);
    for (const auto& c : rep.checks) {
        log << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  error=" << format_full(c.error)
            << "  threshold=" << format_full(c.threshold) << "\n";
    }
    log << (rep.all_passed() ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
    return rep.all_passed() ? 0 : 2;
}

}  // namespace vorwave
