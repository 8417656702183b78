#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vorwave/governing.hpp"

namespace vorwave {

struct ContinuationConfig {
    int n = 1;          ///< branch mode index
    int sign = +1;      ///< +1 or -1, matching the bifurcation-point sign
    double s_init = -1.0;  ///< first-step amplitude; defaults to 1e-3 * h
    double ds0 = 1e-2;
    double ds_min = 1e-6;
    double ds_max = 5e-2;
    double newton_tol = 1e-10;
    int newton_max_iter = 8;
    int max_steps = 200;
    double q_floor = -1.0;        ///< defaults to 1e-3 * g * h
    double norm_ceiling = 1e3;

    void validate() const;
    double effective_s_init(const WaveParameters& p) const;
    double effective_q_floor(const WaveParameters& p) const;
};

enum class Termination {
    none,
    q_floor_hit,
    norm_ceiling_hit,
    self_intersection,
    loop_detected,
    max_steps,
    newton_failure,
};
std::string to_string(Termination t);

/// The seven pointwise/structural wave properties plus the two real margins,
/// sampled on the fine grid with strict inequalities tested at 1e-10.
struct NodalReport {
    bool positivity = false;
    bool nontrivial = false;
    bool monotone = false;
    bool crest_trough_curvature = false;
    bool u_range = false;
    bool surface_vy_pos = false;
    bool sign_condition = false;
    double min_q_minus_2gv = 0.0;
    double self_intersection_margin = 0.0;
    bool all_seven() const {
        return positivity && nontrivial && monotone && crest_trough_curvature && u_range &&
               surface_vy_pos && sign_condition;
    }
};

struct BranchPoint {
    SolutionPoint point;
    NodalReport nodal;
    int newton_iters = 0;
    int det_sign = 0;   ///< sign of det of the (w, mu) Jacobian block
    double ds_used = 0.0;
};

struct BranchRecord {
    std::vector<BranchPoint> points;
    Termination termination = Termination::none;
};

/// Newton correction in the hyperplane orthogonal to the kernel direction:
/// first nontrivial point from the predictor (lambda*, 0, s_init cos(nx)).
/// s_init = 0 returns the trivial point itself. On divergence the amplitude
/// is halved and retried; below s_min an exception is thrown.
SolutionPoint switch_branch(const WaveParameters& p, const BifurcationPoint& bp, double s_init,
                            double newton_tol = 1e-10, int max_iter = 25);

/// Pseudo-arclength predictor-corrector trace of one bifurcation branch.
BranchRecord continue_branch(const WaveParameters& p, const ContinuationConfig& cfg);

/// Resume a trace from two stored consecutive points (secant tangent) with a
/// given step size; reproduces the original trajectory.
BranchRecord continue_branch_from(const WaveParameters& p, const ContinuationConfig& cfg,
                                  const SolutionPoint& previous, const SolutionPoint& current,
                                  double ds, int prev_newton_iters, int curr_newton_iters);

NodalReport nodal_monitor(const WaveParameters& p, const SolutionPoint& pt, int branch_sign);

/// Determinant sign of the trivial-branch linearization along a lambda grid;
/// sign changes bracket exactly the bifurcation values with n <= n_modes.
std::vector<std::pair<double, int>> scan_trivial_branch(const WaveParameters& p, double lambda_lo,
                                                        double lambda_hi, int n_grid);

}  // namespace vorwave
