#include "vorwave/continuation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace vorwave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStrictTol = 1e-10;

/// Branch state vector u = (lambda, mu, a_1..a_N).
Eigen::VectorXd pack(const WaveParameters& p, double lambda, double mu, const PeriodicSeries& w) {
    Eigen::VectorXd u(p.n_modes + 2);
    u(0) = lambda;
    u(1) = mu;
    for (int n = 1; n <= p.n_modes; ++n) u(n + 1) = w.cos_coeff(n);
    return u;
}

PeriodicSeries unpack_w(const WaveParameters& p, const Eigen::VectorXd& u) {
    PeriodicSeries w(p.n_modes);
    for (int n = 1; n <= p.n_modes; ++n) w.set_cos(n, u(n + 1));
    return w;
}

struct NewtonResult {
    Eigen::VectorXd u;
    int iters = 0;
    bool converged = false;
    int det_sign = 0;
};

/// Solve F(u) = 0 together with the linear constraint t . (u - u_ref) = c.
NewtonResult newton_correct(const WaveParameters& p, Eigen::VectorXd u,
                            const Eigen::VectorXd& tangent, const Eigen::VectorXd& u_ref,
                            double constraint_value, double tol, int max_iter) {
    const int n = p.n_modes;
    NewtonResult result;
    Eigen::MatrixXd jac(n + 2, n + 2);
    Eigen::VectorXd rhs(n + 2);
    for (int it = 1; it <= max_iter; ++it) {
        const PeriodicSeries w = unpack_w(p, u);
        const Residual r = residual_F(p, u(0), u(1), w);
        const double cres = tangent.dot(u - u_ref) - constraint_value;
        if (r.f1.coeff_inf_norm() <= tol && std::abs(r.f2) <= tol && std::abs(cres) <= 1e-12) {
            result.u = u;
            result.iters = it - 1;
            result.converged = true;
            const JacobianF jf = jacobian_F(p, u(0), u(1), w);
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(jf.d_state);
            double dsign = static_cast<double>(lu.permutationP().determinant());
            for (int i = 0; i < n + 1; ++i) dsign *= (lu.matrixLU()(i, i) < 0.0) ? -1.0 : 1.0;
            result.det_sign = dsign > 0.0 ? 1 : -1;
            return result;
        }
        const JacobianF jf = jacobian_F(p, u(0), u(1), w);
        jac.setZero();
        for (int i = 0; i < n + 1; ++i) {
            jac(i, 0) = jf.d_lambda(i);
            jac(i, 1) = jf.d_state(i, n);  // mu column
            for (int j = 1; j <= n; ++j) jac(i, j + 1) = jf.d_state(i, j - 1);
        }
        jac.row(n + 1) = tangent.transpose();
        for (int i = 1; i <= n; ++i) rhs(i - 1) = -r.f1.cos_coeff(i);
        rhs(n) = -r.f2;
        rhs(n + 1) = -cres;
        const Eigen::VectorXd du = jac.partialPivLu().solve(rhs);
        if (!du.allFinite()) break;
        u += du;
        result.iters = it;
    }
    result.u = u;
    return result;
}

double state_norm(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).norm(); }

/// C^2-type size of (m, Q, v) used for the unboundedness proxy.
double solution_norm(const WaveParameters& p, const SolutionPoint& pt) {
    double s = std::abs(pt.m) + std::abs(pt.Q) + p.h;
    const PeriodicSeries wp = derivative(pt.w);
    return s + pt.w.sup_norm() + wp.sup_norm() + derivative(wp).sup_norm();
}

}  // namespace

void ContinuationConfig::validate() const {
    if (n < 1) throw std::invalid_argument("ContinuationConfig: n must be >= 1");
    if (sign != +1 && sign != -1) throw std::invalid_argument("ContinuationConfig: sign must be +-1");
    if (!(ds_min > 0.0) || !(ds_min <= ds0) || !(ds0 <= ds_max))
        throw std::invalid_argument("ContinuationConfig: need 0 < ds_min <= ds0 <= ds_max");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("ContinuationConfig: newton_tol must be > 0");
    if (newton_max_iter < 1 || max_steps < 1)
        throw std::invalid_argument("ContinuationConfig: iteration budgets must be >= 1");
}

double ContinuationConfig::effective_s_init(const WaveParameters& p) const {
    return s_init > 0.0 ? s_init : 1e-3 * p.h;
}

double ContinuationConfig::effective_q_floor(const WaveParameters& p) const {
    return q_floor >= 0.0 ? q_floor : 1e-3 * p.g * p.h;
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::none: return "none";
        case Termination::q_floor_hit: return "q_floor_hit";
        case Termination::norm_ceiling_hit: return "norm_ceiling_hit";
        case Termination::self_intersection: return "self_intersection";
        case Termination::loop_detected: return "loop_detected";
        case Termination::max_steps: return "max_steps";
        case Termination::newton_failure: return "newton_failure";
    }
    return "unknown";
}

SolutionPoint switch_branch(const WaveParameters& p, const BifurcationPoint& bp, double s_init,
                            double newton_tol, int max_iter) {
    p.validate();
    if (s_init == 0.0)
        return SolutionPoint::from_speed(p, bp.lambda_star, 0.0, PeriodicSeries(p.n_modes), 0.0);
    if (bp.n > p.n_modes)
        throw std::invalid_argument("switch_branch: branch mode exceeds truncation");

    const double s_min = std::abs(s_init) * 1e-3;
    double s = s_init;
    while (std::abs(s) >= s_min) {
        Eigen::VectorXd u0 = pack(p, bp.lambda_star, 0.0,
                                  PeriodicSeries::harmonic_cos(bp.n, s, p.n_modes));
        Eigen::VectorXd kernel_dir = Eigen::VectorXd::Zero(p.n_modes + 2);
        kernel_dir(bp.n + 1) = 1.0;
        const NewtonResult res =
            newton_correct(p, u0, kernel_dir, u0, 0.0, newton_tol, max_iter);
        if (res.converged) {
            SolutionPoint pt = SolutionPoint::from_speed(p, res.u(0), res.u(1), unpack_w(p, res.u),
                                                         std::abs(s));
            return pt;
        }
        s *= 0.5;
    }
    throw std::runtime_error("switch_branch: Newton correction failed down to minimal amplitude");
}

NodalReport nodal_monitor(const WaveParameters& p, const SolutionPoint& pt, int branch_sign) {
    NodalReport rep;
    const StripDepth d = p.strip_depth();
    const PeriodicSeries v = pt.surface(p);
    const PeriodicSeries vp = derivative(v);
    const PeriodicSeries vpp = derivative(vp);
    const PeriodicSeries cw = conjugation(v.mean_free(), d);   // C(v - h)
    const PeriodicSeries cvp = conjugation(vp, d);             // C(v')
    const PeriodicSeries a = bernoulli_root_expression(p, pt.m, v);

    const int m = 8 * std::max(8, p.n_modes);

    rep.positivity = true;
    rep.sign_condition = true;
    rep.min_q_minus_2gv = std::numeric_limits<double>::max();
    for (int i = 0; i < m; ++i) {
        const double x = -kPi + 2.0 * kPi * i / m;
        const double vv = v(x);
        if (vv <= kStrictTol) rep.positivity = false;
        if (branch_sign * a(x) <= kStrictTol) rep.sign_condition = false;
        rep.min_q_minus_2gv = std::min(rep.min_q_minus_2gv, pt.Q - 2.0 * p.g * vv);
    }

    rep.nontrivial = pt.w.coeff_inf_norm() > kStrictTol;

    // strict inequalities on (0, pi): grid nodes first; a borderline maximum
    // is refined by bisection on the spectral interpolant before the verdict
    rep.u_range = true;
    rep.self_intersection_margin = std::numeric_limits<double>::max();
    const int mh = m / 2;
    double max_vp = -std::numeric_limits<double>::max();
    int argmax_vp = 1;
    for (int i = 1; i < mh; ++i) {
        const double x = kPi * i / mh;
        const double dv = vp(x);
        if (dv > max_vp) {
            max_vp = dv;
            argmax_vp = i;
        }
        const double u = x / p.k + cw(x);
        if (u <= kStrictTol || u >= kPi / p.k - kStrictTol) rep.u_range = false;
        rep.self_intersection_margin = std::min({rep.self_intersection_margin, u, kPi / p.k - u});
    }
    if (max_vp >= -kStrictTol && std::abs(max_vp) <= kStrictTol) {
        double lo = kPi * std::max(1, argmax_vp - 1) / mh;
        double hi = kPi * std::min(mh - 1, argmax_vp + 1) / mh;
        if (vpp(lo) > 0.0 && vpp(hi) < 0.0) {
            for (int it = 0; it < 50; ++it) {
                const double mid = 0.5 * (lo + hi);
                (vpp(mid) > 0.0 ? lo : hi) = mid;
            }
            max_vp = vp(0.5 * (lo + hi));
        }
    }
    rep.monotone = max_vp < -kStrictTol;

    rep.crest_trough_curvature = vpp(0.0) < -kStrictTol && vpp(kPi) > kStrictTol;
    rep.surface_vy_pos =
        (1.0 / p.k + cvp(0.0)) > kStrictTol && (1.0 / p.k + cvp(kPi)) > kStrictTol;
    return rep;
}

namespace {

BranchRecord trace(const WaveParameters& p, const ContinuationConfig& cfg, Eigen::VectorXd u_prev,
                   Eigen::VectorXd u_curr, double ds, int iters_prev, int iters_curr,
                   double s_offset, std::vector<BranchPoint> pre_existing) {
    BranchRecord rec;
    rec.points = std::move(pre_existing);

    const double q_floor = cfg.effective_q_floor(p);
    const Eigen::VectorXd u_first = u_curr;
    Eigen::VectorXd tangent_first = (u_curr - u_prev).normalized();

    double s_acc = s_offset;
    int iters_km1 = iters_prev, iters_k = iters_curr;

    for (int step = 0; static_cast<int>(rec.points.size()) < cfg.max_steps; ++step) {
        // step-size adaptation from the last two accepted corrections
        if (step > 0 && iters_k <= 3 && iters_km1 <= 3) ds = std::min(2.0 * ds, cfg.ds_max);

        Eigen::VectorXd tangent = (u_curr - u_prev).normalized();
        bool accepted = false;
        NewtonResult res;
        while (true) {
            const Eigen::VectorXd u_pred = u_curr + ds * tangent;
            res = newton_correct(p, u_pred, tangent, u_curr, ds, cfg.newton_tol,
                                 cfg.newton_max_iter);
            if (res.converged) {
                accepted = true;
                break;
            }
            ds *= 0.5;
            if (ds < cfg.ds_min) break;
        }
        if (!accepted) {
            rec.termination = Termination::newton_failure;
            return rec;
        }

        const double du_norm = state_norm(res.u, u_curr);
        s_acc += du_norm;
        SolutionPoint pt = SolutionPoint::from_speed(p, res.u(0), res.u(1), unpack_w(p, res.u), s_acc);

        BranchPoint bp;
        bp.point = pt;
        bp.nodal = nodal_monitor(p, pt, cfg.sign);
        bp.newton_iters = res.iters;
        bp.det_sign = res.det_sign;
        bp.ds_used = ds;
        rec.points.push_back(std::move(bp));

        u_prev = u_curr;
        u_curr = res.u;
        iters_km1 = iters_k;
        iters_k = res.iters;

        // termination monitors
        const BranchPoint& last = rec.points.back();
        if (last.nodal.min_q_minus_2gv <= q_floor) {
            rec.termination = Termination::q_floor_hit;
            return rec;
        }
        if (solution_norm(p, last.point) >= cfg.norm_ceiling) {
            rec.termination = Termination::norm_ceiling_hit;
            return rec;
        }
        if (last.nodal.self_intersection_margin <= 0.0) {
            rec.termination = Termination::self_intersection;
            return rec;
        }
        if (rec.points.size() > 3 && state_norm(u_curr, u_first) < ds &&
            tangent.dot(tangent_first) < 0.0) {
            rec.termination = Termination::loop_detected;
            return rec;
        }
    }
    rec.termination = Termination::max_steps;
    return rec;
}

}  // namespace

BranchRecord continue_branch(const WaveParameters& p, const ContinuationConfig& cfg) {
    p.validate();
    cfg.validate();

    BifurcationPoint bp0;
    bool found = false;
    for (const auto& b : bifurcation_points(p, cfg.n))
        if (b.n == cfg.n && b.sign == cfg.sign) {
            bp0 = b;
            found = true;
        }
    if (!found) throw std::invalid_argument("continue_branch: no bifurcation point for config");

    const double s0 = cfg.effective_s_init(p);
    const SolutionPoint first = switch_branch(p, bp0, s0, cfg.newton_tol, cfg.newton_max_iter * 3);

    const Eigen::VectorXd u_triv = pack(p, bp0.lambda_star, 0.0, PeriodicSeries(p.n_modes));
    const Eigen::VectorXd u_first = pack(p, first.lambda, first.mu, first.w);

    std::vector<BranchPoint> start;
    BranchPoint bpt;
    bpt.point = first;
    bpt.point.s = (u_first - u_triv).norm();
    bpt.nodal = nodal_monitor(p, bpt.point, cfg.sign);
    bpt.newton_iters = 0;
    bpt.det_sign = 0;
    bpt.ds_used = s0;
    start.push_back(bpt);

    return trace(p, cfg, u_triv, u_first, cfg.ds0, 0, 0, bpt.point.s, std::move(start));
}

BranchRecord continue_branch_from(const WaveParameters& p, const ContinuationConfig& cfg,
                                  const SolutionPoint& previous, const SolutionPoint& current,
                                  double ds, int prev_newton_iters, int curr_newton_iters) {
    p.validate();
    cfg.validate();
    const Eigen::VectorXd u_prev = pack(p, previous.lambda, previous.mu, previous.w);
    const Eigen::VectorXd u_curr = pack(p, current.lambda, current.mu, current.w);
    return trace(p, cfg, u_prev, u_curr, ds, prev_newton_iters, curr_newton_iters, current.s, {});
}

std::vector<std::pair<double, int>> scan_trivial_branch(const WaveParameters& p, double lambda_lo,
                                                        double lambda_hi, int n_grid) {
    if (n_grid < 2) throw std::invalid_argument("scan_trivial_branch: need at least 2 points");
    std::vector<std::pair<double, int>> out;
    out.reserve(static_cast<std::size_t>(n_grid));
    for (int i = 0; i < n_grid; ++i) {
        const double lambda = lambda_lo + (lambda_hi - lambda_lo) * i / (n_grid - 1);
        const DiagonalOperator op = linearized_operator(p, lambda);
        int sign = 1;
        for (const double dmult : op.mode_multipliers) sign *= (dmult < 0.0) ? -1 : 1;
        out.emplace_back(lambda, sign);
    }
    return out;
}

}  // namespace vorwave
