#include "vorwave/governing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vorwave/flowfield.hpp"

namespace vorwave {

void WaveParameters::validate() const {
    if (!(g > 0.0)) throw std::invalid_argument("WaveParameters: g must be positive");
    if (!(k > 0.0)) throw std::invalid_argument("WaveParameters: k must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("WaveParameters: h must be positive");
    if (n_modes < 8) throw std::invalid_argument("WaveParameters: need at least 8 modes");
}

MassFluxHead to_mass_flux_head(const WaveParameters& p, double lambda, double mu) {
    return {p.h * (lambda - p.upsilon * p.h / 2.0), mu + lambda * lambda + 2.0 * p.g * p.h};
}

SpeedHeadDefect to_speed_head_defect(const WaveParameters& p, double m, double Q) {
    const double lambda = m / p.h + p.upsilon * p.h / 2.0;
    return {lambda, Q - 2.0 * p.g * p.h - lambda * lambda};
}

SolutionPoint SolutionPoint::from_speed(const WaveParameters& p, double lambda, double mu,
                                        PeriodicSeries w, double s) {
    SolutionPoint pt;
    pt.lambda = lambda;
    pt.mu = mu;
    const MassFluxHead mq = to_mass_flux_head(p, lambda, mu);
    pt.m = mq.m;
    pt.Q = mq.Q;
    pt.s = s;
    pt.w = std::move(w);
    const Residual r = residual_F(p, lambda, mu, pt.w);
    pt.res_f1 = r.f1.coeff_inf_norm();
    pt.res_f2 = std::abs(r.f2);
    return pt;
}

SolutionPoint SolutionPoint::from_flux(const WaveParameters& p, double m, double Q,
                                       const PeriodicSeries& v, double s) {
    const SpeedHeadDefect lm = to_speed_head_defect(p, m, Q);
    PeriodicSeries w = v;
    w.set_mean(0.0);
    return from_speed(p, lm.lambda, lm.mu, std::move(w), s);
}

PeriodicSeries SolutionPoint::surface(const WaveParameters& p) const {
    PeriodicSeries v = w;
    v.set_mean(p.h);
    return v;
}

Residual residual_F(const WaveParameters& p, double lambda, double mu, const PeriodicSeries& w) {
    const StripDepth d = p.strip_depth();
    const double g = p.g, k = p.k, h = p.h, ups = p.upsilon;

    const PeriodicSeries wp = derivative(w);
    const PeriodicSeries cw = conjugation(wp, d);          // C(w')
    const PeriodicSeries wwp = product(w, wp);             // w w'
    const PeriodicSeries cww = conjugation(wwp.mean_free(), d);  // C(w w'), [w w'] = 0
    const PeriodicSeries w2 = product(w, w);
    const PeriodicSeries w2wp = product(w2, wp);
    const PeriodicSeries cwww = conjugation(w2wp.mean_free(), d);
    const double avg_w2 = w2.mean();
    const double avg_wcw = product_average(w, cw);

    PeriodicSeries f1 = 2.0 * (mu + lambda * lambda) * cw;
    f1 -= 2.0 * g * (cww + product(w, cw) - PeriodicSeries::constant(avg_wcw));
    f1 -= (ups * ups) * (cwww + product(w2, cw) - 2.0 * product(w, cww));
    f1 += (ups * ups / (k * h) * avg_w2) * w;
    f1 -= (ups * ups / k) * (w2 - PeriodicSeries::constant(avg_w2));
    f1 -= ((2.0 * g + 2.0 * lambda * ups) / k) * w;

    PeriodicSeries b = cww - product(w, cw) - (1.0 / k) * w;
    b += PeriodicSeries::constant(avg_w2 / (2.0 * k * h));

    double f2 = ups * ups * product_average(b, b);
    f2 += 2.0 * (2.0 * g + lambda * ups) / k * avg_wcw;
    f2 += 2.0 * g * product_average(w, product(wp, wp));
    f2 += 2.0 * g * product_average(w, product(cw, cw));
    f2 -= lambda * ups / (k * k * h) * avg_w2;
    f2 -= (mu + lambda * lambda) *
          (product_average(cw, cw) + product_average(wp, wp));
    f2 -= mu / (k * k);

    return {std::move(f1), f2};
}

Residual residual_F_directional(const WaveParameters& p, double lambda, double mu,
                                const PeriodicSeries& w, double dlambda, double dmu,
                                const PeriodicSeries& dw) {
    const StripDepth d = p.strip_depth();
    const double g = p.g, k = p.k, h = p.h, ups = p.upsilon;

    const PeriodicSeries wp = derivative(w);
    const PeriodicSeries cw = conjugation(wp, d);
    const PeriodicSeries wwp = product(w, wp);
    const PeriodicSeries cww = conjugation(wwp.mean_free(), d);
    const PeriodicSeries w2 = product(w, w);
    const double avg_w2 = w2.mean();
    const double avg_wcw = product_average(w, cw);

    const PeriodicSeries fp = derivative(dw);
    const PeriodicSeries cf = conjugation(fp, d);
    const PeriodicSeries wf = product(w, dw);
    const double avg_wf = wf.mean();
    // d(w w') = (w f)',  d(w^2 w') = (w^2 f)'
    const PeriodicSeries dcww = conjugation(derivative(wf), d);
    const PeriodicSeries dcwww = conjugation(derivative(product(w2, dw)), d);

    PeriodicSeries df1 = 2.0 * (mu + lambda * lambda) * cf;
    df1 += (4.0 * lambda * dlambda + 2.0 * dmu) * cw;
    const double d_avg_wcw = product_average(dw, cw) + product_average(w, cf);
    df1 -= 2.0 * g * (dcww + product(dw, cw) + product(w, cf) -
                      PeriodicSeries::constant(d_avg_wcw));
    df1 -= (ups * ups) * (dcwww + 2.0 * product(wf, cw) + product(w2, cf) -
                          2.0 * product(dw, cww) - 2.0 * product(w, dcww));
    df1 += (ups * ups / (k * h)) * (2.0 * avg_wf * w + avg_w2 * dw);
    df1 -= (ups * ups / k) * (2.0 * wf - PeriodicSeries::constant(2.0 * avg_wf));
    df1 -= ((2.0 * g + 2.0 * lambda * ups) / k) * dw;
    df1 -= (2.0 * ups * dlambda / k) * w;

    PeriodicSeries b = cww - product(w, cw) - (1.0 / k) * w;
    b += PeriodicSeries::constant(avg_w2 / (2.0 * k * h));
    PeriodicSeries db = dcww - product(dw, cw) - product(w, cf) - (1.0 / k) * dw;
    db += PeriodicSeries::constant(avg_wf / (k * h));

    const double quad_cw = product_average(cw, cw) + product_average(wp, wp);
    double df2 = 2.0 * ups * ups * product_average(b, db);
    df2 += 2.0 * (2.0 * g + lambda * ups) / k * d_avg_wcw;
    df2 += 2.0 * ups * dlambda / k * avg_wcw;
    df2 += 2.0 * g * (product_average(dw, product(wp, wp)) +
                      2.0 * product_average(w, product(wp, fp)));
    df2 += 2.0 * g * (product_average(dw, product(cw, cw)) +
                      2.0 * product_average(w, product(cw, cf)));
    df2 -= lambda * ups / (k * k * h) * 2.0 * avg_wf;
    df2 -= dlambda * ups / (k * k * h) * avg_w2;
    df2 -= (dmu + 2.0 * lambda * dlambda) * quad_cw;
    df2 -= (mu + lambda * lambda) *
           (2.0 * product_average(cw, cf) + 2.0 * product_average(wp, fp));
    df2 -= dmu / (k * k);

    return {std::move(df1), df2};
}

PeriodicSeries bernoulli_root_expression(const WaveParameters& p, double m,
                                         const PeriodicSeries& v) {
    const StripDepth d = p.strip_depth();
    const double k = p.k, h = p.h, ups = p.upsilon;
    const PeriodicSeries vp = derivative(v);
    const PeriodicSeries cvp = conjugation(vp, d);
    const PeriodicSeries v2 = product(v, v);
    const PeriodicSeries cvvp = conjugation(product(v, vp).mean_free(), d);

    PeriodicSeries a = PeriodicSeries::constant(m / (k * h) - ups / (2.0 * k * h) * v2.mean());
    a -= ups * cvvp;
    PeriodicSeries ux = cvp;  // 1/k + C(v')
    ux.set_mean(ux.mean() + 1.0 / k);
    a += ups * product(v, ux);
    return a;
}

PeriodicSeries residual_bernoulli(const WaveParameters& p, double m, double Q,
                                  const PeriodicSeries& v) {
    if (std::abs(v.mean() - p.h) > 1e-10 * std::max(1.0, p.h))
        throw std::invalid_argument("residual_bernoulli: [v] must equal h");
    const StripDepth d = p.strip_depth();
    const double g = p.g, k = p.k;

    const PeriodicSeries a = bernoulli_root_expression(p, m, v);
    const PeriodicSeries vp = derivative(v);
    PeriodicSeries ux = conjugation(vp, d);
    ux.set_mean(ux.mean() + 1.0 / k);

    PeriodicSeries head = PeriodicSeries::constant(Q) - 2.0 * g * v;
    PeriodicSeries grad2 = product(vp, vp) + product(ux, ux);
    return product(a, a) - product(head, grad2);
}

EquivalenceReport check_equivalence(const WaveParameters& p, const SolutionPoint& pt, double tol) {
    EquivalenceReport rep;
    const Residual r = residual_F(p, pt.lambda, pt.mu, pt.w);
    rep.system_residual = std::max(r.f1.coeff_inf_norm(), std::abs(r.f2));
    rep.bernoulli_residual =
        residual_bernoulli(p, pt.m, pt.Q, pt.surface(p)).coeff_inf_norm();
    rep.direction_i = rep.system_residual <= tol;

    const FlowField flow = reconstruct_flow(p, pt.m, pt.Q, pt.surface(p), FlowGridSpec{128, 33});
    rep.min_grad_sq = flow.min_conformal_grad_sq();
    rep.direction_ii_hypothesis = rep.min_grad_sq > 1e-12 / (p.k * p.k);
    return rep;
}

DiagonalOperator linearized_operator(const WaveParameters& p, double lambda) {
    DiagonalOperator op;
    op.mode_multipliers.resize(static_cast<std::size_t>(p.n_modes));
    for (int n = 1; n <= p.n_modes; ++n) {
        op.mode_multipliers[static_cast<std::size_t>(n - 1)] =
            2.0 * lambda * lambda * n * coth_nd(n * p.k * p.h) - 2.0 * p.g / p.k -
            2.0 * lambda * p.upsilon / p.k;
    }
    op.mu_multiplier = -1.0 / (p.k * p.k);
    return op;
}

JacobianF jacobian_F(const WaveParameters& p, double lambda, double mu, const PeriodicSeries& w) {
    const int n = p.n_modes;
    JacobianF jac;
    jac.d_state.resize(n + 1, n + 1);
    jac.d_lambda.resize(n + 1);

    const PeriodicSeries zero(n);
    for (int j = 1; j <= n; ++j) {
        const Residual dr =
            residual_F_directional(p, lambda, mu, w, 0.0, 0.0, PeriodicSeries::harmonic_cos(j, 1.0, n));
        for (int i = 1; i <= n; ++i) jac.d_state(i - 1, j - 1) = dr.f1.cos_coeff(i);
        jac.d_state(n, j - 1) = dr.f2;
    }
    const Residual dmu = residual_F_directional(p, lambda, mu, w, 0.0, 1.0, zero);
    for (int i = 1; i <= n; ++i) jac.d_state(i - 1, n) = dmu.f1.cos_coeff(i);
    jac.d_state(n, n) = dmu.f2;

    const Residual dl = residual_F_directional(p, lambda, mu, w, 1.0, 0.0, zero);
    for (int i = 1; i <= n; ++i) jac.d_lambda(i - 1) = dl.f1.cos_coeff(i);
    jac.d_lambda(n) = dl.f2;
    return jac;
}

double transversality_factor(const WaveParameters& p, double lambda, int n) {
    return 4.0 * lambda * n * coth_nd(n * p.k * p.h) - 2.0 * p.upsilon / p.k;
}

std::vector<BifurcationPoint> bifurcation_points(const WaveParameters& p, int n_max) {
    if (n_max < 1) throw std::invalid_argument("bifurcation_points: n_max must be >= 1");
    std::vector<BifurcationPoint> pts;
    pts.reserve(2 * static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const double t = std::tanh(n * p.k * p.h);
        const double nk = n * p.k;
        const double half = p.upsilon * t / (2.0 * nk);
        const double root = std::sqrt(half * half + p.g * t / nk);
        for (const int sign : {+1, -1}) {
            BifurcationPoint bp;
            bp.n = n;
            bp.sign = sign;
            bp.lambda_star = half + sign * root;
            bp.m_star = p.h * bp.lambda_star - p.upsilon * p.h * p.h / 2.0;
            bp.Q_star = 2.0 * p.g * p.h + bp.lambda_star * bp.lambda_star;
            pts.push_back(bp);
        }
    }
    return pts;
}

double dispersion_residual(const WaveParameters& p, int n, double lambda) {
    return lambda * lambda * n * p.k * coth_nd(n * p.k * p.h) - p.g - p.upsilon * lambda;
}

double trivial_head(const WaveParameters& p, double m) {
    const double lambda = m / p.h + p.upsilon * p.h / 2.0;
    return 2.0 * p.g * p.h + lambda * lambda;
}

double irrotational_reduction_check(const WaveParameters& p, const SolutionPoint& pt) {
    if (p.upsilon != 0.0)
        throw std::invalid_argument("irrotational_reduction_check: requires Upsilon = 0");
    if (std::abs(p.k - 1.0) > 1e-14)
        throw std::invalid_argument("irrotational_reduction_check: requires k = 1");
    const StripDepth d(p.h);
    const PeriodicSeries& w = pt.w;
    const PeriodicSeries cwp = conjugation(derivative(w), d);
    const double beta = product_average(w, cwp);
    const double mu0 = (pt.Q - 2.0 * p.g * p.h) / p.g;

    PeriodicSeries vt = w;
    vt.set_mean(-beta);
    const double mut = mu0 - 2.0 * beta;
    const PeriodicSeries vtp = derivative(vt);
    const PeriodicSeries cvt = conjugation(vtp, d);
    const PeriodicSeries res =
        mut * cvt - vt - product(vt, cvt) - conjugation(product(vt, vtp).mean_free(), d);
    return res.coeff_inf_norm();
}

}  // namespace vorwave
