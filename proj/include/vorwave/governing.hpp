#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vorwave/periodic_series.hpp"
#include "vorwave/spectral.hpp"

namespace vorwave {

/// Fixed physical and discretization constants.
struct WaveParameters {
    double g = 1.0;        ///< gravitational acceleration
    double upsilon = 0.0;  ///< constant vorticity
    double k = 1.0;        ///< wavenumber (period L = 2 pi / k)
    double h = 1.0;        ///< conformal mean depth
    int n_modes = 64;      ///< spectral truncation

    void validate() const;
    StripDepth strip_depth() const { return StripDepth(k * h); }
};

/// Conversions between the (m, Q) and (lambda, mu) parameter pairs:
///   lambda = m/h + Upsilon h/2,   mu = Q - 2 g h - lambda^2.
struct MassFluxHead {
    double m, Q;
};
struct SpeedHeadDefect {
    double lambda, mu;
};
MassFluxHead to_mass_flux_head(const WaveParameters& p, double lambda, double mu);
SpeedHeadDefect to_speed_head_defect(const WaveParameters& p, double m, double Q);

/// One solution carried in both parametrizations; m, Q are derived from
/// (lambda, mu) at construction so the algebraic relations hold exactly.
struct SolutionPoint {
    double lambda = 0.0;
    double mu = 0.0;
    double m = 0.0;
    double Q = 0.0;
    double s = 0.0;  ///< branch arclength coordinate
    PeriodicSeries w;  ///< v - h, even, mean zero
    double res_f1 = 0.0;
    double res_f2 = 0.0;

    static SolutionPoint from_speed(const WaveParameters& p, double lambda, double mu,
                                    PeriodicSeries w, double s = 0.0);
    static SolutionPoint from_flux(const WaveParameters& p, double m, double Q,
                                   const PeriodicSeries& v, double s = 0.0);
    /// v = h + w
    PeriodicSeries surface(const WaveParameters& p) const;
};

struct Residual {
    PeriodicSeries f1;  ///< even, mean-zero by construction
    double f2 = 0.0;
};

/// Full nonlinear residual of the governing system in (lambda, (mu, w)) form,
/// including the averaged constant terms. Defined for every input; the
/// positivity of mu + lambda^2 - 2 g w is a monitor, not a precondition.
Residual residual_F(const WaveParameters& p, double lambda, double mu, const PeriodicSeries& w);

/// Directional derivative of residual_F at (lambda, mu, w) in the direction
/// (dlambda, dmu, dw). Exact (assembled from the multiplier algebra).
Residual residual_F_directional(const WaveParameters& p, double lambda, double mu,
                                const PeriodicSeries& w, double dlambda, double dmu,
                                const PeriodicSeries& dw);

/// Pointwise residual of the single squared Bernoulli equation, sampled
/// exactly (a degree 4N trigonometric polynomial). Requires [v] = h.
PeriodicSeries residual_bernoulli(const WaveParameters& p, double m, double Q,
                                  const PeriodicSeries& v);

/// The common factor of the squared Bernoulli form and nodal condition (4.12):
///   m/(kh) - Upsilon [v^2]/(2kh) - Upsilon C(v v') + Upsilon v (1/k + C(v')).
PeriodicSeries bernoulli_root_expression(const WaveParameters& p, double m,
                                         const PeriodicSeries& v);

struct EquivalenceReport {
    double system_residual = 0.0;     ///< max(||F1||_inf, |F2|)
    double bernoulli_residual = 0.0;  ///< coefficient inf-norm of the squared form
    double min_grad_sq = 0.0;         ///< min of V_x^2 + V_y^2 over the strip closure
    bool direction_i = false;         ///< system solved => squared form solved
    bool direction_ii_hypothesis = false;  ///< conformal gradient bounded away from 0
};

/// Numerical check of the two directions of the equivalence between the
/// coupled system and the squared Bernoulli formulation.
EquivalenceReport check_equivalence(const WaveParameters& p, const SolutionPoint& pt, double tol);

/// Per-mode multipliers of the linearization at the trivial branch:
///   d_n(lambda) = 2 lambda^2 n coth(n k h) - 2 g / k - 2 lambda Upsilon / k,
/// plus the scalar block -1/k^2 acting on mu.
struct DiagonalOperator {
    std::vector<double> mode_multipliers;  ///< d_1 .. d_N
    double mu_multiplier = 0.0;
};
DiagonalOperator linearized_operator(const WaveParameters& p, double lambda);

/// Dense Frechet derivative with respect to the state (w-cosine modes, mu)
/// plus the lambda-direction column. Row order: F1 cosine modes 1..N, then F2.
/// Column order of d_state: a_1..a_N, mu.
struct JacobianF {
    Eigen::MatrixXd d_state;
    Eigen::VectorXd d_lambda;
};
JacobianF jacobian_F(const WaveParameters& p, double lambda, double mu, const PeriodicSeries& w);

/// Mixed second derivative at a trivial point in the (1, cos(n x)) direction:
/// the transversality factor 4 lambda n coth(n k h) - 2 Upsilon / k.
double transversality_factor(const WaveParameters& p, double lambda, int n);

struct BifurcationPoint {
    int n = 1;
    int sign = +1;  ///< +1 or -1
    double lambda_star = 0.0;
    double m_star = 0.0;
    double Q_star = 0.0;
};

/// All bifurcation points with mode index <= n_max, both signs.
std::vector<BifurcationPoint> bifurcation_points(const WaveParameters& p, int n_max);

/// Residual of the dispersion relation lambda^2 n k coth(n k h) = g + Upsilon lambda.
double dispersion_residual(const WaveParameters& p, int n, double lambda);

/// Head of the trivial (laminar) branch: Q = 2 g h + (m/h + Upsilon h/2)^2.
double trivial_head(const WaveParameters& p, double m);

/// Residual norm of the reduced irrotational equation (Upsilon = 0, k = 1)
/// after the shift that removes the average term. Vanishes with F1.
double irrotational_reduction_check(const WaveParameters& p, const SolutionPoint& pt);

}  // namespace vorwave
