#pragma once

#include <array>
#include <optional>
#include <vector>

#include "vorwave/governing.hpp"
#include "vorwave/periodic_series.hpp"

namespace vorwave {

struct FlowGridSpec {
    int nx = 256;  ///< periodic x nodes on [-pi, pi)
    int ny = 129;  ///< y rows from -kh (bed) to 0 (surface), both included
};

/// Physical reconstruction of a wave from its surface profile v (with [v] = h)
/// through the conformal map of the strip. Fields are assembled mode by mode,
/// spectral in x and analytic in y (sinh/cosh kernels in exponential-scaled
/// form, so large n*kh cannot overflow).
class FlowField {
public:
    FlowField(const WaveParameters& params, double m, double Q, const PeriodicSeries& v,
              FlowGridSpec grid = {});

    const WaveParameters& params() const { return params_; }
    double m() const { return m_; }
    double Q() const { return Q_; }
    int nx() const { return grid_.nx; }
    int ny() const { return grid_.ny; }
    double x(int i) const { return x_[static_cast<std::size_t>(i)]; }
    double y(int j) const { return y_[static_cast<std::size_t>(j)]; }

    // sampled fields, index (i, j) = (x node, y row)
    double V(int i, int j) const { return at(v_field_, i, j); }
    double U(int i, int j) const { return at(u_field_, i, j); }
    double zeta(int i, int j) const { return at(zeta_field_, i, j); }
    double psi(int i, int j) const { return at(psi_field_, i, j); }
    double vel_x(int i, int j) const { return at(psi_y_field_, i, j); }   ///< psi_Y
    double vel_y(int i, int j) const { return -at(psi_x_field_, i, j); }  ///< -psi_X
    double psi_Y(int i, int j) const { return at(psi_y_field_, i, j); }
    double psi_X(int i, int j) const { return at(psi_x_field_, i, j); }
    bool velocity_valid() const { return velocity_valid_; }

    // point evaluators (exact mode sums)
    double V_at(double x, double y) const;
    double V_x_at(double x, double y) const;
    double V_y_at(double x, double y) const;
    double U_at(double x, double y) const;
    double U_y_at(double x, double y) const;
    double zeta_at(double x, double y) const;
    double zeta_x_at(double x, double y) const;
    double zeta_y_at(double x, double y) const;
    double psi_at(double x, double y) const;    ///< xi = zeta - m + Upsilon V^2/2
    double psi_Y_at(double x, double y) const;  ///< horizontal relative velocity
    double psi_X_at(double x, double y) const;
    /// Hessian of xi in strip coordinates (equals the stream-function Hessian
    /// up to the positive conformal factor at stagnation points).
    std::array<double, 3> xi_hessian_at(double x, double y) const;  ///< {xx, xy, yy}

    double min_conformal_grad_sq() const;  ///< min of V_x^2 + V_y^2 over the grid closure
    double velocity_scale() const;

    // assembly diagnostics
    double cauchy_riemann_residual() const;
    double flux_residual() const;             ///< max_i |psi(top) - psi(bottom) - m|
    double surface_bernoulli_residual() const;  ///< max |grad psi|^2 + 2gV - Q on y = 0
    double boundary_residual() const;          ///< boundary rows of V and zeta
    double surface_zeta_y_residual() const;    ///< surface identity for zeta_y
    /// max 5-point discrete Laplacian over interior nodes of V, U, zeta.
    double discrete_laplacian_residual() const;

private:
    double at(const std::vector<double>& f, int i, int j) const {
        return f[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_.ny) +
                 static_cast<std::size_t>(j)];
    }
    void assemble();

    WaveParameters params_;
    double m_ = 0.0, Q_ = 0.0;
    PeriodicSeries v_;         // surface profile, [v] = h
    PeriodicSeries zeta_top_;  // m - Upsilon v^2 / 2
    FlowGridSpec grid_;
    std::vector<double> x_, y_;
    std::vector<double> v_field_, u_field_, zeta_field_, psi_field_;
    std::vector<double> vx_field_, vy_field_, zx_field_, zy_field_;
    std::vector<double> psi_y_field_, psi_x_field_;
    bool velocity_valid_ = true;
};

FlowField reconstruct_flow(const WaveParameters& params, double m, double Q,
                           const PeriodicSeries& v, FlowGridSpec grid = {});

struct StagnationPoint {
    double X = 0.0, Y = 0.0;  ///< physical location
    double x = 0.0, y = 0.0;  ///< strip location
    enum class Kind { center, saddle, degenerate } kind = Kind::degenerate;
    double grad_norm = 0.0;
};

struct CriticalSet {
    /// Critical-layer polylines in physical coordinates.
    std::vector<std::vector<std::array<double, 2>>> layers;
    std::vector<StagnationPoint> stagnation;
    /// Laminar flows with an interior critical line: every point of the line
    /// is a stagnation point, reported as a flag rather than a point list.
    bool degenerate_line = false;
    double degenerate_line_Y = 0.0;
};

CriticalSet critical_set(const FlowField& flow);

/// Flat-surface shear flow at surface speed lambda (m = lambda h - Upsilon h^2/2).
struct LaminarFlow {
    WaveParameters params;
    double lambda = 0.0;
    double m = 0.0;

    static LaminarFlow from_lambda(const WaveParameters& p, double lambda);
    double psi(double Y) const;
    double velocity_x(double Y) const;  ///< Upsilon Y + lambda - Upsilon h
    bool has_critical_line() const;
    double critical_line_Y() const;  ///< h - lambda / Upsilon
};

/// Critical-point criterion for the laminar flow bifurcating at lambda*_{n,sign}:
/// the closed-form threshold test against the equivalent surface-speed range test.
struct LaminarCriterion {
    bool threshold_test = false;  ///< vorticity sign and tanh(nkh)/(nkh) <= U^2 h/(g + U^2 h)
    bool range_test = false;      ///< 0 <= lambda*/Upsilon <= h
    double margin = 0.0;          ///< U^2 h/(g + U^2 h) - tanh(nkh)/(nkh)
    double lambda_star = 0.0;
};
LaminarCriterion laminar_critical_criterion(const WaveParameters& p, int n, int sign);

struct SurfaceCurve {
    std::vector<double> X, Y;
    bool is_graph = true;
    double crest = 0.0, trough = 0.0, amplitude = 0.0;
    double min_surface_ux = 0.0;
    /// x-intervals bracketing sign changes of U_x(x, 0) when not a graph
    std::vector<std::pair<double, double>> fold_intervals;
    double injectivity_margin = 0.0;  ///< min over (0, pi) of min(U, pi/k - U)
};
SurfaceCurve surface_curve(const WaveParameters& p, const SolutionPoint& pt, int n_samples);

/// First-order fields of the bifurcating wave v = h + s cos(nx) + o(s);
/// reference for validating solver output at small amplitude.
struct SmallAmplitudeReference {
    WaveParameters params;
    int n = 1;
    double lambda_star = 0.0;
    double s = 0.0;

    double V(double x, double y) const;
    double U(double x, double y) const;
    double zeta(double x, double y) const;
    double bed_velocity(double x) const;
};
SmallAmplitudeReference small_amplitude_reference(const WaveParameters& p,
                                                  const BifurcationPoint& bp, double s);

}  // namespace vorwave
