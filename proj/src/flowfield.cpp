#include "vorwave/flowfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace vorwave {

namespace {

constexpr double kPi = std::numbers::pi;

/// sinh(n(y+kh))/sinh(n kh) and cosh(n(y+kh))/sinh(n kh) in overflow-free form
/// (all exponentials have non-positive argument for y in [-kh, 0]).
struct VerticalKernel {
    double s, c;
};
VerticalKernel vertical_kernel(int n, double y, double kh) {
    const double eny = std::exp(n * y);
    const double em = std::exp(-2.0 * n * (y + kh));
    const double den = -std::expm1(-2.0 * n * kh);
    return {eny * (1.0 - em) / den, eny * (1.0 + em) / den};
}

double wrap_to_period(double x) {
    while (x >= kPi) x -= 2.0 * kPi;
    while (x < -kPi) x += 2.0 * kPi;
    return x;
}

}  // namespace

FlowField::FlowField(const WaveParameters& params, double m, double Q, const PeriodicSeries& v,
                     FlowGridSpec grid)
    : params_(params), m_(m), Q_(Q), v_(v), grid_(grid) {
    params_.validate();
    if (std::abs(v.mean() - params.h) > 1e-10 * std::max(1.0, params.h))
        throw std::invalid_argument("FlowField: surface profile must have mean h");
    if (grid_.nx < 4 || (grid_.nx & (grid_.nx - 1)) != 0)
        throw std::invalid_argument("FlowField: nx must be a power of two >= 4");
    if (grid_.ny < 2) throw std::invalid_argument("FlowField: ny must be >= 2");
    zeta_top_ = PeriodicSeries::constant(m_) - (params_.upsilon / 2.0) * product(v_, v_);
    assemble();
}

FlowField reconstruct_flow(const WaveParameters& params, double m, double Q,
                           const PeriodicSeries& v, FlowGridSpec grid) {
    return FlowField(params, m, Q, v, grid);
}

void FlowField::assemble() {
    const int nx = grid_.nx, ny = grid_.ny;
    const double kh = params_.k * params_.h;
    const double k = params_.k;
    const double ups = params_.upsilon;

    x_.resize(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) x_[static_cast<std::size_t>(i)] = -kPi + 2.0 * kPi * i / nx;
    y_.resize(static_cast<std::size_t>(ny));
    for (int j = 0; j < ny; ++j) y_[static_cast<std::size_t>(j)] = -kh + kh * j / (ny - 1);

    const std::size_t total = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    for (auto* f : {&v_field_, &u_field_, &zeta_field_, &psi_field_, &vx_field_, &vy_field_,
                    &zx_field_, &zy_field_, &psi_y_field_, &psi_x_field_})
        f->assign(total, 0.0);

    const PeriodicSeries w = v_.mean_free();
    const int nv = w.modes();
    const int nz = zeta_top_.modes();
    const int nmax = std::max(nv, nz);
    const double zbar = zeta_top_.mean();

    std::vector<double> ker_s(static_cast<std::size_t>(nmax) + 1),
        ker_c(static_cast<std::size_t>(nmax) + 1);
    for (int j = 0; j < ny; ++j) {
        const double y = y_[static_cast<std::size_t>(j)];
        for (int n = 1; n <= nmax; ++n) {
            const VerticalKernel vk = vertical_kernel(n, y, kh);
            ker_s[static_cast<std::size_t>(n)] = vk.s;
            ker_c[static_cast<std::size_t>(n)] = vk.c;
        }
        for (int i = 0; i < nx; ++i) {
            const double x = x_[static_cast<std::size_t>(i)];
            const double c1 = std::cos(x), s1 = std::sin(x);
            double cn = c1, sn = s1;
            double V = (y + kh) / k, U = x / k, Vx = 0.0, Vy = 1.0 / k;
            double Z = (y + kh) * zbar / kh, Zx = 0.0, Zy = zbar / kh;
            for (int n = 1; n <= nmax; ++n) {
                const double ks = ker_s[static_cast<std::size_t>(n)];
                const double kc = ker_c[static_cast<std::size_t>(n)];
                if (n <= nv) {
                    const double a = w.cos_coeff(n), b = w.sin_coeff(n);
                    const double even = a * cn + b * sn;   // cos-type combination
                    const double odd = a * sn - b * cn;    // conjugate combination
                    V += even * ks;
                    U += odd * kc;
                    Vx += n * (b * cn - a * sn) * ks;
                    Vy += n * even * kc;
                }
                if (n <= nz) {
                    const double a = zeta_top_.cos_coeff(n), b = zeta_top_.sin_coeff(n);
                    const double even = a * cn + b * sn;
                    Z += even * ks;
                    Zx += n * (b * cn - a * sn) * ks;
                    Zy += n * even * kc;
                }
                const double cnext = cn * c1 - sn * s1;
                sn = sn * c1 + cn * s1;
                cn = cnext;
            }
            const std::size_t idx =
                static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(j);
            v_field_[idx] = V;
            u_field_[idx] = U;
            zeta_field_[idx] = Z;
            vx_field_[idx] = Vx;
            vy_field_[idx] = Vy;
            zx_field_[idx] = Zx;
            zy_field_[idx] = Zy;
            psi_field_[idx] = Z - m_ + 0.5 * ups * V * V;
            const double q = Vx * Vx + Vy * Vy;
            if (q > 1e-14 / (k * k)) {
                psi_y_field_[idx] = (Vx * Zx + Vy * Zy) / q + ups * V;
                psi_x_field_[idx] = (Vy * Zx - Vx * Zy) / q;
            } else {
                psi_y_field_[idx] = std::numeric_limits<double>::quiet_NaN();
                psi_x_field_[idx] = std::numeric_limits<double>::quiet_NaN();
                velocity_valid_ = false;
            }
        }
    }
}

double FlowField::V_at(double x, double y) const {
    const double kh = params_.k * params_.h;
    const PeriodicSeries w = v_.mean_free();
    double acc = (y + kh) / params_.k;
    for (int n = 1; n <= w.modes(); ++n)
        acc += (w.cos_coeff(n) * std::cos(n * x) + w.sin_coeff(n) * std::sin(n * x)) *
               vertical_kernel(n, y, kh).s;
    return acc;
}

double FlowField::V_x_at(double x, double y) const {
    const double kh = params_.k * params_.h;
    const PeriodicSeries w = v_.mean_free();
    double acc = 0.0;
    for (int n = 1; n <= w.modes(); ++n)
        acc += n * (w.sin_coeff(n) * std::cos(n * x) - w.cos_coeff(n) * std::sin(n * x)) *
               vertical_kernel(n, y, kh).s;
    return acc;
}

double FlowField::V_y_at(double x, double y) const {
    const double kh = params_.k * params_.h;
    const PeriodicSeries w = v_.mean_free();
    double acc = 1.0 / params_.k;
    for (int n = 1; n <= w.modes(); ++n)
        acc += n * (w.cos_coeff(n) * std::cos(n * x) + w.sin_coeff(n) * std::sin(n * x)) *
               vertical_kernel(n, y, kh).c;
    return acc;
}

double FlowField::U_at(double x, double y) const {
    const double kh = params_.k * params_.h;
    const PeriodicSeries w = v_.mean_free();
    double acc = x / params_.k;
    for (int n = 1; n <= w.modes(); ++n)
        acc += (w.cos_coeff(n) * std::sin(n * x) - w.sin_coeff(n) * std::cos(n * x)) *
               vertical_kernel(n, y, kh).c;
    return acc;
}

double FlowField::U_y_at(double x, double y) const {
    const double kh = params_.k * params_.h;
    const PeriodicSeries w = v_.mean_free();
    double acc = 0.0;
    for (int n = 1; n <= w.modes(); ++n)
        acc += n * (w.cos_coeff(n) * std::sin(n * x) - w.sin_coeff(n) * std::cos(n * x)) *
               vertical_kernel(n, y, kh).s;
    return acc;
}

double FlowField::zeta_at(double x, double y) const {
    const double kh = params_.k * params_.h;
    double acc = (y + kh) * zeta_top_.mean() / kh;
    for (int n = 1; n <= zeta_top_.modes(); ++n)
        acc += (zeta_top_.cos_coeff(n) * std::cos(n * x) + zeta_top_.sin_coeff(n) * std::sin(n * x)) *
               vertical_kernel(n, y, kh).s;
    return acc;
}

double FlowField::zeta_x_at(double x, double y) const {
    const double kh = params_.k * params_.h;
    double acc = 0.0;
    for (int n = 1; n <= zeta_top_.modes(); ++n)
        acc += n *
               (zeta_top_.sin_coeff(n) * std::cos(n * x) - zeta_top_.cos_coeff(n) * std::sin(n * x)) *
               vertical_kernel(n, y, kh).s;
    return acc;
}

double FlowField::zeta_y_at(double x, double y) const {
    const double kh = params_.k * params_.h;
    double acc = zeta_top_.mean() / kh;
    for (int n = 1; n <= zeta_top_.modes(); ++n)
        acc += n *
               (zeta_top_.cos_coeff(n) * std::cos(n * x) + zeta_top_.sin_coeff(n) * std::sin(n * x)) *
               vertical_kernel(n, y, kh).c;
    return acc;
}

double FlowField::psi_at(double x, double y) const {
    const double V = V_at(x, y);
    return zeta_at(x, y) - m_ + 0.5 * params_.upsilon * V * V;
}

double FlowField::psi_Y_at(double x, double y) const {
    const double Vx = V_x_at(x, y), Vy = V_y_at(x, y);
    const double q = Vx * Vx + Vy * Vy;
    return (Vx * zeta_x_at(x, y) + Vy * zeta_y_at(x, y)) / q + params_.upsilon * V_at(x, y);
}

double FlowField::psi_X_at(double x, double y) const {
    const double Vx = V_x_at(x, y), Vy = V_y_at(x, y);
    const double q = Vx * Vx + Vy * Vy;
    return (Vx * zeta_y_at(x, y) - Vy * zeta_x_at(x, y)) / q * -1.0;
}

std::array<double, 3> FlowField::xi_hessian_at(double x, double y) const {
    const double kh = params_.k * params_.h;
    const PeriodicSeries w = v_.mean_free();
    double vxx = 0.0, vxy = 0.0;
    for (int n = 1; n <= w.modes(); ++n) {
        const VerticalKernel vk = vertical_kernel(n, y, kh);
        const double a = w.cos_coeff(n), b = w.sin_coeff(n);
        vxx -= n * n * (a * std::cos(n * x) + b * std::sin(n * x)) * vk.s;
        vxy += n * n * (b * std::cos(n * x) - a * std::sin(n * x)) * vk.c;
    }
    double zxx = 0.0, zxy = 0.0;
    for (int n = 1; n <= zeta_top_.modes(); ++n) {
        const VerticalKernel vk = vertical_kernel(n, y, kh);
        const double a = zeta_top_.cos_coeff(n), b = zeta_top_.sin_coeff(n);
        zxx -= n * n * (a * std::cos(n * x) + b * std::sin(n * x)) * vk.s;
        zxy += n * n * (b * std::cos(n * x) - a * std::sin(n * x)) * vk.c;
    }
    const double ups = params_.upsilon;
    const double V = V_at(x, y), Vx = V_x_at(x, y), Vy = V_y_at(x, y);
    const double xi_xx = zxx + ups * (Vx * Vx + V * vxx);
    const double xi_xy = zxy + ups * (Vx * Vy + V * vxy);
    const double xi_yy = -zxx + ups * (Vy * Vy - V * vxx);
    return {xi_xx, xi_xy, xi_yy};
}

double FlowField::min_conformal_grad_sq() const {
    double mn = std::numeric_limits<double>::max();
    for (std::size_t idx = 0; idx < vx_field_.size(); ++idx) {
        const double q = vx_field_[idx] * vx_field_[idx] + vy_field_[idx] * vy_field_[idx];
        mn = std::min(mn, q);
    }
    return mn;
}

double FlowField::velocity_scale() const {
    double s = std::sqrt(params_.g * params_.h) * 1e-3;
    for (std::size_t idx = 0; idx < psi_y_field_.size(); ++idx) {
        if (std::isfinite(psi_y_field_[idx])) s = std::max(s, std::abs(psi_y_field_[idx]));
        if (std::isfinite(psi_x_field_[idx])) s = std::max(s, std::abs(psi_x_field_[idx]));
    }
    return s;
}

double FlowField::cauchy_riemann_residual() const {
    const int nx = grid_.nx, ny = grid_.ny;
    const int keep = nx / 2 - 1;
    double res = 0.0;
    std::vector<double> row(static_cast<std::size_t>(nx));
    for (int j = 0; j < ny; ++j) {
        // U_x from spectral differentiation of the periodic part of the U row
        for (int i = 0; i < nx; ++i)
            row[static_cast<std::size_t>(i)] = U(i, j) - x(i) / params_.k;
        // fit() expects samples at x_j = 2 pi j / m; our row starts at -pi,
        // which is the same node set cyclically shifted by half a period.
        std::vector<double> shifted(row.size());
        for (int i = 0; i < nx; ++i)
            shifted[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>((i + nx / 2) % nx)];
        PeriodicSeries useries = PeriodicSeries::fit(shifted, keep);
        const std::vector<double> dux = derivative(useries).sample(nx);
        for (int i = 0; i < nx; ++i) {
            const double ux = dux[static_cast<std::size_t>((i + nx / 2) % nx)] + 1.0 / params_.k;
            res = std::max(res, std::abs(ux - vy_field_[static_cast<std::size_t>(i) *
                                                            static_cast<std::size_t>(ny) +
                                                        static_cast<std::size_t>(j)]));
        }
        // V_x spectral against analytic U_y
        for (int i = 0; i < nx; ++i)
            shifted[static_cast<std::size_t>(i)] = V((i + nx / 2) % nx, j);
        PeriodicSeries vseries = PeriodicSeries::fit(shifted, keep);
        const std::vector<double> dvx = derivative(vseries).sample(nx);
        for (int i = 0; i < nx; ++i) {
            const double vx = dvx[static_cast<std::size_t>((i + nx / 2) % nx)];
            res = std::max(res, std::abs(U_y_at(x(i), y(j)) + vx));
        }
    }
    return res;
}

double FlowField::flux_residual() const {
    double res = 0.0;
    for (int i = 0; i < grid_.nx; ++i)
        res = std::max(res, std::abs(psi(i, grid_.ny - 1) - psi(i, 0) - m_));
    return res;
}

double FlowField::surface_bernoulli_residual() const {
    double res = 0.0;
    const int top = grid_.ny - 1;
    for (int i = 0; i < grid_.nx; ++i) {
        const double py = psi_Y(i, top), px = psi_X(i, top);
        res = std::max(res, std::abs(py * py + px * px + 2.0 * params_.g * V(i, top) - Q_));
    }
    return res;
}

double FlowField::boundary_residual() const {
    double res = 0.0;
    const int top = grid_.ny - 1;
    for (int i = 0; i < grid_.nx; ++i) {
        res = std::max(res, std::abs(V(i, 0)));
        res = std::max(res, std::abs(V(i, top) - v_(x(i))));
        res = std::max(res, std::abs(zeta(i, 0)));
        res = std::max(res, std::abs(zeta(i, top) - zeta_top_(x(i))));
    }
    return res;
}

double FlowField::surface_zeta_y_residual() const {
    const StripDepth d = params_.strip_depth();
    const double kh = d.d;
    const PeriodicSeries vvp = product(v_, derivative(v_));
    const PeriodicSeries cvvp = conjugation(vvp.mean_free(), d);
    const double avg_v2 = product(v_, v_).mean();
    double res = 0.0;
    const int top = grid_.ny - 1;
    for (int i = 0; i < grid_.nx; ++i) {
        const double ref = m_ / kh - params_.upsilon * avg_v2 / (2.0 * kh) -
                           params_.upsilon * cvvp(x(i));
        res = std::max(res, std::abs(zy_field_[static_cast<std::size_t>(i) *
                                                   static_cast<std::size_t>(grid_.ny) +
                                               static_cast<std::size_t>(top)] -
                                     ref));
    }
    return res;
}

double FlowField::discrete_laplacian_residual() const {
    const int nx = grid_.nx, ny = grid_.ny;
    const double dx = 2.0 * kPi / nx;
    const double dy = y(1) - y(0);
    const double shift = 2.0 * kPi / params_.k;  // U jumps by a period across the seam
    double res = 0.0;
    for (int i = 0; i < nx; ++i) {
        const int il = (i + nx - 1) % nx, ir = (i + 1) % nx;
        const double ul_shift = (i == 0) ? -shift : 0.0;
        const double ur_shift = (i == nx - 1) ? shift : 0.0;
        for (int j = 1; j + 1 < ny; ++j) {
            const double lv = (V(ir, j) + V(il, j) - 2.0 * V(i, j)) / (dx * dx) +
                              (V(i, j + 1) + V(i, j - 1) - 2.0 * V(i, j)) / (dy * dy);
            const double lu =
                (U(ir, j) + ur_shift + U(il, j) + ul_shift - 2.0 * U(i, j)) / (dx * dx) +
                (U(i, j + 1) + U(i, j - 1) - 2.0 * U(i, j)) / (dy * dy);
            const double lz = (zeta(ir, j) + zeta(il, j) - 2.0 * zeta(i, j)) / (dx * dx) +
                              (zeta(i, j + 1) + zeta(i, j - 1) - 2.0 * zeta(i, j)) / (dy * dy);
            res = std::max({res, std::abs(lv), std::abs(lu), std::abs(lz)});
        }
    }
    return res;
}

namespace {

/// Bisection for a sign change of f along the segment p0 -> p1.
template <typename F>
std::array<double, 2> refine_edge_zero(const F& f, std::array<double, 2> p0,
                                       std::array<double, 2> p1, double f0) {
    for (int it = 0; it < 60; ++it) {
        const std::array<double, 2> mid{0.5 * (p0[0] + p1[0]), 0.5 * (p0[1] + p1[1])};
        const double fm = f(mid[0], mid[1]);
        if ((fm < 0.0) == (f0 < 0.0)) {
            p0 = mid;
            f0 = fm;
        } else {
            p1 = mid;
        }
    }
    return {0.5 * (p0[0] + p1[0]), 0.5 * (p0[1] + p1[1])};
}

}  // namespace

CriticalSet critical_set(const FlowField& flow) {
    CriticalSet out;
    const WaveParameters& p = flow.params();
    const double kh = p.k * p.h;

    // laminar flows are handled in closed form (the critical line degenerates:
    // every point on it is a stagnation point)
    bool laminar = true;
    for (int i = 0; i < flow.nx() && laminar; ++i)
        laminar = std::abs(flow.V(i, flow.ny() - 1) - p.h) <= 1e-12 * std::max(1.0, p.h);
    if (laminar) {
        const double lambda = flow.m() / p.h + p.upsilon * p.h / 2.0;
        LaminarFlow lam = LaminarFlow::from_lambda(p, lambda);
        lam.m = flow.m();
        if (lam.has_critical_line()) {
            out.degenerate_line = true;
            out.degenerate_line_Y = lam.critical_line_Y();
            std::vector<std::array<double, 2>> line;
            for (int i = 0; i < flow.nx(); ++i)
                line.push_back({flow.x(i) / p.k, out.degenerate_line_Y});
            out.layers.push_back(std::move(line));
        }
        return out;
    }

    const auto psi_y = [&flow](double x, double y) { return flow.psi_Y_at(x, y); };
    const auto psi_x = [&flow](double x, double y) { return flow.psi_X_at(x, y); };

    // critical layer: marching squares over the strip grid
    const int nx = flow.nx(), ny = flow.ny();
    std::vector<std::array<std::array<double, 2>, 2>> segments;
    std::vector<std::array<double, 2>> seeds;
    for (int i = 0; i < nx; ++i) {
        const int ir = (i + 1) % nx;
        const double x0 = flow.x(i);
        const double x1 = (i + 1 < nx) ? flow.x(i + 1) : flow.x(0) + 2.0 * kPi;
        for (int j = 0; j + 1 < ny; ++j) {
            const double y0 = flow.y(j), y1 = flow.y(j + 1);
            const double f00 = flow.psi_Y(i, j), f10 = flow.psi_Y(ir, j);
            const double f01 = flow.psi_Y(i, j + 1), f11 = flow.psi_Y(ir, j + 1);
            if (!std::isfinite(f00) || !std::isfinite(f10) || !std::isfinite(f01) ||
                !std::isfinite(f11))
                continue;
            std::vector<std::array<double, 2>> pts;
            if ((f00 < 0) != (f10 < 0))
                pts.push_back(refine_edge_zero(psi_y, {x0, y0}, {x1, y0}, f00));
            if ((f10 < 0) != (f11 < 0))
                pts.push_back(refine_edge_zero(psi_y, {x1, y0}, {x1, y1}, f10));
            if ((f01 < 0) != (f11 < 0))
                pts.push_back(refine_edge_zero(psi_y, {x0, y1}, {x1, y1}, f01));
            if ((f00 < 0) != (f01 < 0))
                pts.push_back(refine_edge_zero(psi_y, {x0, y0}, {x0, y1}, f00));
            if (pts.size() == 2) {
                segments.push_back({pts[0], pts[1]});
            } else if (pts.size() == 4) {
                // ambiguous saddle cell: split by the center value
                const double fc = psi_y(0.5 * (x0 + x1), 0.5 * (y0 + y1));
                if ((fc < 0) == (f00 < 0)) {
                    segments.push_back({pts[0], pts[1]});
                    segments.push_back({pts[2], pts[3]});
                } else {
                    segments.push_back({pts[0], pts[3]});
                    segments.push_back({pts[1], pts[2]});
                }
            }
            // stagnation-point seeds: both components change sign in the cell
            const double g00 = flow.psi_X(i, j), g10 = flow.psi_X(ir, j);
            const double g01 = flow.psi_X(i, j + 1), g11 = flow.psi_X(ir, j + 1);
            const bool sy = ((f00 < 0) != (f10 < 0)) || ((f00 < 0) != (f01 < 0)) ||
                            ((f00 < 0) != (f11 < 0));
            const bool sx = ((g00 < 0) != (g10 < 0)) || ((g00 < 0) != (g01 < 0)) ||
                            ((g00 < 0) != (g11 < 0));
            if (sy && sx) seeds.push_back({0.5 * (x0 + x1), 0.5 * (y0 + y1)});
        }
    }

    // chain segments into polylines by endpoint matching
    const double chain_tol = 1e-7 * (2.0 * kPi + kh);
    std::vector<bool> used(segments.size(), false);
    const auto close = [chain_tol](const std::array<double, 2>& a, const std::array<double, 2>& b) {
        return std::hypot(a[0] - b[0], a[1] - b[1]) < chain_tol;
    };
    for (std::size_t i0 = 0; i0 < segments.size(); ++i0) {
        if (used[i0]) continue;
        used[i0] = true;
        std::vector<std::array<double, 2>> chain{segments[i0][0], segments[i0][1]};
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t j = 0; j < segments.size(); ++j) {
                if (used[j]) continue;
                if (close(chain.back(), segments[j][0])) {
                    chain.push_back(segments[j][1]);
                } else if (close(chain.back(), segments[j][1])) {
                    chain.push_back(segments[j][0]);
                } else if (close(chain.front(), segments[j][0])) {
                    chain.insert(chain.begin(), segments[j][1]);
                } else if (close(chain.front(), segments[j][1])) {
                    chain.insert(chain.begin(), segments[j][0]);
                } else {
                    continue;
                }
                used[j] = true;
                grew = true;
            }
        }
        std::vector<std::array<double, 2>> phys;
        phys.reserve(chain.size());
        for (const auto& q : chain) phys.push_back({flow.U_at(q[0], q[1]), flow.V_at(q[0], q[1])});
        out.layers.push_back(std::move(phys));
    }

    // Newton refinement of stagnation points on (psi_Y, psi_X)
    const double vscale = flow.velocity_scale();
    for (const auto& seed : seeds) {
        double xx = seed[0], yy = seed[1];
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            const double fy = psi_y(xx, yy), fx = psi_x(xx, yy);
            if (!std::isfinite(fy) || !std::isfinite(fx)) break;
            if (std::hypot(fy, fx) <= 1e-11 * vscale) {
                ok = true;
                break;
            }
            const double hx = 1e-7 * (1.0 + std::abs(xx));
            const double hy = 1e-7 * kh;
            const double a11 = (psi_y(xx + hx, yy) - psi_y(xx - hx, yy)) / (2.0 * hx);
            const double a12 = (psi_y(xx, yy + hy) - psi_y(xx, yy - hy)) / (2.0 * hy);
            const double a21 = (psi_x(xx + hx, yy) - psi_x(xx - hx, yy)) / (2.0 * hx);
            const double a22 = (psi_x(xx, yy + hy) - psi_x(xx, yy - hy)) / (2.0 * hy);
            const double det = a11 * a22 - a12 * a21;
            if (std::abs(det) < 1e-30) break;
            xx -= (a22 * fy - a12 * fx) / det;
            yy -= (-a21 * fy + a11 * fx) / det;
            if (yy < -kh - 0.05 * kh || yy > 0.05 * kh) break;
        }
        if (!ok) continue;
        yy = std::clamp(yy, -kh, 0.0);
        xx = wrap_to_period(xx);
        bool dup = false;
        for (const auto& sp : out.stagnation) {
            double dxp = std::abs(sp.x - xx);
            dxp = std::min(dxp, 2.0 * kPi - dxp);
            if (std::hypot(dxp, sp.y - yy) < 1e-4 * (2.0 * kPi + kh)) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        StagnationPoint sp;
        sp.x = xx;
        sp.y = yy;
        sp.X = flow.U_at(xx, yy);
        sp.Y = flow.V_at(xx, yy);
        sp.grad_norm = std::hypot(psi_y(xx, yy), psi_x(xx, yy));
        const std::array<double, 3> hess = flow.xi_hessian_at(xx, yy);
        const double det = hess[0] * hess[2] - hess[1] * hess[1];
        const double scale = hess[0] * hess[0] + 2.0 * hess[1] * hess[1] + hess[2] * hess[2];
        if (std::abs(det) <= 1e-10 * std::max(scale, 1e-300))
            sp.kind = StagnationPoint::Kind::degenerate;
        else
            sp.kind = det > 0.0 ? StagnationPoint::Kind::center : StagnationPoint::Kind::saddle;
        out.stagnation.push_back(sp);
    }
    std::sort(out.stagnation.begin(), out.stagnation.end(),
              [](const StagnationPoint& a, const StagnationPoint& b) { return a.x < b.x; });
    return out;
}

LaminarFlow LaminarFlow::from_lambda(const WaveParameters& p, double lambda) {
    LaminarFlow lam;
    lam.params = p;
    lam.lambda = lambda;
    lam.m = p.h * lambda - p.upsilon * p.h * p.h / 2.0;
    return lam;
}

double LaminarFlow::psi(double Y) const {
    const double ups = params.upsilon, h = params.h;
    return 0.5 * ups * Y * Y + (lambda - ups * h) * Y - lambda * h + 0.5 * ups * h * h;
}

double LaminarFlow::velocity_x(double Y) const {
    return params.upsilon * Y + lambda - params.upsilon * params.h;
}

bool LaminarFlow::has_critical_line() const {
    if (params.upsilon == 0.0) return false;
    const double r = lambda / params.upsilon;
    return r >= 0.0 && r <= params.h;
}

double LaminarFlow::critical_line_Y() const { return params.h - lambda / params.upsilon; }

LaminarCriterion laminar_critical_criterion(const WaveParameters& p, int n, int sign) {
    if (n < 1) throw std::invalid_argument("laminar_critical_criterion: n must be >= 1");
    LaminarCriterion rep;
    const std::vector<BifurcationPoint> bps = bifurcation_points(p, n);
    for (const auto& bp : bps)
        if (bp.n == n && bp.sign == sign) rep.lambda_star = bp.lambda_star;

    const double nkh = n * p.k * p.h;
    const double u2h = p.upsilon * p.upsilon * p.h;
    rep.margin = u2h / (p.g + u2h) - std::tanh(nkh) / nkh;
    const bool vort_sign_ok = (sign < 0) ? (p.upsilon < 0.0) : (p.upsilon > 0.0);
    rep.threshold_test = vort_sign_ok && rep.margin >= 0.0;

    if (p.upsilon != 0.0) {
        const double r = rep.lambda_star / p.upsilon;
        rep.range_test = r >= 0.0 && r <= p.h;
    }
    return rep;
}

SurfaceCurve surface_curve(const WaveParameters& p, const SolutionPoint& pt, int n_samples) {
    if (n_samples < 8) throw std::invalid_argument("surface_curve: need at least 8 samples");
    SurfaceCurve out;
    const StripDepth d = p.strip_depth();
    const PeriodicSeries v = pt.surface(p);
    const PeriodicSeries cw = conjugation(v.mean_free(), d);       // C(v - h)
    const PeriodicSeries ux = conjugation(derivative(v), d);       // C(v'), add 1/k below

    out.X.resize(static_cast<std::size_t>(n_samples));
    out.Y.resize(static_cast<std::size_t>(n_samples));
    out.min_surface_ux = std::numeric_limits<double>::max();
    double prev_ux = 0.0, prev_x = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double x = -kPi + 2.0 * kPi * i / n_samples;
        out.X[static_cast<std::size_t>(i)] = x / p.k + cw(x);
        out.Y[static_cast<std::size_t>(i)] = v(x);
        const double uxv = 1.0 / p.k + ux(x);
        out.min_surface_ux = std::min(out.min_surface_ux, uxv);
        if (i > 0 && (uxv < 0.0) != (prev_ux < 0.0)) out.fold_intervals.emplace_back(prev_x, x);
        prev_ux = uxv;
        prev_x = x;
    }
    out.is_graph = out.min_surface_ux > 0.0;
    out.crest = v(0.0);
    out.trough = v(kPi);
    out.amplitude = 0.5 * (out.crest - out.trough);

    const int mfine = std::max(n_samples, 8 * std::max(1, v.modes()));
    out.injectivity_margin = std::numeric_limits<double>::max();
    for (int i = 1; i < mfine; ++i) {
        const double x = kPi * i / mfine;
        const double u = x / p.k + cw(x);
        out.injectivity_margin = std::min({out.injectivity_margin, u, kPi / p.k - u});
    }
    return out;
}

SmallAmplitudeReference small_amplitude_reference(const WaveParameters& p,
                                                  const BifurcationPoint& bp, double s) {
    SmallAmplitudeReference ref;
    ref.params = p;
    ref.n = bp.n;
    ref.lambda_star = bp.lambda_star;
    ref.s = s;
    return ref;
}

double SmallAmplitudeReference::V(double x, double y) const {
    const double kh = params.k * params.h;
    return (y + kh) / params.k + s * std::cos(n * x) * vertical_kernel(n, y, kh).s;
}

double SmallAmplitudeReference::U(double x, double y) const {
    const double kh = params.k * params.h;
    return x / params.k + s * std::sin(n * x) * vertical_kernel(n, y, kh).c;
}

double SmallAmplitudeReference::zeta(double x, double y) const {
    const double kh = params.k * params.h;
    const double zbar = params.h * (lambda_star - params.upsilon * params.h);
    return (y + kh) * zbar / kh -
           params.upsilon * params.h * s * std::cos(n * x) * vertical_kernel(n, y, kh).s;
}

double SmallAmplitudeReference::bed_velocity(double x) const {
    const double kh = params.k * params.h;
    return (lambda_star - params.upsilon * params.h) -
           s * params.k * n * lambda_star * std::cos(n * x) / std::sinh(n * kh);
}

}  // namespace vorwave
