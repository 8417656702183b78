#include "vorwave/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vorwave/fft.hpp"

namespace vorwave {

namespace {
constexpr double kMeanZeroTol = 1e-13;
}

StripDepth::StripDepth(double depth) : d(depth) {
    if (!(depth > 1e-8))
        throw std::invalid_argument("StripDepth: depth must be positive (> 1e-8)");
}

double coth_nd(double nd) {
    return 1.0 + 2.0 / std::expm1(2.0 * nd);
}

PeriodicSeries conjugation(const PeriodicSeries& w, StripDepth d) {
    if (std::abs(w.mean()) > kMeanZeroTol * std::max(1.0, w.coeff_inf_norm()))
        throw std::invalid_argument("conjugation: input must have zero mean");
    PeriodicSeries out(w.modes());
    for (int n = 1; n <= w.modes(); ++n) {
        const double c = coth_nd(n * d.d);
        out.set_sin(n, c * w.cos_coeff(n));
        out.set_cos(n, -c * w.sin_coeff(n));
    }
    return out;
}

PeriodicSeries dirichlet_neumann(const PeriodicSeries& w, StripDepth d) {
    PeriodicSeries out = conjugation(derivative(w), d);
    out.set_mean(w.mean() / d.d);
    return out;
}

PeriodicSeries derivative(const PeriodicSeries& f) {
    PeriodicSeries out(f.modes());
    for (int n = 1; n <= f.modes(); ++n) {
        out.set_cos(n, n * f.sin_coeff(n));
        out.set_sin(n, -n * f.cos_coeff(n));
    }
    return out;
}

PeriodicSeries product(const PeriodicSeries& f, const PeriodicSeries& g) {
    const int deg = f.modes() + g.modes();
    if (deg == 0) return PeriodicSeries::constant(f.mean() * g.mean());
    const int m = static_cast<int>(next_pow2(static_cast<std::size_t>(2 * deg + 1)));
    const std::vector<double> fv = f.sample(m);
    const std::vector<double> gv = g.sample(m);
    std::vector<double> pv(fv.size());
    for (std::size_t j = 0; j < fv.size(); ++j) pv[j] = fv[j] * gv[j];
    return PeriodicSeries::fit(pv, deg);
}

PeriodicSeries commutator(const PeriodicSeries& f, const PeriodicSeries& g, StripDepth d) {
    if (std::abs(g.mean()) > kMeanZeroTol * std::max(1.0, g.coeff_inf_norm()))
        throw std::invalid_argument("commutator: g must have zero mean");
    const PeriodicSeries fg = product(f, g);
    return product(f, conjugation(g, d)) - conjugation(fg.mean_free(), d);
}

PeriodicSeries conjugation_via_kernel(const PeriodicSeries& w, StripDepth d, int kernel_modes) {
    if (std::abs(w.mean()) > kMeanZeroTol * std::max(1.0, w.coeff_inf_norm()))
        throw std::invalid_argument("conjugation_via_kernel: input must have zero mean");
    if (kernel_modes < w.modes())
        throw std::invalid_argument("conjugation_via_kernel: kernel truncation below input degree");

    // Flat-strip part: the standard periodic Hilbert transform (coth -> 1).
    PeriodicSeries flat(w.modes());
    for (int n = 1; n <= w.modes(); ++n) {
        flat.set_sin(n, w.cos_coeff(n));
        flat.set_cos(n, -w.sin_coeff(n));
    }

    // Smooth correction: quadrature convolution with kappa_d. The trapezoid
    // rule on m uniform nodes is exact for trigonometric degree < m.
    const int deg = kernel_modes + w.modes();
    const int m = static_cast<int>(next_pow2(static_cast<std::size_t>(2 * deg + 1)));
    std::vector<double> kernel(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const double t = 2.0 * std::numbers::pi * j / m;
        double acc = 0.0;
        for (int n = kernel_modes; n >= 1; --n)
            acc += (4.0 / std::expm1(2.0 * n * d.d)) * std::sin(n * t);
        kernel[static_cast<std::size_t>(j)] = acc;
    }
    const std::vector<double> wv = w.sample(m);
    std::vector<double> conv(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j)
            acc += kernel[static_cast<std::size_t>((i - j + m) % m)] * wv[static_cast<std::size_t>(j)];
        conv[static_cast<std::size_t>(i)] = acc / m;  // (1/2pi) * (2pi/m) * sum
    }
    return flat + PeriodicSeries::fit(conv, w.modes());
}

PeriodicSeries dh_conjugation_derivative(const PeriodicSeries& f, double k, double h) {
    StripDepth d(k * h);
    PeriodicSeries out(f.modes());
    for (int n = 1; n <= f.modes(); ++n) {
        const double c = coth_nd(n * d.d);
        const double factor = k * n * n * (1.0 - c * c);
        out.set_cos(n, factor * f.cos_coeff(n));
        out.set_sin(n, factor * f.sin_coeff(n));
    }
    return out;
}

}  // namespace vorwave
