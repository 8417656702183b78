#pragma once

#include "vorwave/periodic_series.hpp"

namespace vorwave {

/// Conformal strip depth parameter d (d = k*h in every governing use).
struct StripDepth {
    double d;
    explicit StripDepth(double depth);
};

/// coth(n d) evaluated as 1 + 2/(e^{2nd} - 1); stable for large arguments.
double coth_nd(double nd);

/// Periodic conjugation (Hilbert transform for a strip of depth d):
///   a_n cos(nx) -> a_n coth(nd) sin(nx),  b_n sin(nx) -> -b_n coth(nd) cos(nx).
/// Requires a mean-zero input.
PeriodicSeries conjugation(const PeriodicSeries& w, StripDepth d);

/// Dirichlet-Neumann operator for the strip: G_d(w) = [w]/d + C_d((w - [w])').
PeriodicSeries dirichlet_neumann(const PeriodicSeries& w, StripDepth d);

/// Termwise differentiation.
PeriodicSeries derivative(const PeriodicSeries& f);

/// Pointwise product on a dealiased grid; exact for the full combined degree.
PeriodicSeries product(const PeriodicSeries& f, const PeriodicSeries& g);

/// f * C_d(g) - C_d(fg - [fg]) for mean-zero g. One derivative smoother than
/// either term; the compactness mechanism of the global theory lives here.
PeriodicSeries commutator(const PeriodicSeries& f, const PeriodicSeries& g, StripDepth d);

/// Conjugation through the splitting C_d = C + K_d: flat Hilbert multiplier
/// plus quadrature convolution with the smooth kernel
///   kappa_d(t) = sum_{n>=1} 2 lambda_n sin(nt),  lambda_n = 2/(e^{2nd}-1),
/// truncated at kernel_modes terms. Independent cross-check path for
/// conjugation(); requires kernel_modes >= w.modes().
PeriodicSeries conjugation_via_kernel(const PeriodicSeries& w, StripDepth d, int kernel_modes);

/// d/dh of the map f -> C_{kh}(f'): mode n scales by k n^2 (1 - coth^2(nkh)).
PeriodicSeries dh_conjugation_derivative(const PeriodicSeries& f, double k, double h);

}  // namespace vorwave
