#pragma once

#include "vorwave/governing.hpp"
#include "vorwave/periodic_series.hpp"

namespace vorwave {

/// Argument of the energy functional: the pair (w, h) with [w] = 0 and h > 0,
/// together with the flux/head parameters. The depth h is an independent
/// coordinate here (params.h is ignored; g, Upsilon, k are taken from params).
struct VariationalState {
    PeriodicSeries w;
    double h = 1.0;
    double m = 0.0;
    double Q = 0.0;
    WaveParameters params;

    void validate() const;
    PeriodicSeries surface() const;  ///< v = w + h
};

/// The energy functional evaluated by exact spectral quadrature over [-pi, pi].
double lambda_functional(const VariationalState& state);

/// Integrand eta of the w-variation: delta Lambda / delta w (w,h) phi = ∫ eta phi.
/// Its mean-zero projection eta - [eta] coincides with the F1 residual.
PeriodicSeries variation_w(const VariationalState& state);

/// The h-variation delta Lambda / delta h, assembled from the closed form
/// (conjugation depth derivative folded in); satisfies
///   dLambda/dh = -k ∫ F1 C_{kh}(v') dx - 2 pi k F2.
double variation_h(const VariationalState& state);

/// Closed-form average of eta: (Q - 2 g h - 2 Upsilon m)/k - 2 g [v C_{kh}(v')].
double eta_average_reference(const VariationalState& state);

}  // namespace vorwave
