#include "vorwave/variational.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vorwave {

void VariationalState::validate() const {
    if (!(h > 0.0)) throw std::invalid_argument("VariationalState: h must be positive");
    if (std::abs(w.mean()) > 1e-13 * std::max(1.0, w.coeff_inf_norm()))
        throw std::invalid_argument("VariationalState: [w] must be zero");
}

PeriodicSeries VariationalState::surface() const {
    PeriodicSeries v = w;
    v.set_mean(h);
    return v;
}

namespace {

struct StateTerms {
    PeriodicSeries v, vp, cvp, v2, cvvp;
    PeriodicSeries ux;    // 1/k + C(v')
    PeriodicSeries flux;  // m/(kh) - Upsilon [v^2]/(2kh) - Upsilon C(v v')
    double avg_v2 = 0.0;
};

StateTerms build_terms(const VariationalState& st) {
    const WaveParameters& p = st.params;
    const StripDepth d(p.k * st.h);
    StateTerms t;
    t.v = st.surface();
    t.vp = derivative(t.v);
    t.cvp = conjugation(t.vp, d);
    t.v2 = product(t.v, t.v);
    t.avg_v2 = t.v2.mean();
    t.cvvp = conjugation(product(t.v, t.vp).mean_free(), d);
    t.ux = t.cvp;
    t.ux.set_mean(t.ux.mean() + 1.0 / p.k);
    t.flux = PeriodicSeries::constant(st.m / (p.k * st.h) -
                                      p.upsilon * t.avg_v2 / (2.0 * p.k * st.h)) -
             p.upsilon * t.cvvp;
    return t;
}

}  // namespace

double lambda_functional(const VariationalState& state) {
    state.validate();
    const WaveParameters& p = state.params;
    const StateTerms t = build_terms(state);

    PeriodicSeries height_density = state.Q * t.v - p.g * t.v2;
    height_density -= (p.upsilon * p.upsilon / 3.0) * product(t.v2, t.v);

    PeriodicSeries momentum_density = PeriodicSeries::constant(state.m) - (p.upsilon / 2.0) * t.v2;

    return inner_product(height_density, t.ux) + inner_product(momentum_density, t.flux);
}

PeriodicSeries variation_w(const VariationalState& state) {
    state.validate();
    const WaveParameters& p = state.params;
    const StripDepth d(p.k * state.h);
    const StateTerms t = build_terms(state);

    // Q - 2 g v - Upsilon^2 v^2
    PeriodicSeries head = PeriodicSeries::constant(state.Q) - 2.0 * p.g * t.v;
    head -= (p.upsilon * p.upsilon) * t.v2;

    PeriodicSeries eta = conjugation(product(head, t.vp).mean_free(), d);
    eta += product(head, t.ux);
    eta -= 2.0 * p.upsilon * product(t.v, t.flux);
    return eta;
}

double variation_h(const VariationalState& state) {
    state.validate();
    const WaveParameters& p = state.params;
    const StateTerms t = build_terms(state);
    const PeriodicSeries eta = variation_w(state);

    PeriodicSeries head = PeriodicSeries::constant(state.Q) - 2.0 * p.g * t.v;
    const PeriodicSeries grad2 = product(t.vp, t.vp) + product(t.ux, t.ux);
    const PeriodicSeries a = t.flux + p.upsilon * product(t.v, t.ux);

    return p.k * (-inner_product(eta, t.cvp) + inner_product(head, grad2) - inner_product(a, a));
}

double eta_average_reference(const VariationalState& state) {
    const WaveParameters& p = state.params;
    const StateTerms t = build_terms(state);
    return (state.Q - 2.0 * p.g * state.h - 2.0 * p.upsilon * state.m) / p.k -
           2.0 * p.g * product_average(t.v, t.cvp);
}

}  // namespace vorwave
