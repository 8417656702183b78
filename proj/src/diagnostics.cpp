#include "vorwave/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "vorwave/variational.hpp"

namespace vorwave {

bool DiagnosticsReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

PeriodicSeries random_even_profile(int n_modes, double amplitude, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    PeriodicSeries w(n_modes);
    for (int n = 1; n <= n_modes; ++n) w.set_cos(n, amplitude * unit(rng) / (n * n));
    return w;
}

PeriodicSeries random_profile(int n_modes, double amplitude, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    PeriodicSeries w(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        w.set_cos(n, amplitude * unit(rng) / (n * n));
        w.set_sin(n, amplitude * unit(rng) / (n * n));
    }
    return w;
}

namespace {

void add(DiagnosticsReport& rep, std::string name, double error, double threshold) {
    rep.checks.push_back({std::move(name), error, threshold, error <= threshold});
}

}  // namespace

DiagnosticsReport run_diagnostics(const WaveParameters& params, std::uint64_t seed,
                                  const ConjugationFn& conj_arg) {
    params.validate();
    const ConjugationFn conj =
        conj_arg ? conj_arg
                 : [](const PeriodicSeries& f, StripDepth d) { return conjugation(f, d); };
    const StripDepth d = params.strip_depth();
    const int nm = params.n_modes;
    DiagnosticsReport rep;

    // multiplier exactness against an independent coth evaluation
    {
        double err = 0.0;
        for (int n = 1; n <= nm; ++n) {
            const double nd = n * d.d;
            const double ref = nd < 350.0 ? std::cosh(nd) / std::sinh(nd) : 1.0;
            const PeriodicSeries sc = conj(PeriodicSeries::harmonic_cos(n, 1.0), d);
            const PeriodicSeries ss = conj(PeriodicSeries::harmonic_sin(n, 1.0), d);
            err = std::max(err, std::abs(sc.sin_coeff(n) - ref) / ref);
            err = std::max(err, std::abs(ss.cos_coeff(n) + ref) / ref);
            const PeriodicSeries gn = dirichlet_neumann(PeriodicSeries::harmonic_cos(n, 1.0), d);
            err = std::max(err, std::abs(gn.cos_coeff(n) - n * ref) / (n * ref));
        }
        const PeriodicSeries gc = dirichlet_neumann(PeriodicSeries::constant(1.0), d);
        err = std::max(err, std::abs(gc.mean() - 1.0 / d.d) * d.d);
        add(rep, "multiplier_exactness", err, 1e-12);
    }

    // skew-adjointness of C_d
    {
        double err = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const PeriodicSeries f = random_profile(nm, 1.0, seed + 11 * trial);
            const PeriodicSeries g = random_profile(nm, 1.0, seed + 11 * trial + 5);
            const double lhs = inner_product(f, conj(g, d));
            const double rhs = -inner_product(conj(f, d), g);
            err = std::max(err, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
        add(rep, "skew_adjointness", err, 1e-10);
    }

    // self-adjointness of f -> C_d(f')
    {
        double err = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const PeriodicSeries f = random_profile(nm, 1.0, seed + 31 * trial + 1);
            const PeriodicSeries g = random_profile(nm, 1.0, seed + 31 * trial + 2);
            const double lhs = inner_product(f, conj(derivative(g), d));
            const double rhs = inner_product(g, conj(derivative(f), d));
            err = std::max(err, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
        add(rep, "self_adjointness_Cd_ddx", err, 1e-10);
    }

    // averaging identity [v^2 C(v')] = 2 [v C(v v')]
    {
        double err = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            PeriodicSeries v = random_profile(nm, 0.5, seed + 101 * trial + 3);
            v.set_mean(params.h);
            const PeriodicSeries vp = derivative(v);
            const double lhs = product_average(product(v, v), conj(vp, d));
            const double rhs =
                2.0 * product_average(v, conj(product(v, vp).mean_free(), d));
            err = std::max(err, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
        add(rep, "averaging_identity", err, 1e-10);
    }

    // boundary-pair algebra closure: z = [z] + C_d(w) is stable under products
    {
        double err = 0.0;
        std::mt19937_64 rng(seed + 777);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            const PeriodicSeries w1 = random_profile(nm / 2, 1.0, seed + 13 * trial + 7);
            const PeriodicSeries w2 = random_profile(nm / 2, 1.0, seed + 13 * trial + 9);
            PeriodicSeries z1 = conj(w1, d);
            z1.set_mean(unit(rng));
            PeriodicSeries z2 = conj(w2, d);
            z2.set_mean(unit(rng));
            const PeriodicSeries zp = product(z1, z2) - product(w1, w2);
            const PeriodicSeries wp = product(z1, w2) + product(w1, z2);
            err = std::max(err, std::abs(wp.mean()));
            const PeriodicSeries rebuilt =
                PeriodicSeries::constant(zp.mean()) + conj(wp.mean_free(), d);
            err = std::max(err, (zp - rebuilt).coeff_inf_norm());
        }
        add(rep, "boundary_pair_algebra", err, 1e-10);
    }

    // kernel-convolution path agrees with the multiplier path
    {
        double err = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const PeriodicSeries w = random_profile(16, 1.0, seed + 17 * trial + 2);
            const PeriodicSeries a = conjugation_via_kernel(w, d, 64);
            const PeriodicSeries b = conj(w, d);
            err = std::max(err, (a - b).coeff_inf_norm());
        }
        add(rep, "kernel_multiplier_agreement", err, 1e-8);
    }

    // gradient consistency of the energy functional (finite differences)
    {
        double err_w = 0.0, err_h = 0.0, err_id = 0.0, err_eta = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            std::mt19937_64 rng(seed + 1000 + trial);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            VariationalState st;
            st.params = params;
            st.h = params.h * (1.0 + 0.3 * unit(rng));
            st.w = random_profile(std::min(nm, 24), 0.05 * st.h, seed + 2000 + trial);
            st.m = unit(rng);
            st.Q = 2.0 * params.g * st.h + 1.0 + 0.5 * unit(rng);

            const PeriodicSeries eta = variation_w(st);
            for (int dir = 0; dir < 3; ++dir) {
                const PeriodicSeries phi =
                    random_profile(std::min(nm, 24), 1.0, seed + 3000 + 7 * trial + dir);
                const double eps = 1e-5;
                VariationalState sp = st, sm = st;
                sp.w = st.w + eps * phi;
                sm.w = st.w - eps * phi;
                const double fd = (lambda_functional(sp) - lambda_functional(sm)) / (2.0 * eps);
                const double an = inner_product(eta, phi);
                err_w = std::max(err_w, std::abs(fd - an) / std::max(1.0, std::abs(an)));
            }
            {
                const double eps = 1e-6;
                VariationalState sp = st, sm = st;
                sp.h = st.h + eps;
                sm.h = st.h - eps;
                const double fd = (lambda_functional(sp) - lambda_functional(sm)) / (2.0 * eps);
                const double an = variation_h(st);
                err_h = std::max(err_h, std::abs(fd - an) / std::max(1.0, std::abs(an)));
            }
            {
                WaveParameters ph = params;
                ph.h = st.h;
                const SpeedHeadDefect lm = to_speed_head_defect(ph, st.m, st.Q);
                const Residual r = residual_F(ph, lm.lambda, lm.mu, st.w);
                const PeriodicSeries cvp = conjugation(derivative(st.surface()), ph.strip_depth());
                const double lhs = variation_h(st);
                const double rhs = -ph.k * inner_product(r.f1, cvp) -
                                   2.0 * std::numbers::pi * ph.k * r.f2;
                err_id = std::max(err_id, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
                err_eta = std::max(err_eta,
                                   (eta - PeriodicSeries::constant(eta.mean()) - r.f1).coeff_inf_norm());
            }
        }
        add(rep, "gradient_fd_w", err_w, 1e-5);
        add(rep, "gradient_fd_h", err_h, 1e-5);
        add(rep, "dh_identity", err_id, 1e-9);
        add(rep, "eta_equals_F1", err_eta, 1e-10);
    }

    // equivalence of formulations at a converged-quality synthetic point: the
    // squared Bernoulli residual mean must reproduce F2 exactly
    {
        double err = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const PeriodicSeries w = random_even_profile(std::min(nm, 24), 0.05, seed + 4000 + trial);
            const double lambda = 1.0 + 0.1 * trial;
            const double mu = 0.05 * trial;
            const MassFluxHead mq = to_mass_flux_head(params, lambda, mu);
            PeriodicSeries v = w;
            v.set_mean(params.h);
            const Residual r = residual_F(params, lambda, mu, w);
            const PeriodicSeries bern = residual_bernoulli(params, mq.m, mq.Q, v);
            err = std::max(err, std::abs(bern.mean() - r.f2) /
                                    std::max(1.0, std::abs(r.f2)));
        }
        add(rep, "bernoulli_mean_equals_F2", err, 1e-10);
    }

    return rep;
}

}  // namespace vorwave
