#include "vorwave/periodic_series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "vorwave/fft.hpp"

namespace vorwave {

PeriodicSeries::PeriodicSeries(int n_modes) {
    if (n_modes < 0) throw std::invalid_argument("PeriodicSeries: negative mode count");
    cos_.assign(static_cast<std::size_t>(n_modes), 0.0);
    sin_.assign(static_cast<std::size_t>(n_modes), 0.0);
}

PeriodicSeries::PeriodicSeries(double mean, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : mean_(mean), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    if (cos_.size() != sin_.size())
        throw std::invalid_argument("PeriodicSeries: coefficient lists differ in length");
}

PeriodicSeries PeriodicSeries::constant(double c) {
    PeriodicSeries f(0);
    f.mean_ = c;
    return f;
}

PeriodicSeries PeriodicSeries::harmonic_cos(int n, double amp, int n_modes) {
    if (n < 1) throw std::invalid_argument("harmonic_cos: n must be >= 1");
    PeriodicSeries f(std::max(n, n_modes));
    f.cos_[static_cast<std::size_t>(n - 1)] = amp;
    return f;
}

PeriodicSeries PeriodicSeries::harmonic_sin(int n, double amp, int n_modes) {
    if (n < 1) throw std::invalid_argument("harmonic_sin: n must be >= 1");
    PeriodicSeries f(std::max(n, n_modes));
    f.sin_[static_cast<std::size_t>(n - 1)] = amp;
    return f;
}

double PeriodicSeries::cos_coeff(int n) const {
    if (n < 1) throw std::invalid_argument("cos_coeff: n must be >= 1");
    return n <= modes() ? cos_[static_cast<std::size_t>(n - 1)] : 0.0;
}

double PeriodicSeries::sin_coeff(int n) const {
    if (n < 1) throw std::invalid_argument("sin_coeff: n must be >= 1");
    return n <= modes() ? sin_[static_cast<std::size_t>(n - 1)] : 0.0;
}

void PeriodicSeries::set_cos(int n, double v) {
    if (n < 1) throw std::invalid_argument("set_cos: n must be >= 1");
    if (n > modes()) {
        cos_.resize(static_cast<std::size_t>(n), 0.0);
        sin_.resize(static_cast<std::size_t>(n), 0.0);
    }
    cos_[static_cast<std::size_t>(n - 1)] = v;
}

void PeriodicSeries::set_sin(int n, double v) {
    if (n < 1) throw std::invalid_argument("set_sin: n must be >= 1");
    if (n > modes()) {
        cos_.resize(static_cast<std::size_t>(n), 0.0);
        sin_.resize(static_cast<std::size_t>(n), 0.0);
    }
    sin_[static_cast<std::size_t>(n - 1)] = v;
}

double PeriodicSeries::operator()(double x) const {
    // Recurrence for cos(nx), sin(nx) avoids N trig calls per evaluation.
    double acc = mean_;
    const double c1 = std::cos(x), s1 = std::sin(x);
    double cn = c1, sn = s1;
    for (int n = 1; n <= modes(); ++n) {
        acc += cos_[static_cast<std::size_t>(n - 1)] * cn + sin_[static_cast<std::size_t>(n - 1)] * sn;
        const double cnext = cn * c1 - sn * s1;
        sn = sn * c1 + cn * s1;
        cn = cnext;
    }
    return acc;
}

double PeriodicSeries::deriv_at(double x) const {
    double acc = 0.0;
    const double c1 = std::cos(x), s1 = std::sin(x);
    double cn = c1, sn = s1;
    for (int n = 1; n <= modes(); ++n) {
        acc += n * (-cos_[static_cast<std::size_t>(n - 1)] * sn + sin_[static_cast<std::size_t>(n - 1)] * cn);
        const double cnext = cn * c1 - sn * s1;
        sn = sn * c1 + cn * s1;
        cn = cnext;
    }
    return acc;
}

std::vector<double> PeriodicSeries::sample(int m) const {
    if (m < 1) throw std::invalid_argument("sample: grid size must be >= 1");
    const std::size_t mm = static_cast<std::size_t>(m);
    if ((mm & (mm - 1)) != 0 || 2 * static_cast<std::size_t>(modes()) >= mm) {
        // small or awkward grids: direct evaluation
        std::vector<double> out(mm);
        for (std::size_t j = 0; j < mm; ++j)
            out[j] = (*this)(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
        return out;
    }
    std::vector<std::complex<double>> spec(mm, 0.0);
    spec[0] = mean_;
    for (int n = 1; n <= modes(); ++n) {
        const std::complex<double> c(0.5 * cos_[static_cast<std::size_t>(n - 1)],
                                     -0.5 * sin_[static_cast<std::size_t>(n - 1)]);
        spec[static_cast<std::size_t>(n)] = c;
        spec[mm - static_cast<std::size_t>(n)] = std::conj(c);
    }
    // inverse DFT without the 1/m factor: scale spectrum by m first
    for (auto& c : spec) c *= static_cast<double>(m);
    fft(spec, true);
    std::vector<double> out(mm);
    for (std::size_t j = 0; j < mm; ++j) out[j] = spec[j].real();
    return out;
}

PeriodicSeries PeriodicSeries::fit(const std::vector<double>& grid_values, int n_modes) {
    const std::size_t m = grid_values.size();
    if (m == 0 || (m & (m - 1)) != 0)
        throw std::invalid_argument("fit: grid length must be a power of two");
    if (2 * static_cast<std::size_t>(n_modes) >= m)
        throw std::invalid_argument("fit: grid too coarse for requested modes");
    std::vector<std::complex<double>> spec(grid_values.begin(), grid_values.end());
    fft(spec, false);
    PeriodicSeries f(n_modes);
    f.mean_ = spec[0].real() / static_cast<double>(m);
    for (int n = 1; n <= n_modes; ++n) {
        const std::complex<double> c = spec[static_cast<std::size_t>(n)] / static_cast<double>(m);
        f.cos_[static_cast<std::size_t>(n - 1)] = 2.0 * c.real();
        f.sin_[static_cast<std::size_t>(n - 1)] = -2.0 * c.imag();
    }
    return f;
}

PeriodicSeries PeriodicSeries::truncated(int n_modes) const {
    PeriodicSeries f(std::min(n_modes, modes()));
    f.mean_ = mean_;
    std::copy_n(cos_.begin(), f.cos_.size(), f.cos_.begin());
    std::copy_n(sin_.begin(), f.sin_.size(), f.sin_.begin());
    return f;
}

PeriodicSeries PeriodicSeries::padded(int n_modes) const {
    if (n_modes <= modes()) return *this;
    PeriodicSeries f(n_modes);
    f.mean_ = mean_;
    std::copy(cos_.begin(), cos_.end(), f.cos_.begin());
    std::copy(sin_.begin(), sin_.end(), f.sin_.begin());
    return f;
}

PeriodicSeries PeriodicSeries::mean_free() const {
    PeriodicSeries f = *this;
    f.mean_ = 0.0;
    return f;
}

PeriodicSeries& PeriodicSeries::operator+=(const PeriodicSeries& other) {
    if (other.modes() > modes()) *this = padded(other.modes());
    mean_ += other.mean_;
    for (int n = 1; n <= other.modes(); ++n) {
        cos_[static_cast<std::size_t>(n - 1)] += other.cos_[static_cast<std::size_t>(n - 1)];
        sin_[static_cast<std::size_t>(n - 1)] += other.sin_[static_cast<std::size_t>(n - 1)];
    }
    return *this;
}

PeriodicSeries& PeriodicSeries::operator-=(const PeriodicSeries& other) {
    if (other.modes() > modes()) *this = padded(other.modes());
    mean_ -= other.mean_;
    for (int n = 1; n <= other.modes(); ++n) {
        cos_[static_cast<std::size_t>(n - 1)] -= other.cos_[static_cast<std::size_t>(n - 1)];
        sin_[static_cast<std::size_t>(n - 1)] -= other.sin_[static_cast<std::size_t>(n - 1)];
    }
    return *this;
}

PeriodicSeries& PeriodicSeries::operator*=(double scalar) {
    mean_ *= scalar;
    for (auto& c : cos_) c *= scalar;
    for (auto& c : sin_) c *= scalar;
    return *this;
}

double PeriodicSeries::coeff_inf_norm() const {
    double m = std::abs(mean_);
    for (const double c : cos_) m = std::max(m, std::abs(c));
    for (const double c : sin_) m = std::max(m, std::abs(c));
    return m;
}

double PeriodicSeries::sup_norm() const {
    const int m = static_cast<int>(next_pow2(static_cast<std::size_t>(std::max(64, 8 * modes()))));
    double s = 0.0;
    for (const double v : sample(m)) s = std::max(s, std::abs(v));
    return s;
}

double PeriodicSeries::max_abs_sin_coeff() const {
    double m = 0.0;
    for (const double c : sin_) m = std::max(m, std::abs(c));
    return m;
}

PeriodicSeries operator+(PeriodicSeries a, const PeriodicSeries& b) { return a += b; }
PeriodicSeries operator-(PeriodicSeries a, const PeriodicSeries& b) { return a -= b; }
PeriodicSeries operator*(double s, PeriodicSeries f) { return f *= s; }

double inner_product(const PeriodicSeries& f, const PeriodicSeries& g) {
    // Orthogonality over [-pi, pi]: ∫ fg = 2π [f][g] + π Σ (a·a + b·b).
    double acc = 2.0 * std::numbers::pi * f.mean() * g.mean();
    const int n_common = std::min(f.modes(), g.modes());
    double s = 0.0;
    for (int n = 1; n <= n_common; ++n)
        s += f.cos_coeff(n) * g.cos_coeff(n) + f.sin_coeff(n) * g.sin_coeff(n);
    return acc + std::numbers::pi * s;
}

double product_average(const PeriodicSeries& f, const PeriodicSeries& g) {
    return inner_product(f, g) / (2.0 * std::numbers::pi);
}

}  // namespace vorwave
