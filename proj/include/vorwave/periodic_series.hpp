#pragma once

#include <vector>

namespace vorwave {

/// Real 2*pi-periodic function stored as mean + trigonometric coefficients:
///
///   f(x) = mean + sum_{n=1..N} ( a_n cos(n x) + b_n sin(n x) )
///
/// The carrier for every one-variable periodic quantity in the solver.
/// Values are immutable in spirit: all operations return new series.
class PeriodicSeries {
public:
    PeriodicSeries() = default;
    explicit PeriodicSeries(int n_modes);
    PeriodicSeries(double mean, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    static PeriodicSeries constant(double c);
    /// amp * cos(n x), padded to n_modes (defaults to n).
    static PeriodicSeries harmonic_cos(int n, double amp, int n_modes = -1);
    /// amp * sin(n x), padded to n_modes (defaults to n).
    static PeriodicSeries harmonic_sin(int n, double amp, int n_modes = -1);

    int modes() const { return static_cast<int>(cos_.size()); }
    double mean() const { return mean_; }
    /// 1-based coefficient access; indices beyond the stored degree read as 0.
    double cos_coeff(int n) const;
    double sin_coeff(int n) const;
    void set_mean(double v) { mean_ = v; }
    void set_cos(int n, double v);
    void set_sin(int n, double v);

    /// Point evaluation by direct summation.
    double operator()(double x) const;
    /// First derivative at a point.
    double deriv_at(double x) const;

    /// Values at the m uniform nodes x_j = 2*pi*j/m (m a power of two).
    std::vector<double> sample(int m) const;
    /// Trigonometric interpolation from uniform samples; keeps n_modes modes.
    static PeriodicSeries fit(const std::vector<double>& grid_values, int n_modes);

    PeriodicSeries truncated(int n_modes) const;
    PeriodicSeries padded(int n_modes) const;
    PeriodicSeries mean_free() const;

    PeriodicSeries& operator+=(const PeriodicSeries& other);
    PeriodicSeries& operator-=(const PeriodicSeries& other);
    PeriodicSeries& operator*=(double scalar);

    /// max over |mean|, |a_n|, |b_n|.
    double coeff_inf_norm() const;
    /// sup-norm proxy: max |f| over a fine uniform grid.
    double sup_norm() const;
    double max_abs_sin_coeff() const;
    bool is_zero(double tol) const { return coeff_inf_norm() <= tol; }

private:
    double mean_ = 0.0;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

PeriodicSeries operator+(PeriodicSeries a, const PeriodicSeries& b);
PeriodicSeries operator-(PeriodicSeries a, const PeriodicSeries& b);
PeriodicSeries operator*(double s, PeriodicSeries f);

/// Exact integral of f*g over one period [-pi, pi].
double inner_product(const PeriodicSeries& f, const PeriodicSeries& g);
/// Period average [fg] = inner_product / (2 pi).
double product_average(const PeriodicSeries& f, const PeriodicSeries& g);

}  // namespace vorwave
