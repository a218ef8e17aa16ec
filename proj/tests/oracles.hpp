#pragma once

// Closed forms used as reference values by the tests.  Nothing here calls
// into the library.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

inline double ball_volume(int d) { return d == 1 ? 2.0 : pi; }

inline double gamma_s(int d, double p, double s) {
    return d * std::pow(ball_volume(d), 1.0 + s * p / d) / (s * p);
}

inline double pstar(int d, double p, double s) { return 1.0 / (1.0 / p - s / d); }

// coefficient and exponent of the critical function of |h|^{-d-sp}
inline double critical_coef(int d, double p, double s) {
    return std::pow(gamma_s(d, p, s), pstar(d, p, s) / p);
}

// int_{|h| > rho} |h|^{-d-sp} dh
inline double fractional_tail(int d, double p, double s, double rho) {
    const double area = d == 1 ? 2.0 : 2.0 * pi;
    return area * std::pow(rho, -s * p) / (s * p);
}

// radius of the ball of volume m
inline double eta(double m, int d) {
    return d == 1 ? 0.5 * m : std::sqrt(m / pi);
}

inline double brezis(int d, double p, double s) {
    return std::pow(2.0, pstar(d, p, s) / p) * std::pow(ball_volume(d), -1.0 / p - s / d);
}

// Luxemburg norm of 1_E for phi = c t^q
inline double power_indicator_norm(double c, double q, double measure) {
    return 1.0 / std::pow(1.0 / (c * measure), 1.0 / q);
}

// midpoint rule on [a,b] with n cells
inline double midpoint(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
}

inline double hat(double x, double c, double w) { return std::max(0.0, 1.0 - std::abs(x - c) / w); }

inline double bump(double x, double c, double w) {
    const double z = (x - c) / w;
    return std::abs(z) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - z * z)) : 0.0;
}

// random piecewise-linear profile through knots on [-3, 3]
inline std::function<double(double)> random_pl(std::mt19937_64& rng, int knots) {
    std::uniform_real_distribution<double> val(-1.0, 2.0);
    std::vector<double> x(knots), y(knots);
    for (int i = 0; i < knots; ++i) {
        x[i] = -3.0 + 6.0 * i / (knots - 1);
        y[i] = (i == 0 || i == knots - 1) ? 0.0 : val(rng);
    }
    return [x, y](double t) {
        if (t <= x.front() || t >= x.back()) return 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i)
            if (t <= x[i + 1]) return y[i] + (y[i + 1] - y[i]) * (t - x[i]) / (x[i + 1] - x[i]);
        return 0.0;
    };
}

}  // namespace oracle
