#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace nlsob {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// |B(0,1)| in R^d
double unit_ball_volume(int d);
// |S^{d-1}| = d |B(0,1)|
double sphere_area(int d);
// radius of the ball of volume r
double eta(double r, int d);
double ball_volume(double rho, int d);

// Generic pass/fail wrapper for operations with a typed failure.
template <class T>
struct Checked {
    T value{};
    bool ok = true;
    std::string reason;
    std::vector<double> witness;
};

// Neumaier-compensated running sum; order of add() calls fixes the result.
class Accumulator {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Piecewise power law: linear interpolation of log y against log x.
// Repeated abscissae encode a jump (right-continuous).  Outside the sample
// range the curve continues as a pure power with the endpoint exponents.
class LogLogTable {
public:
    LogLogTable() = default;
    LogLogTable(const std::vector<double>& x, const std::vector<double>& y,
                double e_lo, double e_hi);

    double operator()(double x) const;
    // inverse for strictly increasing tables
    double inverse(double y) const;
    // local exponent d log y / d log x (right derivative)
    double slope(double x) const;

    bool empty() const { return lx_.empty(); }
    std::size_t size() const { return lx_.size(); }
    std::vector<double> xs() const;
    std::vector<double> ys() const;
    double x_front() const;
    double x_back() const;
    double e_lo() const { return e_lo_; }
    double e_hi() const { return e_hi_; }
    bool strictly_increasing(double rel = 1e-13) const;

private:
    std::vector<double> lx_, ly_;
    double e_lo_ = 0.0, e_hi_ = 0.0;
};

// endpoint exponent estimated from the two outermost distinct samples
double end_slope(const std::vector<double>& x, const std::vector<double>& y, bool high);

// n log-spaced points on [a,b]
std::vector<double> log_grid(double a, double b, int n);
// merge extra knots into a sorted grid (dedup within relative eps)
std::vector<double> merge_knots(std::vector<double> grid, const std::vector<double>& knots,
                                double rel = 1e-12);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

// int_a^b f(rho) drho with rho = e^u, composite Simpson in u doubled until the
// relative change drops below rel_tol.  0 < a < b < inf.
QuadResult log_simpson(const std::function<double(double)>& f, double a, double b,
                       double rel_tol = 1e-8, int n0 = 8);

// Same, applied piecewise on consecutive breakpoints; refinement is driven by
// the change of the total.
QuadResult log_simpson_pieces(const std::function<double(double)>& f,
                              const std::vector<double>& breaks, double rel_tol = 1e-8,
                              int n0 = 4);

// Finite-difference weights (Fornberg) for the m-th derivative at z from
// the nodes x.
std::vector<double> fd_weights(double z, const std::vector<double>& x, int m);

// Least-squares fit log y = log c + e log x; returns {e, c}.
std::pair<double, double> fit_power(const std::vector<double>& x, const std::vector<double>& y);

double golden_max(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                  int max_iter = 200);

}  // namespace nlsob
