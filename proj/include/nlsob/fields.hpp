#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "nlsob/kernels.hpp"

namespace nlsob {

enum class Smoothness { piecewise_linear, smooth };

// Nodal samples on a uniform grid of n[0] (x n[1]) cells with spacing h.
// Values are row-major, index = j * (n[0] + 1) + i.  Integrals use the cell
// rule sum f(u_ij) h^d, which is the trapezoid rule for compact support.
struct GridFunction {
    int d = 1;
    double lo[2] = {0.0, 0.0};
    double hi[2] = {0.0, 0.0};
    int n[2] = {0, 0};
    double h = 0.0;
    std::vector<double> values;
    Smoothness smooth = Smoothness::piecewise_linear;

    int nodes(int axis) const { return n[axis] + 1; }
    double cell() const { return d == 1 ? h : h * h; }
    double x(int i, int axis = 0) const { return lo[axis] + i * h; }
    double at(int i, int j = 0) const;
};

GridFunction sample_1d(const std::function<double(double)>& f, double lo, double hi, int n,
                       Smoothness s = Smoothness::piecewise_linear);
// square cells; n cells along x, the y count follows from the box
GridFunction sample_2d(const std::function<double(double, double)>& f, double lo_x,
                       double hi_x, double lo_y, double hi_y, int n,
                       Smoothness s = Smoothness::piecewise_linear);
// every other node
GridFunction coarsen(const GridFunction& u);
GridFunction abs_value(const GridFunction& u);
GridFunction scaled(const GridFunction& u, double c);

double lp_norm(const GridFunction& u, double p);
double sup_norm(const GridFunction& u);
double support_measure(const GridFunction& u);
// norms restricted to nodes inside a set
double lp_norm_on(const GridFunction& u, double p, const SetSpec& omega);
double mean_on(const GridFunction& u, const SetSpec& omega);

// ||grad u||_p with differences centred on the cell midpoints
double gradient_seminorm(const GridFunction& u, double p);

struct NormResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int iterations = 0;
    bool flagged = false;
};

struct SeminormOptions {
    int delta_cells = 1;   // delta = delta_cells * h
    bool refine = true;    // error estimate from the coarsened grid
};

// iint |u(x)-u(y)|^p nu(x-y) dy dx (the p-th power of the seminorm)
NormResult nonlocal_seminorm(const GridFunction& u, const Kernel& k,
                             const SeminormOptions& opt = {});
// same double integral restricted to omega x omega
NormResult nonlocal_seminorm_on(const GridFunction& u, const Kernel& k, const SetSpec& omega,
                                const SeminormOptions& opt = {});

// average of |w.e|^p over the unit sphere
double K_dp(int d, double p);

struct BbmReport {
    double gradient_p = 0.0;  // ||grad u||_p^p
    double target = 0.0;      // |S^{d-1}|/p K_{d,p} ||grad u||_p^p
    std::vector<double> s;
    std::vector<double> weighted;  // s(1-s) |u|^p_{W^{s,p}}
    std::vector<double> ratio;
    std::vector<double> error;
    bool monotone = true;
};

BbmReport bbm_limit_check(const GridFunction& u, double p, const std::vector<double>& s_list);

struct Rearranged {
    GridFunction u;                   // samples of the radial profile
    std::vector<double> sorted;       // |u| values in decreasing order (positive part)
    double cell = 0.0;                // measure carried by each sorted value
    double profile(double rho) const;  // u*(rho)
    double level_measure(double s) const;  // |{u* > s}| of the profile
};

Rearranged rearrange_function(const GridFunction& u);
// |{|u| > s}| and |{|u| >= s}| by cell counting
double level_measure(const GridFunction& u, double s, bool strict = true);

void write_grid_csv(std::ostream& os, const GridFunction& u);
GridFunction read_grid_csv(std::istream& is);

}  // namespace nlsob
