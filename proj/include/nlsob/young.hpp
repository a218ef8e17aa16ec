#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlsob/kernels.hpp"
#include "nlsob/numerics.hpp"

namespace nlsob {

// Sampled Young function on a log grid with power-law ends.
struct YoungFunction {
    LogLogTable table;
    std::vector<double> knots;  // abscissae where the curve may kink
    double p = 0.0;             // paired exponent, 0 when unpaired
    bool critical = false;
    bool possibly_nonconvex = false;

    double operator()(double t) const;
    double inverse(double y) const;
    // phi_p(s) = phi(s^{1/p})
    double phi_p(double s, double q) const;
    std::vector<double> ts() const { return table.xs(); }
    std::vector<double> values() const { return table.ys(); }
};

struct YoungGrid {
    double t_min = 1e-3;
    double t_max = 1e3;
    int n = 256;
};

YoungFunction young_from_function(const std::function<double(double)>& f,
                                  const std::vector<double>& knots, const YoungGrid& g,
                                  double e_lo, double e_hi);
YoungFunction power_young(double c, double q, const YoungGrid& g = {});
// phi^a(t) = ln(a + e^{t^p}) - ln(a + 1)
YoungFunction log_family_young(double p, double a, const YoungGrid& g = {});

// phi(t) = 1 / w^{-1}(1/t)
Checked<YoungFunction> critical_young(const TailProfile& w, const YoungGrid& g = {});

// midpoint test of s -> phi(s^{1/p}) on consecutive grid triples; witness = {s0, s1, s2}
Checked<double> check_convexity_phi_p(const YoungFunction& phi, double p);
bool is_convex(const YoungFunction& phi, double rel_tol = 1e-10);

struct ThetaOptions {
    int candidates = 64;
    double theta_min = 1e-4;
    double theta_max = 1.0;
    int refine_steps = 48;
    double slack = 1e-10;
};

// largest theta with phi(theta s/t) <= phi(s)/phi(t) for all grid pairs s <= t
Checked<double> growth_theta(const YoungFunction& phi, const ThetaOptions& opt = {});

// Legendre transform on a log grid of n points
YoungFunction conjugate(const YoungFunction& phi, int n = 1024);

enum class CombineMode { max, min, minorant };
YoungFunction combine(const YoungFunction& a, const YoungFunction& b, CombineMode mode);
// phi_min(t) = int_0^t phi(s)/s ds
YoungFunction convex_minorant(const YoungFunction& phi);
// t -> psi(t^q)
YoungFunction compose_power(const YoungFunction& psi, double q);

struct RateReport {
    double ratio_high = 0.0;   // phi(t_max)/t_max^p
    double ratio_low = 0.0;    // phi(t_min)/t_min^p
    double l1_norm = kInf;     // int nu
    bool integrable = false;
    bool n_function = false;    // phi(t)/t -> 0 at 0 and -> inf at inf
    bool n_function_p = false;  // same for phi_p
    double high_rel_error = kInf;
    std::vector<double> residual_radii;
    std::vector<double> residual_lhs;  // |B_r|^{-1/p} / phi^{-1}(1/|B_r|)
    std::vector<double> residual_rhs;  // nu^#(|B_r|)^{1/p}
};

RateReport asymptotic_rates(const YoungFunction& phi, const Kernel& k,
                            const std::vector<double>& radii = {1.0, 10.0, 100.0});

void write_young_csv(std::ostream& os, const YoungFunction& phi);
YoungFunction read_young_csv(std::istream& is);

}  // namespace nlsob
