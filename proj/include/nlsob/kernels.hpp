#pragma once

#include <string>
#include <vector>

#include "nlsob/numerics.hpp"

namespace nlsob {

struct YoungFunction;
struct GridFunction;

// nu(rho) = coef * rho^exponent on [start, next start)
struct PowerPiece {
    double start = 0.0;
    double coef = 1.0;
    double exponent = 0.0;
};

enum class KernelFamily { power, log_family, table };

// Radial p-Levy kernel profile rho -> nu(rho), rho = |h|.
struct Kernel {
    int d = 1;
    double p = 2.0;
    KernelFamily family = KernelFamily::power;
    std::string tag;

    std::vector<PowerPiece> pieces;  // power family
    double a = 0.0;                  // log family parameter
    LogLogTable table;               // table family
    double support = kInf;           // nu = 0 for rho >= support

    // fractional parts of a max-combination kernel
    std::vector<Kernel> components;

    double operator()(double rho) const;
    // radii where the profile is not smooth, inside (0, inf)
    std::vector<double> breaks() const;
    double origin_exponent() const;
    double tail_exponent() const;
    bool nonincreasing() const;
};

// gamma_s = d c_d^{1+sp/d} / (sp)
double gamma_s(int d, double p, double s);
// p*_s with 1/p*_s = 1/p - s/d (inf when the right side vanishes)
double critical_exponent(int d, double p, double s);

Kernel fractional_kernel(int d, double p, double s, double coef = 1.0);
// (1/gamma_{s2})|h|^{-d-s2 p} inside B(0,eta(1)), (1/gamma_{s1})|h|^{-d-s1 p} outside
Kernel max_fractional_kernel(int d, double p, double s1, double s2);
// roles of s1, s2 exchanged
Kernel min_fractional_kernel(int d, double p, double s1, double s2);
Kernel ball_kernel(int d, double p, double radius = 1.0);
// kernel of phi^a(t) = ln(a + e^{t^p}) - ln(a + 1)
Kernel log_family_kernel(int d, double p, double a);
// tabulated radial profile; power-law extrapolation outside the samples
Kernel tabulated_kernel(int d, double p, const std::vector<double>& radii,
                        const std::vector<double>& values, double e0, double e_inf,
                        double support = kInf);

// xi^a(r) = ln((a+1)e^{1/r} - a) and nu^a(eta(r)) = -(d/dr)[1/(r xi^a(r))]
double log_family_xi(double r, double a);
double log_family_nu_r(double r, double a);

// int_{a<|h|<b} |h|^m nu(h) dh
double shell_moment(const Kernel& k, double m, double a, double b);
// int_{a<|h|<b} g(|h|) nu(h) dh for a general weight
double shell_integral(const Kernel& k, const std::function<double(double)>& g, double a,
                      double b);

struct LevyResult {
    double value = 0.0;
    bool finite = true;
    std::string reason;
};

LevyResult levy_modular(const Kernel& k);
Checked<double> tail_mass(const Kernel& k, double rho);

enum class WMode { tail, sharp };  // Assumption-A tail mass | nu^# (main-result2)

struct TailProfile {
    LogLogTable w;  // r -> w(r)
    double p = 2.0;
    int d = 1;
    WMode mode = WMode::tail;
    double operator()(double r) const { return r <= 0 ? 0.0 : w(r); }
    double wp(double r) const;  // w^p
};

struct ProfileOptions {
    double r_min = 1e-30;
    double r_max = 1e30;
    int per_decade = 16;
};

Checked<TailProfile> w_profile(const Kernel& k, WMode mode = WMode::tail,
                               const ProfileOptions& opt = {});

// kappa = inf_{r1>=r2} nu(r2)/nu(r1) on 256 log radii, clamped to 1
Checked<double> almost_decreasing_kappa(const Kernel& k, int samples = 256);

// radial kernel -> nonincreasing radial kernel (identity when already so)
Kernel rearrange_kernel(const Kernel& k, int samples = 4096);
// kernel values on a uniform d-dimensional grid -> radial nonincreasing kernel
Kernel rearrange_kernel(const GridFunction& values, double p);
// |{nu > s}| for a radial profile (shell measure of the superlevel set)
double kernel_level_measure(const Kernel& k, double s, int samples = 4096);

double nu_sharp(const Kernel& k, double measure);

struct SetSpec {
    int d = 1;
    struct Box {
        double lo[2];
        double hi[2];
    };
    struct Ball {
        double c[2];
        double r;
    };
    std::vector<Box> boxes;  // assumed pairwise disjoint
    std::vector<Ball> balls;
    double measure() const;
    double diameter() const;
    double r_e() const { return eta(measure(), d); }
    bool contains(const double* x) const;
};

SetSpec interval_set(double a, double b);
SetSpec box_set(double x0, double x1, double y0, double y1);
SetSpec ball_set(int d, double cx, double cy, double r);

struct ExteriorReport {
    double value = 0.0;           // int_{E^c} nu(x-y) dy
    double error = 0.0;
    double lemma_bound = 0.0;     // kappa^2 w^p(|E|)/|E|
    double sharp_bound = 0.0;     // nu^#(|E|)
    double kappa = 1.0;
    double lemma_margin = 0.0;
    double sharp_margin = 0.0;
    bool converged = true;
};

ExteriorReport exterior_mass_bound(const Kernel& k, const SetSpec& set, const double* x,
                                   int samples = 512);

// phi -> kernel through nu(eta(r)) = -(d/dr)(w^p(r)/r), w(r) = 1/phi^{-1}(1/r)
Checked<Kernel> kernel_from_young(const YoungFunction& phi, double p, int d);

}  // namespace nlsob
