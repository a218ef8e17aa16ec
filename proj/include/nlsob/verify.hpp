#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nlsob/fields.hpp"
#include "nlsob/kernels.hpp"
#include "nlsob/levelset.hpp"
#include "nlsob/orlicz.hpp"
#include "nlsob/young.hpp"

namespace nlsob {

struct InequalityReport {
    std::string id;
    std::vector<std::pair<std::string, std::string>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    double tolerance = 1e-6;
    bool pass = false;
    bool indeterminate = false;
    std::string notes;
    std::vector<std::pair<std::string, double>> extra;

    double margin() const { return rhs - lhs; }
    // pass <=> margin >= -tolerance, unless indeterminate
    void settle();
};

enum class VerifyMode { assumption_a, main_result2 };
enum class GnsStrategy { direct, per_component, minorant };

const char* to_string(VerifyMode m);
const char* to_string(GnsStrategy s);

// everything the main inequality needs for one kernel
struct GnsSetup {
    Kernel kernel;
    VerifyMode mode = VerifyMode::assumption_a;
    GnsStrategy strategy = GnsStrategy::direct;
    TailProfile w;
    YoungFunction raw_phi;  // critical function of the kernel
    YoungFunction phi;      // function whose norm is bounded
    double theta = 0.0;
    double kappa = 1.0;
    // per-component data
    std::vector<YoungFunction> comp_phi;
    std::vector<double> comp_theta;
    double c2 = 1.0;  // sup max_i nu_i / nu
};

Checked<GnsSetup> prepare_gns(const Kernel& k, VerifyMode mode);

// t [2 kappa^2 C_p(t) phi(theta/t)]^{-1/p}
Checked<double> theta_constant(double t, double p, double kappa, double theta,
                               const YoungFunction& phi);

InequalityReport verify_gns(const GridFunction& u, const GnsSetup& setup, double t);
InequalityReport verify_gns(const GridFunction& u, const Kernel& k, double t,
                            VerifyMode mode = VerifyMode::assumption_a);

// 2^{p*/p} |B(0,1)|^{-1/p-s/d}
double brezis_constant(int d, double p, double s);
InequalityReport verify_fractional_gns(const GridFunction& u, double s, double p);
InequalityReport verify_poincare(const GridFunction& u, const SetSpec& omega, const Kernel& k);
InequalityReport verify_friedrichs(const GridFunction& u, const SetSpec& omega, const Kernel& k);
InequalityReport verify_inverse_problem(double q, double c, double p, int d);

struct ChainReport {
    double lower = 0.0;      // proof_lower_bound
    double seminorm = 0.0;   // seminorm^p
    double seminorm_error = 0.0;
    double norm_p = 0.0;     // luxemburg^p
    double upper = 0.0;      // orlicz_upper_bound
    bool lower_ok = false;
    bool upper_ok = false;
};

ChainReport proof_chain(const GridFunction& u, const GnsSetup& setup, double t);

}  // namespace nlsob
