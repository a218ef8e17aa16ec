#include "nlsob/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlsob {

void InequalityReport::settle() {
    pass = !indeterminate && std::isfinite(lhs) && margin() >= -tolerance;
}

const char* to_string(VerifyMode m) {
    return m == VerifyMode::assumption_a ? "a" : "mr2";
}

const char* to_string(GnsStrategy s) {
    switch (s) {
        case GnsStrategy::direct: return "direct";
        case GnsStrategy::per_component: return "per-component";
        case GnsStrategy::minorant: return "minorant";
    }
    return "";
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// sup over radii of max_i nu_i / nu; power pieces make the ratio monotone between breaks
double domination_constant(const Kernel& k) {
    std::vector<double> r = log_grid(1e-8, 1e8, 257);
    for (double b : k.breaks()) {
        r.push_back(b * (1 - 1e-12));
        r.push_back(b);
    }
    std::sort(r.begin(), r.end());
    double c = 0.0;
    for (double x : r) {
        double m = 0.0;
        for (const auto& comp : k.components) m = std::max(m, comp(x));
        const double v = k(x);
        c = std::max(c, v > 0 ? m / v : kInf);
    }
    for (const auto& comp : k.components) {
        if (comp.origin_exponent() < k.origin_exponent() - 1e-12) return kInf;
        if (comp.tail_exponent() > k.tail_exponent() + 1e-12) return kInf;
    }
    return c;
}

double root_error(double value, double err, double p) {
    if (!(value > 0)) return 0.0;
    return std::pow(value, 1.0 / p - 1.0) * err / p;
}

void echo_kernel(InequalityReport& r, const Kernel& k) {
    r.params.emplace_back("kernel", k.tag);
    r.params.emplace_back("d", std::to_string(k.d));
    r.params.emplace_back("p", fmt(k.p));
}

}  // namespace

Checked<GnsSetup> prepare_gns(const Kernel& k, VerifyMode mode) {
    Checked<GnsSetup> out;
    GnsSetup& s = out.value;
    s.kernel = k;
    s.mode = mode;
    auto w = w_profile(k, mode == VerifyMode::main_result2 ? WMode::sharp : WMode::tail);
    if (!w.ok) {
        out.ok = false;
        out.reason = w.reason;
        out.witness = w.witness;
        return out;
    }
    s.w = w.value;
    auto raw = critical_young(s.w);
    if (!raw.ok) {
        out.ok = false;
        out.reason = raw.reason;
        return out;
    }
    s.raw_phi = raw.value;
    if (mode == VerifyMode::main_result2) {
        s.kappa = 1.0;
    } else {
        auto kap = almost_decreasing_kappa(k);
        if (!kap.ok) {
            out.ok = false;
            out.reason = kap.reason;
            out.witness = kap.witness;
            return out;
        }
        s.kappa = kap.value;
    }
    if (!check_convexity_phi_p(s.raw_phi, k.p).ok) {
        s.strategy = GnsStrategy::minorant;
        s.phi = convex_minorant(s.raw_phi);
        s.phi.p = k.p;
        auto th = growth_theta(s.phi);
        if (!th.ok) {
            out.ok = false;
            out.reason = "minorant: " + th.reason;
            out.witness = th.witness;
            return out;
        }
        s.theta = th.value;
        return out;
    }
    s.phi = s.raw_phi;
    auto th = growth_theta(s.phi);
    if (th.ok) {
        s.theta = th.value;
        return out;
    }
    if (k.components.empty()) {
        out.ok = false;
        out.reason = th.reason;
        out.witness = th.witness;
        return out;
    }
    s.strategy = GnsStrategy::per_component;
    s.c2 = domination_constant(k);
    if (!std::isfinite(s.c2)) {
        out.ok = false;
        out.reason = "components not dominated by the kernel";
        return out;
    }
    for (const auto& comp : k.components) {
        auto wc = w_profile(comp, WMode::tail);
        if (!wc.ok) {
            out.ok = false;
            out.reason = "component: " + wc.reason;
            return out;
        }
        auto pc = critical_young(wc.value);
        auto tc = pc.ok ? growth_theta(pc.value) : Checked<double>{0.0, false, pc.reason, {}};
        if (!tc.ok) {
            out.ok = false;
            out.reason = "component: " + tc.reason;
            return out;
        }
        s.comp_phi.push_back(pc.value);
        s.comp_theta.push_back(tc.value);
    }
    return out;
}

Checked<double> theta_constant(double t, double p, double kappa, double theta,
                               const YoungFunction& phi) {
    Checked<double> out;
    const double f = phi(theta / t);
    const double base = 2.0 * kappa * kappa * c_p(t, p) * f;
    if (!(base > 1e-300)) {
        out.ok = false;
        out.reason = "phi(theta/t) vanishes: constant infinite";
        out.value = kInf;
        return out;
    }
    out.value = t * std::pow(base, -1.0 / p);
    return out;
}

InequalityReport verify_gns(const GridFunction& u, const GnsSetup& setup, double t) {
    InequalityReport r;
    r.id = "gns";
    echo_kernel(r, setup.kernel);
    r.params.emplace_back("mode", to_string(setup.mode));
    r.params.emplace_back("strategy", to_string(setup.strategy));
    r.params.emplace_back("t", fmt(t));
    const double p = setup.kernel.p;
    double C = 0.0;
    if (setup.strategy == GnsStrategy::per_component) {
        double m = 0.0;
        for (std::size_t i = 0; i < setup.comp_phi.size(); ++i) {
            auto th = theta_constant(t, p, 1.0, setup.comp_theta[i], setup.comp_phi[i]);
            if (!th.ok) {
                r.indeterminate = true;
                r.notes = th.reason;
                r.settle();
                return r;
            }
            m = std::max(m, th.value);
        }
        C = 2.0 * m * std::pow(setup.c2, 1.0 / p);
        r.extra.emplace_back("c2", setup.c2);
    } else {
        auto th = theta_constant(t, p, setup.kappa, setup.theta, setup.phi);
        if (!th.ok) {
            r.indeterminate = true;
            r.notes = th.reason;
            r.settle();
            return r;
        }
        C = th.value;
    }
    r.constant = C;
    r.extra.emplace_back("theta", setup.theta);
    r.extra.emplace_back("kappa", setup.kappa);
    if (sup_norm(u) == 0.0) {
        r.settle();
        return r;
    }
    const auto lux = luxemburg_norm(abs_value(u), setup.phi);
    if (!lux.ok) {
        r.indeterminate = true;
        r.notes = lux.reason;
        r.settle();
        return r;
    }
    const auto S = nonlocal_seminorm(u, setup.kernel);
    r.lhs = lux.value.value;
    r.rhs = C * std::pow(S.value, 1.0 / p);
    const double rhs_err = C * root_error(S.value, S.error_estimate, p);
    r.tolerance = std::max(1e-6, 2.0 * (lux.value.error_estimate + rhs_err));
    r.extra.emplace_back("seminorm_p", S.value);
    r.extra.emplace_back("seminorm_error", S.error_estimate);
    if (S.flagged) r.notes = "seminorm refinement change above 1e-3";
    r.settle();
    return r;
}

InequalityReport verify_gns(const GridFunction& u, const Kernel& k, double t, VerifyMode mode) {
    auto setup = prepare_gns(k, mode);
    if (!setup.ok) {
        InequalityReport r;
        r.id = "gns";
        echo_kernel(r, k);
        r.indeterminate = true;
        r.notes = setup.reason;
        r.settle();
        return r;
    }
    return verify_gns(u, setup.value, t);
}

double brezis_constant(int d, double p, double s) {
    const double ps = critical_exponent(d, p, s);
    return std::pow(2.0, ps / p) * std::pow(unit_ball_volume(d), -1.0 / p - s / d);
}

InequalityReport verify_fractional_gns(const GridFunction& u, double s, double p) {
    InequalityReport r;
    r.id = "fractional-gns";
    r.params.emplace_back("s", fmt(s));
    r.params.emplace_back("p", fmt(p));
    r.params.emplace_back("d", std::to_string(u.d));
    const double inv = 1.0 / p - s / u.d;
    if (!(inv > 0)) {
        r.indeterminate = true;
        r.notes = "refused: 1/p - s/d <= 0";
        r.settle();
        return r;
    }
    const double ps = 1.0 / inv;
    r.constant = brezis_constant(u.d, p, s);
    if (sup_norm(u) == 0.0) {
        r.settle();
        return r;
    }
    const auto S = nonlocal_seminorm(u, fractional_kernel(u.d, p, s));
    r.lhs = lp_norm(u, ps);
    r.rhs = r.constant * std::pow(S.value, 1.0 / p);
    r.tolerance = std::max(1e-6, 2.0 * r.constant * root_error(S.value, S.error_estimate, p));
    r.extra.emplace_back("seminorm_p", S.value);
    r.settle();
    return r;
}

InequalityReport verify_poincare(const GridFunction& u, const SetSpec& omega, const Kernel& k) {
    InequalityReport r;
    r.id = "poincare";
    echo_kernel(r, k);
    r.params.emplace_back("omega_measure", fmt(omega.measure()));
    const double p = k.p;
    const double R = omega.diameter();
    auto kap = almost_decreasing_kappa(k);
    const double nuR = k(R);
    if (!kap.ok || !(nuR > 0)) {
        r.indeterminate = true;
        r.notes = !kap.ok ? kap.reason : "refused: nu(R) = 0";
        r.settle();
        return r;
    }
    r.constant = std::pow(kap.value * omega.measure() * nuR, -1.0 / p);
    GridFunction v = u;
    const double mean = mean_on(u, omega);
    for (double& x : v.values) x -= mean;
    r.lhs = lp_norm_on(v, p, omega);
    const auto S = nonlocal_seminorm_on(u, k, omega);
    r.rhs = r.constant * std::pow(S.value, 1.0 / p);
    r.tolerance = std::max(1e-6, 2.0 * r.constant * root_error(S.value, S.error_estimate, p));
    r.extra.emplace_back("mean", mean);
    r.extra.emplace_back("seminorm_p", S.value);
    r.settle();
    return r;
}

InequalityReport verify_friedrichs(const GridFunction& u, const SetSpec& omega, const Kernel& k) {
    InequalityReport r;
    r.id = "friedrichs";
    echo_kernel(r, k);
    r.params.emplace_back("omega_measure", fmt(omega.measure()));
    const double p = k.p;
    const double ns = nu_sharp(k, omega.measure());
    if (!(ns > 0)) {
        r.indeterminate = true;
        r.notes = "refused: nu_sharp(|Omega|) = 0";
        r.settle();
        return r;
    }
    r.constant = std::pow(2.0 * ns, -1.0 / p);
    r.lhs = lp_norm_on(u, p, omega);
    if (sup_norm(u) == 0.0) {
        r.settle();
        return r;
    }
    const auto S = nonlocal_seminorm(u, k);
    r.rhs = r.constant * std::pow(S.value, 1.0 / p);
    r.tolerance = std::max(1e-6, 2.0 * r.constant * root_error(S.value, S.error_estimate, p));
    r.extra.emplace_back("nu_sharp", ns);
    r.extra.emplace_back("seminorm_p", S.value);
    r.settle();
    return r;
}

InequalityReport verify_inverse_problem(double q, double c, double p, int d) {
    InequalityReport r;
    r.id = "inverse";
    r.params.emplace_back("q", fmt(q));
    r.params.emplace_back("c", fmt(c));
    r.params.emplace_back("p", fmt(p));
    r.params.emplace_back("d", std::to_string(d));
    if (!(1.0 / q < 1.0 / p) || !(1.0 / p - 1.0 / d < 1.0 / q)) {
        r.indeterminate = true;
        r.notes = "refused: need 1/p - 1/d < 1/q < 1/p";
        r.settle();
        return r;
    }
    const double s = d / p - d / q;
    const double e_target = -d - s * p;
    const double c_target =
        std::pow(c, p / q) * (1.0 - p / q) * std::pow(unit_ball_volume(d), p / q - 2.0);
    auto k = kernel_from_young(power_young(c, q), p, d);
    if (!k.ok) {
        r.indeterminate = true;
        r.notes = k.reason;
        r.settle();
        return r;
    }
    auto x = k.value.table.xs(), y = k.value.table.ys();
    // middle half of the radius range
    const std::size_t n = x.size();
    std::vector<double> xm(x.begin() + n / 4, x.begin() + 3 * n / 4);
    std::vector<double> ym(y.begin() + n / 4, y.begin() + 3 * n / 4);
    auto [e, coef] = fit_power(xm, ym);
    const double de = std::abs(e - e_target) / 1e-4;
    const double dc = std::abs(coef / c_target - 1.0) / 1e-3;
    r.lhs = std::max(de, dc);
    r.rhs = 1.0;
    r.constant = coef;
    r.tolerance = 0.0;
    r.extra.emplace_back("exponent", e);
    r.extra.emplace_back("exponent_target", e_target);
    r.extra.emplace_back("coefficient", coef);
    r.extra.emplace_back("coefficient_target", c_target);
    r.notes = "lhs = max(|de|/1e-4, |dc/c|/1e-3)";
    r.settle();
    return r;
}

ChainReport proof_chain(const GridFunction& u, const GnsSetup& setup, double t) {
    ChainReport c;
    const double p = setup.kernel.p;
    const GridFunction a = abs_value(u);
    auto dec = dyadic_decompose(a, t);
    const auto S = nonlocal_seminorm(u, setup.kernel);
    c.seminorm = S.value;
    c.seminorm_error = S.error_estimate;
    c.lower = proof_lower_bound(dec.value, setup.w, setup.kappa);
    const YoungFunction& phi =
        setup.strategy == GnsStrategy::minorant ? setup.phi : setup.raw_phi;
    const auto lux = luxemburg_norm(a, phi);
    c.norm_p = std::pow(lux.value.value, p);
    c.upper = orlicz_upper_bound(dec.value, phi, p);
    const double tol_s = std::max(1e-6, 2.0 * S.error_estimate);
    const double tol_n = std::max(1e-6, 2.0 * p * c.norm_p * lux.value.error_estimate /
                                            std::max(lux.value.value, 1e-300));
    c.lower_ok = c.lower <= c.seminorm + tol_s;
    c.upper_ok = lux.ok && c.norm_p <= c.upper + tol_n;
    return c;
}

}  // namespace nlsob
