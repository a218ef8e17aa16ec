#include "nlsob/young.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nlsob {

double YoungFunction::operator()(double t) const {
    if (!(t > 0.0)) return 0.0;
    return table(t);
}

double YoungFunction::inverse(double y) const { return table.inverse(y); }

double YoungFunction::phi_p(double s, double q) const {
    return (*this)(std::pow(s, 1.0 / q));
}

YoungFunction young_from_function(const std::function<double(double)>& f,
                                  const std::vector<double>& knots, const YoungGrid& g,
                                  double e_lo, double e_hi) {
    std::vector<double> t = merge_knots(log_grid(g.t_min, g.t_max, g.n), knots);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) y[i] = f(t[i]);
    if (std::isnan(e_lo)) e_lo = end_slope(t, y, false);
    if (std::isnan(e_hi)) e_hi = end_slope(t, y, true);
    YoungFunction phi;
    phi.table = LogLogTable(t, y, e_lo, e_hi);
    for (double k : knots)
        if (k > g.t_min && k < g.t_max) phi.knots.push_back(k);
    return phi;
}

YoungFunction power_young(double c, double q, const YoungGrid& g) {
    return young_from_function([&](double t) { return c * std::pow(t, q); }, {}, g, q, q);
}

YoungFunction log_family_young(double p, double a, const YoungGrid& g) {
    auto f = [&](double t) {
        const double x = std::pow(t, p);
        if (x < 1.0) return std::log1p(std::expm1(x) / (a + 1.0));
        return x + std::log1p(a * std::exp(-x)) - std::log(a + 1.0);
    };
    YoungFunction phi = young_from_function(f, {}, g, p, p);
    phi.p = p;
    phi.critical = true;
    return phi;
}

Checked<YoungFunction> critical_young(const TailProfile& w, const YoungGrid& g) {
    Checked<YoungFunction> out;
    if (!w.w.strictly_increasing(0.0)) {
        out.ok = false;
        out.reason = "w not invertible: flat region";
        return out;
    }
    // kinks of w become kinks of phi at t = 1/w(r)
    auto r = w.w.xs();
    std::vector<double> knots;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
        const double left = w.w.slope(std::sqrt(r[i - 1] * r[i]));
        const double right = w.w.slope(std::sqrt(r[i] * r[i + 1]));
        if (std::abs(left - right) > 0.02) knots.push_back(1.0 / w(r[i]));
    }
    std::sort(knots.begin(), knots.end());
    auto f = [&](double t) { return 1.0 / w.w.inverse(1.0 / t); };
    const double e_lo = 1.0 / w.w.e_hi();
    const double e_hi = 1.0 / w.w.e_lo();
    if (!(std::isfinite(e_lo) && std::isfinite(e_hi) && e_lo > 0 && e_hi > 0)) {
        out.ok = false;
        out.reason = "w saturates: phi undefined at the ends of the grid";
        return out;
    }
    try {
        out.value = young_from_function(f, knots, g, e_lo, e_hi);
    } catch (const std::invalid_argument& e) {
        out.ok = false;
        out.reason = std::string("phi not representable on the grid: ") + e.what();
        return out;
    }
    out.value.p = w.p;
    out.value.critical = true;
    return out;
}

namespace {

// largest relative excess of the middle sample over the chord, with its triple
std::pair<double, std::size_t> chord_excess(const std::vector<double>& s,
                                            const std::vector<double>& y) {
    double worst = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double chord = ((s[i + 1] - s[i]) * y[i - 1] + (s[i] - s[i - 1]) * y[i + 1]) /
                             (s[i + 1] - s[i - 1]);
        const double scale = std::max(y[i - 1], y[i + 1]);
        const double ex = (y[i] - chord) / scale;
        if (ex > worst) {
            worst = ex;
            at = i;
        }
    }
    return {worst, at};
}

}  // namespace

Checked<double> check_convexity_phi_p(const YoungFunction& phi, double p) {
    Checked<double> out;
    auto t = phi.ts();
    auto y = phi.values();
    std::vector<double> s(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) s[i] = std::pow(t[i], p);
    auto [ex, i] = chord_excess(s, y);
    out.value = ex;
    if (ex > 1e-9) {
        out.ok = false;
        out.reason = "phi(s^{1/p}) not convex";
        out.witness = {s[i - 1], s[i], s[i + 1]};
    }
    return out;
}

bool is_convex(const YoungFunction& phi, double rel_tol) {
    return chord_excess(phi.ts(), phi.values()).first <= rel_tol;
}

namespace {

bool theta_holds(const std::vector<double>& t, const std::vector<double>& y,
                 const YoungFunction& phi, double theta, double slack) {
    for (std::size_t j = 0; j < t.size(); ++j)
        for (std::size_t i = 0; i <= j; ++i)
            if (phi(theta * t[i] / t[j]) * y[j] > y[i] * (1.0 + slack)) return false;
    return true;
}

}  // namespace

Checked<double> growth_theta(const YoungFunction& phi, const ThetaOptions& opt) {
    Checked<double> out;
    const double e0 = phi.table.e_lo(), einf = phi.table.e_hi();
    if (e0 < einf * (1.0 - 1e-6)) {
        // phi(theta/t) phi(t) ~ t^{einf - e0} at s = 1 grows without bound
        out.ok = false;
        out.reason = "growth condition fails: exponent at 0 below exponent at infinity";
        double t = phi.ts().back();
        const double th = opt.theta_min;
        while (phi(th / t) * phi(t) <= phi(1.0) && t < 1e300) t *= 2.0;
        out.witness = {1.0, t};
        return out;
    }
    auto t = phi.ts();
    auto y = phi.values();
    auto cand = log_grid(opt.theta_min, opt.theta_max, opt.candidates);
    int best = -1;
    for (int i = opt.candidates - 1; i >= 0; --i) {
        if (theta_holds(t, y, phi, cand[i], opt.slack)) {
            best = i;
            break;
        }
    }
    if (best < 0) {
        out.ok = false;
        out.reason = "growth condition fails at the smallest candidate";
        const double th = cand.front();
        for (std::size_t j = 0; j < t.size() && out.witness.empty(); ++j)
            for (std::size_t i = 0; i <= j; ++i)
                if (phi(th * t[i] / t[j]) * y[j] > y[i] * (1.0 + opt.slack)) {
                    out.witness = {t[i], t[j]};
                    break;
                }
        return out;
    }
    if (best == opt.candidates - 1) {
        out.value = cand[best];
        return out;
    }
    double lo = std::log(cand[best]), hi = std::log(cand[best + 1]);
    for (int k = 0; k < opt.refine_steps; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (theta_holds(t, y, phi, std::exp(mid), opt.slack))
            lo = mid;
        else
            hi = mid;
    }
    out.value = std::exp(lo);
    return out;
}

YoungFunction conjugate(const YoungFunction& phi, int n) {
    auto t = phi.ts();
    auto y = phi.values();
    const std::size_t m = t.size();
    auto deriv = [&](std::size_t i) {
        const double x = i + 1 < m ? std::sqrt(t[i] * t[i + 1]) : t[i];
        return phi.table.slope(x) * y[i] / t[i];
    };
    const double ylo = deriv(0), yhi = deriv(m - 1);
    // a kink of phi at t0 becomes a linear piece of the conjugate between the one-sided slopes
    std::vector<double> kinks;
    for (double t0 : phi.knots)
        for (double x : {t0 * (1.0 - 1e-9), t0}) kinks.push_back(phi.table.slope(x) * phi(x) / x);
    std::vector<double> s = merge_knots(log_grid(ylo, yhi, n), kinks);
    std::vector<double> v(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::size_t best = 0;
        double bv = -kInf;
        for (std::size_t i = 0; i < m; ++i) {
            const double val = s[k] * t[i] - y[i];
            if (val > bv) {
                bv = val;
                best = i;
            }
        }
        const double a = t[best > 0 ? best - 1 : 0];
        const double b = t[std::min(best + 1, m - 1)];
        auto g = [&](double x) { return s[k] * x - phi(x); };
        const double x = golden_max(g, a, b);
        v[k] = std::max(bv, g(x));
    }
    // keep strictly positive samples only
    std::vector<double> ss, vv;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (v[k] > 0) {
            ss.push_back(s[k]);
            vv.push_back(v[k]);
        }
    const double e0 = phi.table.e_lo(), e1 = phi.table.e_hi();
    YoungFunction out;
    for (double k : kinks)
        if (k > ylo && k < yhi) out.knots.push_back(k);
    out.table = LogLogTable(ss, vv, e0 > 1 ? e0 / (e0 - 1) : end_slope(ss, vv, false),
                            e1 > 1 ? e1 / (e1 - 1) : end_slope(ss, vv, true));
    return out;
}

YoungFunction combine(const YoungFunction& a, const YoungFunction& b, CombineMode mode) {
    std::vector<double> t = a.ts();
    auto tb = b.ts();
    t.insert(t.end(), tb.begin(), tb.end());
    std::vector<double> knots = a.knots;
    knots.insert(knots.end(), b.knots.begin(), b.knots.end());
    std::sort(t.begin(), t.end());
    t = merge_knots({t.front(), t.back()}, t);
    // crossings of a - b become knots
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double d0 = a(t[i]) - b(t[i]), d1 = a(t[i + 1]) - b(t[i + 1]);
        if (d0 == 0.0 && i > 0) knots.push_back(t[i]);
        if (d0 * d1 < 0) {
            double lo = t[i], hi = t[i + 1];
            for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
                const double mid = std::sqrt(lo * hi);
                if ((a(mid) - b(mid)) * d0 > 0)
                    lo = mid;
                else
                    hi = mid;
            }
            knots.push_back(0.5 * (lo + hi));
        }
    }
    std::sort(knots.begin(), knots.end());
    t = merge_knots(t, knots);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        y[i] = mode == CombineMode::max ? std::max(a(t[i]), b(t[i])) : std::min(a(t[i]), b(t[i]));
    YoungFunction out;
    out.table = LogLogTable(t, y, end_slope(t, y, false), end_slope(t, y, true));
    out.knots = knots;
    out.p = a.p;
    if (mode == CombineMode::max) return out;
    out.possibly_nonconvex = true;
    if (mode == CombineMode::min) return out;
    return convex_minorant(out);
}

YoungFunction convex_minorant(const YoungFunction& phi) {
    auto t = phi.ts();
    auto y = phi.values();
    const double e0 = phi.table.e_lo();
    std::vector<double> v(t.size());
    Accumulator acc;
    acc.add(y[0] / e0);
    v[0] = acc.value();
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        // phi is a pure power on each cell, so int phi(s)/s ds is exact
        if (t[i + 1] > t[i]) {
            const double e = std::log(y[i + 1] / y[i]) / std::log(t[i + 1] / t[i]);
            acc.add(std::abs(e) < 1e-12 ? y[i] * std::log(t[i + 1] / t[i]) : (y[i + 1] - y[i]) / e);
        }
        v[i + 1] = acc.value();
    }
    YoungFunction out;
    out.table = LogLogTable(t, v, e0, phi.table.e_hi());
    out.knots = phi.knots;
    out.p = phi.p;
    return out;
}

YoungFunction compose_power(const YoungFunction& psi, double q) {
    auto s = psi.ts();
    auto y = psi.values();
    std::vector<double> t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) t[i] = std::pow(s[i], 1.0 / q);
    YoungFunction out;
    out.table = LogLogTable(t, y, psi.table.e_lo() * q, psi.table.e_hi() * q);
    for (double k : psi.knots) out.knots.push_back(std::pow(k, 1.0 / q));
    return out;
}

RateReport asymptotic_rates(const YoungFunction& phi, const Kernel& k,
                            const std::vector<double>& radii) {
    RateReport rep;
    const double p = phi.p > 0 ? phi.p : k.p;
    auto t = phi.ts();
    rep.ratio_high = phi(t.back()) / std::pow(t.back(), p);
    rep.ratio_low = phi(t.front()) / std::pow(t.front(), p);
    rep.integrable = k.origin_exponent() > -k.d && k.tail_exponent() < -k.d;
    if (rep.integrable) {
        rep.l1_norm = shell_moment(k, 0.0, 0.0, kInf);
        rep.high_rel_error = std::abs(rep.ratio_high - rep.l1_norm) / rep.l1_norm;
    }
    const double e0 = phi.table.e_lo(), e1 = phi.table.e_hi();
    rep.n_function = e0 > 1.0 && e1 > 1.0;
    rep.n_function_p = e0 / p > 1.0 && e1 / p > 1.0;
    for (double r : radii) {
        const double m = ball_volume(r, k.d);
        rep.residual_radii.push_back(r);
        rep.residual_lhs.push_back(std::pow(m, -1.0 / p) / phi.inverse(1.0 / m));
        rep.residual_rhs.push_back(std::pow(nu_sharp(k, m), 1.0 / p));
    }
    return rep;
}

void write_young_csv(std::ostream& os, const YoungFunction& phi) {
    os << std::setprecision(17);
    os << "# e_lo=" << phi.table.e_lo() << " e_hi=" << phi.table.e_hi() << " p=" << phi.p
       << " critical=" << (phi.critical ? 1 : 0) << "\n";
    os << "t,phi\n";
    auto t = phi.ts();
    auto y = phi.values();
    for (std::size_t i = 0; i < t.size(); ++i) os << t[i] << "," << y[i] << "\n";
}

YoungFunction read_young_csv(std::istream& is) {
    std::string line;
    double e_lo = kInf, e_hi = kInf, p = 0.0;
    int critical = 0;
    std::vector<double> t, y;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const double val = std::stod(tok.substr(eq + 1));
                if (key == "e_lo") e_lo = val;
                if (key == "e_hi") e_hi = val;
                if (key == "p") p = val;
                if (key == "critical") critical = static_cast<int>(val);
            }
            continue;
        }
        if (line.rfind("t,", 0) == 0) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("young csv: expected t,phi");
        t.push_back(std::stod(line.substr(0, comma)));
        y.push_back(std::stod(line.substr(comma + 1)));
    }
    if (std::isinf(e_lo)) e_lo = end_slope(t, y, false);
    if (std::isinf(e_hi)) e_hi = end_slope(t, y, true);
    YoungFunction phi;
    phi.table = LogLogTable(t, y, e_lo, e_hi);
    phi.p = p;
    phi.critical = critical != 0;
    return phi;
}

}  // namespace nlsob
