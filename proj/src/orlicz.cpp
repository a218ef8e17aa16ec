#include "nlsob/orlicz.hpp"

#include <algorithm>
#include <cmath>

namespace nlsob {

double modular(const GridFunction& u, const YoungFunction& phi, double lambda) {
    Accumulator acc;
    for (double v : u.values) {
        if (v == 0.0) continue;
        const double f = phi(std::abs(v) / lambda);
        if (!std::isfinite(f)) return kInf;
        acc.add(f);
    }
    return acc.value() * u.cell();
}

Checked<NormResult> gauge_norm(const GridFunction& u, const YoungFunction& phi) {
    Checked<NormResult> out;
    const double top = sup_norm(u);
    if (top == 0.0) return out;
    const double m = support_measure(u);
    double hi = 10.0 * top / phi.inverse(1.0 / m);
    double lo = 0.1 * top / phi.inverse(1.0 / u.cell());
    for (int i = 0; i < 60 && modular(u, phi, hi) > 1.0; ++i) hi *= 10.0;
    for (int i = 0; i < 60 && modular(u, phi, lo) <= 1.0; ++i) lo /= 10.0;
    if (modular(u, phi, hi) > 1.0) {
        out.ok = false;
        out.reason = "modular never <= 1 on the search range";
        return out;
    }
    int it = 0;
    while (hi - lo > 1e-14 * hi && it < 400) {
        const double mid = 0.5 * (lo + hi);
        if (modular(u, phi, mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
        ++it;
    }
    out.value.value = hi;
    out.value.error_estimate = hi - lo;
    out.value.iterations = it;
    out.value.flagged = modular(u, phi, hi) < 1.0 - 1e-6;
    return out;
}

Checked<NormResult> luxemburg_norm(const GridFunction& u, const YoungFunction& phi) {
    if (phi.possibly_nonconvex) {
        Checked<NormResult> out;
        out.ok = false;
        out.reason = "possibly nonconvex Young function: apply the convex minorant first";
        return out;
    }
    return gauge_norm(u, phi);
}

double indicator_norm(const YoungFunction& phi, double measure) {
    return 1.0 / phi.inverse(1.0 / measure);
}

RescaleReport power_rescale_norm(const GridFunction& u, const YoungFunction& psi, double q) {
    RescaleReport rep;
    const YoungFunction bar = compose_power(psi, q);
    if (!is_convex(bar, 1e-9)) {
        rep.ok = false;
        rep.reason = "psi(t^q) not convex";
        return rep;
    }
    GridFunction uq = abs_value(u);
    for (double& v : uq.values) v = std::pow(v, q);
    const auto l = luxemburg_norm(u, bar);
    const auto r = luxemburg_norm(uq, psi);
    rep.lhs = l.value.value;
    rep.rhs = std::pow(r.value.value, 1.0 / q);
    rep.ok = l.ok && r.ok;
    if (!rep.ok) rep.reason = l.ok ? r.reason : l.reason;
    return rep;
}

Checked<double> embedding_bound(const YoungFunction& phi1, const YoungFunction& phi2, double c,
                                double t0, double domain_measure) {
    Checked<double> out;
    const bool finite = std::isfinite(domain_measure);
    const double from = finite ? t0 : 0.0;
    for (double t : phi1.ts()) {
        if (t < from) continue;
        if (phi1(t) > phi2(c * t) * (1.0 + 1e-12)) {
            out.ok = false;
            out.reason = "domination phi1(t) <= phi2(ct) fails";
            out.witness = {t};
            return out;
        }
    }
    const double T = finite ? phi1(t0) * domain_measure + 1.0 : 1.0;
    out.value = c * T;
    return out;
}

double sum_space_norm(const GridFunction& u, const YoungFunction& phi1,
                      const YoungFunction& phi2, int levels) {
    const double top = sup_norm(u);
    if (top == 0.0) return 0.0;
    double small = top;
    for (double v : u.values)
        if (v != 0.0) small = std::min(small, std::abs(v));
    std::vector<double> tau = log_grid(0.5 * small, top, levels);
    auto norm = [](const GridFunction& g, const YoungFunction& f) {
        return gauge_norm(g, f).value.value;
    };
    double best = std::min(norm(u, phi1), norm(u, phi2));
    for (double t : tau) {
        GridFunction lowc = u, highc = u, lowx = u, highx = u;
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            const double v = u.values[i], a = std::abs(v);
            lowc.values[i] = std::copysign(std::min(a, t), v);
            highc.values[i] = v - lowc.values[i];
            lowx.values[i] = a <= t ? v : 0.0;
            highx.values[i] = a <= t ? 0.0 : v;
        }
        best = std::min({best, norm(lowc, phi1) + norm(highc, phi2),
                         norm(lowc, phi2) + norm(highc, phi1), norm(lowx, phi1) + norm(highx, phi2),
                         norm(lowx, phi2) + norm(highx, phi1)});
    }
    return best;
}

}  // namespace nlsob
