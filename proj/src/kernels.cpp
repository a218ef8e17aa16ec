#include "nlsob/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nlsob/fields.hpp"
#include "nlsob/young.hpp"

namespace nlsob {

namespace {

// int_a^b c rho^q drho, with a = 0 or b = inf allowed
double pow_int(double c, double q, double a, double b) {
    if (!(b > a) || c == 0.0) return 0.0;
    if (q == -1.0) {
        if (a == 0.0 || std::isinf(b)) return kInf;
        return c * std::log(b / a);
    }
    const double k = q + 1.0;
    if (a == 0.0 && k <= 0.0) return kInf;
    if (std::isinf(b) && k >= 0.0) return kInf;
    const double fb = std::isinf(b) ? 0.0 : std::pow(b, k);
    const double fa = a == 0.0 ? 0.0 : std::pow(a, k);
    return c * (fb - fa) / k;
}

constexpr double kLogRMin = 1e-8;
constexpr double kLogRMax = 1e6;

// smooth core of a non-power profile and the pure-power continuation outside it
struct Core {
    double lo, hi;
    double v_lo, v_hi;
    double e_lo, e_hi;
};

Core core_of(const Kernel& k) {
    Core c{};
    if (k.family == KernelFamily::log_family) {
        c.lo = eta(kLogRMin, k.d);
        c.hi = eta(kLogRMax, k.d);
        c.e_lo = 0.0;
        c.e_hi = -2.0 * k.d;
    } else {
        c.lo = k.table.x_front();
        c.hi = k.table.x_back();
        c.e_lo = k.table.e_lo();
        c.e_hi = k.table.e_hi();
    }
    c.hi = std::min(c.hi, k.support);
    c.v_lo = k(c.lo);
    c.v_hi = k.family == KernelFamily::log_family ? k(c.hi) : k.table(c.hi);
    return c;
}

}  // namespace

double gamma_s(int d, double p, double s) {
    const double cd = unit_ball_volume(d);
    return d * std::pow(cd, 1.0 + s * p / d) / (s * p);
}

double critical_exponent(int d, double p, double s) {
    const double inv = 1.0 / p - s / d;
    return inv > 0 ? 1.0 / inv : kInf;
}

double Kernel::operator()(double rho) const {
    if (!(rho > 0.0) || rho >= support) return rho >= support ? 0.0 : kInf;
    switch (family) {
        case KernelFamily::power: {
            const PowerPiece* pc = &pieces.front();
            for (const auto& q : pieces)
                if (q.start <= rho) pc = &q;
            return pc->coef * std::pow(rho, pc->exponent);
        }
        case KernelFamily::log_family:
            return log_family_nu_r(ball_volume(rho, d), a);
        case KernelFamily::table:
            return table(rho);
    }
    return 0.0;
}

std::vector<double> Kernel::breaks() const {
    std::vector<double> b;
    if (family == KernelFamily::power) {
        for (const auto& q : pieces)
            if (q.start > 0) b.push_back(q.start);
    } else if (family == KernelFamily::table) {
        for (double x : table.xs())
            if (x < support) b.push_back(x);
    }
    if (std::isfinite(support)) b.push_back(support);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double Kernel::origin_exponent() const {
    switch (family) {
        case KernelFamily::power: return pieces.front().exponent;
        case KernelFamily::log_family: return 0.0;
        case KernelFamily::table: return table.e_lo();
    }
    return 0.0;
}

double Kernel::tail_exponent() const {
    if (std::isfinite(support)) return -kInf;
    switch (family) {
        case KernelFamily::power: return pieces.back().exponent;
        case KernelFamily::log_family: return -2.0 * d;
        case KernelFamily::table: return table.e_hi();
    }
    return 0.0;
}

bool Kernel::nonincreasing() const {
    if (family == KernelFamily::power) {
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (pieces[i].exponent > 0 && i + 1 < pieces.size()) return false;
            if (pieces[i].exponent > 0 && std::isinf(support)) return false;
            if (i > 0) {
                const double r = pieces[i].start;
                const double left = pieces[i - 1].coef * std::pow(r, pieces[i - 1].exponent);
                const double right = pieces[i].coef * std::pow(r, pieces[i].exponent);
                if (right > left * (1 + 1e-14)) return false;
            }
        }
        return true;
    }
    if (family == KernelFamily::table) {
        if (table.e_lo() > 0 || table.e_hi() > 0) return false;
        auto y = table.ys();
        for (std::size_t i = 1; i < y.size(); ++i)
            if (y[i] > y[i - 1] * (1 + 1e-14)) return false;
        return true;
    }
    return true;
}

Kernel fractional_kernel(int d, double p, double s, double coef) {
    Kernel k;
    k.d = d;
    k.p = p;
    k.tag = "fractional";
    k.pieces = {{0.0, coef, -d - s * p}};
    return k;
}

Kernel max_fractional_kernel(int d, double p, double s1, double s2) {
    Kernel k;
    k.d = d;
    k.p = p;
    k.tag = "max-fractional";
    const double rb = eta(1.0, d);
    k.pieces = {{0.0, 1.0 / gamma_s(d, p, s2), -d - s2 * p},
                {rb, 1.0 / gamma_s(d, p, s1), -d - s1 * p}};
    k.components = {fractional_kernel(d, p, s1, 1.0 / gamma_s(d, p, s1)),
                    fractional_kernel(d, p, s2, 1.0 / gamma_s(d, p, s2))};
    return k;
}

Kernel min_fractional_kernel(int d, double p, double s1, double s2) {
    Kernel k;
    k.d = d;
    k.p = p;
    k.tag = "min-fractional";
    const double rb = eta(1.0, d);
    k.pieces = {{0.0, 1.0 / gamma_s(d, p, s1), -d - s1 * p},
                {rb, 1.0 / gamma_s(d, p, s2), -d - s2 * p}};
    k.components = {fractional_kernel(d, p, s1, 1.0 / gamma_s(d, p, s1)),
                    fractional_kernel(d, p, s2, 1.0 / gamma_s(d, p, s2))};
    return k;
}

Kernel ball_kernel(int d, double p, double radius) {
    Kernel k;
    k.d = d;
    k.p = p;
    k.tag = "ball";
    k.pieces = {{0.0, 1.0, 0.0}};
    k.support = radius;
    return k;
}

Kernel log_family_kernel(int d, double p, double a) {
    if (!(a > 0)) throw std::invalid_argument("log family needs a > 0");
    Kernel k;
    k.d = d;
    k.p = p;
    k.tag = "log";
    k.family = KernelFamily::log_family;
    k.a = a;
    return k;
}

Kernel tabulated_kernel(int d, double p, const std::vector<double>& radii,
                        const std::vector<double>& values, double e0, double e_inf,
                        double support) {
    Kernel k;
    k.d = d;
    k.p = p;
    k.tag = "tabulated";
    k.family = KernelFamily::table;
    k.table = LogLogTable(radii, values, e0, e_inf);
    k.support = support;
    return k;
}

double log_family_xi(double r, double a) {
    const double x = 1.0 / r;
    if (x > 1.0) return x + std::log((a + 1.0) - a * std::exp(-x));
    return std::log1p((a + 1.0) * std::expm1(x));
}

double log_family_nu_r(double r, double a) {
    const double x = 1.0 / r;
    const double b = a + 1.0;
    double g, num;
    if (x > 1.0) {
        const double em = std::exp(-x);
        g = x + std::log(b - a * em);
        const double gp = b / (b - a * em);
        num = g - x * gp;
    } else if (x > 1e-4) {
        const double e1 = std::expm1(x);
        g = std::log1p(b * e1);
        const double gp = b * (e1 + 1.0) / (1.0 + b * e1);
        num = g - x * gp;
    } else {
        // series of g(x) - x g'(x) about 0
        const double c2 = 0.5 * (b - b * b);
        const double c3 = b / 6.0 - 0.5 * b * b + b * b * b / 3.0;
        g = b * x + c2 * x * x + c3 * x * x * x;
        num = -c2 * x * x - 2.0 * c3 * x * x * x;
    }
    return x * x * num / (g * g);
}

double shell_moment(const Kernel& k, double m, double a, double b) {
    b = std::min(b, k.support);
    if (!(b > a)) return 0.0;
    const double S = sphere_area(k.d);
    if (k.family == KernelFamily::power) {
        Accumulator acc;
        for (std::size_t i = 0; i < k.pieces.size(); ++i) {
            const double lo = std::max(a, k.pieces[i].start);
            const double hi = std::min(b, i + 1 < k.pieces.size() ? k.pieces[i + 1].start : kInf);
            if (!(hi > lo)) continue;
            const double v = pow_int(k.pieces[i].coef * S, k.pieces[i].exponent + m + k.d - 1, lo, hi);
            if (std::isinf(v)) return kInf;
            acc.add(v);
        }
        return acc.value();
    }
    const Core c = core_of(k);
    Accumulator acc;
    if (a < c.lo) {
        const double coef = S * c.v_lo * std::pow(c.lo, -c.e_lo);
        const double v = pow_int(coef, c.e_lo + m + k.d - 1, a, std::min(b, c.lo));
        if (std::isinf(v)) return kInf;
        acc.add(v);
    }
    if (b > c.hi) {
        const double coef = S * c.v_hi * std::pow(c.hi, -c.e_hi);
        const double v = pow_int(coef, c.e_hi + m + k.d - 1, std::max(a, c.hi), b);
        if (std::isinf(v)) return kInf;
        acc.add(v);
    }
    const double lo = std::max(a, c.lo), hi = std::min(b, c.hi);
    if (hi > lo) {
        std::vector<double> br{lo};
        for (double x : k.breaks())
            if (x > lo && x < hi) br.push_back(x);
        br.push_back(hi);
        auto f = [&](double r) { return S * std::pow(r, m + k.d - 1) * k(r); };
        acc.add(log_simpson_pieces(f, br, 1e-10, 4).value);
    }
    return acc.value();
}

double shell_integral(const Kernel& k, const std::function<double(double)>& g, double a,
                      double b) {
    b = std::min(b, k.support);
    if (!(b > a) || !(a > 0) || std::isinf(b)) throw std::invalid_argument("shell_integral range");
    const double S = sphere_area(k.d);
    std::vector<double> br{a};
    for (double x : k.breaks())
        if (x > a && x < b) br.push_back(x);
    br.push_back(b);
    auto f = [&](double r) { return S * std::pow(r, k.d - 1) * g(r) * k(r); };
    return log_simpson_pieces(f, br, 1e-10, 4).value;
}

LevyResult levy_modular(const Kernel& k) {
    LevyResult r;
    if (k.origin_exponent() <= -k.d - k.p) {
        r.finite = false;
        r.value = kInf;
        r.reason = "not p-Levy: origin exponent <= -d-p";
        return r;
    }
    if (k.tail_exponent() >= -k.d) {
        r.finite = false;
        r.value = kInf;
        r.reason = "not p-Levy: tail exponent >= -d";
        return r;
    }
    r.value = shell_moment(k, k.p, 0.0, 1.0) + shell_moment(k, 0.0, 1.0, kInf);
    if (!std::isfinite(r.value)) {
        r.finite = false;
        r.reason = "not p-Levy: divergent integral";
    }
    return r;
}

Checked<double> tail_mass(const Kernel& k, double rho) {
    Checked<double> out;
    if (k.tail_exponent() >= -k.d) {
        out.ok = false;
        out.value = kInf;
        out.reason = "divergent tail";
        return out;
    }
    out.value = shell_moment(k, 0.0, rho, kInf);
    if (!std::isfinite(out.value)) {
        out.ok = false;
        out.reason = "divergent tail";
    }
    return out;
}

double TailProfile::wp(double r) const {
    const double v = (*this)(r);
    return std::pow(v, p);
}

namespace {

// smallest radius beyond which nu* stays below the level nu*(rho)
double sublevel_radius(const Kernel& ks, double rho) {
    const double level = ks(rho);
    if (!(level > 0)) return kInf;
    const double thr = level * (1.0 - 1e-12);
    double lo = rho, hi = rho * (1.0 + 1e-9);
    if (ks(hi) < thr) return rho;
    while (ks(hi) >= thr) {
        lo = hi;
        hi *= 2.0;
        if (hi >= ks.support) {
            hi = ks.support;
            break;
        }
        if (hi > 1e300) return kInf;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (ks(mid) >= thr)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace

double nu_sharp(const Kernel& k, double measure) {
    const Kernel ks = k.nonincreasing() ? k : rearrange_kernel(k);
    const double r0 = sublevel_radius(ks, eta(measure, k.d));
    if (std::isinf(r0)) return 0.0;
    return shell_moment(ks, 0.0, r0, kInf);
}

Checked<TailProfile> w_profile(const Kernel& k, WMode mode, const ProfileOptions& opt) {
    Checked<TailProfile> out;
    const int decades = static_cast<int>(std::lround(std::log10(opt.r_max / opt.r_min)));
    std::vector<double> r = log_grid(opt.r_min, opt.r_max, decades * opt.per_decade + 1);
    std::vector<double> knots;
    for (double b : k.breaks()) knots.push_back(ball_volume(b, k.d));
    r = merge_knots(r, knots);

    if (k.tail_exponent() >= -k.d) {
        out.ok = false;
        out.reason = "divergent tail: w undefined";
        return out;
    }
    const Kernel ks = (mode == WMode::sharp && !k.nonincreasing()) ? rearrange_kernel(k) : k;
    // tail masses accumulated from the outermost radius inwards
    std::vector<double> rho(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        rho[i] = mode == WMode::tail ? eta(r[i], k.d) : sublevel_radius(ks, eta(r[i], k.d));
    }
    std::vector<double> T(r.size());
    const std::size_t n = r.size();
    T[n - 1] = std::isinf(rho[n - 1]) ? 0.0 : shell_moment(ks, 0.0, rho[n - 1], kInf);
    for (std::size_t i = n - 1; i-- > 0;) {
        if (std::isinf(rho[i])) {
            T[i] = 0.0;
            continue;
        }
        const double hi = std::isinf(rho[i + 1]) ? kInf : rho[i + 1];
        T[i] = shell_moment(ks, 0.0, rho[i], hi) + (std::isinf(hi) ? 0.0 : T[i + 1]);
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(T[i] > 0) || !std::isfinite(T[i])) {
            out.ok = false;
            out.reason = "w saturates: tail mass vanishes";
            out.witness = {r[i], ball_volume(std::min(k.support, rho[i]), k.d)};
            return out;
        }
        w[i] = std::pow(r[i] * T[i], 1.0 / k.p);
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(w[i] > w[i - 1])) {
            out.ok = false;
            out.reason = "w not invertible: flat region";
            out.witness = {r[i - 1], r[i]};
            return out;
        }
    }
    out.value.w = LogLogTable(r, w, end_slope(r, w, false), end_slope(r, w, true));
    out.value.p = k.p;
    out.value.d = k.d;
    out.value.mode = mode;
    return out;
}

Checked<double> almost_decreasing_kappa(const Kernel& k, int samples) {
    Checked<double> out;
    double lo = 1e-6, hi = 1e6;
    if (k.family == KernelFamily::table) {
        lo = k.table.x_front();
        hi = k.table.x_back();
    }
    if (std::isfinite(k.support)) {
        hi = std::min(hi, k.support * (1.0 - 1e-9));
        lo = std::min(lo, hi * 1e-6);
    }
    std::vector<double> r = log_grid(lo, hi, samples);
    std::vector<double> extra;
    for (double b : k.breaks())
        if (b > lo && b < hi) {
            extra.push_back(b * (1.0 - 1e-9));
            extra.push_back(b);
        }
    r = merge_knots(r, extra, 1e-15);
    const std::size_t n = r.size();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = k(r[i]);
    std::vector<std::size_t> arg(n);
    arg[n - 1] = n - 1;
    for (std::size_t i = n - 1; i-- > 0;) arg[i] = v[i] >= v[arg[i + 1]] ? i : arg[i + 1];
    double kappa = 1.0;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = v[arg[i]];
        if (!(m > 0)) continue;
        const double ratio = v[i] / m;
        if (ratio < kappa) {
            kappa = ratio;
            wi = i;
            wj = arg[i];
        }
    }
    out.value = kappa;
    if (!(kappa > 1e-300)) {
        out.ok = false;
        out.reason = "kernel vanishes inside its support";
        out.witness = {r[wi], r[wj]};
    } else if (kappa < 1.0) {
        out.witness = {r[wi], r[wj]};
    }
    return out;
}

namespace {

Kernel radial_from_sorted(int d, double p, std::vector<std::pair<double, double>> cells) {
    // cells: (value, measure); sort decreasing and group exact ties
    std::stable_sort(cells.begin(), cells.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    std::vector<double> radii, vals;
    double cum = 0.0;
    std::size_t i = 0;
    while (i < cells.size() && cells[i].first > 0) {
        std::size_t j = i;
        double m = 0.0;
        while (j < cells.size() && cells[j].first == cells[i].first) m += cells[j++].second;
        radii.push_back(eta(cum + 0.5 * m, d));
        vals.push_back(cells[i].first);
        cum += m;
        i = j;
    }
    const double support = eta(cum, d);
    if (radii.size() < 2) {
        Kernel k = ball_kernel(d, p, support);
        k.pieces.front().coef = vals.empty() ? 0.0 : vals.front();
        k.tag = "rearranged";
        return k;
    }
    Kernel k = tabulated_kernel(d, p, radii, vals, 0.0, 0.0, support);
    k.tag = "rearranged";
    return k;
}

}  // namespace

Kernel rearrange_kernel(const Kernel& k, int samples) {
    if (k.nonincreasing()) return k;
    double lo = 1e-6, hi = 1e6;
    if (k.family == KernelFamily::table) {
        lo = k.table.x_front();
        hi = std::isfinite(k.support) ? k.support : k.table.x_back();
    }
    hi = std::min(hi, k.support);
    std::vector<double> r = merge_knots(log_grid(lo, hi, samples), k.breaks());
    std::vector<std::pair<double, double>> cells;
    cells.emplace_back(k(0.5 * r.front()), ball_volume(r.front(), k.d));
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        cells.emplace_back(k(std::sqrt(r[i] * r[i + 1])),
                           ball_volume(r[i + 1], k.d) - ball_volume(r[i], k.d));
    Kernel out = radial_from_sorted(k.d, k.p, std::move(cells));
    if (std::isinf(k.support) && out.family == KernelFamily::table) {
        // continue past the sampled core with the original tail
        auto x = out.table.xs(), y = out.table.ys();
        out = tabulated_kernel(k.d, k.p, x, y, 0.0, k.tail_exponent(), kInf);
        out.tag = "rearranged";
    }
    return out;
}

Kernel rearrange_kernel(const GridFunction& g, double p) {
    std::vector<std::pair<double, double>> cells;
    cells.reserve(g.values.size());
    for (double v : g.values) cells.emplace_back(std::max(0.0, v), g.cell());
    return radial_from_sorted(g.d, p, std::move(cells));
}

double kernel_level_measure(const Kernel& k, double s, int samples) {
    if (k.nonincreasing()) {
        double lo = 0.0, hi = std::isfinite(k.support) ? k.support : 1.0;
        if (std::isinf(k.support))
            while (k(hi) > s && hi < 1e300) hi *= 2.0;
        if (!(k(1e-300) > s)) return 0.0;
        for (int i = 0; i < 400 && (hi - lo) > 1e-15 * hi; ++i) {
            const double mid = lo == 0.0 ? hi * 1e-3 : 0.5 * (lo + hi);
            if (k(mid) > s)
                lo = mid;
            else
                hi = mid;
        }
        return ball_volume(0.5 * (lo + hi), k.d);
    }
    double lo = 1e-6, hi = std::min(1e6, k.support);
    if (k.family == KernelFamily::table) {
        lo = k.table.x_front();
        hi = std::isfinite(k.support) ? k.support : k.table.x_back();
    }
    std::vector<double> r = merge_knots(log_grid(lo, hi, samples), k.breaks());
    double m = k(0.5 * r.front()) > s ? ball_volume(r.front(), k.d) : 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (k(std::sqrt(r[i] * r[i + 1])) > s)
            m += ball_volume(r[i + 1], k.d) - ball_volume(r[i], k.d);
    return m;
}

double SetSpec::measure() const {
    double m = 0.0;
    for (const auto& b : boxes)
        m += d == 1 ? (b.hi[0] - b.lo[0]) : (b.hi[0] - b.lo[0]) * (b.hi[1] - b.lo[1]);
    for (const auto& b : balls) m += ball_volume(b.r, d);
    return m;
}

namespace {

double farthest(const SetSpec& s, const double* x) {
    double best = 0.0;
    for (const auto& b : s.boxes) {
        for (int c = 0; c < (s.d == 1 ? 2 : 4); ++c) {
            const double px = (c & 1) ? b.hi[0] : b.lo[0];
            const double py = s.d == 1 ? 0.0 : ((c & 2) ? b.hi[1] : b.lo[1]);
            const double dy = s.d == 1 ? 0.0 : py - x[1];
            best = std::max(best, std::hypot(px - x[0], dy));
        }
    }
    for (const auto& b : s.balls) {
        const double dy = s.d == 1 ? 0.0 : b.c[1] - x[1];
        best = std::max(best, std::hypot(b.c[0] - x[0], dy) + b.r);
    }
    return best;
}

}  // namespace

double SetSpec::diameter() const {
    double best = 0.0;
    for (const auto& b : boxes) {
        for (int c = 0; c < (d == 1 ? 2 : 4); ++c) {
            double pt[2] = {(c & 1) ? b.hi[0] : b.lo[0], d == 1 ? 0.0 : ((c & 2) ? b.hi[1] : b.lo[1])};
            best = std::max(best, farthest(*this, pt));
        }
    }
    for (const auto& b : balls) {
        double pt[2] = {b.c[0], d == 1 ? 0.0 : b.c[1]};
        best = std::max(best, farthest(*this, pt) + b.r);
    }
    return best;
}

bool SetSpec::contains(const double* x) const {
    for (const auto& b : boxes) {
        bool in = x[0] >= b.lo[0] && x[0] < b.hi[0];
        if (d == 2) in = in && x[1] >= b.lo[1] && x[1] < b.hi[1];
        if (in) return true;
    }
    for (const auto& b : balls) {
        const double dy = d == 1 ? 0.0 : x[1] - b.c[1];
        if (std::hypot(x[0] - b.c[0], dy) < b.r) return true;
    }
    return false;
}

SetSpec interval_set(double a, double b) {
    SetSpec s;
    s.d = 1;
    s.boxes.push_back({{a, 0.0}, {b, 0.0}});
    return s;
}

SetSpec box_set(double x0, double x1, double y0, double y1) {
    SetSpec s;
    s.d = 2;
    s.boxes.push_back({{x0, y0}, {x1, y1}});
    return s;
}

SetSpec ball_set(int d, double cx, double cy, double r) {
    SetSpec s;
    s.d = d;
    s.balls.push_back({{cx, cy}, r});
    return s;
}

namespace {

// 1-d: exact integration over the complement intervals
double exterior_1d(const Kernel& k, const SetSpec& set, double x) {
    std::vector<std::pair<double, double>> iv;
    for (const auto& b : set.boxes) iv.emplace_back(b.lo[0], b.hi[0]);
    for (const auto& b : set.balls) iv.emplace_back(b.c[0] - b.r, b.c[0] + b.r);
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> comp;
    double cur = -kInf;
    for (const auto& [a, b] : iv) {
        if (a > cur) comp.emplace_back(cur, a);
        cur = std::max(cur, b);
    }
    comp.emplace_back(cur, kInf);
    Accumulator acc;
    for (const auto& [a, b] : comp) {
        // distances from x covered by [a,b]
        if (x > a && x < b) return kInf * (k.origin_exponent() <= -1 ? 1 : 0) +
                                   (k.origin_exponent() <= -1 ? 0.0 : kInf);
        const double d0 = x <= a ? a - x : x - b;
        const double d1 = x <= a ? b - x : x - a;
        acc.add(0.5 * shell_moment(k, 0.0, d0, d1));
    }
    return acc.value();
}

double exterior_2d(const Kernel& k, const SetSpec& set, const double* x, int n, double R) {
    const double h = 2.0 * R / n;
    Accumulator acc;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double c[2] = {x[0] - R + (i + 0.5) * h, x[1] - R + (j + 0.5) * h};
            const double r = std::hypot(c[0] - x[0], c[1] - x[1]);
            if (r >= R || set.contains(c)) continue;
            acc.add(k(r) * h * h);
        }
    }
    return acc.value() + shell_moment(k, 0.0, R, kInf);
}

}  // namespace

ExteriorReport exterior_mass_bound(const Kernel& k, const SetSpec& set, const double* x,
                                   int samples) {
    ExteriorReport rep;
    const double m = set.measure();
    auto kap = almost_decreasing_kappa(k);
    rep.kappa = kap.ok ? kap.value : 0.0;
    rep.lemma_bound = rep.kappa * rep.kappa * shell_moment(k, 0.0, eta(m, set.d), kInf);
    rep.sharp_bound = nu_sharp(k, m);
    const bool inside = set.contains(x);
    const bool singular = k.origin_exponent() <= -set.d;
    if (!inside && singular) {
        rep.value = kInf;
    } else if (set.d == 1) {
        if (!inside) {
            // x in the complement: nu integrable at the origin here
            rep.value = exterior_1d(k, set, x[0]);
        } else {
            rep.value = exterior_1d(k, set, x[0]);
        }
    } else {
        const double R = 1.01 * farthest(set, x);
        const double fine = exterior_2d(k, set, x, samples, R);
        const double coarse = exterior_2d(k, set, x, samples / 2, R);
        rep.value = fine;
        rep.error = std::abs(fine - coarse);
        rep.converged = rep.error <= 0.01 * std::max(rep.lemma_bound, rep.sharp_bound) ||
                        rep.error <= 1e-8 * std::abs(fine);
    }
    rep.lemma_margin = rep.value - rep.lemma_bound;
    rep.sharp_margin = rep.value - rep.sharp_bound;
    return rep;
}

Checked<Kernel> kernel_from_young(const YoungFunction& phi, double p, int d) {
    Checked<Kernel> out;
    auto t = phi.ts();
    auto v = phi.values();
    const std::size_t n = t.size();
    // nodes in increasing r = 1/phi(t)
    std::vector<double> lr(n), f(n);
    std::vector<char> knot(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = n - 1 - i;
        lr[i] = -std::log(v[src]);
        f[i] = v[src] / std::pow(t[src], p);
        for (double kn : phi.knots)
            if (std::abs(t[src] / kn - 1.0) < 1e-12) knot[i] = 1;
    }
    // smooth segments between knots
    std::vector<std::size_t> seg_start(n), seg_end(n);
    {
        std::size_t s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && knot[i]) {
                for (std::size_t j = s; j < i; ++j) seg_end[j] = i;
                s = i;
            }
            seg_start[i] = s;
        }
        for (std::size_t j = s; j < n; ++j) seg_end[j] = n - 1;
    }
    auto dlogf = [&](std::size_t i, std::size_t a, std::size_t b) {
        // stencil of up to 5 nodes inside [a,b] around i
        const std::size_t len = std::min<std::size_t>(5, b - a + 1);
        std::size_t lo = i >= a + len / 2 ? i - len / 2 : a;
        if (lo + len - 1 > b) lo = b + 1 - len;
        std::vector<double> xs, ys;
        for (std::size_t j = lo; j < lo + len; ++j) {
            xs.push_back(lr[j]);
            ys.push_back(std::log(f[j]));
        }
        auto w = fd_weights(lr[i], xs, 1);
        double s = 0.0;
        for (std::size_t j = 0; j < len; ++j) s += w[j] * ys[j];
        return s;
    };
    std::vector<double> radii, vals;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::exp(lr[i]);
        std::vector<std::pair<std::size_t, std::size_t>> sides;
        if (knot[i] && i > 0 && i + 1 < n) {
            sides = {{seg_start[i - 1], i}, {i, seg_end[i]}};
        } else {
            sides = {{seg_start[i], seg_end[i]}};
        }
        for (auto [a, b] : sides) {
            const double slope = dlogf(i, a, b);
            const double nu = -(f[i] / r) * slope;
            const double scale = f[i] / r;
            if (nu < -1e-9 * scale) {
                out.ok = false;
                out.reason = "negative kernel from non-monotone w^p(r)/r";
                out.witness = {eta(r, d)};
                return out;
            }
            if (!(nu > 0)) {
                out.ok = false;
                out.reason = "kernel vanishes: w^p(r)/r locally constant";
                out.witness = {eta(r, d)};
                return out;
            }
            radii.push_back(eta(r, d));
            vals.push_back(nu);
        }
    }
    out.value = tabulated_kernel(d, p, radii, vals, end_slope(radii, vals, false),
                                 end_slope(radii, vals, true));
    out.value.tag = "from-young";
    return out;
}

}  // namespace nlsob
