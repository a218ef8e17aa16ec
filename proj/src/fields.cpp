#include "nlsob/fields.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nlsob {

double GridFunction::at(int i, int j) const {
    return values[static_cast<std::size_t>(j) * nodes(0) + i];
}

GridFunction sample_1d(const std::function<double(double)>& f, double lo, double hi, int n,
                       Smoothness s) {
    GridFunction u;
    u.d = 1;
    u.lo[0] = lo;
    u.hi[0] = hi;
    u.n[0] = n;
    u.h = (hi - lo) / n;
    u.smooth = s;
    u.values.resize(n + 1);
    for (int i = 0; i <= n; ++i) u.values[i] = f(u.x(i));
    return u;
}

GridFunction sample_2d(const std::function<double(double, double)>& f, double lo_x,
                       double hi_x, double lo_y, double hi_y, int n, Smoothness s) {
    GridFunction u;
    u.d = 2;
    u.h = (hi_x - lo_x) / n;
    u.lo[0] = lo_x;
    u.lo[1] = lo_y;
    u.n[0] = n;
    u.n[1] = static_cast<int>(std::lround((hi_y - lo_y) / u.h));
    u.hi[0] = hi_x;
    u.hi[1] = lo_y + u.n[1] * u.h;
    u.smooth = s;
    u.values.resize(static_cast<std::size_t>(u.nodes(0)) * u.nodes(1));
    for (int j = 0; j < u.nodes(1); ++j)
        for (int i = 0; i < u.nodes(0); ++i)
            u.values[static_cast<std::size_t>(j) * u.nodes(0) + i] = f(u.x(i, 0), u.x(j, 1));
    return u;
}

GridFunction coarsen(const GridFunction& u) {
    if (u.n[0] % 2 || (u.d == 2 && u.n[1] % 2))
        throw std::invalid_argument("coarsen: odd cell count");
    GridFunction c = u;
    c.h = 2 * u.h;
    c.n[0] = u.n[0] / 2;
    c.n[1] = u.d == 2 ? u.n[1] / 2 : 0;
    c.values.clear();
    if (u.d == 1) {
        for (int i = 0; i <= c.n[0]; ++i) c.values.push_back(u.at(2 * i));
    } else {
        for (int j = 0; j <= c.n[1]; ++j)
            for (int i = 0; i <= c.n[0]; ++i) c.values.push_back(u.at(2 * i, 2 * j));
    }
    return c;
}

GridFunction abs_value(const GridFunction& u) {
    GridFunction a = u;
    for (double& v : a.values) v = std::abs(v);
    return a;
}

GridFunction scaled(const GridFunction& u, double c) {
    GridFunction a = u;
    for (double& v : a.values) v *= c;
    return a;
}

double lp_norm(const GridFunction& u, double p) {
    Accumulator acc;
    for (double v : u.values) acc.add(std::pow(std::abs(v), p));
    return std::pow(acc.value() * u.cell(), 1.0 / p);
}

double sup_norm(const GridFunction& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

double support_measure(const GridFunction& u) {
    std::size_t c = 0;
    for (double v : u.values) c += v != 0.0;
    return static_cast<double>(c) * u.cell();
}

namespace {

template <class F>
void for_nodes(const GridFunction& u, F&& f) {
    if (u.d == 1) {
        for (int i = 0; i < u.nodes(0); ++i) {
            const double x[2] = {u.x(i), 0.0};
            f(x, u.values[i]);
        }
    } else {
        for (int j = 0; j < u.nodes(1); ++j)
            for (int i = 0; i < u.nodes(0); ++i) {
                const double x[2] = {u.x(i, 0), u.x(j, 1)};
                f(x, u.at(i, j));
            }
    }
}

}  // namespace

double lp_norm_on(const GridFunction& u, double p, const SetSpec& omega) {
    Accumulator acc;
    for_nodes(u, [&](const double* x, double v) {
        if (omega.contains(x)) acc.add(std::pow(std::abs(v), p));
    });
    return std::pow(acc.value() * u.cell(), 1.0 / p);
}

double mean_on(const GridFunction& u, const SetSpec& omega) {
    Accumulator acc;
    std::size_t c = 0;
    for_nodes(u, [&](const double* x, double v) {
        if (omega.contains(x)) {
            acc.add(v);
            ++c;
        }
    });
    return c ? acc.value() / static_cast<double>(c) : 0.0;
}

namespace {

// sum |Du|^p over cells, optionally only where both ends lie in omega
double gradient_pp(const GridFunction& u, double p, const SetSpec* omega) {
    Accumulator acc;
    if (u.d == 1) {
        for (int i = 0; i < u.n[0]; ++i) {
            if (omega) {
                const double a[2] = {u.x(i), 0}, b[2] = {u.x(i + 1), 0};
                if (!omega->contains(a) || !omega->contains(b)) continue;
            }
            acc.add(std::pow(std::abs(u.values[i + 1] - u.values[i]) / u.h, p));
        }
        return acc.value() * u.h;
    }
    for (int j = 0; j < u.n[1]; ++j)
        for (int i = 0; i < u.n[0]; ++i) {
            if (omega) {
                bool in = true;
                for (int c = 0; c < 4; ++c) {
                    const double x[2] = {u.x(i + (c & 1), 0), u.x(j + (c >> 1), 1)};
                    in = in && omega->contains(x);
                }
                if (!in) continue;
            }
            const double gx =
                0.5 * (u.at(i + 1, j) - u.at(i, j) + u.at(i + 1, j + 1) - u.at(i, j + 1)) / u.h;
            const double gy =
                0.5 * (u.at(i, j + 1) - u.at(i, j) + u.at(i + 1, j + 1) - u.at(i + 1, j)) / u.h;
            acc.add(std::pow(std::hypot(gx, gy), p));
        }
    return acc.value() * u.cell();
}

double seminorm_1d(const GridFunction& u, const Kernel& k, const SetSpec* omega, int dc) {
    const int N = u.nodes(0);
    const double h = u.h;
    const double p = k.p;
    std::vector<char> in(N, 1);
    if (omega)
        for (int i = 0; i < N; ++i) {
            const double x[2] = {u.x(i), 0};
            in[i] = omega->contains(x);
        }
    auto G = [&](int j) {
        Accumulator acc;
        for (int i = 0; i + j < N; ++i)
            if (in[i] && in[i + j]) acc.add(std::pow(std::abs(u.values[i + j] - u.values[i]), p));
        double extra = 0.0;
        if (!omega) {
            // partners outside the box where u vanishes
            for (int i = 0; i < std::min(j, N); ++i) extra += std::pow(std::abs(u.values[i]), p);
            for (int i = std::max(0, N - j); i < N; ++i)
                extra += std::pow(std::abs(u.values[i]), p);
        }
        return (acc.value() + extra) * h;
    };
    const double delta = dc * h;
    Accumulator S;
    S.add(gradient_pp(u, p, omega) * shell_moment(k, p, 0.0, delta));
    // G linear between lattice shifts jh and (j+1)h
    std::vector<double> g(N + 1);
    for (int j = dc; j <= N; ++j) g[j] = G(j);
    for (int j = dc; j < N; ++j) {
        const double a = j * h, b = (j + 1) * h;
        const double m0 = shell_moment(k, 0.0, a, b);
        if (m0 == 0.0) continue;
        const double m1 = shell_moment(k, 1.0, a, b);
        const double w1 = (m1 - a * m0) / h;
        const double w0 = m0 - w1;
        S.add(g[j] * w0 + g[j + 1] * w1);
    }
    if (!omega) {
        auto tm = tail_mass(k, N * h);
        if (!tm.ok) return kInf;
        S.add(g[N] * tm.value);
    }
    return S.value();
}

double seminorm_2d(const GridFunction& u, const Kernel& k, const SetSpec* omega, int dc) {
    const int nx = u.nodes(0), ny = u.nodes(1);
    const double h = u.h;
    const double p = k.p;
    const std::size_t total = static_cast<std::size_t>(nx) * ny;
    std::vector<double> up(total);
    std::vector<char> in(total, 1);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::size_t id = static_cast<std::size_t>(j) * nx + i;
            up[id] = std::pow(std::abs(u.values[id]), p);
            if (omega) {
                const double x[2] = {u.x(i, 0), u.x(j, 1)};
                in[id] = omega->contains(x);
            }
        }
    double sum_all = 0.0;
    for (double v : up) sum_all += v;
    auto G = [&](int a, int b) {
        Accumulator acc;
        double src = 0.0, dst = 0.0;
        const int i0 = std::max(0, -a), i1 = std::min(nx, nx - a);
        const int j0 = std::max(0, -b), j1 = std::min(ny, ny - b);
        for (int j = j0; j < j1; ++j)
            for (int i = i0; i < i1; ++i) {
                const std::size_t s = static_cast<std::size_t>(j) * nx + i;
                const std::size_t t = static_cast<std::size_t>(j + b) * nx + (i + a);
                if (!in[s] || !in[t]) continue;
                acc.add(std::pow(std::abs(u.values[t] - u.values[s]), p));
                src += up[s];
                dst += up[t];
            }
        double g = acc.value();
        if (!omega) g += (sum_all - src) + (sum_all - dst);
        return g * h * h;
    };
    const double delta = dc * h;
    Accumulator S;
    S.add(gradient_pp(u, p, omega) * K_dp(2, p) * shell_moment(k, p, 0.0, delta));
    const int A = omega ? std::max(nx, ny) : nx + ny;
    const double R = A * h;
    const double g_inf = 2.0 * sum_all * h * h;
    constexpr int sub = 4;
    for (int b = 0; b <= A; ++b) {
        for (int a = -A; a <= A; ++a) {
            if (b == 0 && a <= 0) continue;  // half plane; mirrored shift carries the same G
            const double rs = h * std::hypot(a, b);
            if (rs > R) continue;
            double w = 0.0;
            if (rs >= 16.0 * h) {
                w = k(rs) * h * h;
            } else {
                // bilinear hat times nu, 4x4 midpoints per neighbouring cell
                const double q = 2.0 * h / (2 * sub);
                for (int y = 0; y < 2 * sub; ++y)
                    for (int x = 0; x < 2 * sub; ++x) {
                        const double ox = -h + (x + 0.5) * q, oy = -h + (y + 0.5) * q;
                        const double px = a * h + ox, py = b * h + oy;
                        const double r = std::hypot(px, py);
                        if (r < delta) continue;
                        const double hat = (1 - std::abs(ox) / h) * (1 - std::abs(oy) / h);
                        w += hat * k(r) * q * q;
                    }
            }
            if (w == 0.0) continue;
            const bool outside = !omega && (std::abs(a) >= nx || std::abs(b) >= ny);
            S.add(2.0 * w * (outside ? g_inf : G(a, b)));
        }
    }
    if (!omega) {
        auto tm = tail_mass(k, R);
        if (!tm.ok) return kInf;
        S.add(g_inf * tm.value);
    }
    return S.value();
}

NormResult seminorm_impl(const GridFunction& u, const Kernel& k, const SetSpec* omega,
                         const SeminormOptions& opt) {
    NormResult r;
    if (sup_norm(u) == 0.0) return r;
    auto eval = [&](const GridFunction& g) {
        return g.d == 1 ? seminorm_1d(g, k, omega, opt.delta_cells)
                        : seminorm_2d(g, k, omega, opt.delta_cells);
    };
    r.value = eval(u);
    r.iterations = 1;
    if (opt.refine && u.n[0] % 2 == 0 && (u.d == 1 || u.n[1] % 2 == 0) && u.n[0] >= 16) {
        const double coarse = eval(coarsen(u));
        r.error_estimate = std::abs(r.value - coarse);
        r.iterations = 2;
        r.flagged = r.error_estimate > 1e-3 * std::abs(r.value);
    }
    return r;
}

}  // namespace

double gradient_seminorm(const GridFunction& u, double p) {
    return std::pow(gradient_pp(u, p, nullptr), 1.0 / p);
}

NormResult nonlocal_seminorm(const GridFunction& u, const Kernel& k,
                             const SeminormOptions& opt) {
    return seminorm_impl(u, k, nullptr, opt);
}

NormResult nonlocal_seminorm_on(const GridFunction& u, const Kernel& k, const SetSpec& omega,
                                const SeminormOptions& opt) {
    return seminorm_impl(u, k, &omega, opt);
}

double K_dp(int d, double p) {
    if (d == 1) return 1.0;
    return std::tgamma(0.5 * d) * std::tgamma(0.5 * (p + 1)) /
           (std::sqrt(kPi) * std::tgamma(0.5 * (d + p)));
}

BbmReport bbm_limit_check(const GridFunction& u, double p, const std::vector<double>& s_list) {
    BbmReport rep;
    rep.gradient_p = std::pow(gradient_seminorm(u, p), p);
    rep.target = sphere_area(u.d) / p * K_dp(u.d, p) * rep.gradient_p;
    double prev = kInf;
    for (double s : s_list) {
        const Kernel k = fractional_kernel(u.d, p, s);
        const NormResult r = nonlocal_seminorm(u, k);
        const double wgt = s * (1 - s);
        rep.s.push_back(s);
        rep.weighted.push_back(wgt * r.value);
        rep.error.push_back(wgt * r.error_estimate);
        const double ratio = rep.target > 0 ? wgt * r.value / rep.target : 1.0;
        rep.ratio.push_back(ratio);
        const double dist = std::abs(ratio - 1.0);
        if (dist > prev) rep.monotone = false;
        prev = dist;
    }
    return rep;
}

double Rearranged::profile(double rho) const {
    const double m = ball_volume(rho, u.d);
    const double k = std::floor(m / cell);
    if (k >= static_cast<double>(sorted.size())) return 0.0;
    return sorted[static_cast<std::size_t>(k)];
}

double Rearranged::level_measure(double s) const {
    auto it = std::partition_point(sorted.begin(), sorted.end(), [&](double v) { return v > s; });
    return static_cast<double>(it - sorted.begin()) * cell;
}

Rearranged rearrange_function(const GridFunction& u) {
    Rearranged r;
    r.cell = u.cell();
    for (double v : u.values)
        if (v != 0.0) r.sorted.push_back(std::abs(v));
    std::sort(r.sorted.begin(), r.sorted.end(), std::greater<>());
    const double radius = eta(static_cast<double>(r.sorted.size()) * r.cell, u.d);
    const int half = static_cast<int>(std::ceil(radius / u.h)) + 1;
    GridFunction g;
    g.d = u.d;
    g.h = u.h;
    g.smooth = u.smooth;
    for (int a = 0; a < u.d; ++a) {
        g.n[a] = 2 * half - 1;
        g.lo[a] = -(half - 0.5) * u.h;
        g.hi[a] = (half - 0.5) * u.h;
    }
    r.u = g;
    if (u.d == 1) {
        for (int i = 0; i < g.nodes(0); ++i) r.u.values.push_back(r.profile(std::abs(g.x(i))));
    } else {
        for (int j = 0; j < g.nodes(1); ++j)
            for (int i = 0; i < g.nodes(0); ++i)
                r.u.values.push_back(r.profile(std::hypot(g.x(i, 0), g.x(j, 1))));
    }
    return r;
}

double level_measure(const GridFunction& u, double s, bool strict) {
    std::size_t c = 0;
    for (double v : u.values) {
        const double a = std::abs(v);
        c += strict ? a > s : a >= s;
    }
    return static_cast<double>(c) * u.cell();
}

void write_grid_csv(std::ostream& os, const GridFunction& u) {
    os << std::setprecision(17);
    os << "# d=" << u.d << " lo_x=" << u.lo[0] << " lo_y=" << u.lo[1] << " h=" << u.h
       << " nx=" << u.n[0] << " ny=" << u.n[1] << "\n";
    if (u.d == 1) {
        os << "x,u\n";
        for (int i = 0; i < u.nodes(0); ++i) os << u.x(i) << "," << u.values[i] << "\n";
        return;
    }
    for (int j = 0; j < u.nodes(1); ++j) {
        for (int i = 0; i < u.nodes(0); ++i) os << (i ? "," : "") << u.at(i, j);
        os << "\n";
    }
}

GridFunction read_grid_csv(std::istream& is) {
    GridFunction u;
    std::string line;
    bool header = false;
    std::vector<double> xs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const double v = std::stod(tok.substr(eq + 1));
                if (key == "d") u.d = static_cast<int>(v);
                if (key == "lo_x") u.lo[0] = v;
                if (key == "lo_y") u.lo[1] = v;
                if (key == "h") u.h = v;
                if (key == "nx") u.n[0] = static_cast<int>(v);
                if (key == "ny") u.n[1] = static_cast<int>(v);
            }
            header = true;
            continue;
        }
        if (line.rfind("x,", 0) == 0) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (u.d == 1) {
            if (row.size() != 2) throw std::runtime_error("grid csv: expected x,u");
            xs.push_back(row[0]);
            u.values.push_back(row[1]);
        } else {
            u.values.insert(u.values.end(), row.begin(), row.end());
        }
    }
    if (u.d == 1 && (!header || u.h == 0.0)) {
        if (xs.size() < 2) throw std::runtime_error("grid csv: too few samples");
        u.lo[0] = xs.front();
        u.n[0] = static_cast<int>(xs.size()) - 1;
        u.h = (xs.back() - xs.front()) / u.n[0];
    }
    u.hi[0] = u.lo[0] + u.n[0] * u.h;
    u.hi[1] = u.lo[1] + u.n[1] * u.h;
    const std::size_t expect =
        static_cast<std::size_t>(u.nodes(0)) * (u.d == 2 ? u.nodes(1) : 1);
    if (u.values.size() != expect) throw std::runtime_error("grid csv: size mismatch");
    return u;
}

}  // namespace nlsob
