#include "nlsob/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlsob {

double unit_ball_volume(int d) {
    return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double sphere_area(int d) { return d * unit_ball_volume(d); }

double eta(double r, int d) { return std::pow(r / unit_ball_volume(d), 1.0 / d); }

double ball_volume(double rho, int d) { return unit_ball_volume(d) * std::pow(rho, d); }

void Accumulator::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

LogLogTable::LogLogTable(const std::vector<double>& x, const std::vector<double>& y, double e_lo,
                         double e_hi)
    : e_lo_(e_lo), e_hi_(e_hi) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("LogLogTable: need at least two samples");
    lx_.reserve(x.size());
    ly_.reserve(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw std::invalid_argument("LogLogTable: samples must be positive and finite");
        if (i > 0 && x[i] < x[i - 1])
            throw std::invalid_argument("LogLogTable: abscissae must be nondecreasing");
        lx_.push_back(std::log(x[i]));
        ly_.push_back(std::log(y[i]));
    }
}

double LogLogTable::operator()(double x) const {
    if (x <= 0.0) return e_lo_ > 0 ? 0.0 : (e_lo_ == 0 ? std::exp(ly_.front()) : kInf);
    if (std::isinf(x)) return e_hi_ > 0 ? kInf : (e_hi_ == 0 ? std::exp(ly_.back()) : 0.0);
    const double u = std::log(x);
    if (u <= lx_.front()) return std::exp(ly_.front() + e_lo_ * (u - lx_.front()));
    if (u >= lx_.back()) return std::exp(ly_.back() + e_hi_ * (u - lx_.back()));
    auto it = std::upper_bound(lx_.begin(), lx_.end(), u);
    std::size_t j = static_cast<std::size_t>(it - lx_.begin());
    std::size_t i = j - 1;
    const double w = (u - lx_[i]) / (lx_[j] - lx_[i]);
    return std::exp(ly_[i] + w * (ly_[j] - ly_[i]));
}

double LogLogTable::inverse(double y) const {
    if (y <= 0.0) return 0.0;
    if (std::isinf(y)) return kInf;
    const double v = std::log(y);
    if (v <= ly_.front()) return std::exp(lx_.front() + (v - ly_.front()) / e_lo_);
    if (v >= ly_.back()) return std::exp(lx_.back() + (v - ly_.back()) / e_hi_);
    auto it = std::upper_bound(ly_.begin(), ly_.end(), v);
    std::size_t j = static_cast<std::size_t>(it - ly_.begin());
    std::size_t i = j - 1;
    if (ly_[j] == ly_[i]) return std::exp(lx_[i]);
    const double w = (v - ly_[i]) / (ly_[j] - ly_[i]);
    return std::exp(lx_[i] + w * (lx_[j] - lx_[i]));
}

double LogLogTable::slope(double x) const {
    const double u = std::log(x);
    if (u < lx_.front()) return e_lo_;
    if (u >= lx_.back()) return e_hi_;
    auto it = std::upper_bound(lx_.begin(), lx_.end(), u);
    std::size_t j = static_cast<std::size_t>(it - lx_.begin());
    std::size_t i = j - 1;
    return (ly_[j] - ly_[i]) / (lx_[j] - lx_[i]);
}

std::vector<double> LogLogTable::xs() const {
    std::vector<double> out(lx_.size());
    std::transform(lx_.begin(), lx_.end(), out.begin(), [](double v) { return std::exp(v); });
    return out;
}

std::vector<double> LogLogTable::ys() const {
    std::vector<double> out(ly_.size());
    std::transform(ly_.begin(), ly_.end(), out.begin(), [](double v) { return std::exp(v); });
    return out;
}

double LogLogTable::x_front() const { return std::exp(lx_.front()); }
double LogLogTable::x_back() const { return std::exp(lx_.back()); }

bool LogLogTable::strictly_increasing(double rel) const {
    for (std::size_t i = 1; i < ly_.size(); ++i)
        if (lx_[i] > lx_[i - 1] && !(ly_[i] > ly_[i - 1] + rel)) return false;
    return true;
}

double end_slope(const std::vector<double>& x, const std::vector<double>& y, bool high) {
    const std::size_t n = x.size();
    if (high) {
        for (std::size_t i = n - 1; i > 0; --i)
            if (x[i - 1] < x[n - 1])
                return std::log(y[n - 1] / y[i - 1]) / std::log(x[n - 1] / x[i - 1]);
    } else {
        for (std::size_t i = 1; i < n; ++i)
            if (x[i] > x[0]) return std::log(y[i] / y[0]) / std::log(x[i] / x[0]);
    }
    return 0.0;
}

std::vector<double> log_grid(double a, double b, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * i / (n - 1));
    g.front() = a;
    g.back() = b;
    return g;
}

std::vector<double> merge_knots(std::vector<double> grid, const std::vector<double>& knots,
                                double rel) {
    const double a = grid.front(), b = grid.back();
    for (double k : knots)
        if (k > a && k < b) grid.push_back(k);
    std::sort(grid.begin(), grid.end());
    std::vector<double> out;
    for (double v : grid)
        if (out.empty() || v > out.back() * (1.0 + rel)) out.push_back(v);
    return out;
}

namespace {

double simpson_sum(const std::function<double(double)>& g, double ua, double ub, int n) {
    const double h = (ub - ua) / n;
    Accumulator acc;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc.add(w * g(ua + i * h));
    }
    return acc.value() * h / 3.0;
}

}  // namespace

QuadResult log_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol,
                       int n0) {
    return log_simpson_pieces(f, {a, b}, rel_tol, n0);
}

QuadResult log_simpson_pieces(const std::function<double(double)>& f,
                              const std::vector<double>& breaks, double rel_tol, int n0) {
    QuadResult out;
    if (breaks.size() < 2) return out;
    auto g = [&](double u) {
        const double r = std::exp(u);
        ++out.evaluations;
        return f(r) * r;
    };
    int n = std::max(2, n0 + (n0 % 2));
    auto total = [&](int m) {
        Accumulator acc;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            if (!(breaks[i + 1] > breaks[i])) continue;
            acc.add(simpson_sum(g, std::log(breaks[i]), std::log(breaks[i + 1]), m));
        }
        return acc.value();
    };
    double prev = total(n);
    for (int it = 0; it < 18; ++it) {
        n *= 2;
        const double cur = total(n);
        const double diff = std::abs(cur - prev);
        out.value = cur;
        out.error = diff / 15.0;
        if (diff <= rel_tol * std::abs(cur) || cur == 0.0) return out;
        prev = cur;
    }
    return out;
}

std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size()) - 1;
    std::vector<std::vector<double>> c(x.size(), std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = c[i][m];
    return w;
}

std::pair<double, double> fit_power(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double e = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double lc = (sy - e * sx) / n;
    return {e, std::exp(lc)};
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol,
                  int max_iter) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > tol * (std::abs(a) + std::abs(b)); ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

}  // namespace nlsob
