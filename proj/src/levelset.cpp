#include "nlsob/levelset.hpp"

#include <cmath>
#include <functional>

namespace nlsob {

double DyadicDecomposition::a(int k) const {
    if (empty() || k > k_max) return 0.0;
    if (k < k_min) return static_cast<double>(count.front()) * cell;
    return static_cast<double>(count[k - k_min]) * cell;
}

double DyadicDecomposition::d(int k) const { return a(k) - a(k + 1); }

double DyadicDecomposition::floor_measure() const {
    if (empty()) return 0.0;
    return static_cast<double>(positive - count.front()) * cell;
}

Checked<DyadicDecomposition> dyadic_decompose(const GridFunction& u, double t, int levels) {
    Checked<DyadicDecomposition> out;
    DyadicDecomposition& dec = out.value;
    dec.t = t;
    dec.cell = u.cell();
    double top = 0.0;
    for (double v : u.values) {
        if (v < 0.0) {
            out.ok = false;
            out.reason = "negative values: pass |u|";
            return out;
        }
        top = std::max(top, v);
        dec.positive += v > 0.0;
    }
    if (top == 0.0) return out;
    int k = static_cast<int>(std::ceil(std::log(top) / std::log(t)));
    while (std::pow(t, k - 1) >= top) --k;
    while (std::pow(t, k) < top) ++k;
    dec.k_max = k;
    dec.k_min = k - levels;
    dec.count.assign(levels + 2, 0);
    for (int j = dec.k_min; j <= dec.k_max + 1; ++j) {
        const double level = std::pow(t, j);
        long c = 0;
        for (double v : u.values) c += v > level;
        dec.count[j - dec.k_min] = c;
    }
    return out;
}

double c_p(double t, double p) {
    const double tp = std::pow(t, p);
    return (tp - 2.0) / (tp - 1.0);
}

double proof_lower_bound(const DyadicDecomposition& dec, const TailProfile& w, double kappa) {
    if (dec.empty()) return 0.0;
    const double p = w.p, tp = std::pow(dec.t, p);
    Accumulator acc;
    for (int k = dec.k_min; k <= dec.k_max; ++k) {
        const double ak = dec.a(k);
        if (ak == 0.0) continue;
        acc.add(std::pow(dec.t, p * k) * dec.a(k + 1) / ak * w.wp(ak));
    }
    // below the window a_k is constant when nothing sits under t^{k_min}
    const double a0 = dec.a(dec.k_min);
    if (a0 > 0 && dec.floor_measure() == 0.0)
        acc.add(std::pow(dec.t, p * dec.k_min) / (tp - 1.0) * w.wp(a0));
    return 2.0 * kappa * kappa * c_p(dec.t, p) * acc.value();
}

double orlicz_upper_bound(const DyadicDecomposition& dec, const YoungFunction& phi, double p) {
    if (dec.empty()) return 0.0;
    Accumulator acc;
    auto block = [&](int k, double dk) {
        if (dk <= 0.0) return;
        acc.add(std::pow(dec.t, p * k) * std::pow(1.0 / phi.inverse(1.0 / dk), p));
    };
    for (int k = dec.k_min; k <= dec.k_max; ++k) block(k, dec.d(k));
    block(dec.k_min - 1, dec.floor_measure());
    return std::pow(dec.t, p) * acc.value();
}

double LemmaSequence::at(int k) const {
    if (k < k0) return left;
    const std::size_t i = static_cast<std::size_t>(k - k0);
    return i < values.size() ? values[i] : 0.0;
}

namespace {

// sum_k f(a_k) T^k and sum_k (a_{k+1}/a_k) f(a_k) T^k, zero terms dropped
LemmaReport lemma_sums(const LemmaSequence& a, double T, const std::function<double(double)>& f,
                       double lhs_factor, double rhs_factor) {
    LemmaReport rep;
    Accumulator L, R;
    const int k_end = a.k0 + static_cast<int>(a.values.size());
    const double fl = a.left > 0 ? f(a.left) : 0.0;
    if (fl > 0) {
        if (T <= 1.0) {
            rep.vacuous = true;
            rep.lhs = rep.rhs = kInf;
            return rep;
        }
        const double tail = fl * std::pow(T, a.k0 - 1) / (T - 1.0);
        L.add(tail);
        R.add(tail);
    }
    for (int k = a.k0 - 1; k < k_end; ++k) {
        const double ak = a.at(k);
        if (ak <= 0.0) continue;
        const double term = f(ak) * std::pow(T, k);
        L.add(term);
        R.add(a.at(k + 1) / ak * term);
    }
    rep.lhs = lhs_factor * L.value();
    rep.rhs = rhs_factor * R.value();
    rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12) + 1e-300;
    return rep;
}

}  // namespace

LemmaReport lemma_gene_convex_check(const LemmaSequence& a, const YoungFunction& phi, double p,
                                    double theta, double T) {
    auto f = [&](double ak) { return std::pow(1.0 / phi.inverse(1.0 / ak), p); };
    return lemma_sums(a, T, f, phi.phi_p(std::pow(theta, p) / T, p), 1.0);
}

LemmaReport lemma_young_discrete_check(const LemmaSequence& a, double q, double T) {
    auto f = [&](double ak) { return std::pow(ak, 1.0 / q); };
    return lemma_sums(a, T, f, 1.0, std::pow(T, q));
}

LemmaSequence sequence_from(const DyadicDecomposition& dec) {
    LemmaSequence s;
    if (dec.empty()) return s;
    s.k0 = dec.k_min;
    for (int k = dec.k_min; k <= dec.k_max; ++k) s.values.push_back(dec.a(k));
    s.left = static_cast<double>(dec.positive) * dec.cell;
    return s;
}

}  // namespace nlsob
