#pragma once

#include <vector>

#include "nlsob/fields.hpp"
#include "nlsob/kernels.hpp"
#include "nlsob/young.hpp"

namespace nlsob {

// Level-set measures a_k = |{u > t^k}| on k_min..k_max+1 and d_k = a_k - a_{k+1}.
// Counts are integers; measures are counts times the cell measure.
struct DyadicDecomposition {
    double t = 2.0;
    int k_min = 0;
    int k_max = -1;  // empty window when k_max < k_min
    double cell = 0.0;
    std::vector<long> count;  // count[k - k_min] = #{u > t^k}, last entry k_max+1
    long positive = 0;        // #{u > 0}

    bool empty() const { return k_max < k_min; }
    double a(int k) const;
    double d(int k) const;
    // |{0 < u <= t^{k_min}}|
    double floor_measure() const;
};

Checked<DyadicDecomposition> dyadic_decompose(const GridFunction& u, double t, int levels = 60);

// C_p(t) = (t^p - 2)/(t^p - 1)
double c_p(double t, double p);

// 2 kappa^2 C_p(t) sum_k t^{pk} (a_{k+1}/a_k) w^p(a_k)
double proof_lower_bound(const DyadicDecomposition& dec, const TailProfile& w, double kappa);
// t^p sum_k t^{pk} (1/phi^{-1}(1/d_k))^p, including the block 0 < u <= t^{k_min}
double orlicz_upper_bound(const DyadicDecomposition& dec, const YoungFunction& phi, double p);

// a_k for k >= k0 taken from values (zero past the end), a_k = left for k < k0
struct LemmaSequence {
    int k0 = 0;
    std::vector<double> values;
    double left = 0.0;
    double at(int k) const;
};

struct LemmaReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
    bool vacuous = false;  // both sides divergent
    double margin() const { return rhs - lhs; }
};

LemmaReport lemma_gene_convex_check(const LemmaSequence& a, const YoungFunction& phi, double p,
                                    double theta, double T);
LemmaReport lemma_young_discrete_check(const LemmaSequence& a, double q, double T);

LemmaSequence sequence_from(const DyadicDecomposition& dec);

}  // namespace nlsob
