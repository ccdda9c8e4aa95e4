#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsdet {

/// Per-ROI class scores over C foreground classes plus one background class.
/// Index C (the last entry) is the background class.
using LogitVector = std::vector<double>;

/// A probability distribution over the same C+1 classes.
using ProbVector = std::vector<double>;

inline bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
}

/// log(sum_t exp(x_t)) computed with a max shift so large logits do not
/// overflow.
inline double log_sum_exp(const LogitVector& x) {
    if (x.empty()) throw std::invalid_argument("log_sum_exp: empty input");
    if (!all_finite(x)) throw std::invalid_argument("log_sum_exp: non-finite input");
    const double m = *std::max_element(x.begin(), x.end());
    double sum = 0.0;
    for (double v : x) sum += std::exp(v - m);
    return m + std::log(sum);
}

/// Softmax with max-shift. The shift does not change the result; it only
/// keeps exp() in range.
inline ProbVector stable_softmax(const LogitVector& x) {
    if (x.size() < 2) {
        throw std::invalid_argument("stable_softmax: need at least two classes");
    }
    if (!all_finite(x)) throw std::invalid_argument("stable_softmax: non-finite input");
    const double m = *std::max_element(x.begin(), x.end());
    ProbVector p(x.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        p[i] = std::exp(x[i] - m);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

/// -log softmax(x)[target], evaluated as log_sum_exp(x) - x[target] so the
/// probability is never materialized. Always >= 0.
inline double cross_entropy_from_logits(const LogitVector& x, std::size_t target) {
    if (target >= x.size()) {
        throw std::out_of_range("cross_entropy_from_logits: target " +
                                std::to_string(target) + " out of range for " +
                                std::to_string(x.size()) + " classes");
    }
    return log_sum_exp(x) - x[target];
}

/// Central-difference gradient oracle: (f(x + h e_i) - f(x - h e_i)) / 2h.
/// Test-side check for every analytic gradient in this project; the training
/// path never calls it.
template <typename F>
std::vector<double> finite_diff_grad(F&& f, std::vector<double> x, double h = 1e-5) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_diff_grad: h must be positive");
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        x[i] = xi + h;
        const double fp = f(x);
        x[i] = xi - h;
        const double fm = f(x);
        x[i] = xi;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

}  // namespace fsdet
