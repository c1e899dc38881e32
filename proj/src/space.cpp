#include "focklab/space.hpp"

#include <cmath>
#include <numbers>

namespace focklab {

std::vector<MultiIndex> multi_indices_up_to(int d, int N) {
    if (d < 1) throw DomainError("multi_indices_up_to: d must be >= 1");
    if (N < 0) throw DomainError("multi_indices_up_to: N must be >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> cur(d, 0);
    // enumerate degree by degree; within a degree, lexicographic
    for (int deg = 0; deg <= N; ++deg) {
        std::fill(cur.begin(), cur.end(), 0);
        cur[0] = deg;
        while (true) {
            out.emplace_back(cur);
            // next composition of deg into d parts, lexicographically descending head
            int i = d - 2;
            while (i >= 0 && cur[i] == 0) --i;
            if (i < 0) break;
            --cur[i];
            int rest = deg;
            for (int k = 0; k <= i; ++k) rest -= cur[k];
            for (int k = i + 1; k < d; ++k) cur[k] = 0;
            cur[i + 1] = rest;
        }
    }
    return out;
}

double c_norm_const(int d, double m) {
    return std::exp(std::lgamma(d / m) - std::lgamma(double(d)));
}

double density_const(int d, double m, double alpha) {
    const double lg = std::log(m) + (d / m) * std::log(alpha) -
                      d * std::log(std::numbers::pi) + std::lgamma(double(d)) -
                      std::lgamma(d / m);
    return std::exp(lg);
}

double log_monomial_norm_sq(const SpaceParams& params, const MultiIndex& nu) {
    params.validate();
    if (nu.dim() != params.d)
        throw DomainError("log_monomial_norm_sq: multi-index dimension mismatch");
    const int a = nu.degree();
    double log_fact = 0.0;
    for (int i = 0; i < nu.dim(); ++i) log_fact += std::lgamma(double(nu[i]) + 1.0);
    return -std::log(c_norm_const(params.d, params.m)) + log_fact +
           std::lgamma((params.d + a) / params.m) - std::lgamma(double(params.d + a)) -
           (a / params.m) * std::log(params.alpha);
}

double monomial_norm_sq(const SpaceParams& params, const MultiIndex& nu) {
    const double lg = log_monomial_norm_sq(params, nu);
    if (lg >= 700.0)
        throw OverflowError("monomial_norm_sq: value exceeds double range; "
                            "use log_monomial_norm_sq");
    return std::exp(lg);
}

} // namespace focklab
