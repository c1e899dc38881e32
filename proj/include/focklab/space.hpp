#pragma once

#include <compare>
#include <vector>

#include "focklab/errors.hpp"

namespace focklab {

/// Parameters (d, m, alpha) of the space F^p_{m,alpha}(C^d, Y).
struct SpaceParams {
    int d = 1;
    double m = 1.0;
    double alpha = 1.0;

    SpaceParams() = default;
    SpaceParams(int d_, double m_, double alpha_) : d(d_), m(m_), alpha(alpha_) {
        validate();
    }

    void validate() const {
        if (d < 1) throw DomainError("SpaceParams: d must be >= 1");
        if (m < 1.0) throw DomainError("SpaceParams: m must be >= 1");
        if (alpha <= 0.0) throw DomainError("SpaceParams: alpha must be > 0");
    }
};

/// Exponent vector nu in N^d indexing the monomial zeta^nu.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> nu) : nu_(std::move(nu)) {
        for (int e : nu_)
            if (e < 0) throw DomainError("MultiIndex: exponents must be nonnegative");
    }
    static MultiIndex zeros(int d) { return MultiIndex(std::vector<int>(d, 0)); }

    int dim() const { return static_cast<int>(nu_.size()); }
    int degree() const {
        int s = 0;
        for (int e : nu_) s += e;
        return s;
    }
    int operator[](int i) const { return nu_[i]; }
    const std::vector<int>& exponents() const { return nu_; }

    MultiIndex operator+(const MultiIndex& o) const {
        if (dim() != o.dim()) throw DomainError("MultiIndex: dimension mismatch");
        std::vector<int> s(nu_);
        for (int i = 0; i < dim(); ++i) s[i] += o.nu_[i];
        return MultiIndex(std::move(s));
    }

    bool operator==(const MultiIndex& o) const = default;
    // graded lexicographic, so map iteration follows total degree
    std::strong_ordering operator<=>(const MultiIndex& o) const {
        if (auto c = degree() <=> o.degree(); c != 0) return c;
        return nu_ <=> o.nu_;
    }

  private:
    std::vector<int> nu_;
};

/// All multi-indices of dimension d with total degree <= N, graded order.
std::vector<MultiIndex> multi_indices_up_to(int d, int N);

/// C_m = Gamma(d/m) / Gamma(d).
double c_norm_const(int d, double m);

/// Normalizing constant c_{m,alpha} = m alpha^{d/m} Gamma(d) / (pi^d Gamma(d/m))
/// making d mu_{m,alpha} a probability measure.
double density_const(int d, double m, double alpha);

/// log s_{alpha,nu} with
/// s_{alpha,nu} = C_m^{-1} nu! Gamma((d+|nu|)/m) / (Gamma(d+|nu|) alpha^{|nu|/m}).
double log_monomial_norm_sq(const SpaceParams& params, const MultiIndex& nu);

/// s_{alpha,nu} itself; throws OverflowError when it leaves the double range.
double monomial_norm_sq(const SpaceParams& params, const MultiIndex& nu);

} // namespace focklab
