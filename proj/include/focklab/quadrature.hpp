#pragma once

#include <functional>
#include <utility>

#include "focklab/symbol.hpp"

#include <nlohmann/json_fwd.hpp>

namespace focklab {

/// Radial Gaussian rule for d mu_{m,alpha} plus sphere sampling order.
/// The radial weights absorb all measure constants: integrating f over C^d
/// against the probability measure is  sum_i w_i * (sphere average of f at r_i),
/// so the weights themselves sum to 1.
struct QuadratureRule {
    SpaceParams params;
    std::vector<double> radial_nodes;    // r_i > 0
    std::vector<double> radial_weights;  // > 0, sum to 1
    int sphere_order = 64;
    double self_check_mass = 0.0;        // |sum w - 1|
    double self_check_norms = 0.0;       // worst relative error on s_{alpha,nu}, |nu| <= 10

    nlohmann::json to_json() const;
};

/// Gaussian rule with respect to the exact radial weight u^{d-1} e^{-alpha u^m} du
/// (u = r^2), built by a discretized Stieltjes procedure and Golub-Welsch.
/// Self-checks total mass and the monomial norms |nu| <= 10 against the closed
/// form; doubles the node count once if either misses 1e-11.
QuadratureRule radial_rule(const SpaceParams& params, int n_nodes,
                           int sphere_order = 64);

/// int_{S^{2d-1}} zeta^nu conj(zeta)^mu dsigma: 0 unless nu == mu, else
/// (d-1)! nu! / (d-1+|nu|)!.
double sphere_monomial_integral(int d, const MultiIndex& nu, const MultiIndex& mu);

/// Product sampling of the unit sphere S^{2d-1} (normalized measure):
/// trapezoid in each phase, Gauss rules in the latitude variables.
/// Weights sum to 1.  Cost grows like order^{2d-1}; d <= 3.
std::vector<std::pair<VecC, double>> sphere_samples(int d, int order);

/// Quadrature of a matrix-valued integrand against d mu_{m,alpha}.
Mat integrate_mu(const std::function<Mat(const VecC&)>& f, const QuadratureRule& rule);
Complex integrate_mu_scalar(const std::function<Complex(const VecC&)>& f,
                            const QuadratureRule& rule);

/// Finite combination  sum  C_{nu,mu} zeta^nu conj(zeta)^mu  integrated exactly:
/// sphere factor by orthogonality, radial factor by the Gaussian rule.
struct PolyIntegrand {
    int d = 1;
    std::map<std::pair<MultiIndex, MultiIndex>, Complex> terms;
    void add(const MultiIndex& nu, const MultiIndex& mu, Complex c);
};
Complex integrate_mu_poly(const PolyIntegrand& f, const QuadratureRule& rule);

/// Trapezoid phase count needed to resolve kernel sections K(z, .) with
/// |z| <= z_max over the effective radii of `rule` to ~1e-13 relative.
int kernel_phase_count(const QuadratureRule& rule, double beta, double z_max);

/// Bergman-type projection P_beta f(z) = int f(zeta) K_{m,beta}(z, zeta)
/// d mu_{m,beta}(zeta), evaluated by quadrature.  The rule must have been
/// built for (d, m, beta).
Mat project(const std::function<Mat(const VecC&)>& f, const SpaceParams& params,
            double beta, const VecC& z, const QuadratureRule& rule);

/// max_z ||P_alpha f(z) - f(z)|| / max(1, ||f(z)||) over z_list (Eq. P f = f).
double verify_reproducing(const TaylorSymbol& f, const SpaceParams& params,
                          const std::vector<VecC>& z_list);

/// Builds c(zeta) = 2^{d/m} b(2^{1/m} zeta) e^{-2 beta |zeta|^{2m}} and checks
/// P_{2 beta} c = b at the given points; returns the max relative error.
double growth_space_projection_check(const TaylorSymbol& b, const SpaceParams& params,
                                     double beta, const std::vector<VecC>& z_list);

} // namespace focklab
