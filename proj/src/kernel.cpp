#include "focklab/kernel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "focklab/mlf.hpp"

namespace focklab {

ScaledComplex kernel_eval(const SpaceParams& params, const VecC& z, const VecC& w) {
    params.validate();
    if (z.size() != params.d || w.size() != params.d)
        throw DomainError("kernel_eval: point dimension mismatch");
    const Complex t = std::pow(params.alpha, 1.0 / params.m) * inner(z, w);
    const ScaledComplex e = mlf::ml_family_eval(params.m, mlf::MLOrder(params.d - 1), t);
    return e * Complex(c_norm_const(params.d, params.m), 0.0);
}

KernelLsqResult kernel_least_squares(const SpaceParams& params,
                                     const MultiIndex& target_nu,
                                     const std::vector<VecC>& nodes) {
    if (nodes.empty()) throw DomainError("kernel_least_squares: no nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if ((nodes[i] - nodes[j]).norm() == 0.0)
                throw DomainError("kernel_least_squares: nodes must be pairwise distinct");

    const Eigen::Index n = static_cast<Eigen::Index>(nodes.size());
    Mat G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            G(i, j) = kernel_eval(params, nodes[i], nodes[j]).value();
    VecC v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = monomial_value(nodes[i], target_nu);

    Eigen::SelfAdjointEigenSolver<Mat> es(G);
    const double lmax = es.eigenvalues().maxCoeff();
    const double lmin = es.eigenvalues().minCoeff();
    Mat Greg = G;
    if (lmin <= lmax * 1e-13) {
        const double ridge = lmax * 1e-13;
        Greg += ridge * Mat::Identity(n, n);
    }
    const VecC c = Greg.ldlt().solve(v);
    const double solve_resid = (G * c - v).norm() / std::max(v.norm(), 1e-300);
    if (solve_resid > 1e-6)
        throw IllConditionedError("kernel_least_squares: regularized Gram solve "
                                  "exceeds the conditioning threshold");

    const double s = monomial_norm_sq(params, target_nu);
    const Complex vc = v.dot(c);            // v^H c
    const Complex quad = c.dot(G * c);      // c^H G c
    const double res2 = s - 2.0 * vc.real() + quad.real();
    return {c, std::sqrt(std::max(res2, 0.0))};
}

} // namespace focklab
