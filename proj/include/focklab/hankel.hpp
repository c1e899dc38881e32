#pragma once

#include <functional>
#include <string>

#include "focklab/quadrature.hpp"
#include "focklab/symbol.hpp"

namespace focklab::hankel {

/// Truncated small Hankel operator in the orthonormalized monomial basis.
/// Rows index (lambda, j), columns (mu, i); the block is
/// (b_{mu+lambda})_{j,i} s_{alpha,mu+lambda} / sqrt(s_{alpha,mu} s_{alpha,lambda}).
struct HankelMatrix {
    SpaceParams params;
    int n = 1;        // target dimension
    int N = 0;        // truncation degree
    Mat entries;      // (n B_N) x (n B_N)
    std::vector<std::pair<MultiIndex, int>> basis_index;
};

/// Test-function data attached to a point z: x_z, y_z directions and the
/// a_l coefficients of the p-polynomial identity.
struct TestFunctionPair {
    VecC z;
    VecC x0;
    VecC y0;
    std::vector<double> a_coeffs;
};

Mat hankel_entry(const SpaceParams& params, const TaylorSymbol& b,
                 const MultiIndex& mu, const MultiIndex& lam);

HankelMatrix build_hankel(const SpaceParams& params, const TaylorSymbol& b, int N,
                          int size_cap = 4096);

/// Largest singular value; non-decreasing in N for fixed b.
double operator_norm(const HankelMatrix& h);

/// Top k singular values, decreasing.
std::vector<double> singular_spectrum(const HankelMatrix& h, int top_k);

/// Hankel form <h_b x, y>_alpha = int <b(zeta) x(conj zeta), y(zeta)> d mu,
/// for polynomial columns x, y (n x 1 symbols); the independent oracle for
/// hankel_entry.  Sphere factor exact, radial factor from the rule.
Complex hankel_form_quadrature(const SpaceParams& params, const TaylorSymbol& b,
                               const TaylorSymbol& x, const TaylorSymbol& y,
                               const QuadratureRule& rule);

/// Hankel matrix of the lifted operator h_{T(b)} on F^2_{m,alpha}(S^2(C^n)),
/// realized on the matrix-unit basis (the n-fold direct sum of h_b in a
/// permuted basis).
HankelMatrix lift_T(const SpaceParams& params, const TaylorSymbol& b, int N,
                    int size_cap = 4096);

/// Coefficients a_0..a_d with p_{1+d}(2T) = p_1(T) sum_l a_l p_l(T);
/// triangular solve in the p_l basis.  Verifies the identity to 1e-9 and
/// a_d = 2^{1+d}.
std::vector<double> solve_a_coeffs(double m, int d);

/// x_z(zeta) = 2^{-d/m} C_m E(alpha^{1/m} <zeta, conj z>) x0
std::function<VecC(const VecC&)> test_function_x(const SpaceParams& params,
                                                 const VecC& z, const VecC& x0);

/// y_z(zeta) = sum_l a_l G_l(alpha^{1/m} <zeta, z>) y0
std::function<VecC(const VecC&)> test_function_y(const SpaceParams& params,
                                                 const VecC& z, const VecC& y0);

/// per-term variant: a_l G_l(alpha^{1/m} <zeta, z>) y0 for a single l
std::function<VecC(const VecC&)> test_function_y_term(const SpaceParams& params,
                                                      const VecC& z, const VecC& y0,
                                                      int l);

struct TheoremAReport {
    double norm_hb = 0.0;        // at truncation N
    double norm_hb_prev = 0.0;   // at truncation N-5
    double sup_b_half = 0.0;     // ||b||_{F^inf_{m,alpha/2}} (refined grid sup)
    double ratio = 0.0;          // norm_hb / sup_b_half
    bool upper_ok = false;       // norm_hb <= 2^d sup_b_half
};

/// Truncated check of the norm comparability; throws NotConvergedError when
/// |norm_N - norm_{N-5}| >= 0.01 norm_N.
TheoremAReport theorem_a_report(const SpaceParams& params, const TaylorSymbol& b,
                                int N, const GrowthGrid& grid);

struct CompactnessRecord {
    int N = 0;
    double sigma_tail = 0.0;     // smallest singular value above the floor
    double littleoh_tail = 0.0;  // profile value at the largest radius
};

struct CompactnessReport {
    std::vector<CompactnessRecord> records;
    std::vector<std::pair<double, double>> profile;
    std::string verdict;  // "compact" | "non-compact"
};

/// Truncation-level compactness diagnostic: singular tails over N_list and
/// the little-oh profile of b in F^{inf,0}_{m,alpha/2}.  Thresholds: a
/// profile that stays above 0.1 x initial and decays slower than 0.95 per
/// step at the tail is called non-compact.
CompactnessReport compactness_report(const SpaceParams& params, const TaylorSymbol& b,
                                     const std::vector<int>& N_list,
                                     const std::vector<double>& radii = {});

/// Dense row-major complex128 dump plus a JSON sidecar with the basis index.
void export_matrix(const HankelMatrix& h, const std::string& bin_path,
                   const std::string& json_path);

} // namespace focklab::hankel
