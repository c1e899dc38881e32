#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "focklab/space.hpp"

namespace focklab {

using Mat = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Largest singular value (operator norm on C^n); |.| for scalars.
double op_norm(const Mat& a);

/// Standard inner product <z, w> = sum_j z_j conj(w_j).
Complex inner(const VecC& z, const VecC& w);

/// z^nu = prod z_j^{nu_j}
Complex monomial_value(const VecC& z, const MultiIndex& nu);

/// Entire symbol b with finitely many matrix Taylor coefficients b_nu.
class TaylorSymbol {
  public:
    TaylorSymbol(int d, int n) : d_(d), n_(n) {
        if (d < 1 || n < 1) throw DomainError("TaylorSymbol: d and n must be >= 1");
    }

    static TaylorSymbol constant(int d, Mat c);
    static TaylorSymbol scalar_monomial(const MultiIndex& nu, Complex c = 1.0);

    int d() const { return d_; }
    int n() const { return n_; }
    int rows() const { return coeffs_.empty() ? n_ : coeffs_.begin()->second.rows(); }
    int cols() const { return coeffs_.empty() ? n_ : coeffs_.begin()->second.cols(); }
    int max_degree() const;
    std::size_t support_size() const { return coeffs_.size(); }
    const std::map<MultiIndex, Mat>& coeffs() const { return coeffs_; }

    void set_coeff(const MultiIndex& nu, Mat c);
    Mat coeff(const MultiIndex& nu) const;

    Mat eval(const VecC& z) const;
    Complex eval_scalar(const VecC& z) const;

    TaylorSymbol radial_derivative(int k) const;  // b_nu -> |nu|^k b_nu, k >= 1
    TaylorSymbol dilate(double r) const;          // b_nu -> r^{|nu|} b_nu, 0 < r <= 1
    TaylorSymbol fejer_smooth(int N) const;       // b_nu -> prod_j max(0, 1 - nu_j/(N+1)) b_nu

    TaylorSymbol operator+(const TaylorSymbol& o) const;
    TaylorSymbol operator-(const TaylorSymbol& o) const;
    TaylorSymbol operator*(Complex s) const;

    /// sum_nu ||b_nu||_F r^{|nu|}: cheap modulus bound used to size grids.
    double coeff_growth_bound(double r) const;

    /// internal argument rescaling b(s z); s may exceed 1 (unlike dilate)
    TaylorSymbol scale_argument(double s) const;

  private:
    int d_, n_;
    std::map<MultiIndex, Mat> coeffs_;
};

/// Sampling lattice for weighted sup norms: radii x directions x phases.
struct GrowthGrid {
    std::vector<double> radii;       // strictly increasing, positive
    std::vector<VecC> directions;    // unit vectors in C^d
    int angles = 8;                  // phase samples per (radius, direction)

    void validate() const;

    /// log-spaced radii between r_min and r_max, coordinate-axis directions
    static GrowthGrid logspaced(int d, double r_min, double r_max, int count,
                                int angles = 8);
};

/// Grid sized so the weighted tail of b falls below 1e-14 of the running max.
GrowthGrid default_grid_for(const TaylorSymbol& b, const SpaceParams& params,
                            double beta);

struct SupEstimate {
    double value = 0.0;
    VecC argmax;
};

/// Grid estimate (a lower bound) of sup_z ||b(z)|| e^{-(beta/2)|z|^{2m}},
/// refined by golden-section search in the radius along the best ray.
SupEstimate sup_growth_norm(const TaylorSymbol& b, const SpaceParams& params,
                            double beta, const GrowthGrid& grid);

/// sup (1+|z|^{2m})^{-k} ||R^k b(z)|| e^{-(beta/2)|z|^{2m}} + sum_{l<k} ||R^l b(0)||
double littlewood_paley_norm(const TaylorSymbol& b, const SpaceParams& params,
                             double beta, int k, const GrowthGrid& grid);

/// Decay profile r -> max over rays of (1+r^{2m})^{-k} ||R^k b|| e^{-(beta/2)r^{2m}}.
std::vector<std::pair<double, double>> littleoh_profile(
    const TaylorSymbol& b, const SpaceParams& params, double beta, int k,
    const std::vector<double>& radii, int angles = 16);

/// ||f(z)|| / [fp_norm (1+|z|)^{tau_p} e^{(beta/2)|z|^{2m}}], tau_p = (2/p)d(m-1).
double pointwise_bound_ratio(const TaylorSymbol& f, const SpaceParams& params,
                             double p, const VecC& z, double fp_norm);

/// Surface integral mean M_p(f, r); exact coefficient form for p = 2,
/// sphere sampling otherwise.
double integral_means(const TaylorSymbol& f, double p, double r,
                      int sphere_order = 64);

} // namespace focklab
