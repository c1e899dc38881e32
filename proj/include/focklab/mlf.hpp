#pragma once

#include <complex>
#include <vector>

#include "focklab/scaled.hpp"

namespace focklab::mlf {

using Complex = std::complex<double>;

/// Derivative order within the family E^{(j)}_{1/m,1/m}.  j = -1 denotes the
/// antiderivative \int_0^z E_{1/m,1/m}(u) du; j >= 0 the j-th derivative.
struct MLOrder {
    int j;
    explicit MLOrder(int j_) : j(j_) {
        if (j < -1) throw DomainError("MLOrder: j must be >= -1");
    }
};

/// Real polynomial c_0 + c_1 x + ... + c_k x^k.
struct RealPolynomial {
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    double operator()(double x) const {
        double v = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
        return v;
    }

    Complex operator()(Complex x) const {
        Complex v = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
        return v;
    }
};

// Evaluation policy around the sector |arg z| <= pi/(2m):
//  - power series while |z|^m <= series_crossover_high;
//  - inside the sector beyond that, the exponential asymptotic branch;
//  - outside the sector beyond that, only the remainder bound is available,
//    and a bound-only magnitude (empirical constant per m) is returned.
// Both branches must agree to 1e-4 on the overlap band |z|^m in [20,30]
// along the positive axis; overlap_self_check enforces this.
inline constexpr double series_crossover_low = 20.0;
inline constexpr double series_crossover_high = 30.0;
inline constexpr int series_term_cap = 10000;

/// Mittag-Leffler function E_{beta,gamma}(z) by compensated power-series
/// summation, truncated when the geometric tail bound drops below
/// tol * |partial sum|.
Complex ml_series(double beta, double gamma, Complex z, double tol);

/// True when z lies in the closed sector |arg z| <= pi/(2m).
bool in_sector(double m, Complex z);

/// E^{(j)}_{1/m,1/m}(z) by direct series summation (all z; meaningful in
/// double precision while |z|^m <= ~300 and cancellation stays mild, i.e.
/// |z|^m - Re(z^m) small).  Off the positive axis the absolute error grows
/// like eps * exp(|z|^m - Re z^m).
ScaledComplex ml_family_series(double m, MLOrder order, Complex z);

/// E^{(j)}_{1/m,1/m}(z): series inside the crossover radius, exponential
/// asymptotics in the sector beyond it, and the documented bound-only
/// magnitude outside the sector beyond it.
ScaledComplex ml_family_eval(double m, MLOrder order, Complex z);

/// The polynomials p_k from the asymptotic expansion:
/// p_0 = 1, p_{k+1}(x) = (m x - k) p_k(x) + m x p_k'(x).
RealPolynomial p_poly(double m, int k);

/// Taylor truncation T_k f for a power series given by its coefficients;
/// T_{-1} f = T_{-2} f = 0.
std::vector<double> taylor_truncate(const std::vector<double>& series_coeffs, int k);

/// Power-series coefficients of E^{(j)}_{1/m,1/m} (first `count` of them).
std::vector<double> ml_family_coefficients(double m, MLOrder order, int count);

/// G_l(t) = t^{-(d-l-1)} [ E^{(l-1)}(t) - T_{d-l-2} E^{(l-1)}(t) ],
/// an entire function of t (the singularity at 0 is removable and is
/// evaluated from the shifted series).
ScaledComplex g_l_eval(double m, int d, int l, Complex t);

/// Leading asymptotic term of E^{(k-1)}: p_k(z^m) z^{-k} e^{z^m} for k >= 1
/// and e^{z^m} for k = 0.  Requires z in the sector, z != 0.
ScaledComplex ml_asymptotic_leading(double m, int k, Complex z);

/// | series value - leading term | / | leading term | for E^{(k-1)} at z.
double asymptotic_relative_error(double m, int k, Complex z);

/// Maximum relative disagreement between the series and the asymptotic
/// branch over the overlap band |z|^m in [20, 30] along the positive axis,
/// for derivative indices k = 0..k_max.  Throws NonConvergence when it
/// exceeds 1e-4 (run at experiment startup).
double overlap_self_check(double m, int k_max);

/// Empirically measured constant C(m, k) such that |E^{(k-1)}(z)| <= C |z|^{-k}
/// (k >= 1), respectively <= C (k = 0), outside the sector at the crossover
/// ring; used by the bound-only branch.
double offsector_bound_constant(double m, int k);

} // namespace focklab::mlf
