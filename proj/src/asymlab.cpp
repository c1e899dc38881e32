#include "focklab/asymlab.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "focklab/hankel.hpp"
#include "focklab/kernel.hpp"
#include "focklab/mlf.hpp"
#include "focklab/scaled.hpp"

namespace focklab::asym {

namespace {

void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        x[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
        w[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    }
}

int phase_count(double peak_content) {
    const double a = std::max(peak_content, 1.0);
    int p = 64;
    const int needed = static_cast<int>(2.0 * (a + 12.0 * std::cbrt(a) + 60.0));
    while (p < needed) p *= 2;
    return std::min(p, 1 << 14);
}

// log of int_{C^d} Phi(<z,xi>, |xi|) dv(xi) at z = r e1, where Phi >= 0 is
// given through its log; -inf drops the point.  Reduction: conj(xi_1)
// restricted to the unit sphere has the disk density
// ((d-1)/pi)(1-rho^2)^{d-2}.
double log_integral_ip(int d, double r, double t_hi, int nt, int nrho, int nphase,
                       const std::function<double(Complex, double)>& log_phi) {
    std::vector<double> xt, wt;
    gauss_legendre01(nt, xt, wt);
    LogAccumulator acc;
    const double two_pi = 2.0 * std::numbers::pi;
    if (d == 1) {
        for (int i = 0; i < nt; ++i) {
            const double t = t_hi * xt[i];
            const double lw = std::log(t_hi * wt[i] * t * two_pi / nphase);
            for (int a = 0; a < nphase; ++a) {
                const double th = -std::numbers::pi + two_pi * a / nphase;
                const Complex w = r * t * std::polar(1.0, -th);
                const double lp = log_phi(w, t);
                if (std::isfinite(lp)) acc.add_log(lp + lw);
            }
        }
        return acc.log_total();
    }
    std::vector<double> xr, wr;
    gauss_legendre01(nrho, xr, wr);
    const double surf = 2.0 * std::pow(std::numbers::pi, d) / std::tgamma(double(d));
    for (int i = 0; i < nt; ++i) {
        const double t = t_hi * xt[i];
        const double lt = std::log(t_hi * wt[i] * surf) + (2.0 * d - 1.0) * std::log(t);
        for (int jr = 0; jr < nrho; ++jr) {
            const double rho = xr[jr];
            const double dens = (d - 1) / std::numbers::pi *
                                std::pow(1.0 - rho * rho, d - 2) * rho;
            if (dens <= 0.0) continue;
            const double lw = lt + std::log(wr[jr] * dens * two_pi * two_pi / nphase);
            for (int a = 0; a < nphase; ++a) {
                const double th = -std::numbers::pi + two_pi * a / nphase;
                const Complex w = r * t * rho * std::polar(1.0, -th);
                const double lp = log_phi(w, t);
                if (std::isfinite(lp)) acc.add_log(lp + lw);
            }
        }
    }
    return acc.log_total();
}

double golden_max_1d(const std::function<double(double)>& f, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    return f(0.5 * (a + b));
}

// ray supremum: max over t > 0 of log_phi(r t, t) for real positive arguments
double ray_sup_log(double r, double t_hi, const std::function<double(double, double)>& log_phi) {
    double best = -std::numeric_limits<double>::infinity();
    double t_best = t_hi / 2;
    const int samples = 200;
    for (int i = 1; i <= samples; ++i) {
        const double t = t_hi * i / samples;
        const double v = log_phi(r * t, t);
        if (v > best) {
            best = v;
            t_best = t;
        }
    }
    const double lo = std::max(0.0, t_best - t_hi / samples);
    const double hi = std::min(t_hi, t_best + t_hi / samples);
    return golden_max_1d([&](double t) { return log_phi(r * t, t); }, lo, hi);
}

} // namespace

double laplace_interior(const LaplaceProblem& prob, double lambda) {
    if (!prob.interior_max)
        throw DomainError("laplace_interior: interior maximum not supplied");
    if (lambda <= 0.0) throw DomainError("laplace_interior: lambda must be > 0");
    const double x0 = *prob.interior_max;
    if (!(prob.a < x0 && x0 < prob.b))
        throw DomainError("laplace_interior: x0 must be interior");
    const double g2 = prob.gpp(x0);
    if (g2 >= 0.0) throw DomainError("laplace_interior: g''(x0) must be negative");
    return prob.f(x0) * std::exp(lambda * prob.g(x0)) *
           std::sqrt(-2.0 * std::numbers::pi / (lambda * g2));
}

double laplace_boundary(const LaplaceProblem& prob, double lambda, int K) {
    if (lambda <= 0.0) throw DomainError("laplace_boundary: lambda must be > 0");
    if (K < 1) throw DomainError("laplace_boundary: K must be >= 1");
    if (prob.gp(prob.a) == 0.0)
        throw DomainError("laplace_boundary: g'(a) must be nonzero");
    std::vector<double> ck(K);
    if (prob.boundary_ck) {
        for (int k = 0; k < K; ++k) ck[k] = prob.boundary_ck(k);
    } else {
        // nested central differences of h_0 = f/(-g'), h_{k+1} = h_k' / (-g')
        const double step = 1e-4 * std::max(1.0, std::abs(prob.a));
        std::function<double(double, int)> h = [&](double x, int k) -> double {
            if (k == 0) return prob.f(x) / (-prob.gp(x));
            return (h(x + step, k - 1) - h(x - step, k - 1)) / (2.0 * step) /
                   (-prob.gp(x));
        };
        for (int k = 0; k < K; ++k) ck[k] = h(prob.a, k);
    }
    double s = 0.0;
    for (int k = K - 1; k >= 0; --k) s = s / lambda + ck[k];
    return std::exp(lambda * prob.g(prob.a)) * s / lambda;
}

GrowthFit fit_power_given_rate(const std::vector<double>& radii,
                               const std::vector<double>& log_values, double rate,
                               double two_m, double target_exponent) {
    if (radii.size() < 4 || radii.size() != log_values.size())
        throw DomainError("fit_power_given_rate: need >= 4 (radius, value) pairs");
    const int n = static_cast<int>(radii.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = std::log(radii[i]);
        y(i) = log_values[i] - rate * std::pow(radii[i], two_m);
    }
    const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
    GrowthFit fit;
    fit.radii = radii;
    fit.log_values = log_values;
    fit.fitted_exponent = coef(1);
    fit.fitted_rate = rate;
    fit.target_exponent = target_exponent;
    fit.target_rate = rate;
    fit.residual = std::sqrt((A * coef - y).squaredNorm() / n);
    fit.flagged = fit.residual > 0.1;
    return fit;
}

double fit_rate_given_power(const std::vector<double>& radii,
                            const std::vector<double>& log_values, double exponent,
                            double two_m) {
    if (radii.size() < 2 || radii.size() != log_values.size())
        throw DomainError("fit_rate_given_power: need >= 2 (radius, value) pairs");
    const int n = static_cast<int>(radii.size());
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = std::pow(radii[i], two_m);
        y(i) = log_values[i] - exponent * std::log(radii[i]);
    }
    const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
    return coef(1);
}

GrowthFit verify_lemma4(const SpaceParams& params, double c, int l, double p,
                        double beta, const std::vector<double>& radii, double R) {
    params.validate();
    if (p < 1.0 || l < 0 || beta <= 0.0) throw DomainError("verify_lemma4: bad inputs");
    const double m = params.m;
    const double alpha = params.alpha;
    const double a1m = std::pow(alpha, 1.0 / m);
    const double sector = std::numbers::pi / (2.0 * m) + 1e-12;
    std::vector<double> logs;
    for (double r : radii) {
        const double t_peak = std::pow(p * alpha / (2.0 * beta), 1.0 / m) * r;
        const double t_hi = 2.5 * t_peak;
        const int nphase = phase_count(p * alpha * std::pow(r * t_peak, m));
        const auto log_phi = [&](Complex w, double t) -> double {
            if (std::abs(w) < R || std::abs(std::arg(w)) > sector)
                return -std::numeric_limits<double>::infinity();
            const double le =
                mlf::ml_family_eval(m, mlf::MLOrder(l - 1), a1m * w).log_abs();
            return c * std::log(std::abs(w)) + p * le -
                   beta * std::pow(t, 2.0 * m);
        };
        logs.push_back(log_integral_ip(params.d, r, t_hi, 220, 40, nphase, log_phi));
    }
    const double rate = p * p * alpha * alpha / (4.0 * beta);
    const double target = 2.0 * (p * l - params.d) * (m - 1.0) + 2.0 * c;
    GrowthFit fit = fit_power_given_rate(radii, logs, rate, 2.0 * m, target);
    fit.fitted_rate = fit_rate_given_power(radii, logs, target, 2.0 * m);
    fit.target_rate = rate;
    return fit;
}

GrowthFit verify_lemma4_complement(const SpaceParams& params, double c, int l,
                                   double p, double beta,
                                   const std::vector<double>& radii, double R) {
    params.validate();
    if (c <= -2.0 * params.d)
        throw DomainError("verify_lemma4_complement: need c > -2d");
    const double m = params.m;
    const double a1m = std::pow(params.alpha, 1.0 / m);
    const double sector = std::numbers::pi / (2.0 * m) + 1e-12;
    std::vector<double> logs;
    for (double r : radii) {
        const double t_hi = std::pow(700.0 / beta, 1.0 / (2.0 * m));
        const auto log_phi = [&](Complex w, double t) -> double {
            const double aw = std::abs(w);
            if (aw == 0.0)  // measure-zero point; avoids 0 * log 0
                return -std::numeric_limits<double>::infinity();
            if (aw >= R && std::abs(std::arg(w)) <= sector)
                return -std::numeric_limits<double>::infinity();
            const double le =
                mlf::ml_family_eval(m, mlf::MLOrder(l - 1), a1m * w).log_abs();
            return c * std::log(aw) + p * le - beta * std::pow(t, 2.0 * m);
        };
        logs.push_back(log_integral_ip(params.d, r, t_hi, 220, 40, 512, log_phi));
    }
    return fit_power_given_rate(radii, logs, 0.0, 2.0 * m, c);
}

GrowthFit verify_lemma5(const SpaceParams& params, double c, int l,
                        const std::vector<double>& radii) {
    params.validate();
    if (c < 0.0 || l < 1) throw DomainError("verify_lemma5: need c >= 0, l >= 1");
    const double m = params.m;
    const double alpha = params.alpha;
    const double a1m = std::pow(alpha, 1.0 / m);
    std::vector<double> logs;
    for (double r : radii) {
        const double t_hi = 3.0 * r + 5.0;
        const auto log_phi = [&](double w, double t) -> double {
            if (w <= 0.0) return -std::numeric_limits<double>::infinity();
            const double le = mlf::ml_family_eval(m, mlf::MLOrder(l - 1),
                                                  Complex(a1m * w, 0.0))
                                  .log_abs();
            return c * std::log(w) + le - 0.5 * alpha * std::pow(t, 2.0 * m);
        };
        logs.push_back(ray_sup_log(r, t_hi, log_phi));
    }
    const double target = 2.0 * c + 2.0 * l * (m - 1.0);
    GrowthFit fit = fit_power_given_rate(radii, logs, 0.5 * alpha, 2.0 * m, target);
    fit.fitted_rate = fit_rate_given_power(radii, logs, target, 2.0 * m);
    fit.target_rate = 0.5 * alpha;
    return fit;
}

KernelNormFit verify_kernel_norms(const SpaceParams& params, double p,
                                  const std::vector<double>& radii) {
    params.validate();
    if (p < 1.0) throw DomainError("verify_kernel_norms: p must be >= 1");
    const double m = params.m;
    const double alpha = params.alpha;
    const double a1m = std::pow(alpha, 1.0 / m);
    const double log_cm = std::log(c_norm_const(params.d, m));
    const double log_cma = std::log(density_const(params.d, m, alpha));
    KernelNormFit out;
    std::vector<double> logs;
    for (double r : radii) {
        const double t_hi = 2.5 * r + 3.0;
        const int nphase = phase_count(p * alpha * std::pow(r * r, m));
        const auto log_phi = [&](Complex w, double t) -> double {
            const double le =
                mlf::ml_family_eval(m, mlf::MLOrder(params.d - 1), a1m * w).log_abs();
            return p * (log_cm + le) - 0.5 * p * alpha * std::pow(t, 2.0 * m);
        };
        const double log_norm_p =
            log_cma + log_integral_ip(params.d, r, t_hi, 220, 40, nphase, log_phi);
        logs.push_back(log_norm_p / p);
        if (p == 2.0) {
            VecC z = VecC::Zero(params.d);
            z(0) = r;
            const double log_kzz = kernel_eval(params, z, z).log_abs();
            out.p2_identity_error = std::max(
                out.p2_identity_error, std::abs(std::expm1(2.0 * logs.back() - log_kzz)));
        }
    }
    const double target = 2.0 * params.d * (1.0 - 1.0 / p) * (m - 1.0);
    out.fit = fit_power_given_rate(radii, logs, 0.5 * alpha, 2.0 * m, target);
    out.fit.fitted_rate = fit_rate_given_power(radii, logs, target, 2.0 * m);
    out.fit.target_rate = 0.5 * alpha;
    return out;
}

double kernel_sup_norm_log(const SpaceParams& params, double r) {
    params.validate();
    const double m = params.m;
    const double a1m = std::pow(params.alpha, 1.0 / m);
    const double log_cm = std::log(c_norm_const(params.d, m));
    const double t_hi = 3.0 * r + 5.0;
    const auto log_phi = [&](double w, double t) -> double {
        const double le = mlf::ml_family_eval(m, mlf::MLOrder(params.d - 1),
                                              Complex(a1m * w, 0.0))
                              .log_abs();
        return log_cm + le - 0.5 * params.alpha * std::pow(t, 2.0 * m);
    };
    return ray_sup_log(r, t_hi, log_phi);
}

TestFnFits verify_testfn_norms(const SpaceParams& params, double p,
                               const std::vector<double>& radii) {
    params.validate();
    if (p <= 1.0) throw DomainError("verify_testfn_norms: need p > 1");
    const double m = params.m;
    const double d = params.d;
    const double alpha = params.alpha;
    const double a1m = std::pow(alpha, 1.0 / m);
    const double pp = p / (p - 1.0);  // conjugate exponent
    const double log_cma = std::log(density_const(params.d, m, alpha));
    const double log_pre =
        std::log(std::pow(2.0, -d / m) * c_norm_const(params.d, m));
    const auto a = hankel::solve_a_coeffs(m, params.d);

    TestFnFits out;
    std::vector<double> logs_x, logs_y, logs_yd;
    for (double r : radii) {
        const double t_hi = 2.5 * r + 3.0;
        const int nphase = phase_count(std::max(p, pp) * alpha * std::pow(r * r, m));
        const auto log_phi_x = [&](Complex w, double t) -> double {
            const double le = mlf::ml_family_eval(m, mlf::MLOrder(0), a1m * w).log_abs();
            return p * (log_pre + le) - 0.5 * p * alpha * std::pow(t, 2.0 * m);
        };
        logs_x.push_back(
            (log_cma + log_integral_ip(params.d, r, t_hi, 220, 40, nphase, log_phi_x)) /
            p);
        const auto log_phi_y = [&](Complex w, double t) -> double {
            ScaledComplex acc = ScaledComplex::zero();
            for (int l = 0; l <= params.d; ++l)
                acc = acc +
                      mlf::g_l_eval(m, params.d, l, a1m * w) * Complex(a[l], 0.0);
            return pp * acc.log_abs() - 0.5 * pp * alpha * std::pow(t, 2.0 * m);
        };
        logs_y.push_back(
            (log_cma + log_integral_ip(params.d, r, t_hi, 220, 40, nphase, log_phi_y)) /
            pp);
        const auto log_phi_yd = [&](Complex w, double t) -> double {
            const ScaledComplex g =
                mlf::g_l_eval(m, params.d, params.d, a1m * w) * Complex(a[params.d], 0.0);
            return pp * g.log_abs() - 0.5 * pp * alpha * std::pow(t, 2.0 * m);
        };
        logs_yd.push_back(
            (log_cma + log_integral_ip(params.d, r, t_hi, 220, 40, nphase, log_phi_yd)) /
            pp);
    }
    const double target_x = 2.0 * (p - d) * (m - 1.0) / p;
    out.x_fit = fit_power_given_rate(radii, logs_x, 0.5 * alpha, 2.0 * m, target_x);
    out.x_fit.fitted_rate = fit_rate_given_power(radii, logs_x, target_x, 2.0 * m);
    out.x_fit.target_rate = 0.5 * alpha;
    const double target_y = 2.0 * (d / p) * (m - 1.0) + 2.0;
    out.y_fit = fit_power_given_rate(radii, logs_y, 0.5 * alpha, 2.0 * m, target_y);
    out.y_fit.fitted_rate = fit_rate_given_power(radii, logs_y, target_y, 2.0 * m);
    out.y_fit.target_rate = 0.5 * alpha;
    out.y_dominance = std::exp(logs_yd.back() - logs_y.back());
    return out;
}

} // namespace focklab::asym
