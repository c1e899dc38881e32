#include "focklab/symbol.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "focklab/quadrature.hpp"

namespace focklab {

double op_norm(const Mat& a) {
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(0);
}

Complex inner(const VecC& z, const VecC& w) {
    if (z.size() != w.size()) throw DomainError("inner: dimension mismatch");
    Complex s{0.0, 0.0};
    for (Eigen::Index i = 0; i < z.size(); ++i) s += z(i) * std::conj(w(i));
    return s;
}

Complex monomial_value(const VecC& z, const MultiIndex& nu) {
    if (z.size() != nu.dim()) throw DomainError("monomial_value: dimension mismatch");
    Complex v{1.0, 0.0};
    for (int i = 0; i < nu.dim(); ++i)
        for (int k = 0; k < nu[i]; ++k) v *= z(i);
    return v;
}

TaylorSymbol TaylorSymbol::constant(int d, Mat c) {
    if (c.rows() != c.cols()) throw DomainError("TaylorSymbol: coefficient must be square");
    TaylorSymbol b(d, static_cast<int>(c.rows()));
    b.set_coeff(MultiIndex::zeros(d), std::move(c));
    return b;
}

TaylorSymbol TaylorSymbol::scalar_monomial(const MultiIndex& nu, Complex c) {
    TaylorSymbol b(nu.dim(), 1);
    Mat m(1, 1);
    m(0, 0) = c;
    b.set_coeff(nu, std::move(m));
    return b;
}

int TaylorSymbol::max_degree() const {
    int md = 0;
    for (const auto& [nu, c] : coeffs_) md = std::max(md, nu.degree());
    return md;
}

void TaylorSymbol::set_coeff(const MultiIndex& nu, Mat c) {
    if (nu.dim() != d_) throw DomainError("TaylorSymbol::set_coeff: index dimension");
    if (c.rows() != n_ || c.cols() != n_)
        throw DomainError("TaylorSymbol::set_coeff: coefficient shape");
    if (c.isZero(0.0))
        coeffs_.erase(nu);
    else
        coeffs_[nu] = std::move(c);
}

Mat TaylorSymbol::coeff(const MultiIndex& nu) const {
    auto it = coeffs_.find(nu);
    if (it == coeffs_.end()) return Mat::Zero(n_, n_);
    return it->second;
}

Mat TaylorSymbol::eval(const VecC& z) const {
    Mat acc = Mat::Zero(n_, n_);
    for (const auto& [nu, c] : coeffs_) acc += c * monomial_value(z, nu);
    return acc;
}

Complex TaylorSymbol::eval_scalar(const VecC& z) const {
    if (n_ != 1) throw DomainError("eval_scalar: symbol is not scalar");
    Complex acc{0.0, 0.0};
    for (const auto& [nu, c] : coeffs_) acc += c(0, 0) * monomial_value(z, nu);
    return acc;
}

TaylorSymbol TaylorSymbol::radial_derivative(int k) const {
    if (k < 1) throw DomainError("radial_derivative: k must be >= 1");
    TaylorSymbol out(d_, n_);
    for (const auto& [nu, c] : coeffs_) {
        const double f = std::pow(double(nu.degree()), k);
        if (f != 0.0) out.set_coeff(nu, c * f);
    }
    return out;
}

TaylorSymbol TaylorSymbol::dilate(double r) const {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("dilate: r must lie in (0, 1]");
    return scale_argument(r);
}

TaylorSymbol TaylorSymbol::scale_argument(double s) const {
    TaylorSymbol out(d_, n_);
    for (const auto& [nu, c] : coeffs_)
        out.set_coeff(nu, c * std::pow(s, nu.degree()));
    return out;
}

TaylorSymbol TaylorSymbol::fejer_smooth(int N) const {
    if (N < 0) throw DomainError("fejer_smooth: N must be >= 0");
    TaylorSymbol out(d_, n_);
    for (const auto& [nu, c] : coeffs_) {
        double f = 1.0;
        for (int i = 0; i < d_; ++i) f *= std::max(0.0, 1.0 - double(nu[i]) / (N + 1));
        if (f != 0.0) out.set_coeff(nu, c * f);
    }
    return out;
}

TaylorSymbol TaylorSymbol::operator+(const TaylorSymbol& o) const {
    if (d_ != o.d_ || n_ != o.n_) throw DomainError("TaylorSymbol: shape mismatch");
    TaylorSymbol out = *this;
    for (const auto& [nu, c] : o.coeffs_) out.set_coeff(nu, out.coeff(nu) + c);
    return out;
}

TaylorSymbol TaylorSymbol::operator-(const TaylorSymbol& o) const {
    return *this + (o * Complex(-1.0, 0.0));
}

TaylorSymbol TaylorSymbol::operator*(Complex s) const {
    TaylorSymbol out(d_, n_);
    for (const auto& [nu, c] : coeffs_) out.set_coeff(nu, c * s);
    return out;
}

double TaylorSymbol::coeff_growth_bound(double r) const {
    double b = 0.0;
    for (const auto& [nu, c] : coeffs_) b += c.norm() * std::pow(r, nu.degree());
    return b;
}

void GrowthGrid::validate() const {
    if (radii.empty() || directions.empty() || angles < 1)
        throw DomainError("GrowthGrid: empty grid");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1]))
            throw DomainError("GrowthGrid: radii must be strictly increasing");
    if (radii.front() <= 0.0) throw DomainError("GrowthGrid: radii must be positive");
    for (const auto& u : directions)
        if (std::abs(u.norm() - 1.0) > 1e-12)
            throw DomainError("GrowthGrid: directions must be unit vectors");
}

GrowthGrid GrowthGrid::logspaced(int d, double r_min, double r_max, int count,
                                 int angles) {
    if (count < 2 || r_min <= 0.0 || r_max <= r_min)
        throw DomainError("GrowthGrid::logspaced: bad range");
    GrowthGrid g;
    g.angles = angles;
    const double lr0 = std::log(r_min), lr1 = std::log(r_max);
    for (int i = 0; i < count; ++i)
        g.radii.push_back(std::exp(lr0 + (lr1 - lr0) * i / (count - 1)));
    for (int i = 0; i < d; ++i) {
        VecC u = VecC::Zero(d);
        u(i) = 1.0;
        g.directions.push_back(u);
    }
    if (d > 1) {
        VecC u = VecC::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0.0));
        g.directions.push_back(u);
    }
    g.validate();
    return g;
}

GrowthGrid default_grid_for(const TaylorSymbol& b, const SpaceParams& params,
                            double beta) {
    double r_max = 1.0;
    double best = std::max(b.coeff_growth_bound(0.0), 1e-300);
    while (r_max < 1e6) {
        const double w = b.coeff_growth_bound(r_max) *
                         std::exp(-0.5 * beta * std::pow(r_max, 2.0 * params.m));
        best = std::max(best, w);
        if (w < 1e-14 * best) break;
        r_max *= 1.25;
    }
    return GrowthGrid::logspaced(params.d, 1e-3, r_max, 96, 16);
}

namespace {

double weight_lp(double r, double m, double beta, int k) {
    return std::pow(1.0 + std::pow(r, 2.0 * m), -double(k)) *
           std::exp(-0.5 * beta * std::pow(r, 2.0 * m));
}

// golden-section maximization of f on [lo, hi] (assumes unimodal profile)
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double* arg_out) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-12 * (1.0 + b); ++it) {
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
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);
    if (arg_out) *arg_out = xm;
    return fm;
}

struct RaySup {
    double value = -1.0;
    double radius = 0.0;
    std::size_t radius_index = 0;
    VecC ray;  // unit vector including the best phase
};

RaySup grid_sup(const TaylorSymbol& b, const SpaceParams& params, double beta,
                int k_lp, const GrowthGrid& grid) {
    grid.validate();
    const TaylorSymbol f = (k_lp >= 1) ? b.radial_derivative(k_lp) : b;
    RaySup best;
    for (std::size_t ri = 0; ri < grid.radii.size(); ++ri) {
        const double r = grid.radii[ri];
        const double w = weight_lp(r, params.m, beta, k_lp);
        for (const auto& u : grid.directions) {
            for (int a = 0; a < grid.angles; ++a) {
                const double th = 2.0 * std::numbers::pi * a / grid.angles;
                const VecC ray = u * std::polar(1.0, th);
                const double v = op_norm(f.eval(ray * r)) * w;
                if (v > best.value) {
                    best = {v, r, ri, ray};
                }
            }
        }
    }
    return best;
}

} // namespace

SupEstimate sup_growth_norm(const TaylorSymbol& b, const SpaceParams& params,
                            double beta, const GrowthGrid& grid) {
    if (beta <= 0.0) throw DomainError("sup_growth_norm: beta must be > 0");
    if (b.support_size() == 0) return {0.0, VecC::Zero(params.d)};
    const RaySup g = grid_sup(b, params, beta, 0, grid);
    const double lo = (g.radius_index == 0) ? 0.0 : grid.radii[g.radius_index - 1];
    const double hi = (g.radius_index + 1 == grid.radii.size())
                          ? grid.radii.back()
                          : grid.radii[g.radius_index + 1];
    double arg_r = g.radius;
    const auto profile = [&](double r) {
        return op_norm(b.eval(g.ray * r)) * weight_lp(r, params.m, beta, 0);
    };
    const double refined = golden_max(profile, lo, hi, &arg_r);
    SupEstimate out;
    out.value = std::max(refined, g.value);
    out.argmax = g.ray * (refined >= g.value ? arg_r : g.radius);
    return out;
}

double littlewood_paley_norm(const TaylorSymbol& b, const SpaceParams& params,
                             double beta, int k, const GrowthGrid& grid) {
    if (k < 0) throw DomainError("littlewood_paley_norm: k must be >= 0");
    if (k == 0) return sup_growth_norm(b, params, beta, grid).value;
    if (b.support_size() == 0) return 0.0;
    const RaySup g = grid_sup(b, params, beta, k, grid);
    const double lo = (g.radius_index == 0) ? 0.0 : grid.radii[g.radius_index - 1];
    const double hi = (g.radius_index + 1 == grid.radii.size())
                          ? grid.radii.back()
                          : grid.radii[g.radius_index + 1];
    const TaylorSymbol rb = b.radial_derivative(k);
    const auto profile = [&](double r) {
        return op_norm(rb.eval(g.ray * r)) * weight_lp(r, params.m, beta, k);
    };
    double arg_r = g.radius;
    double sup = std::max(golden_max(profile, lo, hi, &arg_r), g.value);
    // origin corrections sum_{l<k} ||R^l b(0)||: only l = 0 survives
    sup += op_norm(b.eval(VecC::Zero(params.d)));
    return sup;
}

std::vector<std::pair<double, double>> littleoh_profile(
    const TaylorSymbol& b, const SpaceParams& params, double beta, int k,
    const std::vector<double>& radii, int angles) {
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1]))
            throw DomainError("littleoh_profile: radii must be increasing");
    const TaylorSymbol f = (k >= 1) ? b.radial_derivative(k) : b;
    std::vector<std::pair<double, double>> prof;
    prof.reserve(radii.size());
    for (double r : radii) {
        const double w = weight_lp(r, params.m, beta, k);
        double best = 0.0;
        for (int i = 0; i < params.d; ++i) {
            for (int a = 0; a < angles; ++a) {
                VecC u = VecC::Zero(params.d);
                u(i) = std::polar(1.0, 2.0 * std::numbers::pi * a / angles);
                best = std::max(best, op_norm(f.eval(u * r)) * w);
            }
        }
        prof.emplace_back(r, best);
    }
    return prof;
}

double pointwise_bound_ratio(const TaylorSymbol& f, const SpaceParams& params,
                             double p, const VecC& z, double fp_norm) {
    if (p < 1.0) throw DomainError("pointwise_bound_ratio: p must be >= 1");
    if (fp_norm <= 0.0)
        throw DomainError("pointwise_bound_ratio: fp_norm must be positive");
    const double tau = 2.0 / p * params.d * (params.m - 1.0);
    const double r = z.norm();
    return op_norm(f.eval(z)) /
           (fp_norm * std::pow(1.0 + r, tau) *
            std::exp(0.5 * params.alpha * std::pow(r, 2.0 * params.m)));
}

double integral_means(const TaylorSymbol& f, double p, double r, int sphere_order) {
    if (p < 1.0) throw DomainError("integral_means: p must be >= 1");
    if (r <= 0.0) throw DomainError("integral_means: r must be > 0");
    if (p == 2.0) {
        double s = 0.0;
        for (const auto& [nu, c] : f.coeffs()) {
            const double w = sphere_monomial_integral(f.d(), nu, nu);
            s += c.squaredNorm() * std::pow(r, 2.0 * nu.degree()) * w;
        }
        return std::sqrt(s);
    }
    const auto samples = sphere_samples(f.d(), sphere_order);
    double acc = 0.0;
    for (const auto& [pt, w] : samples) acc += w * std::pow(op_norm(f.eval(pt * r)), p);
    return std::pow(acc, 1.0 / p);
}

} // namespace focklab
