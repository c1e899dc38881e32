#include "focklab/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "focklab/kernel.hpp"
#include "focklab/mlf.hpp"

namespace focklab {

namespace {

// nodes/weights of n-point Gauss-Legendre on [-1, 1] via Golub-Welsch
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        x[i] = es.eigenvalues()(i);
        w[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    }
}

// Gaussian rule for a positive measure given by discrete points/weights,
// via the Stieltjes recurrence and Golub-Welsch.
void stieltjes_gauss(const std::vector<double>& pts, const std::vector<double>& wts,
                     int n, std::vector<double>& nodes, std::vector<double>& weights) {
    const std::size_t npts = pts.size();
    std::vector<double> a(n, 0.0), b(n, 0.0);
    std::vector<double> pim1(npts, 0.0), pi(npts, 1.0);
    double nrm = 0.0;
    for (double w : wts) nrm += w;
    b[0] = nrm;
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < npts; ++i) s += wts[i] * pts[i] * pi[i] * pi[i];
        a[k] = s / nrm;
        if (k == n - 1) break;
        double nrm2 = 0.0;
        for (std::size_t i = 0; i < npts; ++i) {
            const double p = (pts[i] - a[k]) * pi[i] - (k > 0 ? b[k] : 0.0) * pim1[i];
            pim1[i] = pi[i];
            pi[i] = p;
            nrm2 += wts[i] * p * p;
        }
        b[k + 1] = nrm2 / nrm;
        nrm = nrm2;
    }
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) J(k, k) = a[k];
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(b[k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = es.eigenvalues()(i);
        weights[i] = b[0] * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    }
}

// discretization of u^{d-1} e^{-alpha u^m} du on (0, umax): geometric panels
// toward 0, 80-point Legendre each
void discretize_radial_weight(int d, double m, double alpha,
                              std::vector<double>& pts, std::vector<double>& wts) {
    const double umax = std::pow(760.0 / alpha, 1.0 / m);
    std::vector<double> edges{0.0};
    {
        std::vector<double> desc{umax};
        while (desc.back() > umax * 1e-18) desc.push_back(desc.back() / 2.0);
        edges.insert(edges.end(), desc.rbegin(), desc.rend());
    }
    static std::vector<double> xg, wg;
    if (xg.empty()) gauss_legendre(80, xg, wg);
    pts.clear();
    wts.clear();
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double mid = 0.5 * (edges[e] + edges[e + 1]);
        const double half = 0.5 * (edges[e + 1] - edges[e]);
        for (std::size_t i = 0; i < xg.size(); ++i) {
            const double u = mid + half * xg[i];
            pts.push_back(u);
            wts.push_back(half * wg[i] * std::pow(u, d - 1) * std::exp(-alpha * std::pow(u, m)));
        }
    }
}

QuadratureRule build_rule(const SpaceParams& params, int n_nodes, int sphere_order) {
    std::vector<double> pts, wts, unodes, uweights;
    discretize_radial_weight(params.d, params.m, params.alpha, pts, wts);
    stieltjes_gauss(pts, wts, n_nodes, unodes, uweights);

    QuadratureRule rule;
    rule.params = params;
    rule.sphere_order = sphere_order;
    const double scale = density_const(params.d, params.m, params.alpha) *
                         std::pow(std::numbers::pi, params.d) /
                         std::tgamma(double(params.d));
    rule.radial_nodes.reserve(n_nodes);
    rule.radial_weights.reserve(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        rule.radial_nodes.push_back(std::sqrt(unodes[i]));
        rule.radial_weights.push_back(scale * uweights[i]);
    }

    double mass = 0.0;
    for (double w : rule.radial_weights) mass += w;
    rule.self_check_mass = std::abs(mass - 1.0);

    double worst = 0.0;
    for (int k = 1; k <= 10; ++k) {
        std::vector<int> e(params.d, 0);
        e[0] = k;
        const MultiIndex nu(e);
        double got = 0.0;
        for (int i = 0; i < n_nodes; ++i)
            got += rule.radial_weights[i] * std::pow(unodes[i], k);
        const double want = monomial_norm_sq(params, nu) /
                            sphere_monomial_integral(params.d, nu, nu);
        worst = std::max(worst, std::abs(got - want) / want);
    }
    rule.self_check_norms = worst;
    return rule;
}

} // namespace

QuadratureRule radial_rule(const SpaceParams& params, int n_nodes, int sphere_order) {
    params.validate();
    if (n_nodes < 8) throw DomainError("radial_rule: need at least 8 nodes");
    // cannot occur under m >= 1, d >= 1; kept as the documented guard
    if (params.d / params.m - 1.0 <= -1.0)
        throw DomainError("radial_rule: radial weight exponent out of range");
    QuadratureRule rule = build_rule(params, n_nodes, sphere_order);
    if (rule.self_check_mass > 1e-11 || rule.self_check_norms > 1e-11) {
        rule = build_rule(params, 2 * n_nodes, sphere_order);
        if (rule.self_check_mass > 1e-11 || rule.self_check_norms > 1e-11)
            throw NonConvergence("radial_rule: self-check failed after doubling nodes");
    }
    return rule;
}

double sphere_monomial_integral(int d, const MultiIndex& nu, const MultiIndex& mu) {
    if (nu.dim() != d || mu.dim() != d)
        throw DomainError("sphere_monomial_integral: dimension mismatch");
    if (!(nu == mu)) return 0.0;
    double lg = std::lgamma(double(d));
    for (int i = 0; i < d; ++i) lg += std::lgamma(double(nu[i]) + 1.0);
    lg -= std::lgamma(double(d + nu.degree()));
    return std::exp(lg);
}

std::vector<std::pair<VecC, double>> sphere_samples(int d, int order) {
    if (order < 4) throw DomainError("sphere_samples: order must be >= 4");
    std::vector<std::pair<VecC, double>> out;
    const auto phase = [&](int a) {
        return std::polar(1.0, 2.0 * std::numbers::pi * a / order);
    };
    if (d == 1) {
        out.reserve(order);
        for (int a = 0; a < order; ++a) {
            VecC z(1);
            z(0) = phase(a);
            out.emplace_back(z, 1.0 / order);
        }
        return out;
    }
    if (d == 2) {
        // |zeta_1|^2 is uniform on [0,1]
        std::vector<double> xg, wg;
        gauss_legendre(std::max(8, order / 2), xg, wg);
        for (std::size_t i = 0; i < xg.size(); ++i) {
            const double u = 0.5 * (xg[i] + 1.0);
            const double wu = 0.5 * wg[i];
            for (int a1 = 0; a1 < order; ++a1)
                for (int a2 = 0; a2 < order; ++a2) {
                    VecC z(2);
                    z(0) = std::sqrt(u) * phase(a1);
                    z(1) = std::sqrt(1.0 - u) * phase(a2);
                    out.emplace_back(z, wu / (double(order) * order));
                }
        }
        return out;
    }
    if (d == 3) {
        // x1 = |zeta_1|^2 has density 2(1-x1); given x1 the remaining split is uniform
        const int nlat = std::max(8, order / 2);
        std::vector<double> xg, wg;
        gauss_legendre(nlat, xg, wg);
        std::vector<double> pts, wts, x1n, x1w;
        for (int i = 0; i < nlat * 4; ++i) {
            const double x = (i + 0.5) / (nlat * 4.0);
            pts.push_back(x);
            wts.push_back(2.0 * (1.0 - x) / (nlat * 4.0));
        }
        stieltjes_gauss(pts, wts, nlat, x1n, x1w);
        for (int i = 0; i < nlat; ++i)
            for (int jj = 0; jj < nlat; ++jj) {
                const double x1 = x1n[i];
                const double x2 = 0.5 * (xg[jj] + 1.0);
                const double w12 = x1w[i] * 0.5 * wg[jj];
                for (int a1 = 0; a1 < order; ++a1)
                    for (int a2 = 0; a2 < order; ++a2)
                        for (int a3 = 0; a3 < order; ++a3) {
                            VecC z(3);
                            z(0) = std::sqrt(x1) * phase(a1);
                            z(1) = std::sqrt((1.0 - x1) * x2) * phase(a2);
                            z(2) = std::sqrt((1.0 - x1) * (1.0 - x2)) * phase(a3);
                            out.emplace_back(z, w12 / (double(order) * order * order));
                        }
            }
        return out;
    }
    throw DomainError("sphere_samples: d is limited to {1, 2, 3}");
}

Mat integrate_mu(const std::function<Mat(const VecC&)>& f, const QuadratureRule& rule) {
    const auto samples = sphere_samples(rule.params.d, rule.sphere_order);
    Mat acc;
    bool first = true;
    for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
        const double r = rule.radial_nodes[i];
        for (const auto& [pt, w] : samples) {
            const Mat v = f(pt * r) * (w * rule.radial_weights[i]);
            if (first) {
                acc = v;
                first = false;
            } else {
                acc += v;
            }
        }
    }
    return acc;
}

Complex integrate_mu_scalar(const std::function<Complex(const VecC&)>& f,
                            const QuadratureRule& rule) {
    const auto samples = sphere_samples(rule.params.d, rule.sphere_order);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
        const double r = rule.radial_nodes[i];
        for (const auto& [pt, w] : samples)
            acc += f(pt * r) * (w * rule.radial_weights[i]);
    }
    return acc;
}

void PolyIntegrand::add(const MultiIndex& nu, const MultiIndex& mu, Complex c) {
    auto key = std::make_pair(nu, mu);
    auto it = terms.find(key);
    if (it == terms.end())
        terms.emplace(std::move(key), c);
    else
        it->second += c;
}

Complex integrate_mu_poly(const PolyIntegrand& f, const QuadratureRule& rule) {
    Complex acc{0.0, 0.0};
    for (const auto& [key, c] : f.terms) {
        const auto& [nu, mu] = key;
        if (!(nu == mu)) continue;  // phase integration kills unbalanced terms
        const double sphere = sphere_monomial_integral(f.d, nu, nu);
        double radial = 0.0;
        for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i)
            radial += rule.radial_weights[i] *
                      std::pow(rule.radial_nodes[i], 2.0 * nu.degree());
        acc += c * sphere * radial;
    }
    return acc;
}

int kernel_phase_count(const QuadratureRule& rule, double beta, double z_max) {
    // largest radius whose weight is not hopelessly below the peak
    double wmax = 0.0;
    for (double w : rule.radial_weights) wmax = std::max(wmax, w);
    double r_eff = rule.radial_nodes.front();
    for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i)
        if (rule.radial_weights[i] > wmax * 1e-130)
            r_eff = std::max(r_eff, rule.radial_nodes[i]);
    const double c = std::pow(beta, 1.0 / rule.params.m) * z_max * r_eff;
    if (c <= 1.0) return 32;
    // decay index of the E^{(d-1)} series terms c^k |coeff_k|
    const auto coeffs = mlf::ml_family_coefficients(
        rule.params.m, mlf::MLOrder(rule.params.d - 1), mlf::series_term_cap);
    double best = -1e300;
    int needed = 32;
    const double lc = std::log(c);
    for (int k = 0; k < mlf::series_term_cap; ++k) {
        if (coeffs[k] == 0.0) continue;
        const double lt = std::log(coeffs[k]) + k * lc;
        best = std::max(best, lt);
        if (lt < best - 46.0) {
            needed = k;
            break;
        }
    }
    int p = 32;
    while (p < needed + 8) p *= 2;
    return p;
}

Mat project(const std::function<Mat(const VecC&)>& f, const SpaceParams& params,
            double beta, const VecC& z, const QuadratureRule& rule) {
    if (rule.params.d != params.d || rule.params.m != params.m ||
        rule.params.alpha != beta)
        throw DomainError("project: rule must be built for (d, m, beta)");
    const SpaceParams proj_params{params.d, params.m, beta};
    const auto g = [&](const VecC& zeta) -> Mat {
        const ScaledComplex k = kernel_eval(proj_params, z, zeta);
        return f(zeta) * k.value();
    };
    return integrate_mu(g, rule);
}

double verify_reproducing(const TaylorSymbol& f, const SpaceParams& params,
                          const std::vector<VecC>& z_list) {
    double z_max = 0.0;
    for (const auto& z : z_list) z_max = std::max(z_max, z.norm());
    QuadratureRule rule = radial_rule(params, 64, 64);
    rule.sphere_order = kernel_phase_count(rule, params.alpha, std::max(z_max, 1.0));
    const auto fe = [&](const VecC& zeta) { return f.eval(zeta); };
    double worst = 0.0;
    for (const auto& z : z_list) {
        const Mat direct = f.eval(z);
        const Mat projected = project(fe, params, params.alpha, z, rule);
        worst = std::max(worst,
                         op_norm(projected - direct) / std::max(1.0, op_norm(direct)));
    }
    return worst;
}

double growth_space_projection_check(const TaylorSymbol& b, const SpaceParams& params,
                                     double beta, const std::vector<VecC>& z_list) {
    const double a = 2.0 * beta;
    const TaylorSymbol b_scaled = b.scale_argument(std::pow(2.0, 1.0 / params.m));
    const double pre = std::pow(2.0, params.d / params.m);
    const auto c = [&](const VecC& zeta) -> Mat {
        const double w = std::exp(-a * std::pow(zeta.norm(), 2.0 * params.m));
        return b_scaled.eval(zeta) * (pre * w);
    };
    double z_max = 0.0;
    for (const auto& z : z_list) z_max = std::max(z_max, z.norm());
    QuadratureRule rule = radial_rule({params.d, params.m, a}, 64, 64);
    rule.sphere_order = kernel_phase_count(rule, a, std::max(z_max, 1.0));
    double worst = 0.0;
    for (const auto& z : z_list) {
        const Mat direct = b.eval(z);
        const Mat projected = project(c, params, a, z, rule);
        worst = std::max(worst,
                         op_norm(projected - direct) / std::max(1.0, op_norm(direct)));
    }
    return worst;
}

nlohmann::json QuadratureRule::to_json() const {
    nlohmann::json j;
    j["d"] = params.d;
    j["m"] = params.m;
    j["alpha"] = params.alpha;
    j["sphere_order"] = sphere_order;
    j["radial_nodes"] = radial_nodes;
    j["radial_weights"] = radial_weights;
    j["self_check"] = {{"mass", self_check_mass}, {"monomial_norms", self_check_norms}};
    return j;
}

} // namespace focklab
