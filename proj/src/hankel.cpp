#include "focklab/hankel.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "focklab/mlf.hpp"

namespace focklab::hankel {

Mat hankel_entry(const SpaceParams& params, const TaylorSymbol& b,
                 const MultiIndex& mu, const MultiIndex& lam) {
    const MultiIndex s = mu + lam;
    const Mat bc = b.coeff(s);
    if (bc.isZero(0.0)) return Mat::Zero(b.n(), b.n());
    const double log_ratio = log_monomial_norm_sq(params, s) -
                             0.5 * log_monomial_norm_sq(params, mu) -
                             0.5 * log_monomial_norm_sq(params, lam);
    if (log_ratio >= 700.0)
        throw OverflowError("hankel_entry: s-ratio exceeds double range; "
                            "reduce the truncation degree");
    return bc * std::exp(log_ratio);
}

HankelMatrix build_hankel(const SpaceParams& params, const TaylorSymbol& b, int N,
                          int size_cap) {
    params.validate();
    if (N < 0) throw DomainError("build_hankel: N must be >= 0");
    if (b.d() != params.d) throw DomainError("build_hankel: symbol dimension mismatch");
    const auto idx = multi_indices_up_to(params.d, N);
    const int n = b.n();
    const long size = static_cast<long>(n) * static_cast<long>(idx.size());
    if (size > size_cap)
        throw SizeLimitError("build_hankel: n * B_N exceeds the configured cap");

    HankelMatrix h;
    h.params = params;
    h.n = n;
    h.N = N;
    h.entries = Mat::Zero(size, size);
    for (const auto& nu : idx)
        for (int j = 0; j < n; ++j) h.basis_index.emplace_back(nu, j);

    const int max_deg = b.max_degree();
    for (std::size_t bi = 0; bi < idx.size(); ++bi) {
        for (std::size_t bj = 0; bj < idx.size(); ++bj) {
            const MultiIndex& lam = idx[bi];  // row block
            const MultiIndex& mu = idx[bj];   // column block
            if (lam.degree() + mu.degree() > max_deg) continue;
            const Mat block = hankel_entry(params, b, mu, lam);
            if (block.isZero(0.0)) continue;
            // rows (lam, j), columns (mu, i): block entry (j, i)
            h.entries.block(bi * n, bj * n, n, n) = block;
        }
    }
    return h;
}

double operator_norm(const HankelMatrix& h) {
    if (h.entries.size() == 0) return 0.0;
    Eigen::BDCSVD<Mat> svd(h.entries);
    return svd.singularValues()(0);
}

std::vector<double> singular_spectrum(const HankelMatrix& h, int top_k) {
    if (top_k < 0 || top_k > h.entries.rows())
        throw DomainError("singular_spectrum: top_k out of range");
    Eigen::BDCSVD<Mat> svd(h.entries);
    std::vector<double> out(top_k);
    for (int i = 0; i < top_k; ++i) out[i] = svd.singularValues()(i);
    return out;
}

Complex hankel_form_quadrature(const SpaceParams& params, const TaylorSymbol& b,
                               const TaylorSymbol& x, const TaylorSymbol& y,
                               const QuadratureRule& rule) {
    if (x.d() != params.d || y.d() != params.d || b.d() != params.d)
        throw DomainError("hankel_form_quadrature: dimension mismatch");
    // integrand <b(zeta) x(conj zeta), y(zeta)> = sum over coefficients of
    // (y_lam^* b_nu x_mu) zeta^nu conj(zeta)^{mu+lam}
    PolyIntegrand f;
    f.d = params.d;
    for (const auto& [nu, bc] : b.coeffs())
        for (const auto& [mu, xc] : x.coeffs())
            for (const auto& [lam, yc] : y.coeffs()) {
                // x, y are n x 1 columns stored as the first column
                const Complex c = (yc.col(0).adjoint() * bc * xc.col(0))(0, 0);
                f.add(nu, mu + lam, c);
            }
    return integrate_mu_poly(f, rule);
}

HankelMatrix lift_T(const SpaceParams& params, const TaylorSymbol& b, int N,
                    int size_cap) {
    params.validate();
    const auto idx = multi_indices_up_to(params.d, N);
    const int n = b.n();
    const long size = static_cast<long>(n) * n * static_cast<long>(idx.size());
    if (size > size_cap)
        throw SizeLimitError("lift_T: n^2 * B_N exceeds the configured cap");

    // basis of F^2(S^2(C^n)): zeta^nu E_{st}; left multiplication by b acts on
    // the row index s and leaves t untouched
    HankelMatrix h;
    h.params = params;
    h.n = n * n;
    h.N = N;
    h.entries = Mat::Zero(size, size);
    const int nn = n * n;  // (s, t) flattened as s * n + t
    for (const auto& nu : idx)
        for (int st = 0; st < nn; ++st) h.basis_index.emplace_back(nu, st);

    const int max_deg = b.max_degree();
    for (std::size_t bi = 0; bi < idx.size(); ++bi)
        for (std::size_t bj = 0; bj < idx.size(); ++bj) {
            const MultiIndex& lam = idx[bi];
            const MultiIndex& mu = idx[bj];
            if (lam.degree() + mu.degree() > max_deg) continue;
            const Mat block = hankel_entry(params, b, mu, lam);
            if (block.isZero(0.0)) continue;
            for (int sp = 0; sp < n; ++sp)
                for (int s = 0; s < n; ++s)
                    for (int t = 0; t < n; ++t)
                        h.entries(bi * nn + sp * n + t, bj * nn + s * n + t) =
                            block(sp, s);
        }
    return h;
}

std::vector<double> solve_a_coeffs(double m, int d) {
    if (m < 1.0 || d < 1) throw DomainError("solve_a_coeffs: need m >= 1, d >= 1");
    const mlf::RealPolynomial lhs = mlf::p_poly(m, d + 1);
    // p_{1+d}(2T): scale coefficient of T^k by 2^k
    std::vector<double> L(lhs.coeffs);
    double two_k = 1.0;
    for (auto& c : L) {
        c *= two_k;
        two_k *= 2.0;
    }
    if (std::abs(L[0]) > 1e-9)
        throw SingularError("solve_a_coeffs: p_1 does not divide p_{1+d}(2T)");
    // divide by p_1(T) = m T
    std::vector<double> q(L.begin() + 1, L.end());
    for (auto& c : q) c /= m;

    // q = sum_l a_l p_l, triangular since deg p_l = l with leading m^l
    const int dim = d + 1;
    std::vector<std::vector<double>> p(dim);
    for (int l = 0; l <= d; ++l) p[l] = mlf::p_poly(m, l).coeffs;
    std::vector<double> a(dim, 0.0), r(q);
    for (int l = d; l >= 0; --l) {
        a[l] = r[l] / p[l][l];
        for (int i = 0; i <= l; ++i) r[i] -= a[l] * p[l][i];
    }
    double resid = 0.0;
    for (double c : r) resid = std::max(resid, std::abs(c));
    if (resid > 1e-9)
        throw SingularError("solve_a_coeffs: identity residual above 1e-9");
    if (std::abs(a[d] - std::pow(2.0, 1 + d)) > 1e-9)
        throw SingularError("solve_a_coeffs: a_d != 2^{1+d}");
    return a;
}

std::function<VecC(const VecC&)> test_function_x(const SpaceParams& params,
                                                 const VecC& z, const VecC& x0) {
    params.validate();
    const double pre = std::pow(2.0, -params.d / params.m) *
                       c_norm_const(params.d, params.m);
    const double a1m = std::pow(params.alpha, 1.0 / params.m);
    const VecC zc = z.conjugate();
    const double m = params.m;
    return [=](const VecC& zeta) -> VecC {
        // <zeta, conj z> = sum zeta_j z_j
        const Complex t = a1m * inner(zeta, zc);
        const ScaledComplex e = mlf::ml_family_eval(m, mlf::MLOrder(0), t);
        return x0 * (pre * e.value());
    };
}

std::function<VecC(const VecC&)> test_function_y_term(const SpaceParams& params,
                                                      const VecC& z, const VecC& y0,
                                                      int l) {
    params.validate();
    if (l < 0 || l > params.d) throw DomainError("test_function_y_term: bad l");
    const auto a = solve_a_coeffs(params.m, params.d);
    const double a1m = std::pow(params.alpha, 1.0 / params.m);
    const double m = params.m;
    const int d = params.d;
    const double al = a[l];
    const VecC zz = z;
    return [=](const VecC& zeta) -> VecC {
        const Complex t = a1m * inner(zeta, zz);
        return y0 * (al * mlf::g_l_eval(m, d, l, t).value());
    };
}

std::function<VecC(const VecC&)> test_function_y(const SpaceParams& params,
                                                 const VecC& z, const VecC& y0) {
    params.validate();
    const auto a = solve_a_coeffs(params.m, params.d);
    const double a1m = std::pow(params.alpha, 1.0 / params.m);
    const double m = params.m;
    const int d = params.d;
    const VecC zz = z;
    return [=](const VecC& zeta) -> VecC {
        const Complex t = a1m * inner(zeta, zz);
        ScaledComplex acc = ScaledComplex::zero();
        for (int l = 0; l <= d; ++l)
            acc = acc + mlf::g_l_eval(m, d, l, t) * Complex(a[l], 0.0);
        return y0 * acc.value();
    };
}

TheoremAReport theorem_a_report(const SpaceParams& params, const TaylorSymbol& b,
                                int N, const GrowthGrid& grid) {
    if (N < 5) throw DomainError("theorem_a_report: N must be >= 5");
    TheoremAReport rep;
    rep.norm_hb = operator_norm(build_hankel(params, b, N));
    rep.norm_hb_prev = operator_norm(build_hankel(params, b, N - 5));
    if (std::abs(rep.norm_hb - rep.norm_hb_prev) >= 0.01 * rep.norm_hb)
        throw NotConvergedError("theorem_a_report: norm not converged within 1% "
                                "over the last 5 degrees");
    rep.sup_b_half = sup_growth_norm(b, params, params.alpha / 2.0, grid).value;
    rep.ratio = rep.norm_hb / rep.sup_b_half;
    rep.upper_ok =
        rep.norm_hb <= std::pow(2.0, params.d) * rep.sup_b_half + 1e-12;
    return rep;
}

CompactnessReport compactness_report(const SpaceParams& params, const TaylorSymbol& b,
                                     const std::vector<int>& N_list,
                                     const std::vector<double>& radii_in) {
    for (std::size_t i = 0; i + 1 < N_list.size(); ++i)
        if (N_list[i] >= N_list[i + 1])
            throw DomainError("compactness_report: N_list must be increasing");
    std::vector<double> radii = radii_in;
    if (radii.empty())
        for (double r = 1.0; r <= 8.0; r += 1.0) radii.push_back(r);

    CompactnessReport rep;
    rep.profile = littleoh_profile(b, params, params.alpha / 2.0, 0, radii);
    for (int N : N_list) {
        const HankelMatrix h = build_hankel(params, b, N);
        Eigen::BDCSVD<Mat> svd(h.entries);
        const auto& sv = svd.singularValues();
        const double floor = sv(0) * 1e-12;
        double tail = sv(0);
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > floor) tail = sv(i);
        rep.records.push_back({N, tail, rep.profile.back().second});
    }

    const double initial = rep.profile.front().second;
    const double tail = rep.profile.back().second;
    const double prev = rep.profile[rep.profile.size() - 2].second;
    const bool plateau =
        initial > 0.0 && tail > 0.1 * initial && (prev == 0.0 || tail / prev > 0.95);
    rep.verdict = plateau ? "non-compact" : "compact";
    return rep;
}

void export_matrix(const HankelMatrix& h, const std::string& bin_path,
                   const std::string& json_path) {
    std::ofstream bin(bin_path, std::ios::binary);
    if (!bin) throw ConfigError("export_matrix: cannot open " + bin_path);
    // row-major complex128
    for (Eigen::Index i = 0; i < h.entries.rows(); ++i)
        for (Eigen::Index j = 0; j < h.entries.cols(); ++j) {
            const Complex v = h.entries(i, j);
            const double re = v.real(), im = v.imag();
            bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
            bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
    nlohmann::json j;
    j["d"] = h.params.d;
    j["m"] = h.params.m;
    j["alpha"] = h.params.alpha;
    j["n"] = h.n;
    j["N"] = h.N;
    j["rows"] = h.entries.rows();
    j["layout"] = "row-major complex128";
    auto& bi = j["basis_index"] = nlohmann::json::array();
    for (const auto& [nu, coord] : h.basis_index)
        bi.push_back({{"nu", nu.exponents()}, {"coordinate", coord}});
    std::ofstream js(json_path);
    if (!js) throw ConfigError("export_matrix: cannot open " + json_path);
    js << j.dump(2) << "\n";
}

} // namespace focklab::hankel
