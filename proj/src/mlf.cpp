#include "focklab/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace focklab::mlf {

namespace {

struct KahanSum {
    Complex sum{0.0, 0.0};
    Complex comp{0.0, 0.0};
    void add(Complex t) {
        const Complex y = t - comp;
        const Complex s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
};

// ----- double-double arithmetic, used when series cancellation would eat
// ----- more than double precision can spare (condition ~ e^{|z|^m - Re z^m})

struct DD {
    double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {  // |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    const DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul_d(DD a, double b) {
    const double p = a.hi * b;
    const double e = std::fma(a.hi, b, -p);
    DD s = two_sum(p, e + a.lo * b);
    const double hi = s.hi + s.lo;
    return {hi, s.lo - (hi - s.hi)};
}

inline DD dd_div_d(DD a, double b) {
    const double q1 = a.hi / b;
    const double p = q1 * b;
    const double e = std::fma(q1, b, -p);
    const double r = (a.hi - p) - e + a.lo;
    return quick_two_sum(q1, r / b);
}

struct ComplexDD {
    DD re, im;
    void add(const ComplexDD& o) {
        re = dd_add(re, o.re);
        im = dd_add(im, o.im);
    }
    ComplexDD mul(Complex z) const {
        ComplexDD r;
        r.re = dd_add(dd_mul_d(re, z.real()), dd_mul_d(im, -z.imag()));
        r.im = dd_add(dd_mul_d(re, z.imag()), dd_mul_d(im, z.real()));
        return r;
    }
    ComplexDD div_d(double b) const { return {dd_div_d(re, b), dd_div_d(im, b)}; }
    Complex value() const { return {re.hi + re.lo, im.hi + im.lo}; }
    double abs() const { return std::abs(value()); }
};

double family_log_coeff(double m, int j, int k) {
    // c_k = Gamma(k+j+1) / (Gamma(k+1) Gamma((k+j+1)/m))      for j >= 0
    // c_k = 1 / (k Gamma(k/m)), k >= 1                         for j = -1
    if (j >= 0)
        return std::lgamma(double(k + j + 1)) - std::lgamma(double(k + 1)) -
               std::lgamma((k + j + 1) / m);
    return -std::log(double(k)) - std::lgamma(k / m);
}

// Consecutive coefficient ratios c_{k0+i+1}/c_{k0+i} of the E^{(j)} series,
// cached per (m, j) with copy-on-grow snapshots so callers hold stable views.
std::shared_ptr<const std::vector<double>> family_ratios(double m, int j, std::size_t n) {
    static std::mutex mtx;
    static std::map<std::pair<double, int>, std::shared_ptr<const std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{m, j}];
    if (!slot || slot->size() < n) {
        auto grown = std::make_shared<std::vector<double>>(slot ? *slot
                                                                : std::vector<double>{});
        const int k0 = (j >= 0) ? 0 : 1;
        grown->reserve(n);
        double log_prev = family_log_coeff(m, j, k0 + static_cast<int>(grown->size()));
        while (grown->size() < n) {
            const int k = k0 + static_cast<int>(grown->size());
            const double log_next = family_log_coeff(m, j, k + 1);
            grown->push_back(std::exp(log_next - log_prev));
            log_prev = log_next;
        }
        slot = std::move(grown);
    }
    return slot;
}

std::size_t terms_needed(double m, double abs_z) {
    const double azm = std::pow(abs_z, m);
    return static_cast<std::size_t>(std::min<double>(series_term_cap,
                                                     3.0 * m * azm + 256.0));
}

double principal_arg(Complex z) { return std::atan2(z.imag(), z.real()); }

Complex principal_power(Complex z, double expo) {
    return std::exp(expo * std::log(z));
}

} // namespace

Complex ml_series(double beta, double gamma, Complex z, double tol) {
    if (beta <= 0.0 || gamma <= 0.0)
        throw DomainError("ml_series: beta and gamma must be positive");
    if (tol <= 0.0) throw DomainError("ml_series: tol must be positive");

    KahanSum acc;
    Complex term = std::exp(-std::lgamma(gamma));
    acc.add(term);
    const double az = std::abs(z);
    for (int k = 0; k < series_term_cap; ++k) {
        const double ratio =
            std::exp(std::lgamma(beta * k + gamma) - std::lgamma(beta * (k + 1) + gamma));
        term *= z * ratio;
        acc.add(term);
        const double next_ratio =
            az * std::exp(std::lgamma(beta * (k + 1) + gamma) -
                          std::lgamma(beta * (k + 2) + gamma));
        if (next_ratio < 1.0) {
            const double tail = std::abs(term) * next_ratio / (1.0 - next_ratio);
            if (tail <= tol * std::abs(acc.sum)) return acc.sum;
        }
    }
    throw NonConvergence("ml_series: term cap reached before tail bound was met");
}

bool in_sector(double m, Complex z) {
    if (z == Complex{0.0, 0.0}) return true;
    return std::abs(principal_arg(z)) <= std::numbers::pi / (2.0 * m) + 1e-12;
}

ScaledComplex ml_family_series(double m, MLOrder order, Complex z) {
    if (m < 1.0) throw DomainError("ml_family_series: m must be >= 1");
    const int j = order.j;
    if (z == Complex{0.0, 0.0}) {
        if (j == -1) return ScaledComplex::zero();
        return ScaledComplex::from(std::exp(family_log_coeff(m, j, 0)));
    }
    const int k0 = (j >= 0) ? 0 : 1;
    const double az = std::abs(z);
    const auto ratios = family_ratios(m, j, terms_needed(m, az) + 2);
    const Complex first =
        std::exp(family_log_coeff(m, j, k0)) * principal_power(z, double(k0));

    // cancellation budget: the largest term is ~e^{|z|^m}, the sum ~e^{Re z^m}
    const Complex zm = principal_power(z, m);
    const double cancel = std::pow(az, m) - zm.real();
    const bool extended = cancel > 16.0;

    bool converged = false;
    Complex result;
    if (!extended) {
        KahanSum acc;
        Complex term = first;
        acc.add(term);
        double peak = std::abs(term);
        for (std::size_t i = 0; i + 1 < ratios->size(); ++i) {
            term *= z * (*ratios)[i];
            acc.add(term);
            const double at = std::abs(term);
            peak = std::max(peak, at);
            const double next_ratio = az * (*ratios)[i + 1];
            if (next_ratio < 1.0 &&
                at * next_ratio / (1.0 - next_ratio) <=
                    1e-18 * std::max(peak, std::abs(acc.sum))) {
                converged = true;
                break;
            }
        }
        result = acc.sum;
    } else {
        // double-double summation keeps ~32 digits through the cancellation.
        // At m = 1 every family member has coefficients exactly 1/k!, so the
        // term recurrence (multiply by z, divide by an integer) is carried at
        // full dd accuracy; for m > 1 the lgamma-based ratios limit the result
        // to roughly eps * exp(cancel - 16) relative, which only ever feeds
        // absolute-error-tolerant integrals.
        const bool exact_ratios = (m == 1.0);
        ComplexDD acc{{first.real(), 0.0}, {first.imag(), 0.0}};
        ComplexDD term = acc;
        double peak = std::abs(first);
        for (std::size_t i = 0; i + 1 < ratios->size(); ++i) {
            if (exact_ratios)
                term = term.mul(z).div_d(double(k0 + static_cast<int>(i) + 1));
            else
                term = term.mul(z * (*ratios)[i]);
            acc.add(term);
            const double at = term.abs();
            peak = std::max(peak, at);
            const double next_ratio = az * (*ratios)[i + 1];
            if (next_ratio < 1.0 &&
                at * next_ratio / (1.0 - next_ratio) <= 1e-34 * peak) {
                converged = true;
                break;
            }
        }
        result = acc.value();
    }
    if (!converged && ratios->size() + 2 >= series_term_cap)
        throw NonConvergence("ml_family_series: term cap reached");
    return ScaledComplex::from(result);
}

RealPolynomial p_poly(double m, int k) {
    if (k < 0) throw DomainError("p_poly: k must be >= 0");
    std::vector<double> p{1.0};
    for (int kk = 0; kk < k; ++kk) {
        std::vector<double> q(kk + 2, 0.0);
        for (int l = 0; l <= kk; ++l) {
            const double c = p[l];
            q[l + 1] += m * c;            // m x p_k
            q[l] += (m * l - kk) * c;     // m x p_k' - k p_k
        }
        p = std::move(q);
    }
    return RealPolynomial{std::move(p)};
}

std::vector<double> taylor_truncate(const std::vector<double>& series_coeffs, int k) {
    if (k < -2) throw DomainError("taylor_truncate: k must be >= -2");
    if (k < 0) return {};
    if (series_coeffs.size() < static_cast<std::size_t>(k) + 1)
        throw DomainError("taylor_truncate: series coefficients missing through index k");
    return {series_coeffs.begin(), series_coeffs.begin() + (k + 1)};
}

std::vector<double> ml_family_coefficients(double m, MLOrder order, int count) {
    std::vector<double> out(count, 0.0);
    for (int k = (order.j >= 0 ? 0 : 1); k < count; ++k)
        out[k] = std::exp(family_log_coeff(m, order.j, k));
    return out;
}

ScaledComplex ml_asymptotic_leading(double m, int k, Complex z) {
    if (m < 1.0) throw DomainError("ml_asymptotic_leading: m must be >= 1");
    if (z == Complex{0.0, 0.0})
        throw DomainError("ml_asymptotic_leading: z must be nonzero");
    if (!in_sector(m, z))
        throw DomainError("ml_asymptotic_leading: z outside the sector |arg z| <= pi/(2m)");
    const Complex w = principal_power(z, m);
    if (k == 0) return ScaledComplex::from_polar_log(w.real(), w.imag());
    const RealPolynomial pk = p_poly(m, k);
    const Complex mant = pk(w) / principal_power(z, double(k)) * std::polar(1.0, w.imag());
    ScaledComplex s{mant, w.real()};
    s.normalize();
    return s;
}

double asymptotic_relative_error(double m, int k, Complex z) {
    const ScaledComplex lead = ml_asymptotic_leading(m, k, z);
    const ScaledComplex series = ml_family_series(m, MLOrder(k - 1), z);
    const ScaledComplex diff = series - lead;
    return std::exp(diff.log_abs() - lead.log_abs());
}

ScaledComplex ml_family_eval(double m, MLOrder order, Complex z) {
    if (m < 1.0) throw DomainError("ml_family_eval: m must be >= 1");
    const double azm = std::pow(std::abs(z), m);
    if (azm <= series_crossover_high) return ml_family_series(m, order, z);
    const int k = order.j + 1;
    if (in_sector(m, z)) return ml_asymptotic_leading(m, k, z);
    // bound-only branch: the paper gives O(|z|^{-k}) here with no computable
    // phase; return the measured bound as a positive magnitude
    const double c = offsector_bound_constant(m, k);
    const double mag = (k >= 1) ? c * std::pow(std::abs(z), -double(k)) : c;
    return ScaledComplex::from_polar_log(std::log(mag), 0.0);
}

ScaledComplex g_l_eval(double m, int d, int l, Complex t) {
    if (m < 1.0) throw DomainError("g_l_eval: m must be >= 1");
    if (l < 0 || l > d) throw DomainError("g_l_eval: l must lie in [0, d]");
    const int j = l - 1;
    const int q = d - l - 1;  // G = t^{-q} (E^{(j)} - T_{q-1} E^{(j)})
    const int k0 = (j >= 0) ? 0 : 1;
    const double azm = std::pow(std::abs(t), m);

    if (azm <= series_crossover_high) {
        // shifted series: G = sum_{i >= max(q, k0, 0)} c_i t^{i-q}
        const int i0 = std::max({q, 0, k0});
        if (t == Complex{0.0, 0.0}) {
            if (q >= 0 && q >= k0)
                return ScaledComplex::from(std::exp(family_log_coeff(m, j, q)));
            return ScaledComplex::zero();
        }
        const double at = std::abs(t);
        const auto ratios = family_ratios(m, j, terms_needed(m, at) + i0 + 2);
        KahanSum acc;
        Complex term = std::exp(family_log_coeff(m, j, i0)) *
                       principal_power(t, double(i0 - q));
        acc.add(term);
        double peak = std::abs(term);
        for (std::size_t i = i0 - k0; i + 1 < ratios->size(); ++i) {
            term *= t * (*ratios)[i];
            acc.add(term);
            peak = std::max(peak, std::abs(term));
            const double next_ratio = at * (*ratios)[i + 1];
            if (next_ratio < 1.0) {
                const double tail = std::abs(term) * next_ratio / (1.0 - next_ratio);
                if (tail <= 1e-18 * std::max(peak, std::abs(acc.sum))) break;
            }
        }
        return ScaledComplex::from(acc.sum);
    }

    // Taylor part T_{d-l-2} E^{(j)}: small against e^{t^m} except near the
    // sector edge, where it still matters
    Complex taylor{0.0, 0.0};
    if (q >= 1) {
        const auto coeffs = ml_family_coefficients(m, MLOrder(j), q);
        for (int i = q - 1; i >= 0; --i) taylor = taylor * t + coeffs[i];
    }
    const Complex tq = principal_power(t, -double(q));
    if (in_sector(m, t)) {
        const ScaledComplex e = ml_asymptotic_leading(m, l, t);
        return (e - ScaledComplex::from(taylor)) * tq;
    }
    const double c = offsector_bound_constant(m, l);
    const double ebound = (l >= 1) ? c * std::pow(std::abs(t), -double(l)) : c;
    const double mag = (ebound + std::abs(taylor)) * std::abs(tq);
    return ScaledComplex::from_polar_log(std::log(mag), 0.0);
}

double overlap_self_check(double m, int k_max) {
    double worst = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        for (double s : {series_crossover_low, 23.0, 26.0, series_crossover_high}) {
            const double r = std::pow(s, 1.0 / m);
            worst = std::max(worst, asymptotic_relative_error(m, k, Complex(r, 0.0)));
        }
    }
    if (worst > 1e-4)
        throw NonConvergence("overlap_self_check: series and asymptotic branches "
                             "disagree beyond 1e-4 on the crossover band");
    return worst;
}

double offsector_bound_constant(double m, int k) {
    static std::mutex mtx;
    static std::map<std::pair<double, int>, double> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({m, k});
        if (it != cache.end()) return it->second;
    }
    const double r = std::pow(28.0, 1.0 / m);
    const double lo = std::numbers::pi / (2.0 * m) + 0.05;
    double worst = 0.0;
    for (int i = 0; i <= 24; ++i) {
        const double th = lo + (std::numbers::pi - lo) * i / 24.0;
        const Complex z = std::polar(r, th);
        const double av = std::exp(ml_family_series(m, MLOrder(k - 1), z).log_abs());
        worst = std::max(worst, (k >= 1) ? av * std::pow(r, double(k)) : av);
    }
    const double c = 2.0 * worst;
    std::lock_guard<std::mutex> lock(mtx);
    cache[{m, k}] = c;
    return c;
}

} // namespace focklab::mlf
