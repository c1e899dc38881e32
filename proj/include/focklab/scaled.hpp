#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "focklab/errors.hpp"

namespace focklab {

/// Complex value stored as mantissa * exp(log_scale), for quantities that
/// grow like exp(|z|^m) past the double range.  Normalized so that the
/// mantissa modulus lies in [1, 2) (hence in the documented [0.5, 2) band)
/// whenever the value is nonzero.
struct ScaledComplex {
    std::complex<double> mantissa{0.0, 0.0};
    double log_scale{0.0};

    static ScaledComplex zero() { return {}; }

    static ScaledComplex from(std::complex<double> v) {
        ScaledComplex s{v, 0.0};
        s.normalize();
        return s;
    }

    /// value = exp(i*phase) * exp(log_abs)
    static ScaledComplex from_polar_log(double log_abs, double phase) {
        ScaledComplex s{std::polar(1.0, phase), log_abs};
        s.normalize();
        return s;
    }

    bool is_zero() const { return mantissa == std::complex<double>(0.0, 0.0); }

    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(mantissa)) + log_scale;
    }

    double arg() const { return std::arg(mantissa); }

    /// Raw double value; only meaningful while log_abs() stays below ~700.
    std::complex<double> value() const {
        if (is_zero()) return {0.0, 0.0};
        if (log_abs() >= 700.0)
            throw OverflowError("ScaledComplex::value: magnitude exceeds double range");
        return mantissa * std::exp(log_scale);
    }

    void normalize() {
        if (is_zero()) {
            log_scale = 0.0;
            return;
        }
        const double la = std::log2(std::abs(mantissa));
        const double shift = std::floor(la);
        if (shift != 0.0) {
            mantissa *= std::exp2(-shift);
            log_scale += shift * std::numbers::ln2_v<double>;
        }
    }

    ScaledComplex operator*(const ScaledComplex& o) const {
        ScaledComplex r{mantissa * o.mantissa, log_scale + o.log_scale};
        r.normalize();
        return r;
    }

    ScaledComplex operator*(std::complex<double> c) const {
        ScaledComplex r{mantissa * c, log_scale};
        r.normalize();
        return r;
    }

    ScaledComplex operator+(const ScaledComplex& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        // align on the larger scale; the other side underflows harmlessly
        const ScaledComplex& big = (log_scale >= o.log_scale) ? *this : o;
        const ScaledComplex& sml = (log_scale >= o.log_scale) ? o : *this;
        const double delta = sml.log_scale - big.log_scale;
        ScaledComplex r{big.mantissa + sml.mantissa * std::exp(delta), big.log_scale};
        r.normalize();
        return r;
    }

    ScaledComplex operator-(const ScaledComplex& o) const {
        return *this + (o * std::complex<double>(-1.0, 0.0));
    }
};

/// Accumulates sums of positive terms given by their logarithms without
/// leaving log space (used for integrals of exp(|z|^m)-sized integrands).
class LogAccumulator {
  public:
    void add_log(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (sum_ == 0.0) {
            max_log_ = log_term;
            sum_ = 1.0;
            return;
        }
        if (log_term <= max_log_) {
            sum_ += std::exp(log_term - max_log_);
        } else {
            sum_ = sum_ * std::exp(max_log_ - log_term) + 1.0;
            max_log_ = log_term;
        }
    }

    /// add a term value * exp(log_scale) with value > 0
    void add(double value, double log_scale) {
        if (value <= 0.0) return;
        add_log(std::log(value) + log_scale);
    }

    bool empty() const { return sum_ == 0.0; }

    double log_total() const {
        if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
        return max_log_ + std::log(sum_);
    }

  private:
    double max_log_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

} // namespace focklab
