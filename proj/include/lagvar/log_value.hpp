#ifndef LAGVAR_LOG_VALUE_HPP
#define LAGVAR_LOG_VALUE_HPP

#include <cmath>
#include <limits>

namespace lagvar {

// Signed magnitude stored as log|x|.  Kernel formulas multiply exp(-huge) by
// Bessel factors of size exp(+huge); keeping everything in log space makes the
// products finite down to t ~ 1e-6.
struct LogValue {
    int sign = 0;          // -1, 0, +1
    double log_mag = -std::numeric_limits<double>::infinity();

    static LogValue zero() { return LogValue{}; }
    static LogValue one() { return LogValue{1, 0.0}; }

    static LogValue from_log(int s, double lm) {
        if (s == 0) return zero();
        return LogValue{s < 0 ? -1 : 1, lm};
    }

    static LogValue from_real(double v) {
        if (v == 0.0) return zero();
        return LogValue{v < 0.0 ? -1 : 1, std::log(std::fabs(v))};
    }

    double value() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_mag);
    }

    bool is_zero() const { return sign == 0; }

    LogValue operator*(const LogValue& o) const {
        if (sign == 0 || o.sign == 0) return zero();
        return LogValue{sign * o.sign, log_mag + o.log_mag};
    }
    LogValue& operator*=(const LogValue& o) { return *this = *this * o; }

    LogValue operator/(const LogValue& o) const {
        if (sign == 0) return zero();
        return LogValue{sign * o.sign, log_mag - o.log_mag};
    }

    LogValue pow(double p) const {
        if (sign == 0) return zero();
        // only meaningful for positive base
        return LogValue{1, p * log_mag};
    }

    LogValue operator-() const {
        if (sign == 0) return zero();
        return LogValue{-sign, log_mag};
    }
};

// x * exp(s) without forming exp(s) when it would overflow on its own.
inline LogValue scale_exp(const LogValue& x, double s) {
    if (x.sign == 0) return LogValue::zero();
    return LogValue{x.sign, x.log_mag + s};
}

} // namespace lagvar

#endif
