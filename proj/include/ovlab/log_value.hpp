#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ovlab {

// Sign plus natural-log-of-magnitude representation of a real number.
// Factors like exp(b^6/12) and high-degree Hermite values stay finite here;
// conversion back to double throws on overflow instead of returning inf.
class LogValue {
public:
    constexpr LogValue() noexcept : sign_(0), log_abs_(0.0) {}

    static LogValue from_real(double x) {
        if (x == 0.0) return LogValue();
        return LogValue(std::signbit(x) ? -1 : 1, std::log(std::fabs(x)));
    }

    static LogValue from_log(int sign, double log_abs) {
        if (sign == 0) return LogValue();
        return LogValue(sign > 0 ? 1 : -1, log_abs);
    }

    // exp(e), never overflowing.
    static LogValue exp_of(double e) { return LogValue(1, e); }

    int sign() const noexcept { return sign_; }
    double log_abs() const noexcept { return log_abs_; }
    bool is_zero() const noexcept { return sign_ == 0; }

    // Underflow collapses to 0 (that is the nearest double and what the
    // density formulas require for t -> 0+); overflow always throws.
    double to_real() const {
        if (sign_ == 0) return 0.0;
        if (log_abs_ > kOverflowLog)
            throw std::overflow_error("LogValue: exponent " + std::to_string(log_abs_) +
                                      " exceeds double range");
        return static_cast<double>(sign_) * std::exp(log_abs_);
    }

    LogValue operator-() const { return LogValue(-sign_, log_abs_); }

    friend LogValue operator*(const LogValue& a, const LogValue& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return LogValue();
        return LogValue(a.sign_ * b.sign_, a.log_abs_ + b.log_abs_);
    }

    friend LogValue operator/(const LogValue& a, const LogValue& b) {
        if (b.sign_ == 0) throw std::domain_error("LogValue: division by zero");
        if (a.sign_ == 0) return LogValue();
        return LogValue(a.sign_ * b.sign_, a.log_abs_ - b.log_abs_);
    }

    // Multiplication by a plain double without leaving the log domain.
    LogValue scaled(double c) const {
        if (sign_ == 0 || c == 0.0) return LogValue();
        int s = std::signbit(c) ? -sign_ : sign_;
        return LogValue(s, log_abs_ + std::log(std::fabs(c)));
    }

    LogValue squared() const {
        if (sign_ == 0) return LogValue();
        return LogValue(1, 2.0 * log_abs_);
    }

    // Signed log-sum-exp. Exact cancellation yields zero.
    friend LogValue operator+(const LogValue& a, const LogValue& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        double m = a.log_abs_ > b.log_abs_ ? a.log_abs_ : b.log_abs_;
        double r = a.sign_ * std::exp(a.log_abs_ - m) + b.sign_ * std::exp(b.log_abs_ - m);
        if (r == 0.0) return LogValue();
        return LogValue(std::signbit(r) ? -1 : 1, m + std::log(std::fabs(r)));
    }

    friend LogValue operator-(const LogValue& a, const LogValue& b) { return a + (-b); }

    LogValue& operator+=(const LogValue& b) { return *this = *this + b; }
    LogValue& operator*=(const LogValue& b) { return *this = *this * b; }

private:
    constexpr LogValue(int sign, double log_abs) noexcept : sign_(sign), log_abs_(log_abs) {}

    static constexpr double kOverflowLog = 709.78;  // log(DBL_MAX) rounded down

    int sign_;
    double log_abs_;
};

}  // namespace ovlab
