#pragma once

#include "ovlab/log_value.hpp"

namespace ovlab {

// Airy values are carried in sign-log form so that deformed combinations
// with huge exponential prefactors never overflow; to_real() recovers the
// plain double and throws if the magnitude exceeds double range.
using AiryValue = LogValue;

// Ai(x) or Ai'(x) (derivative 0 or 1). Relative accuracy 1e-12 for
// |x| <= 200 (relative to the oscillation envelope on the negative axis);
// larger |x| stays accurate in LogValue form through asymptotic series.
AiryValue airy_ai(double x, int derivative = 0);

// Bi(x) or Bi'(x), same contract.
AiryValue airy_bi(double x, int derivative = 0);

struct AiryPair {
    AiryValue value;
    AiryValue deriv;
};

// Both functions of one kind at one argument; one series pass instead of two.
AiryPair airy_ai_pair(double x);
AiryPair airy_bi_pair(double x);

namespace detail {

// Single-branch evaluations, exposed so tests can cross-validate the series
// against the asymptotic expansions across the switch point.
AiryPair airy_ai_series(double x);      // accurate for |x| <= 10
AiryPair airy_ai_asymptotic(double x);  // accurate for |x| >= 8
AiryPair airy_bi_series(double x);
AiryPair airy_bi_asymptotic(double x);

}  // namespace detail

}  // namespace ovlab
