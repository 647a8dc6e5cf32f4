#pragma once

#include <span>

namespace pyroflux::metrics {

struct PairedSeries {
  std::span<const double> y_cal;  // predicted
  std::span<const double> y_exp;  // reference
};

void validate(const PairedSeries& p);

// 1 - sum (y_cal - y_exp)^2 / sum (y_exp - mean)^2. Errors when the
// reference variance is zero (the denominator vanishes).
double r_squared(const PairedSeries& p);

// sqrt(sum (y_cal - y_exp)^2 / N)
double rmse(const PairedSeries& p);

}  // namespace pyroflux::metrics
