#include "pyroflux/metrics.hpp"

#include <cmath>

#include "pyroflux/common.hpp"

namespace pyroflux::metrics {

void validate(const PairedSeries& p) {
  if (p.y_cal.size() != p.y_exp.size())
    fail(ErrorKind::Domain, "paired series lengths differ");
  if (p.y_cal.empty()) fail(ErrorKind::Domain, "paired series must have N >= 1");
  for (double v : p.y_cal)
    if (!std::isfinite(v)) fail(ErrorKind::Domain, "non-finite predicted value");
  for (double v : p.y_exp)
    if (!std::isfinite(v)) fail(ErrorKind::Domain, "non-finite reference value");
}

double r_squared(const PairedSeries& p) {
  validate(p);
  const size_t n = p.y_exp.size();
  double mean = 0.0;
  for (double v : p.y_exp) mean += v;
  mean /= static_cast<double>(n);
  double ss_res = 0.0, ss_tot = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double r = p.y_cal[i] - p.y_exp[i];
    double d = p.y_exp[i] - mean;
    ss_res += r * r;
    ss_tot += d * d;
  }
  if (ss_tot == 0.0)
    fail(ErrorKind::Domain, "r_squared undefined: reference series has zero variance");
  return 1.0 - ss_res / ss_tot;
}

double rmse(const PairedSeries& p) {
  validate(p);
  double ss = 0.0;
  for (size_t i = 0; i < p.y_cal.size(); ++i) {
    double r = p.y_cal[i] - p.y_exp[i];
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(p.y_cal.size()));
}

}  // namespace pyroflux::metrics
