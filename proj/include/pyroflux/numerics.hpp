#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pyroflux::numerics {

// Evaluate sum_k c[k] * x^k.
double polyval(std::span<const double> coeffs, double x);

// Integral of the polynomial from a to b.
double polyint(std::span<const double> coeffs, double a, double b);

// Solve A x = b in place, Gaussian elimination with partial pivoting.
// A is row-major n*n. Throws on singular matrix.
void solve_dense(std::vector<double>& A, std::vector<double>& b, size_t n);

// Brent root bracketing solve for f on [lo, hi]; f(lo) and f(hi) must
// differ in sign. rel_tol applies to the x interval.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double rel_tol, int max_iter = 200);

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Bounded Nelder-Mead: parameters are clamped into [lo, hi] before each
// objective call. Stops when the simplex f-spread drops below f_tol or
// max_evals is hit.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0,
                             std::span<const double> step,
                             std::span<const double> lo,
                             std::span<const double> hi,
                             double f_tol, int max_evals);

}  // namespace pyroflux::numerics
