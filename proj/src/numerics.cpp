#include "pyroflux/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pyroflux/common.hpp"

namespace pyroflux::numerics {

double polyval(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

double polyint(std::span<const double> coeffs, double a, double b) {
  double fa = 0.0, fb = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) {
    fa = fa * a + coeffs[i] / static_cast<double>(i + 1);
    fb = fb * b + coeffs[i] / static_cast<double>(i + 1);
  }
  return fb * b - fa * a;
}

void solve_dense(std::vector<double>& A, std::vector<double>& b, size_t n) {
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    double best = std::abs(A[col * n + col]);
    for (size_t r = col + 1; r < n; ++r) {
      double v = std::abs(A[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) fail(ErrorKind::Numeric, "singular linear system");
    if (piv != col) {
      for (size_t c = col; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    double inv = 1.0 / A[col * n + col];
    for (size_t r = col + 1; r < n; ++r) {
      double factor = A[r * n + col] * inv;
      if (factor == 0.0) continue;
      for (size_t c = col; c < n; ++c) A[r * n + c] -= factor * A[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  for (size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (size_t c = r + 1; c < n; ++c) acc -= A[r * n + c] * b[c];
    b[r] = acc / A[r * n + r];
  }
}

double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double rel_tol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) fail(ErrorKind::Numeric, "brent_root: root not bracketed");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    double tol1 = 2.0 * 2.22e-16 * std::abs(b) + 0.5 * rel_tol * std::max(std::abs(b), 1.0);
    double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        double q0 = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0));
        q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

namespace {
void clamp_into(std::vector<double>& x, std::span<const double> lo,
                std::span<const double> hi) {
  for (size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}
}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0,
                             std::span<const double> step,
                             std::span<const double> lo,
                             std::span<const double> hi,
                             double f_tol, int max_evals) {
  const size_t n = x0.size();
  NelderMeadResult out;
  std::vector<std::vector<double>> pts(n + 1, std::vector<double>(x0.begin(), x0.end()));
  for (size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  for (auto& p : pts) clamp_into(p, lo, hi);

  std::vector<double> fv(n + 1);
  int evals = 0;
  auto eval = [&](std::vector<double>& p) {
    clamp_into(p, lo, hi);
    ++evals;
    return f(p);
  };
  for (size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  std::vector<size_t> order(n + 1);
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    size_t best = order[0], worst = order[n], second = order[n - 1];
    if (std::abs(fv[worst] - fv[best]) <= f_tol * (std::abs(fv[best]) + f_tol)) {
      out.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (size_t i = 0; i < n; ++i) centroid[i] += pts[k][i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (pts[worst][i] - centroid[i]);
      return p;
    };

    auto refl = blend(-1.0);
    double f_refl = eval(refl);
    if (f_refl < fv[best]) {
      auto expa = blend(-2.0);
      double f_expa = eval(expa);
      if (f_expa < f_refl) {
        pts[worst] = std::move(expa);
        fv[worst] = f_expa;
      } else {
        pts[worst] = std::move(refl);
        fv[worst] = f_refl;
      }
    } else if (f_refl < fv[second]) {
      pts[worst] = std::move(refl);
      fv[worst] = f_refl;
    } else {
      auto contr = blend(f_refl < fv[worst] ? -0.5 : 0.5);
      double f_contr = eval(contr);
      if (f_contr < std::min(f_refl, fv[worst])) {
        pts[worst] = std::move(contr);
        fv[worst] = f_contr;
      } else {
        for (size_t k = 0; k <= n; ++k) {
          if (k == best) continue;
          for (size_t i = 0; i < n; ++i)
            pts[k][i] = pts[best][i] + 0.5 * (pts[k][i] - pts[best][i]);
          fv[k] = eval(pts[k]);
        }
      }
    }
  }
  size_t best = 0;
  for (size_t i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  out.x = pts[best];
  out.fx = fv[best];
  out.evaluations = evals;
  return out;
}

}  // namespace pyroflux::numerics
