#include "pyroflux/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "pyroflux/numerics.hpp"

namespace pyroflux::kinetics {

namespace {

constexpr double DT_MIN = 1e-12;

// Mass-action power with the 0^0 = 1 convention.
double pow_order(double c, double n) {
  if (n == 0.0) return 1.0;
  if (c == 0.0) {
    if (n < 0.0)
      fail(ErrorKind::Domain, "reaction rate undefined: zero concentration with negative order");
    return 0.0;
  }
  if (n == 1.0) return c;
  return std::pow(c, n);
}

std::string describe_reaction(const ReactionMechanism& mech, size_t r) {
  const Reaction& rx = mech.reactions[r];
  if (!rx.name.empty()) return "reaction '" + rx.name + "'";
  std::ostringstream ss;
  ss << "reaction #" << r;
  return ss.str();
}

}  // namespace

size_t ReactionMechanism::index_of(const std::string& name) const {
  auto idx = find(name);
  if (!idx) fail(ErrorKind::Config, "unknown species: " + name);
  return *idx;
}

std::optional<size_t> ReactionMechanism::find(const std::string& name) const {
  for (size_t i = 0; i < species.size(); ++i)
    if (species[i].name == name) return i;
  return std::nullopt;
}

SingleStepKinetics clamp_to_box(SingleStepKinetics k) {
  k.ln_A = std::clamp(k.ln_A, LN_A_MIN, LN_A_MAX);
  k.E_a = std::clamp(k.E_a, EA_MIN, EA_MAX);
  k.n = std::clamp(k.n, ORDER_MIN, ORDER_MAX);
  return k;
}

bool in_box(const SingleStepKinetics& k) {
  return k.ln_A >= LN_A_MIN && k.ln_A <= LN_A_MAX && k.E_a >= EA_MIN &&
         k.E_a <= EA_MAX && k.n >= ORDER_MIN && k.n <= ORDER_MAX;
}

std::map<std::string, double> builtin_element_masses() {
  return {{"C", ATOMIC_MASS_C},
          {"H", ATOMIC_MASS_H},
          {"O", ATOMIC_MASS_O},
          {"N", ATOMIC_MASS_N},
          {"S", ATOMIC_MASS_S}};
}

void validate_mechanism(const ReactionMechanism& mech) {
  std::set<std::string> seen;
  for (size_t i = 0; i < mech.species.size(); ++i) {
    const Species& sp = mech.species[i];
    if (sp.name.empty())
      fail(ErrorKind::Config, "species #" + std::to_string(i) + " has empty name");
    if (!seen.insert(sp.name).second)
      fail(ErrorKind::Config, "duplicate species name: " + sp.name);
    if (!(sp.molar_mass > 0.0))
      fail(ErrorKind::Config, "species " + sp.name + ": molar_mass must be > 0");

    double from_elements = 0.0;
    for (const auto& [el, count] : sp.elements) {
      auto it = mech.element_masses.find(el);
      if (it == mech.element_masses.end())
        fail(ErrorKind::Config, "species " + sp.name + ": element '" + el +
                                    "' has no declared atomic mass");
      if (count < 0.0)
        fail(ErrorKind::Config, "species " + sp.name + ": negative count for element " + el);
      from_elements += count * it->second;
    }
    if (!sp.elements.empty()) {
      double rel = std::abs(from_elements - sp.molar_mass) / sp.molar_mass;
      if (rel > 1e-6)
        fail(ErrorKind::Config,
             "species " + sp.name + ": molar_mass " + fmt_double(sp.molar_mass) +
                 " disagrees with element-weighted mass " + fmt_double(from_elements) +
                 " (relative error " + fmt_double(rel) + ")");
    } else if (sp.lumped) {
      fail(ErrorKind::Config, "species " + sp.name +
                                  ": lumped species must declare an effective element vector");
    } else {
      fail(ErrorKind::Config, "species " + sp.name + ": element composition missing");
    }

    if (!sp.cp_coeffs.empty()) {
      for (double T = 250.0; T <= 2500.0; T += 1.0) {
        if (numerics::polyval(sp.cp_coeffs, T) <= 0.0)
          fail(ErrorKind::Config, "species " + sp.name + ": cp non-positive at T=" +
                                      fmt_double(T) + " K");
      }
    }
  }

  for (size_t r = 0; r < mech.reactions.size(); ++r) {
    const Reaction& rx = mech.reactions[r];
    auto check_ref = [&](size_t idx, const char* what) {
      if (idx >= mech.species.size())
        fail(ErrorKind::Config, describe_reaction(mech, r) + ": " + what +
                                    " references species index out of range");
    };
    std::map<std::string, double> balance;  // product minus reactant
    for (const auto& t : rx.reactants) {
      check_ref(t.species, "reactant");
      if (t.coeff < 0.0)
        fail(ErrorKind::Config, describe_reaction(mech, r) + ": negative reactant stoichiometry");
      for (const auto& [el, count] : mech.species[t.species].elements)
        balance[el] -= t.coeff * count;
    }
    for (const auto& t : rx.products) {
      check_ref(t.species, "product");
      if (t.coeff < 0.0)
        fail(ErrorKind::Config, describe_reaction(mech, r) + ": negative product stoichiometry");
      for (const auto& [el, count] : mech.species[t.species].elements)
        balance[el] += t.coeff * count;
    }
    for (const auto& [el, net] : balance) {
      if (std::abs(net) > 1e-9)
        fail(ErrorKind::Config, describe_reaction(mech, r) + ": element " + el +
                                    " unbalanced by " + fmt_double(net) + " mol/mol");
    }
    for (const auto& o : rx.forward_orders) {
      check_ref(o.species, "forward order");
      if (o.order < 0.0)
        fail(ErrorKind::Config, describe_reaction(mech, r) + ": negative forward order");
    }
    for (const auto& o : rx.reverse_orders) {
      check_ref(o.species, "reverse order");
      if (o.order < 0.0)
        fail(ErrorKind::Config, describe_reaction(mech, r) + ": negative reverse order");
    }
    if (rx.forward.A < 0.0 || rx.forward.E_a < 0.0)
      fail(ErrorKind::Config, describe_reaction(mech, r) + ": forward Arrhenius requires A >= 0, Ea >= 0");
    if (rx.reverse && (rx.reverse->A < 0.0 || rx.reverse->E_a < 0.0))
      fail(ErrorKind::Config, describe_reaction(mech, r) + ": reverse Arrhenius requires A >= 0, Ea >= 0");
    if (!rx.reverse && !rx.reverse_orders.empty())
      fail(ErrorKind::Config, describe_reaction(mech, r) + ": reverse orders given for irreversible reaction");
  }
}

void validate_state(const ReactionMechanism& mech, const PointState& s) {
  if (s.concentrations.size() != mech.n_species())
    fail(ErrorKind::Domain, "state size does not match mechanism species count");
  if (!(s.temperature > 0.0)) fail(ErrorKind::Domain, "state temperature must be > 0");
  for (size_t i = 0; i < s.concentrations.size(); ++i) {
    double c = s.concentrations[i];
    if (!(c >= 0.0) || !std::isfinite(c))
      fail(ErrorKind::Domain, "negative or non-finite concentration for species " +
                                  mech.species[i].name);
  }
}

double rate_constant(const ArrheniusParams& p, double T) {
  if (!(T > 0.0)) fail(ErrorKind::Domain, "rate_constant requires T > 0");
  double k = p.A * std::pow(T, p.b) * std::exp(-p.E_a / (R_GAS * T));
  if (!std::isfinite(k))
    fail(ErrorKind::Numeric, "rate constant overflow: A=" + fmt_double(p.A) +
                                 " b=" + fmt_double(p.b) + " Ea=" + fmt_double(p.E_a) +
                                 " T=" + fmt_double(T));
  return k;
}

double reaction_rate(const ReactionMechanism& mech, size_t r, const PointState& s) {
  if (r >= mech.reactions.size()) fail(ErrorKind::Domain, "reaction index out of range");
  const Reaction& rx = mech.reactions[r];
  double kf = rate_constant(rx.forward, s.temperature);
  double fwd = kf;
  for (const auto& o : rx.forward_orders)
    fwd *= pow_order(s.concentrations[o.species], o.order);
  double rev = 0.0;
  if (rx.reverse) {
    rev = rate_constant(*rx.reverse, s.temperature);
    for (const auto& o : rx.reverse_orders)
      rev *= pow_order(s.concentrations[o.species], o.order);
  }
  return fwd - rev;
}

void species_rates_into(const ReactionMechanism& mech, const PointState& s,
                        std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (size_t r = 0; r < mech.reactions.size(); ++r) {
    double rate = reaction_rate(mech, r, s);
    const Reaction& rx = mech.reactions[r];
    for (const auto& t : rx.reactants) out[t.species] -= t.coeff * rate;
    for (const auto& t : rx.products) out[t.species] += t.coeff * rate;
  }
}

std::vector<double> species_rates(const ReactionMechanism& mech, const PointState& s) {
  std::vector<double> out(mech.n_species(), 0.0);
  species_rates_into(mech, s, out);
  return out;
}

namespace {

// One linearized backward-Euler step: solve (I - h J) dC = h f(C).
// J is a forward-difference Jacobian evaluated at the step entry.
void semi_implicit_step(const ReactionMechanism& mech, double T,
                        const std::vector<double>& c, double h,
                        const std::vector<double>& jac,  // row-major n*n
                        std::vector<double>& scratch_mat,
                        std::vector<double>& rhs, std::vector<double>& out) {
  const size_t n = c.size();
  PointState st{c, T};
  rhs.resize(n);
  species_rates_into(mech, st, rhs);
  for (double& v : rhs) v *= h;
  scratch_mat.assign(n * n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      scratch_mat[i * n + j] = (i == j ? 1.0 : 0.0) - h * jac[i * n + j];
  numerics::solve_dense(scratch_mat, rhs, n);
  out.resize(n);
  for (size_t i = 0; i < n; ++i) out[i] = c[i] + rhs[i];
}

void fd_jacobian(const ReactionMechanism& mech, double T, const std::vector<double>& c,
                 double scale, std::vector<double>& jac) {
  const size_t n = c.size();
  jac.assign(n * n, 0.0);
  PointState st{c, T};
  std::vector<double> f0(n), f1(n);
  species_rates_into(mech, st, f0);
  for (size_t j = 0; j < n; ++j) {
    double h = 1.4901161193847656e-8 * std::max(std::abs(c[j]), 1e-8 * scale) + 1e-30;
    double saved = st.concentrations[j];
    st.concentrations[j] = saved + h;
    species_rates_into(mech, st, f1);
    st.concentrations[j] = saved;
    for (size_t i = 0; i < n; ++i) jac[i * n + j] = (f1[i] - f0[i]) / h;
  }
}

PointState integrate_semi_implicit(const ReactionMechanism& mech, const PointState& s,
                                   double dt, double tol) {
  const size_t n = mech.n_species();
  std::vector<double> c = s.concentrations;
  double scale0 = 1e-300;
  for (double v : c) scale0 = std::max(scale0, v);
  const double atol = tol * 1e-6 * std::max(scale0, 1.0);

  double t = 0.0;
  double h = dt;
  std::vector<double> jac, mat, rhs, y_full, y_half, y_two;
  int rejected_in_row = 0;
  while (t < dt) {
    h = std::min(h, dt - t);
    if (h < DT_MIN) {
      std::ostringstream ss;
      ss << "stiffness failure: step size underflow at t=" << t << " of " << dt
         << " s (h=" << h << ", T=" << s.temperature << " K, tol=" << tol << ")";
      fail(ErrorKind::Stiffness, ss.str());
    }
    fd_jacobian(mech, s.temperature, c, scale0, jac);
    semi_implicit_step(mech, s.temperature, c, h, jac, mat, rhs, y_full);
    semi_implicit_step(mech, s.temperature, c, 0.5 * h, jac, mat, rhs, y_half);
    semi_implicit_step(mech, s.temperature, y_half, 0.5 * h, jac, mat, rhs, y_two);

    double err = 0.0;
    bool finite = true;
    for (size_t i = 0; i < n; ++i) {
      if (!std::isfinite(y_two[i]) || !std::isfinite(y_full[i])) {
        finite = false;
        break;
      }
      double denom = atol + tol * std::max(std::abs(y_two[i]), std::abs(c[i]));
      err = std::max(err, std::abs(y_two[i] - y_full[i]) / denom);
    }

    double max_c = 0.0;
    for (double v : y_two) max_c = std::max(max_c, std::abs(v));
    bool negative_breach = false;
    if (finite) {
      for (double v : y_two)
        if (v < -tol * std::max(max_c, scale0)) negative_breach = true;
    }

    if (finite && err <= 1.0 && !negative_breach) {
      for (size_t i = 0; i < n; ++i) c[i] = std::max(y_two[i], 0.0);
      t += h;
      double grow = 0.9 / std::sqrt(std::max(err, 1e-12));
      h *= std::clamp(grow, 0.2, 2.0);
      rejected_in_row = 0;
    } else {
      double shrink = finite ? std::max(0.1, 0.9 / std::sqrt(std::max(err, 1.0))) : 0.1;
      if (negative_breach) shrink = std::min(shrink, 0.5);
      h *= shrink;
      if (++rejected_in_row > 200) {
        std::ostringstream ss;
        ss << "stiffness failure: 200 consecutive step rejections at t=" << t
           << " (h=" << h << ", err=" << err << ")";
        fail(ErrorKind::Stiffness, ss.str());
      }
    }
  }
  return PointState{std::move(c), s.temperature};
}

// Dormand-Prince 5(4) with the classic coefficients.
PointState integrate_rk45(const ReactionMechanism& mech, const PointState& s, double dt,
                          double tol) {
  static const double a21 = 1.0 / 5.0;
  static const double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static const double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static const double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                      a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static const double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                      a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  static const double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                      b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  static const double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                      e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  const size_t n = mech.n_species();
  std::vector<double> c = s.concentrations;
  double scale0 = 1e-300;
  for (double v : c) scale0 = std::max(scale0, v);
  const double atol = tol * 1e-6 * std::max(scale0, 1.0);

  auto rates = [&](const std::vector<double>& y, std::vector<double>& out) {
    PointState st{y, s.temperature};
    for (double& v : st.concentrations) v = std::max(v, 0.0);
    out.resize(n);
    species_rates_into(mech, st, out);
  };

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n);
  double t = 0.0, h = dt;
  int rejected_in_row = 0;
  while (t < dt) {
    h = std::min(h, dt - t);
    if (h < DT_MIN)
      fail(ErrorKind::Stiffness, "rk45: step size underflow at t=" + fmt_double(t));
    rates(c, k1);
    for (size_t i = 0; i < n; ++i) tmp[i] = c[i] + h * a21 * k1[i];
    rates(tmp, k2);
    for (size_t i = 0; i < n; ++i) tmp[i] = c[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rates(tmp, k3);
    for (size_t i = 0; i < n; ++i)
      tmp[i] = c[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rates(tmp, k4);
    for (size_t i = 0; i < n; ++i)
      tmp[i] = c[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rates(tmp, k5);
    for (size_t i = 0; i < n; ++i)
      tmp[i] = c[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rates(tmp, k6);
    for (size_t i = 0; i < n; ++i)
      y5[i] = c[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rates(y5, k7);

    double err = 0.0;
    bool finite = true;
    for (size_t i = 0; i < n; ++i) {
      double le = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                       e7 * k7[i]);
      if (!std::isfinite(y5[i])) {
        finite = false;
        break;
      }
      double denom = atol + tol * std::max(std::abs(y5[i]), std::abs(c[i]));
      err = std::max(err, std::abs(le) / denom);
    }
    if (finite && err <= 1.0) {
      for (size_t i = 0; i < n; ++i) c[i] = std::max(y5[i], 0.0);
      t += h;
      h *= std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
      rejected_in_row = 0;
    } else {
      h *= finite ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.7) : 0.1;
      if (++rejected_in_row > 400)
        fail(ErrorKind::Stiffness, "rk45: too many consecutive rejections");
    }
  }
  return PointState{std::move(c), s.temperature};
}

}  // namespace

PointState integrate_point(const ReactionMechanism& mech, const PointState& s, double dt,
                           double tol, IntegratorMethod method) {
  if (!(dt > 0.0)) fail(ErrorKind::Domain, "integrate_point requires dt > 0");
  if (!(tol > 0.0 && tol <= 1e-2))
    fail(ErrorKind::Domain, "integrate_point requires tol in (0, 1e-2]");
  validate_state(mech, s);
  if (mech.reactions.empty()) return s;
  if (method == IntegratorMethod::RK45) return integrate_rk45(mech, s, dt, tol);
  return integrate_semi_implicit(mech, s, dt, tol);
}

double molar_cp(const Species& sp, double T) {
  if (sp.cp_coeffs.empty())
    fail(ErrorKind::Config, "species " + sp.name + " has no cp_coeffs");
  return numerics::polyval(sp.cp_coeffs, T);
}

double molar_enthalpy(const Species& sp, double T, double T_ref) {
  if (!sp.h_form)
    fail(ErrorKind::Config, "species " + sp.name + " has no formation enthalpy" +
                                (sp.lumped ? " (lumped species)" : ""));
  if (sp.cp_coeffs.empty())
    fail(ErrorKind::Config, "species " + sp.name + " has no cp_coeffs");
  return *sp.h_form + numerics::polyint(sp.cp_coeffs, T_ref, T);
}

double heat_of_reaction(const ReactionMechanism& mech, size_t r, double T) {
  if (r >= mech.reactions.size()) fail(ErrorKind::Domain, "reaction index out of range");
  const Reaction& rx = mech.reactions[r];
  if (rx.declared_dH) return *rx.declared_dH;
  double dh = 0.0;
  for (const auto& t : rx.products)
    dh += t.coeff * molar_enthalpy(mech.species[t.species], T, mech.reference_temperature);
  for (const auto& t : rx.reactants)
    dh -= t.coeff * molar_enthalpy(mech.species[t.species], T, mech.reference_temperature);
  return dh;
}

double devol_rate(const SingleStepKinetics& k, double alpha, double T) {
  if (!(T > 0.0)) fail(ErrorKind::Domain, "devol_rate requires T > 0");
  if (alpha < 0.0 || alpha > 1.0) fail(ErrorKind::Domain, "devol_rate requires alpha in [0,1]");
  if (alpha >= 1.0) return 0.0;  // fully converted; saturation beats 0^0
  double rate = std::exp(k.ln_A - k.E_a / (R_GAS * T));
  return rate * pow_order(1.0 - alpha, k.n);
}

ReactionMechanism gas_phase_submechanism(const ReactionMechanism& mech) {
  ReactionMechanism out = mech;
  out.reactions.clear();
  for (const Reaction& rx : mech.reactions) {
    bool all_gas = true;
    auto check = [&](size_t idx) {
      if (mech.species[idx].phase != Phase::GAS) all_gas = false;
    };
    for (const auto& t : rx.reactants) check(t.species);
    for (const auto& t : rx.products) check(t.species);
    for (const auto& o : rx.forward_orders) check(o.species);
    for (const auto& o : rx.reverse_orders) check(o.species);
    if (all_gas) out.reactions.push_back(rx);
  }
  return out;
}

std::map<std::string, double> element_totals(const ReactionMechanism& mech,
                                             const PointState& s) {
  std::map<std::string, double> totals;
  for (size_t i = 0; i < mech.n_species(); ++i)
    for (const auto& [el, count] : mech.species[i].elements)
      totals[el] += count * s.concentrations[i];
  return totals;
}

}  // namespace pyroflux::kinetics
