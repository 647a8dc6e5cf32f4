#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pyroflux/common.hpp"

namespace pyroflux::kinetics {

enum class Phase { GAS, SOLID };

struct Species {
  std::string name;
  double molar_mass = 0.0;  // kg/mol
  Phase phase = Phase::GAS;
  std::optional<double> h_form;     // J/mol at reference T
  std::vector<double> cp_coeffs;    // molar heat capacity polynomial, J/(mol K)
  std::vector<std::pair<std::string, double>> elements;  // element -> count, sorted
  bool lumped = false;
};

struct ArrheniusParams {
  double A = 0.0;   // pre-exponential, units per rate law
  double b = 0.0;   // temperature exponent
  double E_a = 0.0; // activation energy, J/mol
};

struct StoichTerm {
  size_t species = 0;
  double coeff = 0.0;
};

struct OrderTerm {
  size_t species = 0;
  double order = 0.0;
};

struct Reaction {
  std::string name;  // optional label used in diagnostics
  std::vector<StoichTerm> reactants;
  std::vector<StoichTerm> products;
  std::vector<OrderTerm> forward_orders;
  std::vector<OrderTerm> reverse_orders;
  ArrheniusParams forward;
  std::optional<ArrheniusParams> reverse;  // absent = irreversible
  std::optional<double> declared_dH;       // J per mol of reaction extent; absent
                                           // = compute from formation enthalpies
};

struct ReactionMechanism {
  std::vector<Species> species;
  std::vector<Reaction> reactions;
  double reference_temperature = 298.15;
  // element -> atomic mass kg/mol; built-ins C,H,O,N,S plus declared
  // pseudo-elements such as ASH
  std::map<std::string, double> element_masses;

  size_t index_of(const std::string& name) const;
  std::optional<size_t> find(const std::string& name) const;
  size_t n_species() const { return species.size(); }
  size_t n_reactions() const { return reactions.size(); }
};

struct PointState {
  std::vector<double> concentrations;  // mol/m^3, aligned with mechanism species
  double temperature = 0.0;            // K
};

// Lumped single-step devolatilization law d(alpha)/dt = exp(ln_A) *
// exp(-E_a/RT) * (1-alpha)^n. These are the surrogate's targets.
struct SingleStepKinetics {
  double ln_A = 0.0;  // ln(1/s)
  double E_a = 0.0;   // J/mol
  double n = 1.0;
};

inline constexpr double LN_A_MIN = -20.0;
inline constexpr double LN_A_MAX = 50.0;
inline constexpr double EA_MIN = 0.0;
inline constexpr double EA_MAX = 1.0e6;
inline constexpr double ORDER_MIN = 0.0;
inline constexpr double ORDER_MAX = 5.0;

SingleStepKinetics clamp_to_box(SingleStepKinetics k);
bool in_box(const SingleStepKinetics& k);

// Default built-in atomic masses (C,H,O,N,S).
std::map<std::string, double> builtin_element_masses();

// Full invariant check: unique species names, molar-mass/element
// consistency, positive cp over [250,2500] K, stoichiometry references,
// per-element reaction balance within 1e-9, Arrhenius sanity.
void validate_mechanism(const ReactionMechanism& mech);

void validate_state(const ReactionMechanism& mech, const PointState& s);

// k = A * T^b * exp(-E_a / (R T)); throws on non-finite result.
double rate_constant(const ArrheniusParams& p, double T);

// Net rate of reaction r: k_f * prod C^n - k_b * prod C^m, 0^0 = 1.
double reaction_rate(const ReactionMechanism& mech, size_t r, const PointState& s);

// dC_i/dt = sum_r (gamma''_ir - gamma'_ir) * rate_r
void species_rates_into(const ReactionMechanism& mech, const PointState& s,
                        std::span<double> out);
std::vector<double> species_rates(const ReactionMechanism& mech, const PointState& s);

enum class IntegratorMethod { SemiImplicit, RK45 };

// Advance concentrations over dt at fixed T. SemiImplicit is a linearized
// backward-Euler with step-doubling error control (dt_min = 1e-12 s);
// RK45 is an explicit Dormand-Prince fallback for non-stiff systems.
PointState integrate_point(const ReactionMechanism& mech, const PointState& s,
                           double dt, double tol,
                           IntegratorMethod method = IntegratorMethod::SemiImplicit);

// Molar heat capacity / absolute molar enthalpy at T.
double molar_cp(const Species& sp, double T);
double molar_enthalpy(const Species& sp, double T, double T_ref);

// Heat of reaction, J per mol of reaction extent. Positive = endothermic.
double heat_of_reaction(const ReactionMechanism& mech, size_t r, double T);

// Single-step devolatilization rate, 1/s; exactly 0 at alpha >= 1.
double devol_rate(const SingleStepKinetics& k, double alpha, double T);

// Mechanism restricted to reactions whose every participant is gas phase.
ReactionMechanism gas_phase_submechanism(const ReactionMechanism& mech);

// Per-element molar totals of a state (conservation audits).
std::map<std::string, double> element_totals(const ReactionMechanism& mech,
                                             const PointState& s);

}  // namespace pyroflux::kinetics
