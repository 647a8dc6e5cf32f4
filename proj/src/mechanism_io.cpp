#include "pyroflux/mechanism_io.hpp"

#include <json.hpp>

#include <algorithm>

#include "pyroflux/common.hpp"

namespace pyroflux::kinetics {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& origin, const std::string& msg) {
  fail(ErrorKind::Config, origin + ": " + msg);
}

double require_number(const json& j, const std::string& key, const std::string& ctx,
                      const std::string& origin) {
  if (!j.contains(key)) bad(origin, ctx + ": missing key '" + key + "'");
  if (!j[key].is_number()) bad(origin, ctx + ": key '" + key + "' must be a number");
  return j[key].get<double>();
}

std::string require_string(const json& j, const std::string& key, const std::string& ctx,
                           const std::string& origin) {
  if (!j.contains(key)) bad(origin, ctx + ": missing key '" + key + "'");
  if (!j[key].is_string()) bad(origin, ctx + ": key '" + key + "' must be a string");
  return j[key].get<std::string>();
}

ArrheniusParams parse_arrhenius(const json& j, const std::string& ctx,
                                const std::string& origin) {
  if (!j.is_object()) bad(origin, ctx + ": expected an object {A,b,Ea}");
  ArrheniusParams p;
  p.A = require_number(j, "A", ctx, origin);
  p.b = j.contains("b") ? require_number(j, "b", ctx, origin) : 0.0;
  p.E_a = require_number(j, "Ea", ctx, origin);
  return p;
}

// name -> coefficient maps; sorted for deterministic iteration
template <typename Term>
std::vector<Term> parse_species_map(const json& j, const ReactionMechanism& mech,
                                    const std::string& ctx, const std::string& origin) {
  if (!j.is_object()) bad(origin, ctx + ": expected an object of species -> value");
  std::vector<Term> out;
  for (const auto& [name, value] : j.items()) {
    auto idx = mech.find(name);
    if (!idx) bad(origin, ctx + ": unknown species '" + name + "'");
    if (!value.is_number()) bad(origin, ctx + ": value for '" + name + "' must be a number");
    Term t;
    t.species = *idx;
    if constexpr (std::is_same_v<Term, StoichTerm>)
      t.coeff = value.get<double>();
    else
      t.order = value.get<double>();
    out.push_back(t);
  }
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return a.species < b.species; });
  return out;
}

}  // namespace

ReactionMechanism parse_mechanism(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // byte offset -> line for a syntax-level message
    size_t line = 1;
    for (size_t i = 0; i < std::min(e.byte, json_text.size()); ++i)
      if (json_text[i] == '\n') ++line;
    bad(origin, "JSON syntax error at line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) bad(origin, "top level must be an object");

  ReactionMechanism mech;
  mech.element_masses = builtin_element_masses();
  if (doc.contains("reference_temperature"))
    mech.reference_temperature = require_number(doc, "reference_temperature", "top level", origin);
  if (doc.contains("element_masses")) {
    const json& em = doc["element_masses"];
    if (!em.is_object()) bad(origin, "element_masses must be an object");
    for (const auto& [el, mass] : em.items()) {
      if (!mass.is_number() || mass.get<double>() <= 0.0)
        bad(origin, "element_masses." + el + " must be a positive number");
      mech.element_masses[el] = mass.get<double>();
    }
  }

  if (!doc.contains("species") || !doc["species"].is_array())
    bad(origin, "missing 'species' array");
  for (size_t i = 0; i < doc["species"].size(); ++i) {
    const json& js = doc["species"][i];
    std::string ctx = "species[" + std::to_string(i) + "]";
    if (!js.is_object()) bad(origin, ctx + ": expected an object");
    Species sp;
    sp.name = require_string(js, "name", ctx, origin);
    ctx = "species '" + sp.name + "'";
    sp.molar_mass = require_number(js, "molar_mass", ctx, origin);
    std::string phase = require_string(js, "phase", ctx, origin);
    if (phase == "GAS")
      sp.phase = Phase::GAS;
    else if (phase == "SOLID")
      sp.phase = Phase::SOLID;
    else
      bad(origin, ctx + ": phase must be GAS or SOLID, got '" + phase + "'");
    if (!js.contains("elements") || !js["elements"].is_object())
      bad(origin, ctx + ": missing 'elements' object");
    for (const auto& [el, count] : js["elements"].items()) {
      if (!count.is_number()) bad(origin, ctx + ": element count for '" + el + "' must be a number");
      sp.elements.emplace_back(el, count.get<double>());
    }
    std::sort(sp.elements.begin(), sp.elements.end());
    if (js.contains("h_form")) sp.h_form = require_number(js, "h_form", ctx, origin);
    if (js.contains("cp_coeffs")) {
      if (!js["cp_coeffs"].is_array()) bad(origin, ctx + ": cp_coeffs must be an array");
      for (const auto& c : js["cp_coeffs"]) {
        if (!c.is_number()) bad(origin, ctx + ": cp_coeffs entries must be numbers");
        sp.cp_coeffs.push_back(c.get<double>());
      }
    }
    if (js.contains("lumped")) {
      if (!js["lumped"].is_boolean()) bad(origin, ctx + ": lumped must be a boolean");
      sp.lumped = js["lumped"].get<bool>();
    }
    mech.species.push_back(std::move(sp));
  }

  if (!doc.contains("reactions") || !doc["reactions"].is_array())
    bad(origin, "missing 'reactions' array");
  for (size_t i = 0; i < doc["reactions"].size(); ++i) {
    const json& jr = doc["reactions"][i];
    std::string ctx = "reactions[" + std::to_string(i) + "]";
    if (!jr.is_object()) bad(origin, ctx + ": expected an object");
    Reaction rx;
    if (jr.contains("name")) rx.name = require_string(jr, "name", ctx, origin);
    if (!rx.name.empty()) ctx = "reaction '" + rx.name + "'";
    if (!jr.contains("reactants")) bad(origin, ctx + ": missing 'reactants'");
    if (!jr.contains("products")) bad(origin, ctx + ": missing 'products'");
    rx.reactants = parse_species_map<StoichTerm>(jr["reactants"], mech, ctx + ".reactants", origin);
    rx.products = parse_species_map<StoichTerm>(jr["products"], mech, ctx + ".products", origin);
    if (!jr.contains("orders_fwd")) bad(origin, ctx + ": missing 'orders_fwd'");
    rx.forward_orders =
        parse_species_map<OrderTerm>(jr["orders_fwd"], mech, ctx + ".orders_fwd", origin);
    if (jr.contains("orders_rev"))
      rx.reverse_orders =
          parse_species_map<OrderTerm>(jr["orders_rev"], mech, ctx + ".orders_rev", origin);
    if (!jr.contains("arrhenius_fwd")) bad(origin, ctx + ": missing 'arrhenius_fwd'");
    rx.forward = parse_arrhenius(jr["arrhenius_fwd"], ctx + ".arrhenius_fwd", origin);
    if (jr.contains("arrhenius_rev"))
      rx.reverse = parse_arrhenius(jr["arrhenius_rev"], ctx + ".arrhenius_rev", origin);
    if (jr.contains("dH")) rx.declared_dH = require_number(jr, "dH", ctx, origin);
    mech.reactions.push_back(std::move(rx));
  }

  try {
    validate_mechanism(mech);
  } catch (const Error& e) {
    bad(origin, e.what());
  }
  return mech;
}

ReactionMechanism load_mechanism(const std::string& path) {
  return parse_mechanism(read_text_file(path), path);
}

}  // namespace pyroflux::kinetics
