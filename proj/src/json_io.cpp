#include "fedex/json_io.hpp"

#include <cstdlib>
#include <stdexcept>

namespace fedex {

using nlohmann::json;

NumMode mode_from_env() {
  const char* v = std::getenv("FEDEX_MENUS_MODE");
  if (!v || std::string(v).empty() || std::string(v) == "exact") return NumMode::exact;
  if (std::string(v) == "float") return NumMode::floating;
  throw std::invalid_argument("FEDEX_MENUS_MODE must be exact or float, got \"" + std::string(v) + "\"");
}

std::string mode_name(NumMode m) { return m == NumMode::exact ? "exact" : "float"; }

json num(const Rat& x, NumMode m) {
  if (m == NumMode::exact) return to_string(x);
  return to_double(x);
}

json tagged(const Rat& x, NumMode m) {
  json j{{"mode", mode_name(m)}, {"value", num(x, m)}};
  if (m == NumMode::exact) j["approx"] = to_double(x);
  return j;
}

json mechanism_json(const Mechanism& mech, NumMode m) {
  json days = json::array();
  for (const auto& pm : mech.days) {
    json atoms = json::array(), menu = json::array();
    for (const auto& a : pm.atoms()) atoms.push_back(json::array({num(a.price, m), num(a.mass, m)}));
    for (const auto& o : menu_from_prices(pm).options) menu.push_back(json::array({num(o.prob, m), num(o.payment, m)}));
    days.push_back({{"atoms", atoms}, {"menu", menu}});
  }
  auto mc = menu_complexity(mech);
  return {{"days", days}, {"menu_complexity", {{"per_day", mc.per_day}, {"total", mc.total}}}};
}

Mechanism read_mechanism(const json& j) {
  if (!j.is_object() || !j.contains("days") || !j["days"].is_array())
    throw std::invalid_argument("mechanism JSON needs a \"days\" array");
  Mechanism mech;
  for (const auto& d : j["days"]) {
    if (!d.contains("atoms") || !d["atoms"].is_array()) throw std::invalid_argument("each day needs an \"atoms\" array");
    std::vector<PriceAtom> atoms;
    for (const auto& a : d["atoms"]) {
      if (!a.is_array() || a.size() != 2) throw std::invalid_argument("atoms are [price, mass] pairs");
      atoms.push_back({rat_from_json(a[0]), rat_from_json(a[1])});
    }
    mech.days.emplace_back(std::move(atoms));
  }
  return mech;
}

json ic_report_json(const IcReport& rep, NumMode m) {
  json v = json::array();
  for (const auto& x : rep.violations)
    v.push_back({{"family", x.family}, {"v", x.v}, {"day", x.day}, {"slack", num(x.slack, m)}});
  return {{"ok", rep.ok()}, {"violations", v}};
}

json polygon_json(const PolygonApprox& pa, NumMode m) {
  json xs = json::array();
  for (const auto& x : pa.X) xs.push_back(num(x, m));
  return {{"scheme", pa.scheme},
          {"eps", tagged(pa.eps, m)},
          {"X", xs},
          {"size", pa.X.size()},
          {"collapsed_size", pa.collapsed_size},
          {"budget", pa.budget},
          {"certified_error", tagged(pa.certified_error, m)},
          {"bound", tagged(pa.bound, m)},
          {"within_bound", pa.certified_error <= pa.bound}};
}

json approx_report_json(const ApproxReport& rep, NumMode m) {
  json days = json::array();
  for (const auto& d : rep.days)
    days.push_back({{"day", d.day},
                    {"r", d.r},
                    {"scheme", d.scheme},
                    {"eps_param", tagged(d.eps_param, m)},
                    {"eps_i", tagged(d.eps_i, m)},
                    {"k", d.k},
                    {"k_raw", d.k_raw},
                    {"anchors", d.anchors},
                    {"atoms", d.atoms},
                    {"certified_error", tagged(d.certified_error, m)},
                    {"anchor_error", tagged(d.anchor_error, m)},
                    {"loss", tagged(d.loss, m)},
                    {"budget", d.budget},
                    {"budget_ok", d.budget_ok},
                    {"audit_ok", d.audit_ok}});
  Rat ratio = rep.opt == 0 ? Rat(1) : Rat(rep.revenue / rep.opt);
  return {{"eps", tagged(rep.eps, m)},
          {"scheme", rep.scheme},
          {"fallback_level_set", rep.fallback},
          {"days", days},
          {"opt", tagged(rep.opt, m)},
          {"revenue", tagged(rep.revenue, m)},
          {"ratio", tagged(ratio, m)},
          {"menu_complexity", rep.complexity},
          {"complexity_bound", rep.complexity_bound},
          {"revenue_ok", rep.revenue_ok},
          {"accounting_ok", rep.accounting_ok}};
}

}  // namespace fedex
