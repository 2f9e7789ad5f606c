#pragma once

#include <string>

#include <json.hpp>

#include "fedex/approx_mechanism.hpp"
#include "fedex/mechanism.hpp"
#include "fedex/polygon.hpp"
#include "fedex/verify.hpp"

namespace fedex {

enum class NumMode { exact, floating };

// Reads FEDEX_MENUS_MODE (exact | float); unset means exact.
NumMode mode_from_env();
std::string mode_name(NumMode m);

// "p/q" string in exact mode, a JSON number in float mode.
nlohmann::json num(const Rat& x, NumMode m);
// {"mode": ..., "value": ...} with a float shadow in exact mode.
nlohmann::json tagged(const Rat& x, NumMode m);

nlohmann::json mechanism_json(const Mechanism& mech, NumMode m);
// Accepts the "days"/"atoms" layout with exact string rationals.
Mechanism read_mechanism(const nlohmann::json& j);

nlohmann::json ic_report_json(const IcReport& rep, NumMode m);
nlohmann::json polygon_json(const PolygonApprox& pa, NumMode m);
nlohmann::json approx_report_json(const ApproxReport& rep, NumMode m);

}  // namespace fedex
