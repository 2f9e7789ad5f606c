#include "fedex/instance.hpp"

#include <stdexcept>

namespace fedex {

std::vector<std::string> validate(const FedexInstance& inst) {
  std::vector<std::string> out;
  if (inst.n < 1) out.push_back("n must be >= 1, got " + std::to_string(inst.n));
  if (inst.v_max < 1) out.push_back("v_max must be >= 1, got " + std::to_string(inst.v_max));
  if (inst.value_scale <= 0) out.push_back("value_scale must be positive");
  if (static_cast<int>(inst.q.size()) != inst.n)
    out.push_back("q has " + std::to_string(inst.q.size()) + " entries, expected " +
                  std::to_string(inst.n));
  Rat qsum = 0;
  for (std::size_t d = 0; d < inst.q.size(); ++d) {
    if (inst.q[d] < 0) out.push_back("q[" + std::to_string(d + 1) + "] is negative");
    qsum += inst.q[d];
  }
  if (qsum != 1) out.push_back("q sums to " + to_string(qsum));
  if (static_cast<int>(inst.pmf.size()) != inst.n)
    out.push_back("pmf has " + std::to_string(inst.pmf.size()) + " rows, expected " +
                  std::to_string(inst.n));
  for (std::size_t d = 0; d < inst.pmf.size(); ++d) {
    const auto& row = inst.pmf[d];
    std::string day = "day " + std::to_string(d + 1) + " pmf";
    if (inst.v_max >= 1 && static_cast<int>(row.size()) != inst.v_max + 1)
      out.push_back(day + " has length " + std::to_string(row.size()) + ", expected " +
                    std::to_string(inst.v_max + 1));
    Rat sum = 0;
    for (std::size_t v = 0; v < row.size(); ++v) {
      if (row[v] < 0) out.push_back(day + " is negative at v=" + std::to_string(v));
      sum += row[v];
    }
    if (sum != 1) out.push_back(day + " sums to " + to_string(sum));
  }
  return out;
}

void require_valid(const FedexInstance& inst) {
  auto errs = validate(inst);
  if (errs.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& e : errs) msg += " " + e + ";";
  throw std::invalid_argument(msg);
}

void check_day(const FedexInstance& inst, int day) {
  if (day < 1 || day > inst.n)
    throw std::out_of_range("day " + std::to_string(day) + " outside 1.." + std::to_string(inst.n));
}

bool in_range(const FedexInstance& inst, const TypePoint& t) {
  return t.value >= 0 && t.value <= inst.v_max && t.deadline >= 1 && t.deadline <= inst.n;
}

std::vector<Rat> marginal_cdf(const FedexInstance& inst, int day) {
  check_day(inst, day);
  const auto& row = inst.pmf[day - 1];
  std::vector<Rat> cdf(row.size());
  Rat acc = 0;
  for (std::size_t v = 0; v < row.size(); ++v) {
    acc += row[v];
    cdf[v] = acc;
  }
  return cdf;
}

nlohmann::json rat_json(const Rat& x) { return to_string(x); }

Rat rat_from_json(const nlohmann::json& j) {
  if (!j.is_string())
    throw std::invalid_argument("rationals must be JSON strings, got " + j.dump());
  return parse_rat(j.get<std::string>());
}

nlohmann::json write_instance(const FedexInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["v_max"] = inst.v_max;
  j["q"] = nlohmann::json::array();
  for (const auto& x : inst.q) j["q"].push_back(rat_json(x));
  j["pmf"] = nlohmann::json::array();
  for (const auto& row : inst.pmf) {
    auto r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(rat_json(x));
    j["pmf"].push_back(std::move(r));
  }
  if (inst.value_scale != 1) j["value_scale"] = rat_json(inst.value_scale);
  return j;
}

FedexInstance read_instance(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
  for (const char* key : {"n", "v_max", "q", "pmf"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("instance is missing \"") + key + "\"");
  if (!j["n"].is_number_integer() || !j["v_max"].is_number_integer())
    throw std::invalid_argument("n and v_max must be integers");
  FedexInstance inst;
  inst.n = j["n"].get<int>();
  inst.v_max = j["v_max"].get<int>();
  if (!j["q"].is_array() || !j["pmf"].is_array())
    throw std::invalid_argument("q and pmf must be arrays");
  for (const auto& x : j["q"]) inst.q.push_back(rat_from_json(x));
  for (const auto& row : j["pmf"]) {
    if (!row.is_array()) throw std::invalid_argument("pmf rows must be arrays");
    std::vector<Rat> r;
    r.reserve(row.size());
    for (const auto& x : row) r.push_back(rat_from_json(x));
    inst.pmf.push_back(std::move(r));
  }
  if (j.contains("value_scale")) inst.value_scale = rat_from_json(j["value_scale"]);
  require_valid(inst);
  return inst;
}

}  // namespace fedex
