#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fedex/rational.hpp"

// Days are numbered 1..n in every public signature; containers indexed by day
// store day d at position d-1.
namespace fedex {

struct FedexInstance {
  int n = 0;
  int v_max = 0;
  std::vector<Rat> q;                // q[d-1] = Pr[deadline = d]
  std::vector<std::vector<Rat>> pmf; // pmf[d-1][v] = Pr[value = v | deadline = d]
  // Grid points are v * value_scale in the source units; only the discretized
  // continuous generator sets this to something other than 1.
  Rat value_scale = 1;

  bool operator==(const FedexInstance&) const = default;
};

struct TypePoint {
  int value = 0;
  int deadline = 1;
};

// Empty result means the instance is valid.
std::vector<std::string> validate(const FedexInstance& inst);

// Throws std::invalid_argument listing every violation.
void require_valid(const FedexInstance& inst);

void check_day(const FedexInstance& inst, int day);

bool in_range(const FedexInstance& inst, const TypePoint& t);

// F_day(v) for v = 0..v_max.
std::vector<Rat> marginal_cdf(const FedexInstance& inst, int day);

nlohmann::json rat_json(const Rat& x);
Rat rat_from_json(const nlohmann::json& j);

nlohmann::json write_instance(const FedexInstance& inst);
FedexInstance read_instance(const nlohmann::json& j);

}  // namespace fedex
