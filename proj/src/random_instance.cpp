#include "fedex/random_instance.hpp"

#include <stdexcept>

namespace fedex {

namespace {

std::vector<Rat> random_row(std::mt19937_64& rng, int size, int weight_max) {
  std::uniform_int_distribution<int> w(0, weight_max);
  std::vector<long> raw(size);
  long total = 0;
  for (auto& x : raw) total += (x = w(rng));
  if (total == 0) {
    raw[std::uniform_int_distribution<int>(0, size - 1)(rng)] = 1;
    total = 1;
  }
  std::vector<Rat> row;
  row.reserve(size);
  for (long x : raw) row.push_back(frac(x, total));
  return row;
}

}  // namespace

FedexInstance random_instance(std::mt19937_64& rng, int n, int v_max, int weight_max) {
  if (n < 1 || v_max < 1 || weight_max < 1) throw std::invalid_argument("random instance needs n, v_max, weight_max >= 1");
  FedexInstance inst;
  inst.n = n;
  inst.v_max = v_max;
  inst.q = random_row(rng, n, weight_max);
  for (int i = 0; i < n; ++i) inst.pmf.push_back(random_row(rng, v_max + 1, weight_max));
  return inst;
}

}  // namespace fedex
