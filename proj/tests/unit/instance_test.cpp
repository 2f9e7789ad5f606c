#include <doctest.h>

#include "fedex/hard_instances.hpp"
#include "fedex/instance.hpp"

using namespace fedex;

namespace {

FedexInstance tiny() {
  FedexInstance in;
  in.n = 1;
  in.v_max = 1;
  in.q = {Rat(1)};
  in.pmf = {{Rat(0), Rat(1)}};
  return in;
}

bool mentions(const std::vector<std::string>& msgs, const std::string& needle) {
  for (const auto& m : msgs)
    if (m.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(tiny()).empty());

  FedexInstance in = tiny();
  in.n = 2;
  in.q = {frac(1, 2), frac(1, 3)};
  in.pmf = {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}};
  CHECK(mentions(validate(in), "q sums to 5/6"));

  FedexInstance bad = tiny();
  bad.v_max = 2;
  bad.pmf = {{frac(1, 2), frac(1, 2), frac(1, 4)}};
  CHECK(mentions(validate(bad), "day 1 pmf sums to 5/4"));
  CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);

  FedexInstance neg = tiny();
  neg.pmf = {{Rat(-1), Rat(2)}};
  CHECK_FALSE(validate(neg).empty());
}

TEST_CASE("marginal_cdf") {
  FedexInstance in = tiny();
  in.v_max = 2;
  in.pmf = {{Rat(0), frac(1, 2), frac(1, 2)}};
  CHECK(marginal_cdf(in, 1) == std::vector<Rat>{0, frac(1, 2), 1});
  CHECK_THROWS_AS(marginal_cdf(in, 2), std::out_of_range);

  in.pmf = {{Rat(0), Rat(0), Rat(1)}};
  CHECK(marginal_cdf(in, 1) == std::vector<Rat>{0, 0, 1});

  FedexInstance lba = lba_instance(4);
  LbaParams p(4);
  CHECK(marginal_cdf(lba, 1)[4] == 1 - p.S[1] / 5);
  CHECK(marginal_cdf(lba, 1)[4] == 0);
  for (int d = 1; d <= lba.n; ++d) {
    auto F = marginal_cdf(lba, d);
    CHECK(F.back() == 1);
    CHECK(std::is_sorted(F.begin(), F.end()));
  }
}

TEST_CASE("in_range") {
  FedexInstance in = tiny();
  CHECK(in_range(in, {1, 1}));
  CHECK_FALSE(in_range(in, {2, 1}));
  CHECK_FALSE(in_range(in, {1, 2}));
  CHECK_FALSE(in_range(in, {-1, 1}));
}

TEST_CASE("instance JSON round trip and parsing") {
  FedexInstance lba = lba_instance(4);
  CHECK(read_instance(write_instance(lba)) == lba);

  auto j = nlohmann::json::parse(R"({"n":2,"v_max":1,"q":["1/2","1/2"],"pmf":[["0","1"],["1/2","0.5"]]})");
  FedexInstance in = read_instance(j);
  CHECK(in.q[0] == frac(1, 2));
  CHECK(in.pmf[1][1] == frac(1, 2));

  auto dec = nlohmann::json::parse(R"({"n":2,"v_max":1,"q":["0.5","0.5"],"pmf":[["0","1"],["0","1"]]})");
  CHECK(read_instance(dec).q[1] == frac(1, 2));

  auto bare = nlohmann::json::parse(R"({"n":1,"v_max":1,"q":[1],"pmf":[["0","1"]]})");
  CHECK_THROWS_AS(read_instance(bare), std::invalid_argument);
  auto invalid = nlohmann::json::parse(R"({"n":1,"v_max":1,"q":["1/2"],"pmf":[["0","1"]]})");
  CHECK_THROWS_AS(read_instance(invalid), std::invalid_argument);
  auto missing = nlohmann::json::parse(R"({"n":1,"q":["1"],"pmf":[["0","1"]]})");
  CHECK_THROWS_AS(read_instance(missing), std::invalid_argument);
}
