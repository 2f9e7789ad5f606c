// fedex-menus: generate instances, solve, approximate, verify, and inspect curves.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fedex/approx_mechanism.hpp"
#include "fedex/hard_instances.hpp"
#include "fedex/json_io.hpp"
#include "fedex/mechanism.hpp"
#include "fedex/polygon.hpp"
#include "fedex/random_instance.hpp"
#include "fedex/revenue_curves.hpp"
#include "fedex/verify.hpp"

using nlohmann::json;
using namespace fedex;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

json read_json(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

// Instance from a bare instance document or one embedding it under "instance".
FedexInstance instance_of(const json& doc) {
  return read_instance(doc.contains("instance") ? doc["instance"] : doc);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

TieBreak parse_tie(const std::string& s) {
  if (s == "smallest") return TieBreak::smallest;
  if (s == "largest") return TieBreak::largest;
  throw UsageError("tie-break must be smallest or largest");
}

void print_table(const Mechanism& mech, const CurveStack& stack) {
  std::fprintf(stderr, "%4s %8s %6s  %s\n", "day", "r_geq", "atoms", "prices");
  for (int i = 1; i <= mech.n(); ++i) {
    std::string prices;
    for (const auto& a : mech.day(i).atoms()) prices += (prices.empty() ? "" : " ") + to_string(a.price);
    std::fprintf(stderr, "%4d %8d %6zu  %s\n", i, stack.r(i), mech.day(i).size(), prices.c_str());
  }
}

struct Trial {
  bool ok = true;
  std::string detail;
};

Trial battery_trial(std::uint64_t seed, int max_n, int max_vmax, int lp_limit) {
  std::mt19937_64 rng(seed);
  int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  int v = std::uniform_int_distribution<int>(1, max_vmax)(rng);
  FedexInstance inst = random_instance(rng, n, v);
  CurveStack st = build_curve_stack(inst);
  Mechanism m = fiat_optimal(st);
  AssignedMechanism am = assign_types(m, v);
  Rat direct = revenue_direct(am, inst);
  Trial t;
  auto fail = [&](const std::string& why) {
    t.ok = false;
    t.detail += why + "; ";
  };
  if (!check_ic(am).ok()) fail("IC violation");
  CurveRevenue cr = revenue_by_curves(m, st);
  if (cr.continuation != direct || cr.per_day != direct) fail("revenue accounting mismatch");
  if (n * (v + 1) <= lp_limit) {
    LpResult lp = lp_solve(inst, lp_limit);
    if (lp.optimum != direct) fail("LP optimum " + to_string(lp.optimum) + " != " + to_string(direct));
    if (!lp.certified) fail("LP certificate rejected");
  }
  t.detail = "n=" + std::to_string(n) + " v_max=" + std::to_string(v) + (t.ok ? "" : ": " + t.detail);
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal and approximately optimal FedEx mechanisms"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for random instance batteries");

  std::string input = "-";
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "Input JSON file ('-' for stdin)"); };

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string family;
  int gen_n = 4, gen_cap = 0, gen_vmax = 8, gen_weights = 6;
  bool perturbed = false;
  std::string grid = "0.01", vcap = "15";
  gen->add_option("family", family, "exponential | lba | regular3 | random")->required();
  gen->add_option("--n", gen_n, "Number of days");
  gen->add_flag("--perturbed", perturbed, "Perturbed exponential instance");
  gen->add_option("--size-cap", gen_cap, "Override the size guard for exponential instances");
  gen->add_option("--grid", grid, "Grid step for regular3");
  gen->add_option("--cap", vcap, "Value cap for regular3");
  gen->add_option("--vmax", gen_vmax, "v_max for random instances");
  gen->add_option("--weights", gen_weights, "Largest integer weight for random instances");

  // solve
  auto* solve = app.add_subcommand("solve", "Revenue-optimal mechanism");
  add_input(solve);
  std::string tie = "smallest";
  solve->add_option("--tie", tie, "Tie-break for maximizers: smallest | largest");

  // approx
  auto* approx = app.add_subcommand("approx", "Approximately optimal low-complexity mechanism");
  add_input(approx);
  std::string eps_str = "1/10", scheme_str = "best";
  approx->add_option("--eps", eps_str, "Revenue loss fraction in (0,1)");
  approx->add_option("--scheme", scheme_str, "greedy | dyadic | level | best");

  // verify
  auto* verify = app.add_subcommand("verify", "Check IC, revenue accounting and the LP optimum");
  add_input(verify);
  std::string instance_path;
  bool use_lp = false;
  int lp_limit = kDefaultLpLimit, battery = 0, max_n = 3, max_vmax = 8;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  verify->add_option("--instance", instance_path, "Instance JSON when the input does not embed one");
  verify->add_flag("--lp", use_lp, "Compare against the exact LP optimum");
  verify->add_option("--lp-limit", lp_limit, "Largest n*(v_max+1) handed to the LP");
  verify->add_option("--battery", battery, "Run N random instance trials instead of reading input");
  verify->add_option("--max-n", max_n, "Largest n in the battery");
  verify->add_option("--max-vmax", max_vmax, "Largest v_max in the battery");
  verify->add_option("--threads", threads, "Worker threads for the battery");

  // polygon
  auto* polygon = app.add_subcommand("polygon", "Polygon approximation of a concave curve");
  std::string pgen, csv;
  polygon->add_option("--gen", pgen, "Named curve, e.g. lpl:6");
  polygon->add_option("--csv", csv, "CSV of x,y pairs, hulled on load");
  polygon->add_option("--eps", eps_str, "Error parameter");
  polygon->add_option("--scheme", scheme_str, "greedy | dyadic | level | best");

  // curves
  auto* curves = app.add_subcommand("curves", "Revenue curves as CSV");
  add_input(curves);

  // report
  auto* report = app.add_subcommand("report", "Summary of solve, verify and approx in one document");
  add_input(report);
  bool timings = false;
  std::string report_eps;
  report->add_option("--eps", report_eps, "Also run the approximation with this eps");
  report->add_flag("--lp", use_lp, "Include the LP optimum when within limits");
  report->add_flag("--timings", timings, "Include wall-clock timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const NumMode mode = mode_from_env();

    if (*gen) {
      FedexInstance inst;
      if (family == "exponential") {
        int cap = gen_cap > 0 ? gen_cap : (perturbed ? 8 : 10);
        inst = perturbed ? perturbed_exponential(gen_n, cap) : exponential_instance(gen_n, cap);
      } else if (family == "lba") {
        inst = lba_instance(gen_n);
      } else if (family == "regular3") {
        inst = regular_three_day(parse_rat(grid), parse_rat(vcap));
      } else if (family == "random") {
        std::mt19937_64 rng(seed);
        inst = random_instance(rng, gen_n, gen_vmax, gen_weights);
      } else {
        throw UsageError("unknown family \"" + family + "\"");
      }
      emit(write_instance(inst));
      return kOk;
    }

    if (*solve) {
      json doc = read_json(input);
      FedexInstance inst = instance_of(doc);
      CurveStack st = build_curve_stack(inst, parse_tie(tie));
      Mechanism m = fiat_optimal(st);
      json out = mechanism_json(m, mode);
      out["instance"] = write_instance(inst);
      out["optimal"] = true;
      out["revenue"] = tagged(st.opt(), mode);
      out["r_geq"] = st.r_geq;
      emit(out);
      print_table(m, st);
      return kOk;
    }

    if (*approx) {
      json doc = read_json(input);
      FedexInstance inst = instance_of(doc);
      CurveStack st = build_curve_stack(inst);
      auto [m, rep] = approximate_mechanism(inst, st, parse_rat(eps_str), parse_scheme(scheme_str));
      json out = mechanism_json(m, mode);
      out["instance"] = write_instance(inst);
      out["optimal"] = false;
      out["report"] = approx_report_json(rep, mode);
      emit(out);
      print_table(m, st);
      bool ok = rep.revenue_ok && rep.accounting_ok;
      for (const auto& d : rep.days) ok = ok && d.audit_ok;
      return ok ? kOk : kCheckFailed;
    }

    if (*verify) {
      if (battery > 0) {
        std::vector<Trial> results(battery);
        std::atomic<int> next{0};
        auto worker = [&] {
          for (int k; (k = next++) < battery;) results[k] = battery_trial(seed + k, max_n, max_vmax, lp_limit);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<unsigned>(threads, battery); ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        int failed = 0;
        json fails = json::array();
        for (int k = 0; k < battery; ++k)
          if (!results[k].ok) {
            ++failed;
            fails.push_back({{"trial", k}, {"seed", seed + k}, {"detail", results[k].detail}});
          }
        emit({{"trials", battery}, {"failed", failed}, {"failures", fails}, {"seed", seed}});
        return failed == 0 ? kOk : kCheckFailed;
      }
      json doc = read_json(input);
      FedexInstance inst = instance_path.empty() ? instance_of(doc) : instance_of(read_json(instance_path));
      Mechanism m = read_mechanism(doc);
      if (m.n() != inst.n) throw UsageError("mechanism has " + std::to_string(m.n()) + " days, instance has " + std::to_string(inst.n));
      CurveStack st = build_curve_stack(inst);
      AssignedMechanism am = assign_types(m, inst.v_max);
      IcReport ic = check_ic(am);
      Rat direct = revenue_direct(am, inst);
      CurveRevenue cr = revenue_by_curves(m, st);
      bool ok = ic.ok() && cr.per_day == direct;
      json out{{"ic", ic_report_json(ic, mode)},
               {"revenue_direct", tagged(direct, mode)},
               {"revenue_by_curves", {{"per_day", tagged(cr.per_day, mode)}, {"continuation", tagged(cr.continuation, mode)}}},
               {"accounting_ok", cr.per_day == direct}};
      const bool claims_optimal = doc.value("optimal", false);
      if (use_lp) {
        if (inst.n * (inst.v_max + 1) <= lp_limit) {
          LpResult lp = lp_solve(inst, lp_limit);
          Rat gap = lp.optimum - direct;
          bool lp_ok = gap >= 0 && lp.certified && (!claims_optimal || gap == 0);
          out["lp"] = {{"optimum", tagged(lp.optimum, mode)}, {"gap", tagged(gap, mode)}, {"pivots", lp.pivots},
                       {"certified", lp.certified}, {"ok", lp_ok}};
          ok = ok && lp_ok;
        } else {
          out["lp"] = {{"skipped", "n*(v_max+1) exceeds --lp-limit"}};
        }
      }
      out["ok"] = ok;
      emit(out);
      return ok ? kOk : kCheckFailed;
    }

    if (*polygon) {
      if (pgen.empty() == csv.empty()) throw UsageError("give exactly one of --gen and --csv");
      std::optional<int> lpl_k;
      std::unique_ptr<ConcavePL> f;
      if (!pgen.empty()) {
        if (pgen.rfind("lpl:", 0) != 0) throw UsageError("unknown generator \"" + pgen + "\"");
        lpl_k = std::stoi(pgen.substr(4));
        f = std::make_unique<ConcavePL>(lpl(*lpl_k));
      } else {
        std::istringstream in(slurp(csv));
        std::vector<Point> pts;
        for (std::string line; std::getline(in, line);) {
          if (line.empty() || line[0] == '#') continue;
          auto comma = line.find(',');
          if (comma == std::string::npos) throw UsageError("CSV lines must be x,y");
          std::string xs = line.substr(0, comma), ys = line.substr(comma + 1);
          if (pts.empty() && !xs.empty() && std::isalpha(static_cast<unsigned char>(xs[0]))) continue;
          pts.push_back({parse_rat(xs), parse_rat(ys)});
        }
        f = std::make_unique<ConcavePL>(ConcavePL::hull_of(std::move(pts)));
      }
      PolygonApprox pa = run_scheme(parse_scheme(scheme_str), *f, parse_rat(eps_str));
      json out = polygon_json(pa, mode);
      bool ok = pa.certified_error <= pa.bound;
      if (lpl_k) {
        auto missing = lpl_interval_cover_check(pa.X, *lpl_k);
        out["lpl"] = {{"k", *lpl_k}, {"missing_intervals", missing}, {"cover_ok", missing.empty()}};
        if (pa.certified_error <= frac(1, 2)) ok = ok && missing.empty();
      }
      emit(out);
      return ok ? kOk : kCheckFailed;
    }

    if (*curves) {
      json doc = read_json(input);
      FedexInstance inst = instance_of(doc);
      CurveStack st = build_curve_stack(inst);
      std::cout << "day,v,value,R_i,R_i_float,R_geq,R_geq_float,R_tilde,R_tilde_float,ironed\n";
      for (int i = 1; i <= inst.n; ++i)
        for (int v = 0; v <= inst.v_max; ++v) {
          const Rat &a = st.day(i)[v], &b = st.geq(i)[v], &c = st.ironed(i).envelope[v];
          std::cout << i << ',' << v << ',' << to_decimal(Rat(v * inst.value_scale)) << ',' << to_string(a) << ','
                    << to_decimal(a) << ',' << to_string(b) << ',' << to_decimal(b) << ',' << to_string(c) << ','
                    << to_decimal(c) << ',' << (st.ironed(i).ironed_at(v) ? 1 : 0) << '\n';
        }
      return kOk;
    }

    if (*report) {
      using clk = std::chrono::steady_clock;
      json times;
      auto t0 = clk::now();
      auto lap = [&](const char* name) {
        auto t1 = clk::now();
        times[name] = std::chrono::duration<double, std::milli>(t1 - t0).count();
        t0 = t1;
      };
      json doc = read_json(input);
      FedexInstance inst = instance_of(doc);
      CurveStack st = build_curve_stack(inst);
      lap("curves");
      Mechanism m = fiat_optimal(st);
      AssignedMechanism am = assign_types(m, inst.v_max);
      Rat direct = revenue_direct(am, inst);
      CurveRevenue cr = revenue_by_curves(m, st);
      IcReport ic = check_ic(am);
      lap("solve");
      auto mc = menu_complexity(m);
      json out{{"mode", mode_name(mode)},
               {"instance", {{"n", inst.n}, {"v_max", inst.v_max}, {"value_scale", tagged(inst.value_scale, mode)}}},
               {"mechanism", {{"per_day", mc.per_day}, {"total", mc.total}, {"r_geq", st.r_geq}, {"ic_ok", ic.ok()}}},
               {"revenue",
                {{"direct", tagged(direct, mode)},
                 {"by_curves_continuation", tagged(cr.continuation, mode)},
                 {"by_curves_per_day", tagged(cr.per_day, mode)}}}};
      bool ok = ic.ok() && cr.continuation == direct && cr.per_day == direct;
      if (use_lp && inst.n * (inst.v_max + 1) <= lp_limit) {
        LpResult lp = lp_solve(inst, lp_limit);
        out["revenue"]["lp"] = tagged(lp.optimum, mode);
        ok = ok && lp.optimum == direct;
        lap("lp");
      }
      if (!report_eps.empty()) {
        auto [am2, rep] = approximate_mechanism(inst, st, parse_rat(report_eps));
        out["approx"] = approx_report_json(rep, mode);
        ok = ok && rep.revenue_ok && rep.accounting_ok;
        lap("approx");
      }
      out["ok"] = ok;
      if (timings) out["timings_ms"] = times;
      emit(out);
      return ok ? kOk : kCheckFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
