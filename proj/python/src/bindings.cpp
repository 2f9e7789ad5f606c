#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "fedex/approx_mechanism.hpp"
#include "fedex/hard_instances.hpp"
#include "fedex/json_io.hpp"
#include "fedex/mechanism.hpp"
#include "fedex/polygon.hpp"
#include "fedex/random_instance.hpp"
#include "fedex/revenue_curves.hpp"
#include "fedex/verify.hpp"

namespace py = pybind11;
using namespace fedex;

// Rat <-> fractions.Fraction. Ints and "p/q" or decimal strings are accepted on input.
namespace pybind11::detail {

template <>
struct type_caster<Rat> {
  PYBIND11_TYPE_CASTER(Rat, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = parse_rat(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::bool_>(src) || py::isinstance<py::float_>(src)) return false;
      if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
      std::string num = py::str(src.attr("numerator")), den = py::str(src.attr("denominator"));
      value = parse_rat(num + "/" + den);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  static handle cast(const Rat& x, return_value_policy, handle) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_string(x)).release();
  }
};

}  // namespace pybind11::detail

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

std::vector<std::vector<std::pair<Rat, Rat>>> atoms_of(const Mechanism& m) {
  std::vector<std::vector<std::pair<Rat, Rat>>> out;
  for (const auto& d : m.days) {
    out.emplace_back();
    for (const auto& a : d.atoms()) out.back().emplace_back(a.price, a.mass);
  }
  return out;
}

void check_range(const CurveStack& s, int day) {
  if (day < 1 || day > s.n()) throw py::index_error("day " + std::to_string(day) + " outside 1.." + std::to_string(s.n()));
}

Mechanism mechanism_of(const std::vector<std::vector<std::pair<Rat, Rat>>>& days) {
  Mechanism m;
  for (const auto& d : days) {
    std::vector<PriceAtom> atoms;
    for (const auto& [p, w] : d) atoms.push_back({p, w});
    m.days.emplace_back(std::move(atoms));
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact revenue-optimal and approximately optimal FedEx mechanisms";

  py::class_<FedexInstance>(m, "Instance")
      .def(py::init([](int n, int v_max, std::vector<Rat> q, std::vector<std::vector<Rat>> pmf) {
             FedexInstance in{n, v_max, std::move(q), std::move(pmf)};
             require_valid(in);
             return in;
           }),
           py::arg("n"), py::arg("v_max"), py::arg("q"), py::arg("pmf"))
      .def_readonly("n", &FedexInstance::n)
      .def_readonly("v_max", &FedexInstance::v_max)
      .def_readonly("q", &FedexInstance::q)
      .def_readonly("pmf", &FedexInstance::pmf)
      .def_readonly("value_scale", &FedexInstance::value_scale)
      .def("to_json", [](const FedexInstance& in) { return to_py(write_instance(in)); })
      .def_static("from_json", [](const py::object& o) { return read_instance(from_py(o)); })
      .def("marginal_cdf", &marginal_cdf, py::arg("day"))
      .def("__eq__", [](const FedexInstance& a, const FedexInstance& b) { return a == b; })
      .def("__repr__", [](const FedexInstance& in) {
        return "Instance(n=" + std::to_string(in.n) + ", v_max=" + std::to_string(in.v_max) + ")";
      });

  m.def("validate", &validate, py::arg("instance"));
  m.def("lba_instance", &lba_instance, py::arg("n"));
  m.def("exponential_instance", &exponential_instance, py::arg("n"), py::arg("cap") = 10);
  m.def("perturbed_exponential", &perturbed_exponential, py::arg("n"), py::arg("cap") = 8);
  m.def("regular_three_day", &regular_three_day, py::arg("grid_step"), py::arg("v_cap"));
  m.def(
      "random_instance",
      [](int n, int v_max, std::uint64_t seed, int weight_max) {
        std::mt19937_64 rng(seed);
        return random_instance(rng, n, v_max, weight_max);
      },
      py::arg("n"), py::arg("v_max"), py::arg("seed") = 1, py::arg("weight_max") = 6);

  py::class_<CurveStack>(m, "CurveStack")
      .def_property_readonly("n", &CurveStack::n)
      .def_readonly("r_geq", &CurveStack::r_geq)
      .def_property_readonly("opt", [](const CurveStack& s) { return s.opt(); })
      .def("day_curve", [](const CurveStack& s, int i) { check_range(s, i); return s.day(i).values; }, py::arg("day"))
      .def("R_geq", [](const CurveStack& s, int i) { check_range(s, i); return s.geq(i).values; }, py::arg("day"))
      .def("R_geq_ironed", [](const CurveStack& s, int i) { check_range(s, i); return s.ironed(i).envelope; },
           py::arg("day"))
      .def(
          "ironed_intervals",
          [](const CurveStack& s, int i) {
            check_range(s, i);
            std::vector<std::pair<int, int>> out;
            for (const auto& I : s.ironed(i).ironed_intervals) out.emplace_back(I.lo, I.hi);
            return out;
          },
          py::arg("day"));

  m.def(
      "build_curve_stack",
      [](const FedexInstance& in, const std::string& tie) {
        if (tie != "smallest" && tie != "largest") throw py::value_error("tie must be smallest or largest");
        return build_curve_stack(in, tie == "largest" ? TieBreak::largest : TieBreak::smallest);
      },
      py::arg("instance"), py::arg("tie") = "smallest");

  m.def(
      "solve", [](const FedexInstance& in) { return atoms_of(fiat_optimal(build_curve_stack(in))); },
      py::arg("instance"), "Per-day (price, mass) atoms of the revenue-optimal mechanism.");
  m.def(
      "menu_complexity", [](const std::vector<std::vector<std::pair<Rat, Rat>>>& d) {
        return menu_complexity(mechanism_of(d)).per_day;
      },
      py::arg("days"));
  m.def(
      "menu",
      [](const std::vector<std::pair<Rat, Rat>>& atoms) {
        std::vector<std::pair<Rat, Rat>> out;
        auto mech = mechanism_of({atoms});
        for (const auto& o : menu_from_prices(mech.day(1)).options) out.emplace_back(o.prob, o.payment);
        return out;
      },
      py::arg("atoms"), "Lottery options (probability, payment) of one day's price atoms.");
  m.def(
      "revenue",
      [](const FedexInstance& in, const std::vector<std::vector<std::pair<Rat, Rat>>>& d) {
        return revenue_direct(assign_types(mechanism_of(d), in.v_max), in);
      },
      py::arg("instance"), py::arg("days"));
  m.def(
      "check_ic",
      [](const FedexInstance& in, const std::vector<std::vector<std::pair<Rat, Rat>>>& d) {
        return to_py(ic_report_json(check_ic(assign_types(mechanism_of(d), in.v_max)), NumMode::exact));
      },
      py::arg("instance"), py::arg("days"));
  m.def(
      "lp_optimum", [](const FedexInstance& in, int limit) { return lp_solve(in, limit).optimum; },
      py::arg("instance"), py::arg("limit") = kDefaultLpLimit);
  m.def(
      "approximate",
      [](const FedexInstance& in, const Rat& eps, const std::string& scheme) {
        auto [mech, rep] = approximate_mechanism(in, build_curve_stack(in), eps, parse_scheme(scheme));
        return py::make_tuple(atoms_of(mech), to_py(approx_report_json(rep, NumMode::exact)));
      },
      py::arg("instance"), py::arg("eps"), py::arg("scheme") = "best");

  m.def(
      "polygon",
      [](const std::vector<std::pair<Rat, Rat>>& points, const Rat& eps, const std::string& scheme) {
        std::vector<Point> pts;
        for (const auto& [x, y] : points) pts.push_back({x, y});
        return to_py(polygon_json(run_scheme(parse_scheme(scheme), ConcavePL::hull_of(pts), eps), NumMode::exact));
      },
      py::arg("points"), py::arg("eps"), py::arg("scheme") = "best",
      "Polygon approximation of the upper hull of the points.");
  m.def(
      "lpl",
      [](int k) {
        auto f = lpl(k);
        std::vector<std::pair<Rat, Rat>> out;
        for (const auto& p : f.points()) out.emplace_back(p.x, p.y);
        return out;
      },
      py::arg("k"));
  m.def("lpl_interval_cover_check", &lpl_interval_cover_check, py::arg("X"), py::arg("k"));

}
