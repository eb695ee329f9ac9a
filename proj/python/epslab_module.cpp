#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "epslab/cli.hpp"
#include "epslab/io.hpp"

namespace py = pybind11;
using namespace epslab;

namespace {

// Vectors and reports cross the boundary as plain dicts in the JSON file format.
Json to_cpp(const py::object& obj) {
  const auto dumps = py::module_::import("json").attr("dumps");
  return Json::parse(dumps(obj).cast<std::string>());
}

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

DirectSumVector vec(const py::object& obj) { return direct_sum_from_json(to_cpp(obj)); }

Json coeffs_json(const CoeffVector& v) { return to_json(v); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Operator-weighted shift construction with certificate checks";
  m.attr("__version__") = kToolVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_IndexError);
  py::register_exception<BracketError>(m, "BracketError", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<NormSpec>(m, "NormSpec")
      .def_static("lp", &NormSpec::lp, py::arg("p"))
      .def_static("sup", &NormSpec::sup)
      .def_static("parse", &NormSpec::parse, py::arg("text"))
      .def_property_readonly("p", &NormSpec::p)
      .def_property_readonly("is_sup", [](const NormSpec& s) { return s.kind() == NormSpec::Kind::sup; })
      .def("__str__", &NormSpec::to_string)
      .def("__repr__", [](const NormSpec& s) { return "NormSpec('" + s.to_string() + "')"; })
      .def("__eq__", [](const NormSpec& a, const NormSpec& b) { return a.to_string() == b.to_string(); });

  m.def("norm_x", [](const py::object& v, const NormSpec& s) { return norm_x(coeff_vector_from_json(to_cpp(v)), s); },
        py::arg("vector"), py::arg("spec"));
  m.def("norm_z", [](const py::object& u, const NormSpec& sx, const NormSpec& sy) { return norm_z(vec(u), sx, sy); },
        py::arg("vector"), py::arg("spec_x"), py::arg("spec_y"));

  m.def("min_over_y", [](double omega, const NormSpec& s) {
        const LineMinimum r = min_over_y(omega, s);
        return py::make_tuple(r.min_value, r.y_star);
      }, py::arg("omega"), py::arg("spec"));
  m.def("solve_omega", [](double eps, const NormSpec& s, double tol) { return to_py(to_json(solve_omega(eps, s, tol))); },
        py::arg("eps"), py::arg("spec"), py::arg("tol") = kDefaultOuterTol);
  m.def("closed_form_omega", [](double eps, double p) {
        const ClosedFormOmega r = closed_form_omega(eps, p);
        return py::make_tuple(r.omega, r.y);
      }, py::arg("eps"), py::arg("p"));

  m.def("constants", [](double eps) {
        const Constants c = constants(eps);
        return py::dict(py::arg("eps") = c.eps, py::arg("lambda") = c.lambda, py::arg("kappa") = c.kappa);
      }, py::arg("eps"));

  py::class_<BlockPlan>(m, "Plan")
      .def_static("from_dict", [](const py::object& d) { return plan_from_json(to_cpp(d)); })
      .def("to_dict", [](const BlockPlan& p) { return to_py(to_json(p)); })
      .def_property_readonly("hash", [](const BlockPlan& p) { return plan_hash(p); })
      .def_property_readonly("block_count", &BlockPlan::block_count)
      .def_property_readonly("max_weight", &BlockPlan::max_weight)
      .def_property_readonly("spec_x", &BlockPlan::spec_x)
      .def("m", &BlockPlan::m, py::arg("k"))
      .def("r", [](const BlockPlan& p, Index k) { return p.block(k).r; }, py::arg("k"))
      .def("omega", [](const BlockPlan& p, Index k) { return p.block(k).omega; }, py::arg("k"));

  m.def("plan_blocks", [](double eps, const NormSpec& s, Index K, const std::map<Index, Index>& r_min) {
        return plan_blocks(eps, s, K, r_min);
      }, py::arg("eps"), py::arg("spec"), py::arg("blocks"), py::arg("r_min") = std::map<Index, Index>{});

  m.def("weight", [](const BlockPlan& p, Index n) {
        const WeightAction w = weight(p, n);
        return py::dict(py::arg("n") = w.n, py::arg("k") = w.k, py::arg("image_e0") = to_py(coeffs_json(w.image_e0)),
                        py::arg("image_ek") = to_py(coeffs_json(w.image_ek)), py::arg("scalar_other") = w.scalar_other);
      }, py::arg("plan"), py::arg("n"));
  m.def("forward_product", [](const BlockPlan& p, Index k, Index j) { return to_py(coeffs_json(forward_product(p, k, j))); },
        py::arg("plan"), py::arg("k"), py::arg("j"));
  m.def("inverse_product", [](const BlockPlan& p, Index k, Index j) { return to_py(coeffs_json(inverse_product(p, k, j))); },
        py::arg("plan"), py::arg("k"), py::arg("j"));

  py::class_<OperatorT>(m, "Operator")
      .def(py::init([](const BlockPlan& p, const std::optional<NormSpec>& sy) {
             return OperatorT(p, sy.value_or(p.spec_x()));
           }), py::arg("plan"), py::arg("spec_y") = std::nullopt)
      .def_property_readonly("plan", &OperatorT::plan)
      .def_property_readonly("spec_y", &OperatorT::spec_y)
      .def("norm", [](const OperatorT& T, const py::object& u) { return T.norm(vec(u)); }, py::arg("vector"));

  m.def("apply_T_pow", [](const OperatorT& T, const py::object& u, Index n) { return to_py(to_json(apply_T_pow(T, vec(u), n))); },
        py::arg("op"), py::arg("vector"), py::arg("n"));
  m.def("build_witness", [](const OperatorT& T, const py::object& target, Index k, double tol) {
        return to_py(to_json(build_witness(T, vec(target), k, tol)));
      }, py::arg("op"), py::arg("target"), py::arg("k"), py::arg("tol") = kDefaultCheckTol);
  m.def("choose_K", [](const py::object& u, double eps, double delta) { return choose_K(vec(u), eps, delta); },
        py::arg("vector"), py::arg("eps"), py::arg("delta"));
  m.def("lower_bound_check", [](const OperatorT& T, const py::object& u, double delta, Index horizon, double tol) {
        return to_py(to_json(lower_bound_check(T, vec(u), delta, horizon, tol)));
      }, py::arg("op"), py::arg("vector"), py::arg("delta"), py::arg("horizon"), py::arg("tol") = kDefaultCheckTol);
  m.def("l1_interval_report", [](const OperatorT& T, const py::object& u, Index horizon, double probe) {
        return to_py(to_json(l1_interval_report(T, vec(u), horizon, probe)));
      }, py::arg("op"), py::arg("vector"), py::arg("horizon"), py::arg("probe_length"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<std::string> argv{"epslab"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = run_cli(argv, out, err);
        return py::make_tuple(code, out.str(), err.str());
      }, py::arg("args"));
}
