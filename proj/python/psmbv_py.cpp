#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psmbv/model_file.hpp"
#include "psmbv/psm.hpp"

namespace py = pybind11;
using namespace psmbv;

namespace {

py::dict report_to_dict(const CheckReport& r) {
  py::dict d;
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["witness"] = c.witness;
    e["note"] = c.note;
    checks.append(e);
  }
  d["checks"] = checks;
  d["deviations"] = r.deviations;
  d["all_pass"] = r.all_pass();
  return d;
}

}  // namespace

PYBIND11_MODULE(_psmbv, m) {
  m.doc() = "Bigraded variational calculus checks for Poisson sigma models";

  py::class_<PoissonTensor>(m, "PoissonTensor")
      .def(py::init([](int k, const std::map<std::pair<int, int>, std::string>& entries) {
             std::map<std::pair<int, int>, Expr> es;
             for (const auto& [ij, poly] : entries)
               es.emplace(ij, parse_polynomial(poly, k, 0));
             return PoissonTensor(k, std::move(es));
           }),
           py::arg("dim"), py::arg("entries"))
      .def_property_readonly("dim", &PoissonTensor::dimension)
      .def("jacobi_holds", [](const PoissonTensor& a) { return a.jacobi_check().holds; });

  py::class_<PSMModel>(m, "Model")
      .def(py::init<PoissonTensor>())
      .def_property_readonly("dim", &PSMModel::k)
      .def("check_jacobi", [](const PSMModel& m_) { return m_.jacobi_check().holds; })
      .def("euler_forms",
           [](const PSMModel& m_) {
             auto f = m_.euler_forms();
             py::dict d;
             py::list ex, ee;
             for (const auto& e : f.E_X_direct) ex.append(m_.render(e));
             for (const auto& e : f.E_eta_direct) ee.append(m_.render(e));
             d["E_X"] = ex;
             d["E_eta"] = ee;
             d["routes_agree"] = (f.sign_X == 1 && f.sign_eta == 1);
             return d;
           })
      .def("noether", [](const PSMModel& m_) { return report_to_dict(m_.noether_identity_check()); })
      .def("kt", [](const PSMModel& m_) { return report_to_dict(m_.kt_check()); })
      .def("ce", [](const PSMModel& m_) { return report_to_dict(m_.ce_check()); })
      .def(
          "master",
          [](const PSMModel& m_, int stage_mask) { return report_to_dict(m_.master_check(stage_mask)); },
          py::arg("stage_mask") = 7)
      .def(
          "differential",
          [](const PSMModel& m_, int stage_mask) {
            return report_to_dict(m_.differential_check(stage_mask));
          },
          py::arg("stage_mask") = 7)
      .def("run_all", [](const PSMModel& m_) { return report_to_dict(m_.run_all()); });

  m.def("load_model", [](const std::string& path) { return PSMModel(parse_model(path)); });
  m.def("fixture", [](const std::string& name) {
    if (name == "constant-symplectic") return PSMModel(fixture_constant_symplectic());
    if (name == "so3") return PSMModel(fixture_so3());
    if (name == "quadratic") return PSMModel(fixture_quadratic());
    if (name == "non-poisson") return PSMModel(fixture_non_poisson());
    throw std::invalid_argument("unknown fixture: " + name);
  });
}
