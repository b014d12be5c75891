#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deltaspec/couplings.hpp"
#include "deltaspec/overlap.hpp"
#include "deltaspec/quasi.hpp"
#include "deltaspec/singularities.hpp"
#include "deltaspec/transfer.hpp"
#include "deltaspec/zeros.hpp"

namespace py = pybind11;
using namespace deltaspec;

PYBIND11_MODULE(_deltaspec, m) {
  m.doc() = "Spectral singularities, bound states, and quasi-Hermiticity bounds "
            "of the complex double-delta potential";

  py::register_exception<invalid_input_error>(m, "InvalidInputError", PyExc_ValueError);
  py::register_exception<origin_error>(m, "OriginError", PyExc_ValueError);
  py::register_exception<contour_degenerate_error>(m, "ContourDegenerateError",
                                                   PyExc_RuntimeError);
  py::register_exception<resolution_error>(m, "ResolutionError", PyExc_RuntimeError);

  py::class_<CouplingConfig>(m, "CouplingConfig")
      .def(py::init<Complex, Complex, double>(), py::arg("z_minus"), py::arg("z_plus"),
           py::arg("a"))
      .def_readonly("z_minus", &CouplingConfig::z_minus)
      .def_readonly("z_plus", &CouplingConfig::z_plus)
      .def_readonly("a", &CouplingConfig::a);

  py::class_<ScaledCoupling>(m, "ScaledCoupling")
      .def(py::init([](Complex zm, Complex zp) { return ScaledCoupling{zm, zp}; }),
           py::arg("zf_minus"), py::arg("zf_plus"))
      .def_readonly("zf_minus", &ScaledCoupling::zf_minus)
      .def_readonly("zf_plus", &ScaledCoupling::zf_plus);

  py::class_<PhysicalConfig>(m, "PhysicalConfig")
      .def(py::init([](double mass, double hbar, Complex zeta_minus, Complex zeta_plus,
                       double alpha, double length_scale) {
             return PhysicalConfig{mass, hbar, zeta_minus, zeta_plus, alpha, length_scale};
           }),
           py::arg("mass") = 1.0, py::arg("hbar") = 1.0, py::arg("zeta_minus") = Complex{0, 0},
           py::arg("zeta_plus") = Complex{0, 0}, py::arg("alpha") = 1.0,
           py::arg("length_scale") = 1.0);

  m.def("nondimensionalize", &nondimensionalize, py::arg("cfg"));
  m.def("scale", &scale, py::arg("cc"));
  m.def("w_coefficients", &w_coefficients, py::arg("cc"), py::arg("k"));

  py::class_<TransferMatrix>(m, "TransferMatrix")
      .def_readonly("m11", &TransferMatrix::m11)
      .def_readonly("m12", &TransferMatrix::m12)
      .def_readonly("m21", &TransferMatrix::m21)
      .def_readonly("m22", &TransferMatrix::m22)
      .def("det", &TransferMatrix::det);

  m.def("transfer_matrix", &transfer_matrix, py::arg("cc"), py::arg("k"));
  m.def("m22", &m22, py::arg("cc"), py::arg("k"));
  m.def("f_factor", &f_factor, py::arg("cc"), py::arg("k"));
  m.def("det_m_residual", &det_m_residual, py::arg("cc"), py::arg("k"));

  py::class_<OverlapMatrix>(m, "OverlapMatrix")
      .def_readonly("k11", &OverlapMatrix::k11)
      .def_readonly("k12", &OverlapMatrix::k12)
      .def_readonly("k21", &OverlapMatrix::k21)
      .def_readonly("k22", &OverlapMatrix::k22)
      .def("det", &OverlapMatrix::det);

  m.def("overlap_matrix", &overlap_matrix, py::arg("cc"), py::arg("k"));
  m.def("det_k", &det_k, py::arg("cc"), py::arg("k"));
  m.def("det_k_pt", &det_k_pt, py::arg("z"), py::arg("a"), py::arg("k"));

  py::enum_<FamilyTag>(m, "FamilyTag")
      .value("generic", FamilyTag::generic)
      .value("pt", FamilyTag::pt)
      .value("anti_pt", FamilyTag::anti_pt)
      .value("imaginary", FamilyTag::imaginary)
      .value("opposite", FamilyTag::opposite)
      .value("shifted", FamilyTag::shifted);

  py::class_<SingularityRecord>(m, "SingularityRecord")
      .def_readonly("k_star", &SingularityRecord::k_star)
      .def_readonly("energy", &SingularityRecord::energy)
      .def_readonly("residual_f", &SingularityRecord::residual_f)
      .def_readonly("family", &SingularityRecord::family)
      .def("__repr__", [](const SingularityRecord& r) {
        return "<SingularityRecord k=" + std::to_string(r.k_star) + ">";
      });

  m.def(
      "find_singularities",
      [](const CouplingConfig& cc, double tol) { return find_singularities(cc, tol).found; },
      py::arg("cc"), py::arg("tol") = 1e-8);
  m.def("family_anti_pt", &family_anti_pt, py::arg("z"), py::arg("a"), py::arg("tol") = 1e-8);
  m.def("family_imaginary", &family_imaginary, py::arg("y_minus"), py::arg("y_plus"),
        py::arg("a"), py::arg("tol") = 1e-8);
  m.def("family_shifted", &family_shifted, py::arg("s_minus"), py::arg("s_plus"), py::arg("a"),
        py::arg("tol") = 1e-8);

  m.def("eval_F", &eval_F, py::arg("zf"), py::arg("kappa"), py::arg("order") = 0);
  m.def("eval_L", &eval_L, py::arg("kappa"));
  m.def("eval_G", &eval_G, py::arg("zf"), py::arg("kappa"));
  m.def("eval_J", &eval_J, py::arg("zf"), py::arg("kappa"));

  py::class_<ContourSpec> contour(m, "ContourSpec");
  contour.def_static("rect_upper", &ContourSpec::rect_upper, py::arg("rho"),
                     py::arg("eps") = 1e-3)
      .def_static("rect_lower", &ContourSpec::rect_lower, py::arg("rho"), py::arg("eps") = 1e-3)
      .def_static("sector", &ContourSpec::sector, py::arg("rho"), py::arg("theta"),
                  py::arg("eps") = 1e-3, py::arg("ang_offset") = -1.0)
      .def("contains", &ContourSpec::contains, py::arg("kappa"));

  m.def("winding_count", &winding_count, py::arg("zf"), py::arg("contour"));

  py::enum_<ZeroKind>(m, "ZeroKind")
      .value("spectral_singularity", ZeroKind::spectral_singularity)
      .value("bound_state", ZeroKind::bound_state)
      .value("real_bound_state", ZeroKind::real_bound_state);

  py::class_<ZeroRecord>(m, "ZeroRecord")
      .def_readonly("kappa", &ZeroRecord::kappa)
      .def_readonly("k", &ZeroRecord::k)
      .def_readonly("energy", &ZeroRecord::energy)
      .def_readonly("multiplicity", &ZeroRecord::multiplicity)
      .def_readonly("kind", &ZeroRecord::kind)
      .def_readonly("residual", &ZeroRecord::residual)
      .def("__repr__", [](const ZeroRecord& r) {
        return "<ZeroRecord kappa=(" + std::to_string(r.kappa.real()) + "," +
               std::to_string(r.kappa.imag()) + ")>";
      });

  py::class_<LocateResult>(m, "LocateResult")
      .def_readonly("records", &LocateResult::records)
      .def_readonly("warnings", &LocateResult::warnings)
      .def_readonly("sigma", &LocateResult::sigma);

  m.def(
      "locate_zeros",
      [](const ScaledCoupling& zf, double a) { return locate_zeros(zf, a); }, py::arg("zf"),
      py::arg("a") = 1.0);
  m.def("real_bound_states", &real_bound_states, py::arg("zf"), py::arg("a") = 1.0,
        py::arg("tol") = 1e-9);

  py::class_<SearchRegion>(m, "SearchRegion")
      .def_readonly("sigma", &SearchRegion::sigma)
      .def("contains", &SearchRegion::contains, py::arg("kappa"), py::arg("slack") = 1e-9);
  m.def("region_bound", &region_bound, py::arg("zf"));

  py::class_<QuasiBound>(m, "QuasiBound")
      .def_readonly("m_r", &QuasiBound::m_r)
      .def_readonly("b_r", &QuasiBound::b_r)
      .def_readonly("kappa_min", &QuasiBound::kappa_min)
      .def_readonly("t_min", &QuasiBound::t_min);

  py::class_<HalfDiscSpec>(m, "HalfDiscSpec")
      .def_static("covering", &HalfDiscSpec::covering, py::arg("r_minus"), py::arg("r_plus"))
      .def_static("fig10", &HalfDiscSpec::fig10, py::arg("r_minus"), py::arg("r_plus"))
      .def("boundary", &HalfDiscSpec::boundary, py::arg("t"));

  m.def(
      "compute_bound",
      [](double rm, double rp, int n, const HalfDiscSpec* disc) {
        return compute_bound(rm, rp, n, disc);
      },
      py::arg("r_minus"), py::arg("r_plus"), py::arg("n_boundary") = 4096,
      py::arg("disc") = nullptr);
}
