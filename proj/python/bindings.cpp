#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isospin/bipartite.hpp"
#include "isospin/channels.hpp"
#include "isospin/entropy.hpp"
#include "isospin/error.hpp"
#include "isospin/io.hpp"
#include "isospin/verify.hpp"

namespace py = pybind11;
using namespace isospin;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-d array");
  const auto r = static_cast<std::size_t>(a.shape(0)), c = static_cast<std::size_t>(a.shape(1));
  return ComplexMatrix(r, c, std::vector<Complex>(a.data(), a.data() + r * c));
}

CArray from_matrix(const ComplexMatrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

CVector to_vector(const CArray& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-d array");
  return CVector(a.data(), a.data() + a.shape(0));
}

CArray from_vector(const CVector& v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

KrausChannel make_channel(const std::string& name, std::optional<std::size_t> dim) {
  if (name == "phi-half") return build_isotropic(Spin::Half);
  if (name == "phi-one") return build_isotropic(Spin::One);
  if (name == "phi-one-magnetic") return build_isotropic(Spin::One, SpinBasis::Magnetic);
  if (name == "transpose-depolarizing") {
    if (!dim) throw py::value_error("transpose-depolarizing needs dim");
    return build_transpose_depolarizing(*dim);
  }
  throw py::value_error("unknown channel " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Isotropic spin channels: entropies, capacities and checks";

  py::register_exception<Error>(m, "IsospinError", PyExc_RuntimeError);

  py::class_<KrausChannel>(m, "Channel")
      .def(py::init([](std::vector<CArray> kraus, std::string label) {
             if (kraus.empty()) throw py::value_error("need at least one Kraus operator");
             std::vector<ComplexMatrix> ops;
             for (const auto& k : kraus) ops.push_back(to_matrix(k));
             const std::size_t d = ops.front().rows();
             return KrausChannel(d, std::move(ops), std::move(label));
           }),
           py::arg("kraus"), py::arg("label") = "custom")
      .def_property_readonly("dim", &KrausChannel::dim)
      .def_property_readonly("label", &KrausChannel::label)
      .def_property_readonly("kraus",
                             [](const KrausChannel& ch) {
                               std::vector<CArray> out;
                               for (const auto& k : ch.kraus()) out.push_back(from_matrix(k));
                               return out;
                             })
      .def("apply", [](const KrausChannel& ch, const CArray& rho) {
        return from_matrix(ch.apply_to_operator(to_matrix(rho)));
      })
      .def("output_entropy", [](const KrausChannel& ch, const CArray& psi) {
        return output_entropy(ch, PureState::normalized(to_vector(psi)));
      })
      .def("covariance_residual",
           [](const KrausChannel& ch, int samples, std::uint64_t seed) {
             return check_covariance(ch, samples, seed);
           },
           py::arg("samples") = 100, py::arg("seed") = 42)
      .def("to_json", [](const KrausChannel& ch) { return dump_json(channel_to_json(ch)); })
      .def("__repr__", [](const KrausChannel& ch) {
        return "<Channel " + ch.label() + " dim=" + std::to_string(ch.dim()) + ">";
      });

  m.def("channel", &make_channel, py::arg("name"), py::arg("dim") = py::none());
  m.def("channel_from_json", [](const std::string& s) { return channel_from_json(Json::parse(s)); });
  m.def("tensor", &tensor);

  m.def(
      "min_output_entropy",
      [](const KrausChannel& ch, int restarts, double tol, std::uint64_t seed) {
        MinEntropyOptions o;
        o.restarts = restarts;
        o.tolerance = tol;
        o.seed = seed;
        const EntropyReport r = [&] {
          py::gil_scoped_release release;
          return min_output_entropy(ch, o);
        }();
        py::dict d;
        d["min_entropy"] = r.min_entropy;
        d["argmin"] = from_vector(r.argmin.amplitudes());
        d["restarts"] = r.restarts;
        d["converged"] = r.converged_restarts;
        d["seed"] = r.seed;
        return d;
      },
      py::arg("channel"), py::arg("restarts") = 64, py::arg("tol") = 1e-10, py::arg("seed") = 42);

  m.def(
      "holevo_capacity",
      [](const KrausChannel& ch, int restarts, std::uint64_t seed) {
        const double residual = check_covariance(ch, 100, seed);
        MinEntropyOptions o;
        o.restarts = restarts;
        o.seed = seed;
        return holevo_covariant(ch, min_output_entropy(ch, o), residual);
      },
      py::arg("channel"), py::arg("restarts") = 64, py::arg("seed") = 42);

  m.def("von_neumann_entropy",
        [](const CArray& rho) { return von_neumann_entropy(DensityMatrix(to_matrix(rho))); });

  m.def("schmidt_decompose", [](const CArray& psi) {
    const SchmidtForm f = schmidt_decompose(PureState::normalized(to_vector(psi)));
    return py::make_tuple(f.lambdas, from_matrix(f.basis1), from_matrix(f.basis2));
  });

  m.def("analytic_qubit_spectrum", &analytic_qubit_spectrum);
  m.def("entropy_curve", [](int grid) {
    py::list rows;
    for (const auto& p : entropy_curve(grid))
      rows.append(py::make_tuple(p.lambda1, p.eigenvalues, p.entropy_nats));
    return rows;
  });

  m.def(
      "verify",
      [](std::uint64_t seed, int restarts, int samples) {
        RunAllOptions o;
        o.seed = seed;
        o.restarts = restarts;
        o.entangled_samples = samples;
        py::list out;
        for (const auto& c : run_all(o)) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["residual"] = c.residual;
          d["tolerance"] = c.tolerance;
          d["details"] = c.details;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 42, py::arg("restarts") = 64, py::arg("entangled_samples") = 10000);
}
