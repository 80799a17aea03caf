#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "symucc/cli.hpp"
#include "symucc/errors.hpp"
#include "symucc/solvers.hpp"
#include "symucc/symmetry.hpp"

namespace py = pybind11;
using namespace symucc;

namespace {

PointGroup group_from(const std::string& name) {
  const auto g = PointGroup::from_name(name);
  if (!g) throw ContractViolation("unknown point group: " + name);
  return *g;
}

py::array_t<std::complex<double>> to_numpy(const Statevector& s) {
  py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(s.dim()));
  auto* p = out.mutable_data();
  for (std::size_t i = 0; i < s.dim(); ++i) p[i] = s[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symmetry-filtered UCCSD toolkit";
  py::register_exception<Error>(m, "SymuccError", PyExc_RuntimeError);

  py::class_<IntegralTable>(m, "IntegralTable")
      .def_property_readonly("n_spatial", &IntegralTable::n_spatial)
      .def_property_readonly("n_electrons", &IntegralTable::n_electrons)
      .def_property_readonly("n_qubits", &IntegralTable::n_qubits)
      .def_property_readonly("core_energy", &IntegralTable::core_energy)
      .def("h1", &IntegralTable::h1)
      .def("eri", &IntegralTable::eri)
      .def("orbsym", [](const IntegralTable& t) {
        std::vector<int> v;
        for (std::size_t p = 0; p < t.n_spatial(); ++p)
          v.push_back(static_cast<int>(t.orbital_irrep(p).bits()) + 1);
        return v;
      })
      .def("to_fcidump", &write_fcidump);

  m.def("load_fcidump", &load_fcidump, py::arg("path"));
  m.def("parse_fcidump", [](const std::string& s) { return parse_fcidump(s); }, py::arg("text"));
  m.def("hf_energy", &hf_energy);
  m.def("with_point_group",
        [](const IntegralTable& t, const std::string& g) { return with_point_group(t, group_from(g)); });

  py::class_<Excitation>(m, "Excitation")
      .def_readonly("i", &Excitation::i)
      .def_readonly("a", &Excitation::a)
      .def_readonly("j", &Excitation::j)
      .def_readonly("b", &Excitation::b)
      .def_readonly("index", &Excitation::index)
      .def_property_readonly("is_single", &Excitation::is_single)
      .def("label", &Excitation::label)
      .def("__repr__", &Excitation::label);

  m.def("enumerate_pool", &enumerate_pool);
  m.def("reference_irrep", [](const IntegralTable& t) { return reference_determinant(t).irrep.bits(); });
  m.def("filter_pool", [](const std::vector<Excitation>& pool, const IntegralTable& t) {
    return filter_pool(pool, t, reference_determinant(t).irrep);
  });
  m.def("forbidden_pool", [](const std::vector<Excitation>& pool, const IntegralTable& t) {
    return forbidden_pool(pool, t, reference_determinant(t).irrep);
  });
  m.def("irrep_census", [](const std::vector<Excitation>& pool, const IntegralTable& t) {
    std::map<unsigned, std::pair<std::size_t, std::size_t>> out;
    for (const auto& [label, row] : irrep_census(pool, t)) out[label.bits()] = {row.singles, row.doubles};
    return out;
  });

  py::class_<PauliSum>(m, "PauliSum")
      .def_property_readonly("n_qubits", &PauliSum::n_qubits)
      .def("__len__", &PauliSum::size)
      .def("is_hermitian", &PauliSum::is_hermitian, py::arg("tol") = 1e-10)
      .def("terms", [](const PauliSum& s) {
        std::vector<std::pair<std::string, std::complex<double>>> out;
        for (const auto& [key, c] : s.terms()) out.emplace_back(PauliTerm{key.first, key.second, 1.0}.label(), c);
        return out;
      });
  m.def("qubit_hamiltonian", &qubit_hamiltonian);

  py::class_<ResourceCount>(m, "ResourceCount")
      .def_readonly("rotations", &ResourceCount::rotations)
      .def_readonly("rz", &ResourceCount::rz)
      .def_readonly("cnot", &ResourceCount::cnot)
      .def_readonly("h_like", &ResourceCount::h_like)
      .def_readonly("depth", &ResourceCount::depth);

  py::class_<AnsatzCircuit>(m, "AnsatzCircuit")
      .def_readonly("n_qubits", &AnsatzCircuit::n_qubits)
      .def_readonly("n_parameters", &AnsatzCircuit::n_parameters)
      .def_readonly("excitations", &AnsatzCircuit::excitations)
      .def_property_readonly("n_rotations", [](const AnsatzCircuit& c) { return c.rotations.size(); });
  m.def("build_ansatz",
        [](const std::vector<Excitation>& pool, std::size_t n_spatial) { return build_ansatz(pool, n_spatial); });
  m.def("resource_report", &resource_report);
  m.def("to_qasm", [](const IntegralTable& t, const AnsatzCircuit& c, const std::vector<double>& params) {
    std::vector<std::size_t> occ;
    for (auto p : reference_determinant(t).occupied_spatial) {
      occ.push_back(spin_orbital(p, 0));
      occ.push_back(spin_orbital(p, 1));
    }
    return to_qasm(c, params, occ);
  });

  m.def("reference_state", [](const IntegralTable& t) {
    return to_numpy(prepare_reference(t.n_qubits(), reference_determinant(t)));
  });
  m.def("ansatz_state", [](const IntegralTable& t, const AnsatzCircuit& c, const std::vector<double>& params) {
    auto s = prepare_reference(t.n_qubits(), reference_determinant(t));
    apply_circuit(s, c, params);
    return to_numpy(s);
  });
  m.def("energy_and_gradient", [](const IntegralTable& t, const AnsatzCircuit& c, const std::vector<double>& params) {
    const auto r = energy_and_gradient(params, c, qubit_hamiltonian(t),
                                       prepare_reference(t.n_qubits(), reference_determinant(t)));
    return py::make_tuple(r.energy, r.gradient);
  });

  py::class_<VqeIteration>(m, "VqeIteration")
      .def_readonly("k", &VqeIteration::k)
      .def_readonly("energy", &VqeIteration::energy)
      .def_readonly("gnorm", &VqeIteration::gnorm);
  py::class_<VqeReport>(m, "VqeReport")
      .def_readonly("iterations", &VqeReport::iterations)
      .def_readonly("final_params", &VqeReport::final_params)
      .def_readonly("final_energy", &VqeReport::final_energy)
      .def_readonly("converged", &VqeReport::converged)
      .def_readonly("n_parameters", &VqeReport::n_parameters);
  m.def(
      "vqe",
      [](const IntegralTable& t, const AnsatzCircuit& c, std::size_t max_iter, double tol) {
        py::gil_scoped_release release;
        return vqe_minimize(c, CompiledObservable(qubit_hamiltonian(t)),
                            prepare_reference(t.n_qubits(), reference_determinant(t)), VqeOptions{max_iter, tol});
      },
      py::arg("table"), py::arg("circuit"), py::arg("max_iter") = 500, py::arg("tol") = 1e-6);

  py::class_<FciResult>(m, "FciResult")
      .def_readonly("energy", &FciResult::energy)
      .def_readonly("basis", &FciResult::basis)
      .def_readonly("coefficients", &FciResult::coefficients)
      .def_readonly("residual", &FciResult::residual);
  m.def(
      "fci",
      [](const IntegralTable& t, std::size_t max_qubits) {
        py::gil_scoped_release release;
        return fci_solve(qubit_hamiltonian(t), t.n_electrons(), max_qubits);
      },
      py::arg("table"), py::arg("max_qubits") = 20);

  py::class_<AdaptReport>(m, "AdaptReport")
      .def_readonly("pool_size", &AdaptReport::pool_size)
      .def_readonly("selected", &AdaptReport::selected)
      .def_readonly("final_params", &AdaptReport::final_params)
      .def_readonly("final_energy", &AdaptReport::final_energy)
      .def_readonly("converged", &AdaptReport::converged);
  m.def(
      "adapt",
      [](const IntegralTable& t, const std::vector<Excitation>& pool, double epsilon, const std::string& stop) {
        AdaptOptions o;
        o.epsilon = epsilon;
        if (stop == "mean") o.stop = AdaptStop::PoolMean;
        else if (stop != "norm") throw ContractViolation("stop must be norm or mean");
        py::gil_scoped_release release;
        return adapt_vqe(pool, t.n_spatial(), CompiledObservable(qubit_hamiltonian(t)),
                         prepare_reference(t.n_qubits(), reference_determinant(t)), o);
      },
      py::arg("table"), py::arg("pool"), py::arg("epsilon") = 1e-2, py::arg("stop") = "norm");

  m.def(
      "noisy_energy",
      [](const IntegralTable& t, const AnsatzCircuit& c, const std::vector<double>& params, double p1, double p2,
         std::size_t shots, std::size_t trajectories, std::uint64_t seed, int fold) {
        NoiseSpec spec;
        spec.p1 = p1;
        spec.p2 = p2;
        spec.shots = shots;
        spec.trajectories = trajectories;
        py::gil_scoped_release release;
        const auto r = noisy_energy(params, c, qubit_hamiltonian(t),
                                    prepare_reference(t.n_qubits(), reference_determinant(t)), spec, seed, fold);
        return std::pair{r.mean, r.stderr_};
      },
      py::arg("table"), py::arg("circuit"), py::arg("params"), py::arg("p1") = 0.0, py::arg("p2") = 0.0,
      py::arg("shots") = 0, py::arg("trajectories") = 1, py::arg("seed") = 0, py::arg("fold") = 1);
  m.def("zne_extrapolate", [](const std::vector<std::pair<double, double>>& pts) { return zne_extrapolate(pts); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
