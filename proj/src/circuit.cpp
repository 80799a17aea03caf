#include "symucc/circuit.hpp"

#include <bit>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "symucc/errors.hpp"

namespace symucc {

std::vector<Rotation> excitation_rotations(const Excitation& exc,
                                           std::size_t n_spatial) {
  const PauliSum g = jw_map(generator(exc, n_spatial), 2 * n_spatial);
  std::vector<Rotation> out;
  out.reserve(g.size());
  // jw(t - t^dagger) = sum_k i c_k P_k, so each factor is exp(i c_k theta P_k).
  for (const auto& [key, c] : g.terms()) {
    out.push_back({key.first, key.second, c.imag(), 0});
  }
  return out;
}

AnsatzCircuit build_ansatz(std::span<const Excitation> pool,
                           std::size_t n_spatial) {
  AnsatzCircuit circuit;
  circuit.n_qubits = 2 * n_spatial;
  circuit.n_parameters = pool.size();
  circuit.excitations.assign(pool.begin(), pool.end());
  for (std::size_t k = 0; k < pool.size(); ++k) {
    for (auto r : excitation_rotations(pool[k], n_spatial)) {
      r.parameter = k;
      circuit.rotations.push_back(r);
    }
  }
  return circuit;
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (kind == GateKind::RX || kind == GateKind::RZ) g.angle = -angle;
  return g;
}

std::vector<Gate> decompose_rotation(const PauliTerm& pauli, double angle) {
  if (pauli.is_identity()) {
    throw DegenerateRotation("rotation about the identity is a global phase");
  }
  std::vector<int> qubits;
  std::vector<Gate> basis;
  for (int q = 0; q < 64; ++q) {
    const bool xb = (pauli.x >> q) & 1U;
    const bool zb = (pauli.z >> q) & 1U;
    if (!xb && !zb) continue;
    qubits.push_back(q);
    if (xb && zb) {
      basis.push_back({GateKind::RX, q, -1, std::numbers::pi / 2});
    } else if (xb) {
      basis.push_back({GateKind::H, q, -1, 0.0});
    }
  }
  std::vector<Gate> gates(basis);
  for (std::size_t k = 0; k + 1 < qubits.size(); ++k) {
    gates.push_back({GateKind::CX, qubits[k], qubits[k + 1], 0.0});
  }
  gates.push_back({GateKind::RZ, qubits.back(), -1, -2.0 * angle});
  for (std::size_t k = qubits.size() - 1; k-- > 0;) {
    gates.push_back({GateKind::CX, qubits[k], qubits[k + 1], 0.0});
  }
  for (const auto& g : basis) gates.push_back(g.inverse());
  return gates;
}

std::vector<Gate> compile_gates(const AnsatzCircuit& circuit,
                                std::span<const double> params) {
  if (params.size() != circuit.n_parameters) {
    throw ContractViolation("parameter vector has " +
                            std::to_string(params.size()) + " entries, circuit needs " +
                            std::to_string(circuit.n_parameters));
  }
  std::vector<Gate> gates;
  for (const auto& r : circuit.rotations) {
    if ((r.x | r.z) == 0) continue;
    auto g = decompose_rotation(r.pauli(), r.coefficient * params[r.parameter]);
    gates.insert(gates.end(), g.begin(), g.end());
  }
  return gates;
}

ResourceCount resource_report(const AnsatzCircuit& circuit) {
  ResourceCount rc;
  for (const auto& r : circuit.rotations) {
    const int w = r.pauli().weight();
    if (w == 0) continue;
    const int non_z = std::popcount(r.x);
    rc.rotations += 1;
    rc.rz += 1;
    rc.cnot += 2 * static_cast<std::size_t>(w - 1);
    rc.h_like += 2 * static_cast<std::size_t>(non_z);
    rc.depth += 2 * static_cast<std::size_t>(w - 1) + 1 + (non_z > 0 ? 2 : 0);
  }
  return rc;
}

std::string to_qasm(const AnsatzCircuit& circuit, std::span<const double> params,
                    std::span<const std::size_t> occupied_qubits) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.n_qubits << "];\n";
  for (auto q : occupied_qubits) out << "x q[" << q << "];\n";
  char buf[64];
  for (const auto& g : compile_gates(circuit, params)) {
    switch (g.kind) {
      case GateKind::H:
        out << "h q[" << g.q0 << "];\n";
        break;
      case GateKind::RX:
        std::snprintf(buf, sizeof buf, "%.17g", g.angle);
        out << "rx(" << buf << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::RZ:
        std::snprintf(buf, sizeof buf, "%.17g", g.angle);
        out << "rz(" << buf << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::CX:
        out << "cx q[" << g.q0 << "],q[" << g.q1 << "];\n";
        break;
    }
  }
  return out.str();
}

}  // namespace symucc
