#pragma once

#include <span>
#include <string>
#include <vector>

#include "symucc/fermionics.hpp"
#include "symucc/pauli.hpp"

namespace symucc {

/// exp(i * coefficient * theta[parameter] * P) for the Pauli string (x, z).
struct Rotation {
  QubitMask x = 0;
  QubitMask z = 0;
  double coefficient = 0.0;
  std::size_t parameter = 0;

  PauliTerm pauli() const { return {x, z, 1.0}; }
  friend bool operator==(const Rotation&, const Rotation&) = default;
};

struct ResourceCount {
  std::size_t rotations = 0;
  std::size_t rz = 0;
  std::size_t cnot = 0;
  std::size_t h_like = 0;
  /// Serial depth upper bound: sum of per-rotation depths.
  std::size_t depth = 0;

  friend bool operator==(const ResourceCount&, const ResourceCount&) = default;
};

/// First-order Trotterized UCC ansatz: one Pauli rotation per JW string of
/// each excitation generator, excitations in pool order.
struct AnsatzCircuit {
  std::size_t n_qubits = 0;
  std::size_t n_parameters = 0;
  std::vector<Excitation> excitations;  // parameter k belongs to excitations[k]
  std::vector<Rotation> rotations;
};

/// Rotations emitted for a single excitation (unit-angle parameter 0).
std::vector<Rotation> excitation_rotations(const Excitation& exc,
                                           std::size_t n_spatial);

AnsatzCircuit build_ansatz(std::span<const Excitation> pool,
                           std::size_t n_spatial);

enum class GateKind { H, RX, RZ, CX };

/// Standard gate conventions: RX(t) = exp(-i t X / 2), RZ(t) = exp(-i t Z / 2),
/// CX(control = q0, target = q1).
struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;

  bool two_qubit() const { return kind == GateKind::CX; }
  Gate inverse() const;
  friend bool operator==(const Gate&, const Gate&) = default;
};

/// exp(i * angle * P) as basis change, CNOT ladder onto the highest involved
/// qubit, RZ(-2 angle), mirrored ladder, inverse basis change. X qubits use
/// H and Y qubits use RX(+-pi/2). Throws DegenerateRotation for identity P.
std::vector<Gate> decompose_rotation(const PauliTerm& pauli, double angle);

/// Gates of the whole ansatz at the given parameters (rotations with identity
/// Pauli are skipped).
std::vector<Gate> compile_gates(const AnsatzCircuit& circuit,
                                std::span<const double> params);

ResourceCount resource_report(const AnsatzCircuit& circuit);

/// OpenQASM 2 text: reference preparation with X gates on `occupied_qubits`,
/// then the ansatz at `params`.
std::string to_qasm(const AnsatzCircuit& circuit, std::span<const double> params,
                    std::span<const std::size_t> occupied_qubits);

}  // namespace symucc
