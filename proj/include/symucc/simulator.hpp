#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "symucc/circuit.hpp"
#include "symucc/integrals.hpp"
#include "symucc/pauli.hpp"

namespace symucc {

/// Dense state on n qubits; qubit q is bit q of the basis index.
class Statevector {
 public:
  /// Largest register the simulator will allocate. Adjustable for tests and
  /// big machines.
  static std::size_t max_qubits();
  static void set_max_qubits(std::size_t cap);

  Statevector() = default;
  /// |0...0>. Throws CapacityError above max_qubits().
  explicit Statevector(std::size_t n_qubits);
  static Statevector basis_state(std::size_t n_qubits, std::uint64_t index);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<cplx> amplitudes() { return amps_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  cplx inner(const Statevector& other) const;  // <this|other>

 private:
  std::size_t n_qubits_ = 0;
  std::vector<cplx> amps_;
};

/// Observable grouped by X mask for fast application: P|s> = phase |s ^ x>.
class CompiledObservable {
 public:
  /// Throws ContractViolation unless the sum is Hermitian.
  explicit CompiledObservable(const PauliSum& sum);

  double expectation(const Statevector& state) const;
  /// out = H |in>
  void apply(const Statevector& in, Statevector& out) const;
  double identity_coefficient() const { return identity_; }
  std::size_t n_qubits() const { return n_qubits_; }

 private:
  struct Group {
    QubitMask x = 0;
    std::vector<std::pair<QubitMask, cplx>> z_terms;  // coefficient * i^{|x&z|}
  };
  std::size_t n_qubits_ = 0;
  double identity_ = 0.0;
  std::vector<Group> groups_;
};

/// Computational basis state with both spin-orbitals of every occupied
/// spatial orbital set.
Statevector prepare_reference(std::size_t n_qubits,
                              const ReferenceDeterminant& ref);

/// |psi> <- P |psi>.
void apply_pauli(Statevector& state, QubitMask x, QubitMask z);

/// |psi> <- exp(i angle P) |psi> = cos(angle)|psi> + i sin(angle) P|psi>.
/// Throws DegenerateRotation for the identity string.
void apply_pauli_rotation(Statevector& state, const PauliTerm& pauli,
                          double angle);

/// <a| P |b>
cplx pauli_matrix_element(const Statevector& a, QubitMask x, QubitMask z,
                          const Statevector& b);

void apply_gate(Statevector& state, const Gate& gate);

/// Apply every rotation of the ansatz at the given parameters.
void apply_circuit(Statevector& state, const AnsatzCircuit& circuit,
                   std::span<const double> params);

/// Real expectation value; throws ContractViolation for non-Hermitian input.
double expectation(const Statevector& state, const PauliSum& observable);

struct EnergyGradient {
  double energy = 0.0;
  std::vector<double> gradient;
};

/// Energy and exact parameter gradient via a reverse sweep over rotations.
EnergyGradient energy_and_gradient(std::span<const double> params,
                                   const AnsatzCircuit& circuit,
                                   const CompiledObservable& hamiltonian,
                                   const Statevector& state0);
EnergyGradient energy_and_gradient(std::span<const double> params,
                                   const AnsatzCircuit& circuit,
                                   const PauliSum& hamiltonian,
                                   const Statevector& state0);

double energy(std::span<const double> params, const AnsatzCircuit& circuit,
              const CompiledObservable& hamiltonian, const Statevector& state0);

/// Depolarizing noise, finite shots, and folding for zero-noise extrapolation.
struct NoiseSpec {
  double p1 = 0.0;  // per single-qubit gate
  double p2 = 0.0;  // per two-qubit gate
  std::size_t shots = 0;  // per Pauli term; 0 = exact expectation
  std::size_t trajectories = 1;
  std::vector<int> fold_factors{1, 3, 5};

  /// Throws ContractViolation on out-of-range probabilities, zero
  /// trajectories, or fold factors that are not odd and ascending.
  void validate() const;
  bool noiseless() const { return p1 == 0.0 && p2 == 0.0; }
};

struct NoisyEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Monte Carlo estimate of the energy under `noise`, with every gate folded
/// `fold` times (G -> G (G^dag G)^((fold-1)/2)). Deterministic for a seed.
/// With zero noise the rotations are applied directly.
NoisyEstimate noisy_energy(std::span<const double> params,
                           const AnsatzCircuit& circuit,
                           const PauliSum& hamiltonian,
                           const Statevector& state0, const NoiseSpec& noise,
                           std::uint64_t seed, int fold = 1);

/// Same, but always runs the gate-level trajectory path.
NoisyEstimate noisy_energy_gate_level(std::span<const double> params,
                                      const AnsatzCircuit& circuit,
                                      const PauliSum& hamiltonian,
                                      const Statevector& state0,
                                      const NoiseSpec& noise,
                                      std::uint64_t seed, int fold = 1);

/// Sample `shots` +-1 outcomes per Pauli term from the exact distribution of
/// `state` and return the resulting energy estimate.
double sampled_energy(const Statevector& state, const PauliSum& hamiltonian,
                      std::size_t shots, std::mt19937_64& rng);

/// Least-squares line through (fold factor, energy) evaluated at zero.
/// Throws ContractViolation with fewer than two distinct factors.
double zne_extrapolate(std::span<const std::pair<double, double>> points);

}  // namespace symucc
