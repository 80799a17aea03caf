#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symucc/circuit.hpp"
#include "symucc/simulator.hpp"

namespace symucc {

struct VqeOptions {
  std::size_t max_iter = 500;
  double tol = 1e-6;  // applies to |dE| and the gradient max-norm alike
};

struct VqeIteration {
  std::size_t k = 0;
  double energy = 0.0;
  double gnorm = 0.0;  // max-norm of the gradient
};

struct VqeReport {
  std::vector<VqeIteration> iterations;
  std::vector<double> final_params;
  double final_energy = 0.0;
  bool converged = false;
  std::size_t n_parameters = 0;
  std::size_t n_evaluations = 0;
};

/// BFGS with a strong-Wolfe line search and analytic gradients. Starts from
/// `initial` (zeros when empty). Throws ContractViolation for tol <= 0 and
/// OptimizerDiverged on a non-finite energy.
VqeReport vqe_minimize(const AnsatzCircuit& circuit, const CompiledObservable& hamiltonian,
                       const Statevector& state0, const VqeOptions& options = {},
                       std::span<const double> initial = {});

struct FciResult {
  double energy = 0.0;
  std::vector<std::uint64_t> basis;  // sector determinants as qubit bitstrings
  std::vector<double> coefficients;  // ground vector over `basis`
  double residual = 0.0;
};

/// Lowest eigenpair in the sector with n_electrons and equal alpha/beta
/// counts. Dense below dimension 4096, Lanczos above. Throws CapacityError
/// beyond `max_qubits` and ContractViolation for odd electron counts.
FciResult fci_solve(const PauliSum& hamiltonian, std::size_t n_electrons,
                    std::size_t max_qubits = 20);

/// Quantity compared against epsilon: the mean |g_k| over the pool, or the
/// Euclidean norm of the pool gradient vector.
enum class AdaptStop { PoolMean, Norm };

struct AdaptOptions {
  double epsilon = 1e-2;
  AdaptStop stop = AdaptStop::Norm;
  std::size_t max_operators = 200;
  VqeOptions vqe;
};

struct AdaptRound {
  double mean_gradient = 0.0;  // pool-average |dE/dtheta| at the current state
  double gradient_norm = 0.0;
  double max_gradient = 0.0;
  std::optional<std::size_t> chosen;  // position in the pool; empty on stop
  double energy = 0.0;                // after re-optimization (or at stop)
};

struct AdaptReport {
  std::string pool_description;
  std::size_t pool_size = 0;
  std::vector<Excitation> selected;
  std::vector<std::size_t> selected_positions;  // into the pool
  std::vector<AdaptRound> rounds;
  std::vector<double> final_params;
  double final_energy = 0.0;
  bool converged = false;
};

/// Grow an ansatz from `pool` by gradient screening until the pool gradient
/// measure (options.stop) drops below epsilon. Each round appends the
/// largest-|g| operator, ties going to the lowest pool position, and
/// re-optimizes every parameter from its previous value.
AdaptReport adapt_vqe(std::span<const Excitation> pool, std::size_t n_spatial,
                      const CompiledObservable& hamiltonian, const Statevector& state0,
                      const AdaptOptions& options = {}, std::string pool_description = {});

/// `count` distinct operators drawn uniformly from `pool`, kept in pool order.
std::vector<Excitation> random_subpool(std::span<const Excitation> pool, std::size_t count,
                                       std::uint64_t seed);

enum class ScanMethod { Vqe, Fci };

struct ScanRow {
  std::string label;
  std::optional<double> energy;
  std::optional<double> e_fci;
  std::size_t n_parameters = 0;
  std::string error;  // non-empty when the fixture failed
};

/// Solve each fixture independently. Failures are recorded, not thrown.
/// VQE uses the symmetry-filtered pool unless `filter` is false; an empty
/// group keeps the ORBSYM labels as they are.
std::vector<ScanRow> pes_scan(std::span<const std::string> fcidumps, ScanMethod method,
                              bool filter = true, const std::string& group = {},
                              bool with_fci = true, const VqeOptions& options = {});

struct ShotVqeOptions {
  std::size_t shots = 1024;  // per Pauli term per energy estimate
  std::size_t iterations = 40;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
};

struct ShotVqeReport {
  std::vector<double> exact_energies;  // exact energy after each step
  std::vector<double> final_params;
  double final_energy = 0.0;  // exact energy at the final parameters
};

/// Gradient descent with shot-estimated parameter-shift gradients, each
/// rotation shifted by +-pi/4 and every energy sampled with `shots` shots.
ShotVqeReport shot_vqe(const AnsatzCircuit& circuit, const PauliSum& hamiltonian,
                       const Statevector& state0, const ShotVqeOptions& options);

}  // namespace symucc
