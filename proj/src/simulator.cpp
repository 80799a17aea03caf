#include "symucc/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>

#include "symucc/errors.hpp"
#include "symucc/parallel.hpp"

namespace symucc {

namespace {

std::atomic<std::size_t> g_max_qubits{26};

constexpr cplx kI{0.0, 1.0};

inline double parity_sign(QubitMask m) { return (std::popcount(m) & 1) ? -1.0 : 1.0; }

// Number of chunks worth splitting a 2^n loop into.
std::size_t chunks_for(std::size_t dim) {
  if (dim < (std::size_t{1} << 12)) return 1;
  return std::min(thread_count(), dim >> 10);
}

template <class F>
void for_range(std::size_t dim, F&& f) {
  const std::size_t chunks = chunks_for(dim);
  if (chunks <= 1) {
    f(std::size_t{0}, dim);
    return;
  }
  parallel_for(chunks, [&](std::size_t c) { f(dim * c / chunks, dim * (c + 1) / chunks); });
}

template <class F>
double reduce_range(std::size_t dim, F&& f) {
  const std::size_t chunks = chunks_for(dim);
  if (chunks <= 1) return f(std::size_t{0}, dim);
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    partial[c] = f(dim * c / chunks, dim * (c + 1) / chunks);
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void check_params(std::span<const double> params, const AnsatzCircuit& circuit) {
  if (params.size() != circuit.n_parameters) {
    throw ContractViolation("parameter vector has " + std::to_string(params.size()) +
                            " entries, circuit needs " +
                            std::to_string(circuit.n_parameters));
  }
}

void rotate(Statevector& state, QubitMask x, QubitMask z, double angle) {
  const double c = std::cos(angle);
  const double sn = std::sin(angle);
  const cplx base = y_phase(x, z);
  auto amps = state.amplitudes();
  const std::size_t dim = amps.size();
  if (x == 0) {
    const cplx up{c, sn};
    const cplx down{c, -sn};
    for_range(dim, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t s = lo; s < hi; ++s) {
        amps[s] *= (std::popcount(z & s) & 1) ? down : up;
      }
    });
    return;
  }
  const QubitMask high = std::bit_floor(x);
  const cplx isn = kI * sn * base;
  for_range(dim, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      if (s & high) continue;
      const std::size_t t = s ^ x;
      const cplx a = amps[s];
      const cplx b = amps[t];
      amps[s] = c * a + isn * parity_sign(z & t) * b;
      amps[t] = c * b + isn * parity_sign(z & s) * a;
    }
  });
}

}  // namespace

std::size_t Statevector::max_qubits() { return g_max_qubits.load(); }
void Statevector::set_max_qubits(std::size_t cap) { g_max_qubits.store(std::min<std::size_t>(cap, 40)); }

Statevector::Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > max_qubits()) {
    throw CapacityError("statevector of " + std::to_string(n_qubits) +
                        " qubits exceeds the cap of " + std::to_string(max_qubits()));
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{});
  amps_[0] = 1.0;
}

Statevector Statevector::basis_state(std::size_t n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw IndexError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double Statevector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

cplx Statevector::inner(const Statevector& other) const {
  if (other.dim() != dim()) throw ContractViolation("statevector sizes differ");
  cplx acc{};
  for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

CompiledObservable::CompiledObservable(const PauliSum& sum) : n_qubits_(sum.n_qubits()) {
  if (!sum.is_hermitian()) throw ContractViolation("observable is not Hermitian");
  std::map<QubitMask, Group> by_x;
  for (const auto& [key, c] : sum.terms()) {
    const auto [x, z] = key;
    if ((x | z) == 0) {
      identity_ += c.real();
      continue;
    }
    auto& g = by_x[x];
    g.x = x;
    g.z_terms.emplace_back(z, cplx(c.real(), 0.0) * y_phase(x, z));
  }
  for (auto& kv : by_x) groups_.push_back(std::move(kv.second));
}

double CompiledObservable::expectation(const Statevector& state) const {
  const auto amps = state.amplitudes();
  const double rest = reduce_range(amps.size(), [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (const auto& g : groups_) {
      for (std::size_t s = lo; s < hi; ++s) {
        cplx w{};
        for (const auto& [z, c] : g.z_terms) w += parity_sign(z & s) * c;
        acc += (std::conj(amps[s ^ g.x]) * w * amps[s]).real();
      }
    }
    return acc;
  });
  const double nrm = state.norm();
  return identity_ * nrm * nrm + rest;
}

void CompiledObservable::apply(const Statevector& in, Statevector& out) const {
  if (out.dim() != in.dim()) out = Statevector(in.n_qubits());
  const auto src = in.amplitudes();
  auto dst = out.amplitudes();
  for_range(src.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) dst[t] = identity_ * src[t];
    for (const auto& g : groups_) {
      for (std::size_t t = lo; t < hi; ++t) {
        const std::size_t s = t ^ g.x;
        cplx w{};
        for (const auto& [z, c] : g.z_terms) w += parity_sign(z & s) * c;
        dst[t] += w * src[s];
      }
    }
  });
}

Statevector prepare_reference(std::size_t n_qubits, const ReferenceDeterminant& ref) {
  std::uint64_t index = 0;
  for (auto p : ref.occupied_spatial) {
    if (2 * p + 1 >= n_qubits) throw IndexError("occupied orbital outside the register");
    index |= std::uint64_t{3} << (2 * p);
  }
  return Statevector::basis_state(n_qubits, index);
}

void apply_pauli(Statevector& state, QubitMask x, QubitMask z) {
  auto amps = state.amplitudes();
  const cplx base = y_phase(x, z);
  if (x == 0) {
    for (std::size_t s = 0; s < amps.size(); ++s) amps[s] *= base * parity_sign(z & s);
    return;
  }
  const QubitMask high = std::bit_floor(x);
  for (std::size_t s = 0; s < amps.size(); ++s) {
    if (s & high) continue;
    const std::size_t t = s ^ x;
    const cplx a = amps[s];
    amps[s] = base * parity_sign(z & t) * amps[t];
    amps[t] = base * parity_sign(z & s) * a;
  }
}

void apply_pauli_rotation(Statevector& state, const PauliTerm& pauli, double angle) {
  if (pauli.is_identity()) throw DegenerateRotation("rotation about the identity string");
  if ((pauli.x | pauli.z) >> state.n_qubits()) throw IndexError("Pauli string outside the register");
  rotate(state, pauli.x, pauli.z, angle);
}

cplx pauli_matrix_element(const Statevector& a, QubitMask x, QubitMask z,
                          const Statevector& b) {
  const auto pa = a.amplitudes();
  const auto pb = b.amplitudes();
  cplx acc{};
  for (std::size_t s = 0; s < pb.size(); ++s) {
    acc += std::conj(pa[s ^ x]) * parity_sign(z & s) * pb[s];
  }
  return acc * y_phase(x, z);
}

void apply_gate(Statevector& state, const Gate& gate) {
  const QubitMask b0 = QubitMask{1} << gate.q0;
  auto amps = state.amplitudes();
  switch (gate.kind) {
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2;
      for (std::size_t s = 0; s < amps.size(); ++s) {
        if (s & b0) continue;
        const cplx a = amps[s];
        const cplx b = amps[s | b0];
        amps[s] = r * (a + b);
        amps[s | b0] = r * (a - b);
      }
      break;
    }
    case GateKind::RX:
      rotate(state, b0, 0, -gate.angle / 2);
      break;
    case GateKind::RZ:
      rotate(state, 0, b0, -gate.angle / 2);
      break;
    case GateKind::CX: {
      const QubitMask b1 = QubitMask{1} << gate.q1;
      for (std::size_t s = 0; s < amps.size(); ++s) {
        if ((s & b0) && !(s & b1)) std::swap(amps[s], amps[s | b1]);
      }
      break;
    }
  }
}

void apply_circuit(Statevector& state, const AnsatzCircuit& circuit,
                   std::span<const double> params) {
  check_params(params, circuit);
  for (const auto& r : circuit.rotations) {
    if ((r.x | r.z) == 0) continue;
    rotate(state, r.x, r.z, r.coefficient * params[r.parameter]);
  }
}

double expectation(const Statevector& state, const PauliSum& observable) {
  return CompiledObservable(observable).expectation(state);
}

EnergyGradient energy_and_gradient(std::span<const double> params,
                                   const AnsatzCircuit& circuit,
                                   const CompiledObservable& hamiltonian,
                                   const Statevector& state0) {
  check_params(params, circuit);
  Statevector psi = state0;
  apply_circuit(psi, circuit, params);
  Statevector lambda;
  hamiltonian.apply(psi, lambda);
  EnergyGradient out;
  out.energy = hamiltonian.expectation(psi);
  out.gradient.assign(circuit.n_parameters, 0.0);
  for (auto it = circuit.rotations.rbegin(); it != circuit.rotations.rend(); ++it) {
    const auto& r = *it;
    if ((r.x | r.z) == 0) continue;
    // d/dphi exp(i phi P) at psi_r gives -2 Im <lambda_r|P|psi_r>.
    const cplx m = pauli_matrix_element(lambda, r.x, r.z, psi);
    out.gradient[r.parameter] += -2.0 * m.imag() * r.coefficient;
    const double phi = r.coefficient * params[r.parameter];
    rotate(psi, r.x, r.z, -phi);
    rotate(lambda, r.x, r.z, -phi);
  }
  return out;
}

EnergyGradient energy_and_gradient(std::span<const double> params,
                                   const AnsatzCircuit& circuit,
                                   const PauliSum& hamiltonian,
                                   const Statevector& state0) {
  return energy_and_gradient(params, circuit, CompiledObservable(hamiltonian), state0);
}

double energy(std::span<const double> params, const AnsatzCircuit& circuit,
              const CompiledObservable& hamiltonian, const Statevector& state0) {
  Statevector psi = state0;
  apply_circuit(psi, circuit, params);
  return hamiltonian.expectation(psi);
}

void NoiseSpec::validate() const {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    throw ContractViolation("depolarizing probabilities must lie in [0, 1]");
  }
  if (trajectories == 0) throw ContractViolation("at least one trajectory is required");
  for (std::size_t k = 0; k < fold_factors.size(); ++k) {
    if (fold_factors[k] < 1 || fold_factors[k] % 2 == 0) {
      throw ContractViolation("fold factors must be odd positive integers");
    }
    if (k > 0 && fold_factors[k] <= fold_factors[k - 1]) {
      throw ContractViolation("fold factors must be ascending");
    }
  }
}

namespace {

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t trajectory) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trajectory),
                    static_cast<std::uint32_t>(trajectory >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Gate> fold_gates(const std::vector<Gate>& gates, int fold) {
  if (fold < 1 || fold % 2 == 0) throw ContractViolation("fold factor must be odd and positive");
  std::vector<Gate> out;
  out.reserve(gates.size() * static_cast<std::size_t>(fold));
  for (const auto& g : gates) {
    out.push_back(g);
    for (int k = 0; k < (fold - 1) / 2; ++k) {
      out.push_back(g.inverse());
      out.push_back(g);
    }
  }
  return out;
}

// Uniformly random non-identity Pauli on the gate's support.
void depolarize(Statevector& state, const Gate& g, std::mt19937_64& rng) {
  if (g.two_qubit()) {
    const int k = std::uniform_int_distribution<int>(1, 15)(rng);
    QubitMask x = 0, z = 0;
    const int p0 = k & 3, p1 = k >> 2;  // 0 I, 1 X, 2 Y, 3 Z
    const QubitMask b0 = QubitMask{1} << g.q0, b1 = QubitMask{1} << g.q1;
    if (p0 == 1 || p0 == 2) x |= b0;
    if (p0 == 2 || p0 == 3) z |= b0;
    if (p1 == 1 || p1 == 2) x |= b1;
    if (p1 == 2 || p1 == 3) z |= b1;
    apply_pauli(state, x, z);
  } else {
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    const QubitMask b0 = QubitMask{1} << g.q0;
    apply_pauli(state, (k == 1 || k == 2) ? b0 : 0, (k == 2 || k == 3) ? b0 : 0);
  }
}

NoisyEstimate summarize(const std::vector<double>& samples) {
  NoisyEstimate est;
  const double n = static_cast<double>(samples.size());
  for (double v : samples) est.mean += v;
  est.mean /= n;
  if (samples.size() > 1) {
    double var = 0.0;
    for (double v : samples) var += (v - est.mean) * (v - est.mean);
    est.stderr_ = std::sqrt(var / (n - 1) / n);
  }
  return est;
}

}  // namespace

NoisyEstimate noisy_energy(std::span<const double> params, const AnsatzCircuit& circuit,
                           const PauliSum& hamiltonian, const Statevector& state0,
                           const NoiseSpec& noise, std::uint64_t seed, int fold) {
  noise.validate();
  if (!noise.noiseless()) {
    return noisy_energy_gate_level(params, circuit, hamiltonian, state0, noise, seed, fold);
  }
  Statevector psi = state0;
  apply_circuit(psi, circuit, params);
  if (noise.shots == 0) return {CompiledObservable(hamiltonian).expectation(psi), 0.0};
  std::vector<double> samples(noise.trajectories);
  parallel_for(noise.trajectories, [&](std::size_t t) {
    auto rng = trajectory_rng(seed, t);
    samples[t] = sampled_energy(psi, hamiltonian, noise.shots, rng);
  });
  return summarize(samples);
}

NoisyEstimate noisy_energy_gate_level(std::span<const double> params,
                                      const AnsatzCircuit& circuit,
                                      const PauliSum& hamiltonian,
                                      const Statevector& state0, const NoiseSpec& noise,
                                      std::uint64_t seed, int fold) {
  noise.validate();
  const auto gates = fold_gates(compile_gates(circuit, params), fold);
  const CompiledObservable obs(hamiltonian);
  std::vector<double> samples(noise.trajectories);
  parallel_for(noise.trajectories, [&](std::size_t t) {
    auto rng = trajectory_rng(seed, t);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Statevector psi = state0;
    for (const auto& g : gates) {
      apply_gate(psi, g);
      const double p = g.two_qubit() ? noise.p2 : noise.p1;
      if (p > 0.0 && u(rng) < p) depolarize(psi, g, rng);
    }
    samples[t] = noise.shots == 0 ? obs.expectation(psi)
                                  : sampled_energy(psi, hamiltonian, noise.shots, rng);
  });
  return summarize(samples);
}

double sampled_energy(const Statevector& state, const PauliSum& hamiltonian,
                      std::size_t shots, std::mt19937_64& rng) {
  if (shots == 0) return expectation(state, hamiltonian);
  if (!hamiltonian.is_hermitian()) throw ContractViolation("observable is not Hermitian");
  double e = 0.0;
  for (const auto& [key, c] : hamiltonian.terms()) {
    const auto [x, z] = key;
    if ((x | z) == 0) {
      e += c.real();
      continue;
    }
    const double mean = pauli_matrix_element(state, x, z, state).real();
    const double p = std::clamp((1.0 + mean) / 2.0, 0.0, 1.0);
    const auto ups = std::binomial_distribution<std::uint64_t>(shots, p)(rng);
    e += c.real() * (2.0 * static_cast<double>(ups) / static_cast<double>(shots) - 1.0);
  }
  return e;
}

double zne_extrapolate(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw ContractViolation("extrapolation needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12) throw ContractViolation("extrapolation needs two distinct fold factors");
  const double slope = (n * sxy - sx * sy) / det;
  return (sy - slope * sx) / n;
}

}  // namespace symucc
