#include "symucc/solvers.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "symucc/errors.hpp"
#include "symucc/parallel.hpp"
#include "symucc/symmetry.hpp"

namespace symucc {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

class Objective {
 public:
  Objective(const AnsatzCircuit& circuit, const CompiledObservable& h, const Statevector& s0)
      : circuit_(circuit), h_(h), s0_(s0) {}

  double operator()(const Vec& x, Vec& grad) {
    ++evaluations;
    auto eg = energy_and_gradient(std::span<const double>(x.data(), x.size()), circuit_, h_, s0_);
    if (!std::isfinite(eg.energy)) {
      throw OptimizerDiverged("non-finite energy after " + std::to_string(evaluations) +
                              " evaluations");
    }
    grad = Eigen::Map<Vec>(eg.gradient.data(), eg.gradient.size());
    return eg.energy;
  }

  std::size_t evaluations = 0;

 private:
  const AnsatzCircuit& circuit_;
  const CompiledObservable& h_;
  const Statevector& s0_;
};

struct LinePoint {
  double alpha = 0.0;
  double f = 0.0;
  Vec g;
  double d = 0.0;  // directional derivative
};

// Strong-Wolfe line search; returns nullopt when no acceptable step is found.
std::optional<LinePoint> wolfe_search(Objective& fn, const Vec& x, const Vec& p,
                                      const LinePoint& start) {
  constexpr double c1 = 1e-4, c2 = 0.9, alpha_max = 64.0;
  auto eval = [&](double a) {
    LinePoint pt;
    pt.alpha = a;
    pt.f = fn(x + a * p, pt.g);
    pt.d = pt.g.dot(p);
    return pt;
  };
  auto armijo = [&](const LinePoint& pt) { return pt.f <= start.f + c1 * pt.alpha * start.d; };
  auto curvature = [&](const LinePoint& pt) { return std::abs(pt.d) <= -c2 * start.d; };

  auto zoom = [&](LinePoint lo, LinePoint hi) -> std::optional<LinePoint> {
    for (int it = 0; it < 40; ++it) {
      // Quadratic interpolation from lo's value and slope, safeguarded.
      const double da = hi.alpha - lo.alpha;
      const double denom = 2.0 * (hi.f - lo.f - lo.d * da);
      double a = lo.alpha + 0.5 * da;
      if (denom > 0.0) {
        const double cand = lo.alpha - lo.d * da * da / denom;
        const double left = std::min(lo.alpha, hi.alpha), right = std::max(lo.alpha, hi.alpha);
        const double margin = 0.1 * (right - left);
        if (cand > left + margin && cand < right - margin) a = cand;
      }
      const LinePoint pt = eval(a);
      if (!armijo(pt) || pt.f >= lo.f) {
        hi = pt;
      } else {
        if (curvature(pt)) return pt;
        if (pt.d * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = pt;
      }
      if (std::abs(hi.alpha - lo.alpha) < 1e-14 * std::max(1.0, lo.alpha)) break;
    }
    if (lo.alpha > 0.0 && lo.f < start.f) return lo;
    return std::nullopt;
  };

  LinePoint prev = start;
  double a = 1.0;
  for (int it = 0; it < 40; ++it) {
    const LinePoint pt = eval(a);
    if (!armijo(pt) || (it > 0 && pt.f >= prev.f)) return zoom(prev, pt);
    if (curvature(pt)) return pt;
    if (pt.d >= 0.0) return zoom(pt, prev);
    prev = pt;
    a = std::min(2.0 * a, alpha_max);
  }
  return prev.alpha > 0.0 ? std::optional<LinePoint>(prev) : std::nullopt;
}

}  // namespace

VqeReport vqe_minimize(const AnsatzCircuit& circuit, const CompiledObservable& hamiltonian,
                       const Statevector& state0, const VqeOptions& options,
                       std::span<const double> initial) {
  if (!(options.tol > 0.0)) throw ContractViolation("tolerance must be positive");
  const auto n = static_cast<Eigen::Index>(circuit.n_parameters);
  Vec x = Vec::Zero(n);
  if (!initial.empty()) {
    if (initial.size() != circuit.n_parameters) {
      throw ContractViolation("initial parameter vector has the wrong length");
    }
    x = Eigen::Map<const Vec>(initial.data(), n);
  }

  Objective fn(circuit, hamiltonian, state0);
  VqeReport report;
  report.n_parameters = circuit.n_parameters;
  LinePoint cur;
  cur.f = fn(x, cur.g);
  report.iterations.push_back({0, cur.f, max_abs(cur.g)});
  report.converged = max_abs(cur.g) < options.tol;

  Mat hinv = Mat::Identity(n, n);
  bool scaled = false;
  for (std::size_t k = 1; k <= options.max_iter && !report.converged; ++k) {
    Vec p = -hinv * cur.g;
    cur.d = cur.g.dot(p);
    if (!(cur.d < 0.0)) {
      hinv.setIdentity();
      scaled = false;
      p = -cur.g;
      cur.d = cur.g.dot(p);
    }
    auto next = wolfe_search(fn, x, p, cur);
    if (!next && scaled) {
      hinv.setIdentity();
      scaled = false;
      p = -cur.g;
      cur.d = cur.g.dot(p);
      next = wolfe_search(fn, x, p, cur);
    }
    if (!next) break;

    const Vec s = next->alpha * p;
    const Vec y = next->g - cur.g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        hinv = Mat::Identity(n, n) * (sy / y.squaredNorm());
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Vec hy = hinv * y;
      // Inverse update written out to stay O(n^2).
      hinv += rho * rho * (y.dot(hy) + sy) * (s * s.transpose()) -
              rho * (hy * s.transpose() + s * hy.transpose());
    }
    const double de = next->f - cur.f;
    x += s;
    cur = *next;
    cur.alpha = 0.0;
    report.iterations.push_back({k, cur.f, max_abs(cur.g)});
    report.converged = std::abs(de) < options.tol && max_abs(cur.g) < options.tol;
  }

  report.final_params.assign(x.data(), x.data() + x.size());
  report.final_energy = cur.f;
  report.n_evaluations = fn.evaluations;
  return report;
}

namespace {

// Phase and target of one Pauli string acting on a basis state.
struct PreparedTerm {
  QubitMask x, z;
  cplx c;  // coefficient * i^{|x&z|}
};

Vec lanczos_ground(const Eigen::SparseMatrix<double>& h, double& energy, double& residual) {
  const Eigen::Index dim = h.rows();
  const Eigen::Index m = std::min<Eigen::Index>(dim, 120);
  std::mt19937_64 rng(20240917);
  std::normal_distribution<double> normal;
  Vec start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) start[i] = normal(rng);
  start.normalize();

  Vec ritz = start;
  for (int restart = 0; restart < 50; ++restart) {
    Mat v(dim, m);
    Vec alpha(m), beta(m);
    v.col(0) = ritz;
    Eigen::Index used = m;
    for (Eigen::Index j = 0; j < m; ++j) {
      Vec w = h * v.col(j);
      alpha[j] = v.col(j).dot(w);
      // Full reorthogonalization, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        w -= v.leftCols(j + 1) * (v.leftCols(j + 1).transpose() * w);
      }
      beta[j] = w.norm();
      if (j + 1 == m) break;
      if (beta[j] < 1e-13) {
        used = j + 1;
        break;
      }
      v.col(j + 1) = w / beta[j];
    }
    Mat t = Mat::Zero(used, used);
    for (Eigen::Index j = 0; j < used; ++j) {
      t(j, j) = alpha[j];
      if (j + 1 < used) t(j, j + 1) = t(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(t);
    energy = es.eigenvalues()[0];
    ritz = v.leftCols(used) * es.eigenvectors().col(0);
    ritz.normalize();
    residual = (h * ritz - energy * ritz).norm();
    if (residual < 1e-10) break;
  }
  return ritz;
}

}  // namespace

FciResult fci_solve(const PauliSum& hamiltonian, std::size_t n_electrons, std::size_t max_qubits) {
  const std::size_t nq = hamiltonian.n_qubits();
  if (nq > max_qubits) {
    throw CapacityError("FCI on " + std::to_string(nq) + " qubits exceeds the cap of " +
                        std::to_string(max_qubits));
  }
  if (n_electrons % 2 != 0) throw ContractViolation("FCI sector needs an even electron count");
  if (nq % 2 != 0) throw ContractViolation("FCI expects an interleaved spin-orbital register");
  if (!hamiltonian.is_hermitian()) throw ContractViolation("Hamiltonian is not Hermitian");

  QubitMask alpha_mask = 0;
  for (std::size_t q = 0; q < nq; q += 2) alpha_mask |= QubitMask{1} << q;
  const int per_spin = static_cast<int>(n_electrons / 2);

  FciResult result;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << nq); ++s) {
    if (std::popcount(s & alpha_mask) == per_spin && std::popcount(s & ~alpha_mask) == per_spin) {
      result.basis.push_back(s);
    }
  }
  const auto dim = static_cast<Eigen::Index>(result.basis.size());
  if (dim == 0) throw ContractViolation("empty FCI sector");

  std::vector<PreparedTerm> terms;
  for (const auto& [key, c] : hamiltonian.terms()) {
    terms.push_back({key.first, key.second, cplx(c.real(), 0.0) * y_phase(key.first, key.second)});
  }
  auto locate = [&](std::uint64_t s) -> Eigen::Index {
    auto it = std::lower_bound(result.basis.begin(), result.basis.end(), s);
    if (it == result.basis.end() || *it != s) return -1;
    return it - result.basis.begin();
  };

  std::vector<std::vector<Eigen::Triplet<double>>> cols(static_cast<std::size_t>(dim));
  parallel_for(static_cast<std::size_t>(dim), [&](std::size_t col) {
    const std::uint64_t s = result.basis[col];
    std::vector<std::pair<Eigen::Index, double>> entries;
    for (const auto& t : terms) {
      const std::uint64_t target = s ^ t.x;
      if (std::popcount(target & alpha_mask) != per_spin) continue;
      if (std::popcount(target & ~alpha_mask) != per_spin) continue;
      const double sign = (std::popcount(t.z & s) & 1) ? -1.0 : 1.0;
      entries.emplace_back(locate(target), (sign * t.c).real());
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < entries.size();) {
      double v = 0.0;
      const auto row = entries[k].first;
      for (; k < entries.size() && entries[k].first == row; ++k) v += entries[k].second;
      if (v != 0.0) cols[col].emplace_back(row, static_cast<Eigen::Index>(col), v);
    }
  });

  Vec ground;
  if (dim < 4096) {
    Mat dense = Mat::Zero(dim, dim);
    for (const auto& col : cols) {
      for (const auto& t : col) dense(t.row(), t.col()) += t.value();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(dense);
    result.energy = es.eigenvalues()[0];
    ground = es.eigenvectors().col(0);
    result.residual = (dense * ground - result.energy * ground).norm();
  } else {
    std::vector<Eigen::Triplet<double>> all;
    for (auto& col : cols) all.insert(all.end(), col.begin(), col.end());
    Eigen::SparseMatrix<double> sparse(dim, dim);
    sparse.setFromTriplets(all.begin(), all.end());
    ground = lanczos_ground(sparse, result.energy, result.residual);
  }
  // Fix the sign so the largest component is positive.
  Eigen::Index big = 0;
  ground.cwiseAbs().maxCoeff(&big);
  if (ground[big] < 0) ground = -ground;
  result.coefficients.assign(ground.data(), ground.data() + ground.size());
  return result;
}

AdaptReport adapt_vqe(std::span<const Excitation> pool, std::size_t n_spatial,
                      const CompiledObservable& hamiltonian, const Statevector& state0,
                      const AdaptOptions& options, std::string pool_description) {
  if (!(options.epsilon > 0.0)) throw ContractViolation("epsilon must be positive");
  AdaptReport report;
  report.pool_description = std::move(pool_description);
  report.pool_size = pool.size();

  std::vector<std::vector<Rotation>> pool_rotations(pool.size());
  parallel_for(pool.size(), [&](std::size_t k) {
    pool_rotations[k] = excitation_rotations(pool[k], n_spatial);
  });

  AnsatzCircuit circuit;
  circuit.n_qubits = 2 * n_spatial;
  std::vector<double> params;

  while (true) {
    Statevector psi = state0;
    apply_circuit(psi, circuit, params);
    Statevector hpsi;
    hamiltonian.apply(psi, hpsi);
    const double e = psi.inner(hpsi).real();

    std::vector<double> grads(pool.size(), 0.0);
    parallel_for(pool.size(), [&](std::size_t k) {
      double g = 0.0;
      for (const auto& r : pool_rotations[k]) {
        if ((r.x | r.z) == 0) continue;
        g += -2.0 * r.coefficient * pauli_matrix_element(hpsi, r.x, r.z, psi).imag();
      }
      grads[k] = g;
    });

    AdaptRound round;
    round.energy = e;
    std::size_t best = 0;
    for (std::size_t k = 0; k < grads.size(); ++k) {
      const double a = std::abs(grads[k]);
      round.mean_gradient += a;
      round.gradient_norm += a * a;
      if (a > round.max_gradient) {
        round.max_gradient = a;
        best = k;
      }
    }
    if (!grads.empty()) round.mean_gradient /= static_cast<double>(grads.size());
    round.gradient_norm = std::sqrt(round.gradient_norm);
    const double measure =
        options.stop == AdaptStop::Norm ? round.gradient_norm : round.mean_gradient;

    report.final_energy = e;
    if (grads.empty() || measure < options.epsilon) {
      report.rounds.push_back(round);
      report.converged = true;
      break;
    }
    if (report.selected.size() >= options.max_operators) {
      report.rounds.push_back(round);
      break;
    }

    round.chosen = best;
    const std::size_t param = circuit.n_parameters++;
    circuit.excitations.push_back(pool[best]);
    for (auto r : pool_rotations[best]) {
      r.parameter = param;
      circuit.rotations.push_back(r);
    }
    params.push_back(0.0);
    report.selected.push_back(pool[best]);
    report.selected_positions.push_back(best);

    const auto vqe = vqe_minimize(circuit, hamiltonian, state0, options.vqe, params);
    params = vqe.final_params;
    round.energy = vqe.final_energy;
    report.final_energy = vqe.final_energy;
    report.rounds.push_back(round);
  }
  report.final_params = params;
  return report;
}

std::vector<Excitation> random_subpool(std::span<const Excitation> pool, std::size_t count,
                                       std::uint64_t seed) {
  if (count > pool.size()) throw ContractViolation("subpool larger than the pool");
  std::mt19937_64 rng(seed);
  std::vector<Excitation> out;
  out.reserve(count);
  std::sample(pool.begin(), pool.end(), std::back_inserter(out), count, rng);
  return out;
}

std::vector<ScanRow> pes_scan(std::span<const std::string> fcidumps, ScanMethod method,
                              bool filter, const std::string& group, bool with_fci,
                              const VqeOptions& options) {
  std::vector<ScanRow> rows;
  for (const auto& path : fcidumps) {
    ScanRow row;
    row.label = std::filesystem::path(path).stem().string();
    try {
      IntegralTable table = load_fcidump(path);
      if (!group.empty()) {
        const auto pg = PointGroup::from_name(group);
        if (!pg) throw ContractViolation("unsupported point group '" + group + "'");
        table = with_point_group(std::move(table), *pg);
      }
      const PauliSum h = qubit_hamiltonian(table);
      if (method == ScanMethod::Fci || with_fci) {
        row.e_fci = fci_solve(h, table.n_electrons()).energy;
      }
      if (method == ScanMethod::Fci) {
        row.energy = row.e_fci;
      } else {
        const auto ref = reference_determinant(table);
        auto pool = enumerate_pool(table);
        if (filter) pool = filter_pool(pool, table, ref.irrep);
        const auto circuit = build_ansatz(pool, table.n_spatial());
        const auto state0 = prepare_reference(table.n_qubits(), ref);
        const auto vqe = vqe_minimize(circuit, CompiledObservable(h), state0, options);
        row.energy = vqe.final_energy;
        row.n_parameters = pool.size();
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ShotVqeReport shot_vqe(const AnsatzCircuit& circuit, const PauliSum& hamiltonian,
                       const Statevector& state0, const ShotVqeOptions& options) {
  if (options.shots == 0) throw ContractViolation("shot VQE needs a positive shot count");
  const CompiledObservable exact(hamiltonian);
  std::vector<std::size_t> active;
  for (std::size_t r = 0; r < circuit.rotations.size(); ++r) {
    if ((circuit.rotations[r].x | circuit.rotations[r].z) != 0) active.push_back(r);
  }
  ShotVqeReport report;
  std::vector<double> params(circuit.n_parameters, 0.0);

  auto prepare = [&](std::size_t shifted, double shift) {
    Statevector psi = state0;
    for (std::size_t r : active) {
      const auto& rot = circuit.rotations[r];
      double phi = rot.coefficient * params[rot.parameter];
      if (r == shifted) phi += shift;
      apply_pauli_rotation(psi, rot.pauli(), phi);
    }
    return psi;
  };

  for (std::size_t it = 0; it < options.iterations; ++it) {
    std::vector<double> dphi(active.size());
    parallel_for(active.size(), [&](std::size_t k) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                        static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(it), static_cast<std::uint32_t>(k)};
      std::mt19937_64 rng(seq);
      const double plus = sampled_energy(prepare(active[k], std::numbers::pi / 4), hamiltonian,
                                         options.shots, rng);
      const double minus = sampled_energy(prepare(active[k], -std::numbers::pi / 4),
                                          hamiltonian, options.shots, rng);
      dphi[k] = plus - minus;
    });
    std::vector<double> grad(params.size(), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) {
      const auto& rot = circuit.rotations[active[k]];
      grad[rot.parameter] += rot.coefficient * dphi[k];
    }
    for (std::size_t p = 0; p < params.size(); ++p) params[p] -= options.learning_rate * grad[p];
    report.exact_energies.push_back(energy(params, circuit, exact, state0));
  }
  report.final_params = params;
  report.final_energy = report.exact_energies.empty() ? energy(params, circuit, exact, state0)
                                                      : report.exact_energies.back();
  return report;
}

}  // namespace symucc
