#include <gtest/gtest.h>

#include <random>

#include "dense.hpp"
#include "symucc/errors.hpp"
#include "symucc/fermionics.hpp"
#include "symucc/pauli.hpp"

using namespace symucc;
using namespace testing_dense;

namespace {

FermionTermList ladder(std::size_t p, bool creation) { return {{1.0, {{p, creation}}}}; }

// Spin-free E_pq = sum_sigma a+_{p sigma} a_{q sigma}
FermionTermList unitary_group(std::size_t p, std::size_t q) {
  return {{1.0, {{spin_orbital(p, 0), true}, {spin_orbital(q, 0), false}}},
          {1.0, {{spin_orbital(p, 1), true}, {spin_orbital(q, 1), false}}}};
}

FermionTermList product(const FermionTermList& a, const FermionTermList& b) {
  FermionTermList out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      FermionTerm t{x.coefficient * y.coefficient, x.ops};
      t.ops.insert(t.ops.end(), y.ops.begin(), y.ops.end());
      out.push_back(t);
    }
  }
  return out;
}

FermionTermList minus_adjoint(FermionTermList t) {
  auto adj = adjoint(t);
  for (auto& term : adj) term.coefficient = -term.coefficient;
  t.insert(t.end(), adj.begin(), adj.end());
  return t;
}

}  // namespace

TEST(JordanWigner, MatchesLadderDefinition) {
  const std::size_t n = 5;
  for (std::size_t p = 0; p < n; ++p) {
    for (bool c : {true, false}) {
      EXPECT_TRUE(sum_matrix(jw_map(ladder(p, c), n), n).isApprox(ladder_matrix(p, c, n), 1e-14));
    }
  }
}

TEST(JordanWigner, CanonicalAnticommutators) {
  const std::size_t n = 6;
  const auto dim = Eigen::Index{1} << n;
  for (std::size_t p = 0; p < n; ++p) {
    const CMat ap = sum_matrix(jw_map(ladder(p, false), n), n);
    for (std::size_t q = 0; q < n; ++q) {
      const CMat aq = sum_matrix(jw_map(ladder(q, false), n), n);
      const CMat aqd = sum_matrix(jw_map(ladder(q, true), n), n);
      const CMat anti = ap * aqd + aqd * ap;
      const CMat expected = CMat::Identity(dim, dim) * (p == q ? 1.0 : 0.0);
      EXPECT_LT((anti - expected).norm(), 1e-12) << p << "," << q;
      EXPECT_LT((ap * aq + aq * ap).norm(), 1e-12);
    }
  }
}

TEST(JordanWigner, ModeOutOfRange) {
  EXPECT_THROW(jw_map(ladder(4, true), 4), IndexError);
}

TEST(Generators, AntiHermitianAndNonEmpty) {
  const std::size_t n_spatial = 4;
  std::vector<Excitation> excs{Excitation::single(0, 2), Excitation::single(1, 3),
                               Excitation::pair_double(0, 2, 0, 2), Excitation::pair_double(0, 2, 1, 3),
                               Excitation::pair_double(0, 3, 1, 2), Excitation::pair_double(1, 2, 1, 3)};
  for (const auto& e : excs) {
    const auto g = jw_map(generator(e, n_spatial), 2 * n_spatial);
    EXPECT_GT(g.size(), 0u) << e.label();
    EXPECT_TRUE(g.is_anti_hermitian()) << e.label();
  }
}

TEST(Generators, MixedDoubleIsProductOfSpinFreeSingles) {
  const std::size_t n_spatial = 4, n = 8;
  struct Case { std::size_t i, a, j, b; };
  for (const auto& c : {Case{0, 2, 1, 3}, Case{0, 3, 1, 2}, Case{0, 2, 0, 3}, Case{0, 2, 1, 2}}) {
    const auto exc = Excitation::pair_double(c.i, c.a, c.j, c.b);
    const auto oracle = minus_adjoint(product(unitary_group(c.a, c.i), unitary_group(c.b, c.j)));
    const auto expected = sum_matrix(jw_map(oracle, n), n);
    const auto got = sum_matrix(jw_map(generator(exc, n_spatial), n), n);
    EXPECT_LT((got - expected).norm(), 1e-12) << exc.label();
  }
}

TEST(Generators, PairedDoubleMovesBothElectrons) {
  const std::size_t n_spatial = 2, n = 4;
  const auto g = sum_matrix(jw_map(generator(Excitation::pair_double(0, 1, 0, 1), n_spatial), n), n);
  // |0011> -> |1100> with unit weight (up to sign)
  EXPECT_NEAR(std::abs(g(0b1100, 0b0011)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(g(0b1100, 0b0011) + g(0b0011, 0b1100)), 0.0, 1e-14);
}

TEST(Generators, SingleIsSpinSummed) {
  const std::size_t n_spatial = 2, n = 4;
  const auto g = sum_matrix(jw_map(generator(Excitation::single(0, 1), n_spatial), n), n);
  const auto oracle = sum_matrix(jw_map(minus_adjoint(unitary_group(1, 0)), n), n);
  EXPECT_LT((g - oracle).norm(), 1e-12);
}

TEST(Hamiltonian, QubitFormMatchesFermionicForm) {
  const auto t = load_fcidump(fixture("h2.fcidump"));
  const auto terms = hamiltonian_terms(t);
  EXPECT_TRUE(terms.front().ops.empty());
  const CMat fermionic = fermion_matrix(terms, 4);
  const PauliSum h = qubit_hamiltonian(t);
  EXPECT_TRUE(h.is_hermitian());
  EXPECT_LT((sum_matrix(h, 4) - fermionic).norm(), 1e-12);
}

TEST(Hamiltonian, H2EigenvaluesMatchReference) {
  const auto t = load_fcidump(fixture("h2.fcidump"));
  const CMat h = sum_matrix(qubit_hamiltonian(t), 4);
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  // Lowest eigenvalue over all particle numbers is the 2-electron ground state.
  EXPECT_NEAR(es.eigenvalues()[0], -1.13727, 1e-4);
}
