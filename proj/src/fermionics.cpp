#include "symucc/fermionics.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

namespace symucc {

Excitation Excitation::single(std::size_t i, std::size_t a, std::size_t index) {
  Excitation e;
  e.kind = Kind::Single;
  e.i = i;
  e.a = a;
  e.index = index;
  return e;
}

Excitation Excitation::pair_double(std::size_t i, std::size_t a, std::size_t j,
                                   std::size_t b, std::size_t index) {
  if (std::pair(j, b) < std::pair(i, a)) {
    std::swap(i, j);
    std::swap(a, b);
  }
  Excitation e;
  e.kind = Kind::Double;
  e.i = i;
  e.a = a;
  e.j = j;
  e.b = b;
  e.index = index;
  return e;
}

std::string Excitation::label() const {
  std::ostringstream s;
  if (is_single()) {
    s << "S(" << i << "->" << a << ")";
  } else {
    s << "D(" << i << "->" << a << "," << j << "->" << b << ")";
  }
  return s.str();
}

FermionTermList adjoint(const FermionTermList& terms) {
  FermionTermList out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    FermionTerm c{std::conj(t.coefficient), {}};
    for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) {
      c.ops.push_back({it->mode, !it->creation});
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Excitation> enumerate_pool(const IntegralTable& table) {
  const std::size_t nocc = table.n_occupied();
  const std::size_t norb = table.n_spatial();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < nocc; ++i) {
    for (std::size_t a = nocc; a < norb; ++a) pairs.emplace_back(i, a);
  }
  std::vector<Excitation> pool;
  for (const auto& [i, a] : pairs) {
    pool.push_back(Excitation::single(i, a, pool.size()));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    for (std::size_t l = k; l < pairs.size(); ++l) {
      pool.push_back(Excitation::pair_double(pairs[k].first, pairs[k].second,
                                             pairs[l].first, pairs[l].second,
                                             pool.size()));
    }
  }
  return pool;
}

namespace {

// Sort creators and annihilators separately, tracking the permutation sign,
// so that equal operators compare equal.
std::pair<int, std::array<std::size_t, 4>> canonical_double(
    std::size_t c0, std::size_t c1, std::size_t a0, std::size_t a1) {
  int sign = 1;
  if (c0 > c1) {
    std::swap(c0, c1);
    sign = -sign;
  }
  if (a0 > a1) {
    std::swap(a0, a1);
    sign = -sign;
  }
  return {sign, {c0, c1, a0, a1}};
}

}  // namespace

FermionTermList generator(const Excitation& exc, std::size_t /*n_spatial*/) {
  FermionTermList t;
  if (exc.is_single()) {
    for (int s = 0; s < 2; ++s) {
      t.push_back({1.0, {{spin_orbital(exc.a, s), true},
                         {spin_orbital(exc.i, s), false}}});
    }
  } else {
    // a+_{a s} a+_{b u} a_{j u} a_{i s} over all S_z-conserving (s, u),
    // dropping Pauli-forbidden and duplicate realizations.
    std::vector<std::array<std::size_t, 4>> seen;
    constexpr std::array<std::pair<int, int>, 4> kSpins{
        {{0, 0}, {1, 1}, {0, 1}, {1, 0}}};
    for (const auto& [s, u] : kSpins) {
      const std::size_t ca = spin_orbital(exc.a, s);
      const std::size_t cb = spin_orbital(exc.b, u);
      const std::size_t aj = spin_orbital(exc.j, u);
      const std::size_t ai = spin_orbital(exc.i, s);
      if (ca == cb || aj == ai) continue;
      const auto key = canonical_double(ca, cb, aj, ai).second;
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      t.push_back({1.0, {{ca, true}, {cb, true}, {aj, false}, {ai, false}}});
    }
  }
  FermionTermList dag = adjoint(t);
  for (auto& d : dag) {
    d.coefficient = -d.coefficient;
    t.push_back(std::move(d));
  }
  return t;
}

FermionTermList hamiltonian_terms(const IntegralTable& table) {
  const std::size_t n = table.n_spatial();
  FermionTermList terms;
  terms.push_back({table.core_energy(), {}});
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const double h = table.h1(p, q);
      if (h == 0.0) continue;
      for (int s = 0; s < 2; ++s) {
        terms.push_back(
            {h, {{spin_orbital(p, s), true}, {spin_orbital(q, s), false}}});
      }
    }
  }
  // 1/2 sum (pq|rs) a+_{p s} a+_{r u} a_{s u} a_{q s}
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
          const double g = table.eri(p, q, r, s);
          if (g == 0.0) continue;
          for (int sig = 0; sig < 2; ++sig) {
            for (int tau = 0; tau < 2; ++tau) {
              const std::size_t P = spin_orbital(p, sig);
              const std::size_t R = spin_orbital(r, tau);
              const std::size_t S = spin_orbital(s, tau);
              const std::size_t Q = spin_orbital(q, sig);
              if (P == R || S == Q) continue;
              terms.push_back(
                  {0.5 * g, {{P, true}, {R, true}, {S, false}, {Q, false}}});
            }
          }
        }
      }
    }
  }
  return terms;
}

}  // namespace symucc
