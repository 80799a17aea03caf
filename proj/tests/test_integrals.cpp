#include <gtest/gtest.h>

#include <cmath>

#include "dense.hpp"
#include "symucc/errors.hpp"
#include "symucc/integrals.hpp"
#include "symucc/simulator.hpp"

using namespace symucc;
using testing_dense::fixture;

namespace {

const char* kTiny =
    " &FCI NORB=2,NELEC=2,MS2=0,\n"
    "  ORBSYM=1,5,\n"
    "  ISYM=1,\n"
    " &END\n"
    "  0.6757101548 1 1 1 1\n"
    "  0.6645817705 2 2 1 1\n"
    "  0.1809270403 2 1 2 1\n"
    "  0.6985449570 2 2 2 2\n"
    " -1.2563390730 1 1 0 0\n"
    " -0.4718960244 2 2 0 0\n"
    " -0.5  1 0 0 0\n"
    "  0.7137539936 0 0 0 0\n";

}  // namespace

TEST(Fcidump, ParsesHeaderAndBody) {
  const auto t = parse_fcidump(kTiny);
  EXPECT_EQ(t.n_spatial(), 2u);
  EXPECT_EQ(t.n_electrons(), 2u);
  EXPECT_EQ(t.orbsym(), (std::vector<int>{1, 5}));
  EXPECT_DOUBLE_EQ(t.core_energy(), 0.7137539936);
  EXPECT_DOUBLE_EQ(t.h1(1, 1), -0.4718960244);
  // 8-fold symmetry of (pq|rs)
  EXPECT_DOUBLE_EQ(t.eri(1, 1, 0, 0), 0.6645817705);
  EXPECT_DOUBLE_EQ(t.eri(0, 0, 1, 1), 0.6645817705);
  EXPECT_DOUBLE_EQ(t.eri(0, 1, 1, 0), 0.1809270403);
  EXPECT_DOUBLE_EQ(t.eri(1, 0, 0, 1), 0.1809270403);
}

TEST(Fcidump, RoundTrip) {
  for (const char* name : {"h2.fcidump", "lih.fcidump", "beh2.fcidump"}) {
    const auto t = load_fcidump(fixture(name));
    EXPECT_EQ(parse_fcidump(write_fcidump(t)), t) << name;
  }
}

TEST(Fcidump, FortranExponentsAndCommas) {
  std::string text = kTiny;
  text.replace(text.find("0.6985449570"), 12, "0.6985449570D+00");
  EXPECT_DOUBLE_EQ(parse_fcidump(text).eri(1, 1, 1, 1), 0.6985449570);
}

TEST(Fcidump, Errors) {
  EXPECT_THROW(parse_fcidump("&FCI NORB=2, NELEC=3, &END\n"), UnsupportedReference);
  EXPECT_THROW(parse_fcidump("&FCI NORB=2, NELEC=2, MS2=2, &END\n"), UnsupportedReference);
  EXPECT_THROW(parse_fcidump("&FCI NORB=2, NELEC=2, ORBSYM=1, &END\n"), ParseError);
  EXPECT_THROW(parse_fcidump("&FCI NELEC=2, &END\n"), ParseError);
  EXPECT_THROW(parse_fcidump("&FCI NORB=2, NELEC=2, &END\n 1.0 3 3 0 0\n"), ParseError);
  EXPECT_THROW(parse_fcidump("&FCI NORB=2, NELEC=2, &END\n 1.0 1 1 0\n"), ParseError);
  EXPECT_THROW(parse_fcidump("&FCI NORB=2, NELEC=2, &END\n abc 1 1 0 0\n"), ParseError);
  EXPECT_THROW(load_fcidump("/nonexistent/file.fcidump"), IoError);
}

TEST(Fcidump, MissingOrbsymMeansTotallySymmetric) {
  const auto t = parse_fcidump("&FCI NORB=3, NELEC=2, &END\n 1.0 0 0 0 0\n");
  EXPECT_EQ(t.orbsym(), (std::vector<int>{1, 1, 1}));
}

TEST(Reference, ClosedShellIsTotallySymmetric) {
  for (const char* name : {"h2.fcidump", "h4.fcidump", "lih.fcidump", "hf.fcidump", "h2o.fcidump",
                           "beh2.fcidump", "nh3.fcidump", "ch4.fcidump", "c2h4.fcidump"}) {
    const auto t = load_fcidump(fixture(name));
    const auto ref = reference_determinant(t);
    EXPECT_TRUE(ref.irrep.is_totally_symmetric()) << name;
    EXPECT_EQ(ref.occupied_spatial.size(), t.n_electrons() / 2);
  }
}

TEST(Reference, HfEnergyMatchesQubitExpectation) {
  for (const char* name : {"h2.fcidump", "h4.fcidump", "lih.fcidump", "beh2.fcidump"}) {
    const auto t = load_fcidump(fixture(name));
    const auto psi = prepare_reference(t.n_qubits(), reference_determinant(t));
    EXPECT_NEAR(hf_energy(t), expectation(psi, qubit_hamiltonian(t)), 1e-10) << name;
  }
}

TEST(Reference, BeH2HartreeFock) {
  EXPECT_NEAR(hf_energy(load_fcidump(fixture("beh2.fcidump"))), -15.5603, 1e-3);
}
