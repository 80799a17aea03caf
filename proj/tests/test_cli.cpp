#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dense.hpp"
#include "symucc/cli.hpp"

using testing_dense::fixture;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = symucc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST(Cli, PoolLine) {
  const auto r = call({"pool", "--fcidump", fixture("beh2.fcidump"), "--group", "D2h"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "before=90 after=23 ratio=0.2556\n");
  const auto c1 = call({"pool", "--fcidump", fixture("beh2.fcidump"), "--group", "C1"});
  EXPECT_EQ(c1.out, "before=90 after=90 ratio=1.0000\n");
}

TEST(Cli, CensusCsv) {
  const auto r = call({"census", "--fcidump", fixture("c2h4.fcidump"), "--group", "D2h"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 10);
  EXPECT_NE(r.out.find("Ag,9,210\n"), std::string::npos);
  EXPECT_NE(r.out.find("Total,48,1176\n"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"pool", "--fcidump", fixture("h2.fcidump"), "--bogus"}).code, 2);
  EXPECT_EQ(call({"pool"}).code, 2);
  EXPECT_EQ(call({"pool", "--help"}).code, 0);
  const auto missing = call({"pool", "--fcidump", "/nowhere.fcidump"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(nlohmann::json::parse(missing.err)["error"], "IoError");
  EXPECT_EQ(call({"pool", "--fcidump", fixture("h2.fcidump"), "--group", "Td"}).code, 1);
  // D2h labels do not fit a group of order 4.
  EXPECT_EQ(call({"pool", "--fcidump", fixture("beh2.fcidump"), "--group", "C2v"}).code, 1);
}

TEST(Cli, VqeReportSchema) {
  const auto path = (std::filesystem::temp_directory_path() / "symucc_vqe_h2.json").string();
  const auto r = call({"vqe", "--fcidump", fixture("h2.fcidump"), "--group", "C1", "--compare-unfiltered", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path));
  for (const char* key : {"molecule", "n_qubits", "group", "params_before", "params_after", "e_hf", "e_fci",
                          "e_final", "delta_fci", "delta_unfiltered", "iterations"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["params_before"], j["params_after"]);
  EXPECT_EQ(j["group"], "C1");
  EXPECT_LT(std::abs(j["delta_fci"].get<double>()), 1e-8);
  EXPECT_EQ(j["iterations"][0]["k"], 0);
  std::filesystem::remove(path);
}

TEST(Cli, AdaptForbiddenPool) {
  const auto r = call({"adapt", "--fcidump", fixture("h4.fcidump"), "--pool", "forbidden"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n_selected"], 0);
  EXPECT_DOUBLE_EQ(j["e_final"].get<double>(), j["e_hf"].get<double>());
}

TEST(Cli, FciAndCompile) {
  const auto fci = call({"fci", "--fcidump", fixture("h2.fcidump")});
  ASSERT_EQ(fci.code, 0);
  EXPECT_EQ(nlohmann::json::parse(fci.out)["sector_dim"], 4);
  const auto qasm = call({"compile", "--fcidump", fixture("h2.fcidump"), "--format", "qasm"});
  EXPECT_EQ(qasm.out.rfind("OPENQASM 2.0;", 0), 0u);
  const auto res = nlohmann::json::parse(call({"compile", "--fcidump", fixture("h2.fcidump")}).out);
  EXPECT_EQ(res["n_parameters"], 1);
  EXPECT_EQ(res["rotations"], 8);
}

TEST(Cli, NoiseSweepIsReproducible) {
  const std::vector<std::string> args{"noise-sweep", "--fcidump", fixture("h4.fcidump"), "--p2", "1e-3,1e-2",
                                      "--trajectories", "8", "--shots", "64", "--seed", "7", "--zne"};
  const auto a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "p,shots,E_mean,E_stderr,E_zne,E_noiseless");
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 3);
  EXPECT_EQ(call({"noise-sweep", "--fcidump", fixture("h4.fcidump"), "--p2", "abc"}).code, 2);
}

TEST(Cli, SubgroupScan) {
  const auto r = call({"subgroup-scan", "--fcidump", fixture("beh2.fcidump"), "--labels", fixture("beh2.c1.orbsym"),
                       "--labels", fixture("beh2.c2v-x.orbsym"), "--labels", fixture("beh2.d2h.orbsym")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "tag,group,order,survivors\nc1,C1,1,90\nc2v-x,C2v,4,34\nd2h,D2h,8,23\n");
}

TEST(Cli, ScanCsv) {
  const auto r = call({"scan", "--fcidump", fixture("h2.fcidump"), "--method", "fci"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("label,energy,e_fci,delta_fci,n_parameters,error\nh2,", 0), 0u);
}
