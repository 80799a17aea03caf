#include "symucc/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "symucc/circuit.hpp"
#include "symucc/errors.hpp"
#include "symucc/integrals.hpp"
#include "symucc/simulator.hpp"
#include "symucc/solvers.hpp"
#include "symucc/symmetry.hpp"

namespace symucc::cli {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string g17(double v) { return fmt("%.17g", v); }

struct Common {
  std::string fcidump;
  std::string group;
  std::string orbsym;
  double threshold = 0.0;
  bool no_filter = false;
};

void add_common(CLI::App* sub, Common& c, bool filter_flag = true) {
  sub->add_option("--fcidump", c.fcidump, "Molpro FCIDUMP file")->required();
  sub->add_option("--group", c.group,
                  "Abelian point group (D2h, C2v, C2h, D2, C2, Cs, Ci, C1). C1 disables "
                  "symmetry; omitted means ORBSYM labels are used as-is");
  sub->add_option("--orbsym", c.orbsym, "File with replacement ORBSYM labels");
  sub->add_option("--threshold", c.threshold, "Drop integrals below this magnitude");
  if (filter_flag) sub->add_flag("--no-filter", c.no_filter, "Keep the full UCCSD pool");
}

struct Problem {
  std::string molecule;
  IntegralTable table;
  std::optional<PointGroup> group;
  ReferenceDeterminant ref;
  std::vector<Excitation> full_pool;
  std::vector<Excitation> pool;  // filtered unless --no-filter
};

Problem load_problem(const Common& c) {
  Problem p;
  p.molecule = fs::path(c.fcidump).stem().string();
  p.table = load_fcidump(c.fcidump);
  if (c.threshold > 0.0) p.table.drop_below(c.threshold);
  if (!c.orbsym.empty()) p.table.set_orbsym(read_orbsym_file(c.orbsym));
  if (!c.group.empty()) {
    p.group = PointGroup::from_name(c.group);
    if (!p.group) throw ContractViolation("unsupported point group '" + c.group + "'");
    p.table = with_point_group(std::move(p.table), *p.group);
  }
  p.ref = reference_determinant(p.table);
  p.full_pool = enumerate_pool(p.table);
  p.pool = c.no_filter ? p.full_pool : filter_pool(p.full_pool, p.table, p.ref.irrep);
  return p;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  std::ostream& stream() { return path_.empty() ? fallback_ : buffer_; }
  void flush() {
    if (path_.empty()) return;
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw IoError("cannot write " + path_);
    f << buffer_.str();
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

ordered_json iterations_json(const VqeReport& r) {
  ordered_json arr = ordered_json::array();
  for (const auto& it : r.iterations) arr.push_back({{"k", it.k}, {"e", it.energy}, {"gnorm", it.gnorm}});
  return arr;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json adapt_json(const AdaptReport& r) {
  ordered_json rounds = ordered_json::array();
  for (const auto& round : r.rounds) {
    rounds.push_back({{"mean_gradient", round.mean_gradient},
                      {"gradient_norm", round.gradient_norm},
                      {"max_gradient", round.max_gradient},
                      {"chosen", round.chosen ? ordered_json(*round.chosen) : ordered_json(nullptr)},
                      {"e", round.energy}});
  }
  ordered_json selected = ordered_json::array();
  for (const auto& e : r.selected) selected.push_back(e.label());
  return {{"pool", r.pool_description}, {"pool_size", r.pool_size},
          {"n_selected", r.selected.size()}, {"selected", selected},
          {"converged", r.converged}, {"e_final", r.final_energy}, {"rounds", rounds}};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw std::invalid_argument(tok);
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry-filtered UCCSD toolkit"};
  app.name("symucc");
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string out_path;
  Common common;

  // pool
  auto* pool_cmd = app.add_subcommand("pool",
      "Count the UCCSD pool before and after symmetry filtering.\n"
      "Prints 'before=N after=M ratio=R'; with --out writes JSON "
      "{molecule, group, before, after, ratio, parameters:[labels]}");
  add_common(pool_cmd, common, false);
  pool_cmd->add_option("--out", out_path, "Write a JSON report here");

  // census
  auto* census_cmd = app.add_subcommand("census",
      "Per-irrep census of singles and doubles as CSV: irrep,singles,doubles plus a Total row");
  add_common(census_cmd, common, false);
  census_cmd->add_option("--out", out_path, "Write the CSV here instead of stdout");

  // compile
  std::string compile_format = "json";
  auto* compile_cmd = app.add_subcommand("compile",
      "Compile the ansatz to gates (all angles zero).\n"
      "json: {molecule, n_qubits, n_parameters, rotations, rz, cnot, h_like, depth}; "
      "qasm: OpenQASM 2 text including the reference preparation");
  add_common(compile_cmd, common);
  compile_cmd->add_option("--format", compile_format, "json or qasm")
      ->check(CLI::IsMember({"json", "qasm"}));
  compile_cmd->add_option("--out", out_path, "Output path");

  // vqe
  VqeOptions vqe_opts;
  bool vqe_adapt = false, compare_unfiltered = false, no_fci = false;
  double epsilon = 1e-2;
  std::string adapt_stop = "norm";
  auto* vqe_cmd = app.add_subcommand("vqe",
      "Run VQE from the Hartree-Fock state with BFGS.\n"
      "Report: {molecule, n_qubits, group, params_before, params_after, e_hf, e_fci, e_final, "
      "delta_fci, delta_unfiltered, converged, iterations:[{k, e, gnorm}]} "
      "(plus an 'adapt' object with --adapt)");
  add_common(vqe_cmd, common);
  vqe_cmd->add_flag("--adapt", vqe_adapt, "Grow the ansatz with ADAPT instead");
  vqe_cmd->add_option("--epsilon", epsilon, "ADAPT stopping threshold on the pool gradient");
  vqe_cmd->add_option("--stop", adapt_stop, "ADAPT measure: norm or mean")
      ->check(CLI::IsMember({"norm", "mean"}));
  vqe_cmd->add_option("--max-iter", vqe_opts.max_iter, "Optimizer iteration limit");
  vqe_cmd->add_option("--tol", vqe_opts.tol, "Energy change and gradient max-norm threshold");
  vqe_cmd->add_flag("--compare-unfiltered", compare_unfiltered,
                    "Also optimize the full pool and report delta_unfiltered");
  vqe_cmd->add_flag("--no-fci", no_fci, "Skip the FCI reference");
  vqe_cmd->add_option("--out", out_path, "Write the JSON report here");

  // adapt
  std::string adapt_pool = "filtered";
  std::size_t random_size = 23;
  std::uint64_t seed = 7;
  auto* adapt_cmd = app.add_subcommand("adapt",
      "ADAPT-VQE with a chosen operator pool.\n"
      "Report: {molecule, n_qubits, group, e_hf, e_fci, pool, pool_size, n_selected, selected, "
      "converged, e_final, delta_fci, rounds:[{mean_gradient, gradient_norm, max_gradient, chosen, e}]}");
  add_common(adapt_cmd, common, false);
  adapt_cmd->add_option("--pool", adapt_pool, "full, filtered, forbidden or random")
      ->check(CLI::IsMember({"full", "filtered", "forbidden", "random"}));
  adapt_cmd->add_option("--random-size", random_size, "Size of the random pool");
  adapt_cmd->add_option("--seed", seed, "Seed for the random pool");
  adapt_cmd->add_option("--epsilon", epsilon, "Stopping threshold on the pool gradient");
  adapt_cmd->add_option("--stop", adapt_stop, "norm (Euclidean norm of the pool gradient) or mean")
      ->check(CLI::IsMember({"norm", "mean"}));
  adapt_cmd->add_option("--tol", vqe_opts.tol, "Inner optimizer threshold");
  adapt_cmd->add_flag("--no-fci", no_fci, "Skip the FCI reference");
  adapt_cmd->add_option("--out", out_path, "Write the JSON report here");

  // fci
  std::size_t fci_cap = 20;
  auto* fci_cmd = app.add_subcommand("fci",
      "Exact ground state in the N-electron, Sz = 0 sector.\n"
      "Report: {molecule, n_qubits, sector_dim, e_hf, e_fci, residual}");
  add_common(fci_cmd, common, false);
  fci_cmd->add_option("--max-qubits", fci_cap, "Refuse larger registers");
  fci_cmd->add_option("--out", out_path, "Write the JSON report here");

  // scan
  std::vector<std::string> scan_files;
  std::string scan_method = "vqe";
  bool scan_no_filter = false;
  std::string scan_group;
  auto* scan_cmd = app.add_subcommand("scan",
      "Independent solves over several fixtures, as CSV: label,energy,e_fci,delta_fci,"
      "n_parameters,error");
  scan_cmd->add_option("--fcidump", scan_files, "FCIDUMP files, in curve order")->required();
  scan_cmd->add_option("--method", scan_method, "vqe or fci")
      ->check(CLI::IsMember({"vqe", "fci"}));
  scan_cmd->add_option("--group", scan_group, "Point group applied to every fixture");
  scan_cmd->add_flag("--no-filter", scan_no_filter, "Keep the full UCCSD pool");
  scan_cmd->add_option("--out", out_path, "Write the CSV here");

  // noise-sweep
  std::string p2_list = "0.001";
  std::optional<double> p1;
  std::size_t shots = 0, trajectories = 200;
  bool zne = false;
  auto* noise_cmd = app.add_subcommand("noise-sweep",
      "Noisy energy at the noiseless VQE optimum for each two-qubit error rate.\n"
      "CSV: p,shots,E_mean,E_stderr,E_zne,E_noiseless (E_zne empty without --zne)");
  add_common(noise_cmd, common);
  noise_cmd->add_option("--p2", p2_list, "Comma-separated two-qubit depolarizing rates")
      ->check(CLI::Validator(
          [](std::string& text) -> std::string {
            try {
              parse_list(text);
              return {};
            } catch (const std::exception&) {
              return "expected comma-separated numbers, got '" + text + "'";
            }
          },
          "LIST"));
  noise_cmd->add_option("--p1", p1, "Single-qubit rate (default p2/10)");
  noise_cmd->add_option("--shots", shots, "Shots per Pauli term, 0 for exact expectations");
  noise_cmd->add_option("--trajectories", trajectories, "Monte Carlo trajectories");
  noise_cmd->add_option("--seed", seed, "RNG seed");
  noise_cmd->add_flag("--zne", zne, "Fold gates 1,3,5 and extrapolate linearly");
  noise_cmd->add_option("--out", out_path, "Write the CSV here");

  // subgroup-scan
  std::vector<std::string> label_files;
  auto* sub_cmd = app.add_subcommand("subgroup-scan",
      "Survivor counts under subgroup relabelings, as CSV: tag,group,order,survivors.\n"
      "Each --labels file is named <anything>.<tag>.orbsym where the tag starts with the "
      "group name (e.g. beh2.c2v-x.orbsym)");
  sub_cmd->add_option("--fcidump", common.fcidump, "Molpro FCIDUMP file")->required();
  sub_cmd->add_option("--labels", label_files, "ORBSYM relabeling files")->required();
  sub_cmd->add_option("--out", out_path, "Write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Output sink(out_path, out);
    auto& os = sink.stream();

    if (pool_cmd->parsed()) {
      const auto p = load_problem(common);
      const double ratio = p.full_pool.empty() ? 0.0
                               : static_cast<double>(p.pool.size()) / p.full_pool.size();
      out << "before=" << p.full_pool.size() << " after=" << p.pool.size()
          << " ratio=" << fmt("%.4f", ratio) << '\n';
      if (!out_path.empty()) {
        ordered_json labels = ordered_json::array();
        for (const auto& e : p.pool) labels.push_back(e.label());
        ordered_json j{{"molecule", p.molecule},
                       {"group", p.group ? ordered_json(std::string(p.group->name())) : ordered_json(nullptr)},
                       {"before", p.full_pool.size()},
                       {"after", p.pool.size()},
                       {"ratio", ratio},
                       {"parameters", labels}};
        os << j.dump(2) << '\n';
      }
    } else if (census_cmd->parsed()) {
      const auto p = load_problem(common);
      const auto census = irrep_census(p.full_pool, p.table);
      os << census_csv(census, p.group ? &*p.group : nullptr);
    } else if (compile_cmd->parsed()) {
      const auto p = load_problem(common);
      const auto circuit = build_ansatz(p.pool, p.table.n_spatial());
      const std::vector<double> params(circuit.n_parameters, 0.0);
      if (compile_format == "qasm") {
        std::vector<std::size_t> occ;
        for (auto s : p.ref.occupied_spatial) {
          occ.push_back(2 * s);
          occ.push_back(2 * s + 1);
        }
        os << to_qasm(circuit, params, occ);
      } else {
        const auto rc = resource_report(circuit);
        ordered_json j{{"molecule", p.molecule}, {"n_qubits", circuit.n_qubits},
                       {"n_parameters", circuit.n_parameters}, {"rotations", rc.rotations},
                       {"rz", rc.rz}, {"cnot", rc.cnot}, {"h_like", rc.h_like},
                       {"depth", rc.depth}};
        os << j.dump(2) << '\n';
      }
    } else if (vqe_cmd->parsed() || adapt_cmd->parsed()) {
      const bool is_adapt = adapt_cmd->parsed() || vqe_adapt;
      if (adapt_cmd->parsed()) common.no_filter = true;
      const auto p = load_problem(common);
      const PauliSum h = qubit_hamiltonian(p.table);
      const CompiledObservable obs(h);
      const auto state0 = prepare_reference(p.table.n_qubits(), p.ref);
      const double e_hf = obs.expectation(state0);
      std::optional<double> e_fci;
      if (!no_fci) e_fci = fci_solve(h, p.table.n_electrons()).energy;
      ordered_json j{{"molecule", p.molecule},
                     {"n_qubits", p.table.n_qubits()},
                     {"group", p.group ? ordered_json(std::string(p.group->name())) : ordered_json(nullptr)}};
      if (is_adapt) {
        std::vector<Excitation> pool;
        std::string desc;
        if (adapt_cmd->parsed()) {
          desc = adapt_pool;
          if (adapt_pool == "full") pool = p.full_pool;
          if (adapt_pool == "filtered") pool = filter_pool(p.full_pool, p.table, p.ref.irrep);
          if (adapt_pool == "forbidden") pool = forbidden_pool(p.full_pool, p.table, p.ref.irrep);
          if (adapt_pool == "random") {
            pool = random_subpool(p.full_pool, std::min(random_size, p.full_pool.size()), seed);
          }
        } else {
          pool = p.pool;
          desc = common.no_filter ? "full" : "filtered";
        }
        AdaptOptions ao;
        ao.epsilon = epsilon;
        ao.stop = adapt_stop == "mean" ? AdaptStop::PoolMean : AdaptStop::Norm;
        ao.vqe = vqe_opts;
        const auto r = adapt_vqe(pool, p.table.n_spatial(), obs, state0, ao, desc);
        j["e_hf"] = e_hf;
        j["e_fci"] = optional_number(e_fci);
        const auto aj = adapt_json(r);
        for (const auto& [k, v] : aj.items()) j[k] = v;
        j["delta_fci"] = e_fci ? ordered_json(r.final_energy - *e_fci) : ordered_json(nullptr);
        if (vqe_cmd->parsed()) {
          j["params_before"] = p.full_pool.size();
          j["params_after"] = r.selected.size();
        }
      } else {
        const auto circuit = build_ansatz(p.pool, p.table.n_spatial());
        const auto r = vqe_minimize(circuit, obs, state0, vqe_opts);
        std::optional<double> delta_unfiltered;
        if (compare_unfiltered) {
          const auto full = build_ansatz(p.full_pool, p.table.n_spatial());
          delta_unfiltered = r.final_energy - vqe_minimize(full, obs, state0, vqe_opts).final_energy;
        }
        j["params_before"] = p.full_pool.size();
        j["params_after"] = p.pool.size();
        j["e_hf"] = e_hf;
        j["e_fci"] = optional_number(e_fci);
        j["e_final"] = r.final_energy;
        j["delta_fci"] = e_fci ? ordered_json(r.final_energy - *e_fci) : ordered_json(nullptr);
        j["delta_unfiltered"] = optional_number(delta_unfiltered);
        j["converged"] = r.converged;
        j["iterations"] = iterations_json(r);
      }
      os << j.dump(2) << '\n';
    } else if (fci_cmd->parsed()) {
      const auto p = load_problem(common);
      const PauliSum h = qubit_hamiltonian(p.table);
      const auto r = fci_solve(h, p.table.n_electrons(), fci_cap);
      ordered_json j{{"molecule", p.molecule}, {"n_qubits", p.table.n_qubits()},
                     {"sector_dim", r.basis.size()}, {"e_hf", hf_energy(p.table)},
                     {"e_fci", r.energy}, {"residual", r.residual}};
      os << j.dump(2) << '\n';
    } else if (scan_cmd->parsed()) {
      const auto rows = pes_scan(scan_files, scan_method == "fci" ? ScanMethod::Fci : ScanMethod::Vqe,
                                 !scan_no_filter, scan_group);
      os << "label,energy,e_fci,delta_fci,n_parameters,error\n";
      for (const auto& r : rows) {
        os << r.label << ',' << (r.energy ? g17(*r.energy) : "") << ','
           << (r.e_fci ? g17(*r.e_fci) : "") << ','
           << (r.energy && r.e_fci ? g17(*r.energy - *r.e_fci) : "") << ',' << r.n_parameters
           << ",\"" << r.error << "\"\n";
      }
    } else if (noise_cmd->parsed()) {
      const auto rates = parse_list(p2_list);
      const auto p = load_problem(common);
      const PauliSum h = qubit_hamiltonian(p.table);
      const CompiledObservable obs(h);
      const auto circuit = build_ansatz(p.pool, p.table.n_spatial());
      const auto state0 = prepare_reference(p.table.n_qubits(), p.ref);
      const auto opt = vqe_minimize(circuit, obs, state0, vqe_opts);
      os << "p,shots,E_mean,E_stderr,E_zne,E_noiseless\n";
      for (double p2 : rates) {
        NoiseSpec spec;
        spec.p2 = p2;
        spec.p1 = p1 ? *p1 : p2 / 10.0;
        spec.shots = shots;
        spec.trajectories = trajectories;
        spec.validate();
        const auto base = noisy_energy(opt.final_params, circuit, h, state0, spec, seed, 1);
        std::string zne_cell;
        if (zne) {
          std::vector<std::pair<double, double>> pts;
          for (int f : spec.fold_factors) {
            const auto est = f == 1 ? base
                                    : noisy_energy(opt.final_params, circuit, h, state0, spec, seed, f);
            pts.emplace_back(f, est.mean);
          }
          zne_cell = g17(zne_extrapolate(pts));
        }
        os << g17(p2) << ',' << shots << ',' << g17(base.mean) << ',' << g17(base.stderr_) << ','
           << zne_cell << ',' << g17(opt.final_energy) << '\n';
      }
    } else if (sub_cmd->parsed()) {
      const IntegralTable table = load_fcidump(common.fcidump);
      std::vector<SubgroupLabels> groups;
      for (const auto& file : label_files) {
        const std::string tag = fs::path(fs::path(file).stem()).extension().string().substr(
            fs::path(fs::path(file).stem()).extension().empty() ? 0 : 1);
        if (tag.empty()) throw ParseError("cannot read a subgroup tag from '" + file + "'");
        const auto pg = PointGroup::from_name(tag.substr(0, tag.find('-')));
        if (!pg) throw ParseError("unknown point group in tag '" + tag + "'");
        groups.push_back({tag, *pg, read_orbsym_file(file)});
      }
      os << "tag,group,order,survivors\n";
      for (const auto& row : subgroup_scan(table, groups)) {
        os << row.tag << ',' << row.group.name() << ',' << row.group.order() << ','
           << row.survivors << '\n';
      }
    }
    sink.flush();
  } catch (const Error& e) {
    err << ordered_json{{"error", e.kind()}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << ordered_json{{"error", "InternalError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("symucc");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace symucc::cli
