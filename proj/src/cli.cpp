// Copyright 2026 The unifactor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unifactor/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "unifactor/compile.hpp"
#include "unifactor/distance.hpp"
#include "unifactor/multistart.hpp"
#include "unifactor/qasm.hpp"
#include "unifactor/umat.hpp"

namespace unifactor::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Dense unitaries beyond this width are too large to build on a desk.
constexpr std::size_t kMaxDenseQubits = 10;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << content;
    if (!out.flush()) throw UsageError("cannot write '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw UsageError("cannot write '" + path + "': " + ec.message());
}

struct LoadedCircuit {
  Circuit circuit;
  json input;
};

json input_entry(const std::string& role, const std::string& path, const std::string& bytes) {
  return json{{"role", role}, {"path", path}, {"fnv1a64", fnv1a_hex(bytes)}};
}

LoadedCircuit load_circuit(const std::string& role, const std::string& path) {
  const std::string text = read_file(path);
  try {
    return {parse_qasm(text), input_entry(role, path, text)};
  } catch (const QasmError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                     ": " + e.message());
  }
}

ComplexMatrix load_target(const std::string& path, json& inputs) {
  const std::string text = read_file(path);
  ComplexMatrix m;
  try {
    m = read_umat(text);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (!is_unitary(m, 1e-8)) throw UsageError(path + ": target matrix is not unitary");
  inputs.push_back(input_entry("target", path, text));
  return m;
}

void require_dense_width(const Circuit& c, const std::string& what) {
  if (c.num_qubits > kMaxDenseQubits) {
    throw UsageError(what + " has " + std::to_string(c.num_qubits) +
                     " qubits; at most " + std::to_string(kMaxDenseQubits) + " are supported");
  }
}

std::size_t default_workers() {
  const char* env = std::getenv("UNIFACTOR_WORKERS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw UsageError("UNIFACTOR_WORKERS must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

json counts_json(const GateCounts& c) {
  return json{{"u3", c.u3}, {"cnot", c.cnot}, {"rz", c.rz}, {"other", c.other},
              {"total", c.total()}};
}

json hyper_json(const HyperParams& h) {
  return json{{"dist_tol", h.dist_tol},
              {"diff_tol_a", h.diff_tol_a},
              {"diff_tol_r", h.diff_tol_r},
              {"long_diff_count", h.long_diff_count},
              {"long_diff_r", h.long_diff_r},
              {"min_iter", h.min_iter},
              {"max_iter", h.max_iter},
              {"reset_iter", h.reset_iter},
              {"multistarts", h.multistarts},
              {"beta", h.beta}};
}

json result_json(const InstantiationResult& r, double dist_tol) {
  return json{{"termination", termination_name(r.termination)},
              {"success", r.success(dist_tol) && r.termination == Termination::DistTol},
              {"distance_delta", r.distance_delta},
              {"distance_frob", r.distance_frob},
              {"iterations", r.iterations},
              {"seed", r.seed}};
}

json base_report(std::string_view command) {
  return json{{"schema_version", kReportSchemaVersion},
              {"command", command},
              {"inputs", json::array()}};
}

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Options shared by the commands that run an instantiator.
struct RunFlags {
  HyperParams hyper;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string optimizer = "qfactor";
  std::optional<double> time_budget;
  std::size_t workers = 0;
  std::string report_path;

  void add_to(CLI::App* app) {
    app->add_option("--dist-tol", hyper.dist_tol, "Success threshold on Delta");
    app->add_option("--diff-tol-a", hyper.diff_tol_a, "Absolute short-plateau tolerance");
    app->add_option("--diff-tol-r", hyper.diff_tol_r, "Relative short-plateau tolerance");
    app->add_option("--long-diff-count", hyper.long_diff_count, "Long-plateau window");
    app->add_option("--long-diff-r", hyper.long_diff_r, "Long-plateau relative improvement");
    app->add_option("--min-iter", hyper.min_iter, "Iterations before any stop test");
    app->add_option("--max-iter", hyper.max_iter, "Iteration cap per start");
    app->add_option("--reset-iter", hyper.reset_iter, "Rebuild the tensor this often");
    app->add_option("--multistarts", hyper.multistarts, "Random starts");
    app->add_option("--beta", hyper.beta, "Retention of the previous gate value, in [0, 1]");
    seed_opt = app->add_option("--seed", seed, "Base seed (random when omitted)");
    app->add_option("--optimizer", optimizer, "qfactor or lbfgs")
        ->check(CLI::IsMember({"qfactor", "lbfgs"}));
    app->add_option("--time-budget", time_budget, "Wall-clock budget in seconds")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--workers", workers,
                    "Worker threads (0 = all cores; default from UNIFACTOR_WORKERS)");
    app->add_option("--out", report_path, "Write the JSON report here");
  }

  void finish() {
    if (seed_opt->count() > 0) hyper.seed = seed;
    hyper.seed = resolve_seed(hyper);
    try {
      hyper.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

void emit_report(const json& report, const std::string& path, std::ostream& out) {
  if (path.empty()) return;
  write_atomic(path, report.dump(2) + "\n");
  out << "report written to " << path << "\n";
}

int cmd_instantiate(const std::string& circuit_path, const std::string& target_spec,
                    const std::string& out_circuit, RunFlags& flags, std::ostream& out) {
  const auto start = Clock::now();
  json report = base_report("instantiate");
  LoadedCircuit lc = load_circuit("circuit", circuit_path);
  report["inputs"].push_back(lc.input);
  require_dense_width(lc.circuit, circuit_path);

  ComplexMatrix target;
  if (target_spec == "self") {
    target = circuit_unitary(lc.circuit);
  } else {
    target = load_target(target_spec, report["inputs"]);
  }
  const std::size_t dim = std::size_t{1} << lc.circuit.num_qubits;
  if (target.rows() != dim) {
    throw UsageError("dimension mismatch: circuit has " +
                     std::to_string(lc.circuit.num_qubits) + " qubits but target is " +
                     std::to_string(target.rows()) + "x" + std::to_string(target.cols()));
  }
  const Optimizer opt = parse_optimizer(flags.optimizer);
  if (opt == Optimizer::Lbfgs) {
    for (const auto& g : lc.circuit.gates) {
      if (g.kind == GateKind::VariableUnitary) {
        throw UsageError("lbfgs cannot optimise general unitary gates");
      }
    }
  }

  flags.hyper.workers = flags.workers;
  RunControl control;
  if (flags.time_budget) {
    control.deadline =
        start + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(*flags.time_budget));
  }
  const InstantiationResult r =
      instantiate_with(opt, lc.circuit, target, flags.hyper, control);
  const bool ok = r.termination == Termination::DistTol && r.success(flags.hyper.dist_tol);

  report["target"] = target_spec == "self" ? "self" : "file";
  report["optimizer"] = optimizer_name(opt);
  report["seed"] = *flags.hyper.seed;
  report["hyperparameters"] = hyper_json(flags.hyper);
  report["results"] = json::array({result_json(r, flags.hyper.dist_tol)});
  report["gate_counts"] = {{"before", counts_json(count_gates(lc.circuit))},
                           {"after", counts_json(count_gates(r.final_gates))}};
  report["timings_ms"] = {{"total", elapsed_ms(start)}};

  out << "termination: " << termination_name(r.termination) << "\n"
      << "distance_delta: " << r.distance_delta << "\n"
      << "iterations: " << r.iterations << "\n";
  if (!out_circuit.empty()) {
    bool wide = false;
    for (const auto& g : r.final_gates.gates) wide |= g.kind == GateKind::VariableUnitary && g.arity() > 1;
    if (wide) throw UsageError("--out-circuit: multi-qubit unitary gates cannot be written as QASM");
    write_atomic(out_circuit, write_qasm(r.final_gates));
  }
  emit_report(report, flags.report_path, out);
  return ok ? kExitOk : kExitNoSuccess;
}

int cmd_optimize(const std::string& circuit_path, std::size_t block_size,
                 const std::string& out_circuit, bool verify, bool fixpoint,
                 bool no_pair_deletion, RunFlags& flags, std::ostream& out,
                 std::ostream& err) {
  const auto start = Clock::now();
  json report = base_report("optimize");
  LoadedCircuit lc = load_circuit("circuit", circuit_path);
  report["inputs"].push_back(lc.input);

  const std::size_t n = lc.circuit.num_qubits;
  if (block_size > n) {
    err << "warning: block size " << block_size << " exceeds the " << n
        << "-qubit register; using " << n << "\n";
    block_size = n;
  }
  if (verify && n > kMaxBlockSize) {
    err << "warning: --verify skipped for circuits wider than " << kMaxBlockSize
        << " qubits\n";
  }

  CompileOptions co;
  co.block_size = block_size;
  co.optimizer = parse_optimizer(flags.optimizer);
  co.hyper = flags.hyper;
  co.workers = flags.workers;
  co.fixpoint = fixpoint;
  co.pair_deletion = !no_pair_deletion;
  co.verify = verify;
  if (flags.time_budget) {
    co.time_budget = std::chrono::milliseconds(
        static_cast<std::int64_t>(std::llround(*flags.time_budget * 1000.0)));
  }
  CompileResult cr;
  try {
    cr = optimize_circuit(lc.circuit, co);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const CompileReport& rep = cr.report;

  json parts = json::array();
  for (const auto& p : rep.partitions) {
    parts.push_back({{"qubits", p.qubits},
                     {"gates_before", p.gates_before},
                     {"gates_after", p.gates_after},
                     {"distance_delta", p.delta},
                     {"processed", p.processed}});
  }
  report["optimizer"] = optimizer_name(co.optimizer);
  report["seed"] = rep.seed;
  report["hyperparameters"] = hyper_json(flags.hyper);
  report["block_size"] = block_size;
  report["gate_counts"] = {{"before", counts_json(rep.before)},
                           {"after", counts_json(rep.after)}};
  report["reduction_percent"] = {{"u3", rep.u3_reduction_percent()},
                                 {"cnot", rep.cnot_reduction_percent()}};
  report["partitions"] = parts;
  report["budget_exhausted"] = rep.budget_exhausted;
  report["full_distance_delta"] = rep.full_delta ? json(*rep.full_delta) : json(nullptr);
  report["timings_ms"] = {{"total", elapsed_ms(start)}, {"optimize", rep.wall_ms}};

  out << "partitions: " << rep.partitions.size() << "\n"
      << "gates: " << rep.before.total() << " -> " << rep.after.total() << "\n"
      << "u3 reduction: " << rep.u3_reduction_percent() << "%\n"
      << "cnot reduction: " << rep.cnot_reduction_percent() << "%\n";
  if (rep.full_delta) out << "full_distance_delta: " << *rep.full_delta << "\n";
  if (rep.budget_exhausted) err << "warning: time budget exhausted; result is partial\n";
  if (!out_circuit.empty()) write_atomic(out_circuit, write_qasm(cr.circuit));
  emit_report(report, flags.report_path, out);
  return kExitOk;
}

int cmd_gen(const std::string& family_name, std::size_t qubits, std::size_t depth,
            std::uint64_t seed, const std::string& out_path, const std::string& report_path,
            std::ostream& out) {
  const auto start = Clock::now();
  Circuit c;
  try {
    c = gen_benchmark(parse_benchmark_family(family_name), qubits, depth, seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string text = write_qasm(c);
  if (out_path.empty()) {
    out << text;
  } else {
    write_atomic(out_path, text);
  }
  json report = base_report("gen");
  report["family"] = family_name;
  report["qubits"] = qubits;
  report["depth"] = depth;
  report["seed"] = seed;
  report["output_fnv1a64"] = fnv1a_hex(text);
  report["gate_counts"] = {{"after", counts_json(count_gates(c))}};
  report["timings_ms"] = {{"total", elapsed_ms(start)}};
  if (!report_path.empty()) {
    write_atomic(report_path, report.dump(2) + "\n");
    if (!out_path.empty()) out << "report written to " << report_path << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& path_a, const std::string& path_b,
               const std::string& target_path, double tol, const std::string& report_path,
               std::ostream& out) {
  const auto start = Clock::now();
  if (path_b.empty() == target_path.empty()) {
    throw UsageError("verify needs exactly one of --circuit-b and --target");
  }
  json report = base_report("verify");
  LoadedCircuit a = load_circuit("circuit_a", path_a);
  report["inputs"].push_back(a.input);
  require_dense_width(a.circuit, path_a);
  ComplexMatrix other;
  std::size_t other_qubits = 0;
  if (!path_b.empty()) {
    LoadedCircuit b = load_circuit("circuit_b", path_b);
    report["inputs"].push_back(b.input);
    require_dense_width(b.circuit, path_b);
    other_qubits = b.circuit.num_qubits;
    if (other_qubits == a.circuit.num_qubits) other = circuit_unitary(b.circuit);
  } else {
    other = load_target(target_path, report["inputs"]);
    other_qubits = 0;
    while ((std::size_t{1} << other_qubits) < other.rows()) ++other_qubits;
  }
  if (other_qubits != a.circuit.num_qubits) {
    throw UsageError("qubit-count mismatch: " + std::to_string(a.circuit.num_qubits) +
                     " vs " + std::to_string(other_qubits));
  }
  const ComplexMatrix ua = circuit_unitary(a.circuit);
  const double d = distance_delta(ua, other);
  const double df = distance_delta_f(ua, other);
  const double dp = distance_delta_p(ua, other);
  const double fro = frobenius_norm(ua - other);
  out << "delta: " << d << "\n"
      << "delta_f: " << df << "\n"
      << "delta_p: " << dp << "\n"
      << "frobenius: " << fro << "\n";
  const bool ok = d <= tol;
  report["tolerance"] = tol;
  report["distances"] = {{"delta", d}, {"delta_f", df}, {"delta_p", dp}, {"frobenius", fro}};
  report["equivalent"] = ok;
  report["gate_counts"] = {{"before", counts_json(count_gates(a.circuit))}};
  report["timings_ms"] = {{"total", elapsed_ms(start)}};
  emit_report(report, report_path, out);
  return ok ? kExitOk : kExitNoSuccess;
}

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"unifactor: numerical circuit instantiation and gate-deletion optimisation",
               "unifactor"};
  app.require_subcommand(1);

  RunFlags inst_flags, opt_flags;
  std::string circuit_path, target_spec, out_circuit;

  auto* inst = app.add_subcommand("instantiate", "Fit a circuit's parameters to a target");
  inst->add_option("--circuit", circuit_path, "QASM circuit")->required();
  inst->add_option("--target", target_spec, "umat JSON file, or 'self'")->required();
  inst->add_option("--out-circuit", out_circuit, "Write the instantiated circuit as QASM");
  inst_flags.add_to(inst);

  std::size_t block_size = 3;
  bool verify = false, fixpoint = false, no_pair = false;
  std::string opt_circuit, opt_out_circuit;
  auto* opt = app.add_subcommand("optimize", "Partition and delete redundant gates");
  opt->add_option("--circuit", opt_circuit, "QASM circuit")->required();
  opt->add_option("--block-size", block_size, "Partition width k")
      ->check(CLI::Range(std::size_t{1}, kMaxBlockSize * 64));
  opt->add_option("--out-circuit", opt_out_circuit, "Write the optimised circuit as QASM");
  opt->add_flag("--verify", verify, "Check the full circuit against the original (n <= 8)");
  opt->add_flag("--fixpoint", fixpoint, "Repeat deletion sweeps until nothing changes");
  opt->add_flag("--no-pair-deletion", no_pair, "Only ever remove one gate at a time");
  opt_flags.add_to(opt);

  std::string family;
  std::size_t qubits = 0, depth = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out, gen_report;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark circuit");
  gen->add_option("--family", family, "tfim, qaoa_ring or random")->required();
  gen->add_option("--qubits", qubits, "Register width")->required();
  gen->add_option("--depth", depth, "Layers")->required();
  gen->add_option("--seed", gen_seed, "Seed for angles and random structure");
  gen->add_option("--out", gen_out, "QASM output path (stdout when omitted)");
  gen->add_option("--report", gen_report, "Write the JSON report here");

  std::string path_a, path_b, verify_target, verify_report;
  double tol = 1e-8;
  auto* ver = app.add_subcommand("verify", "Compare two circuits, or a circuit and a unitary");
  ver->add_option("--circuit-a", path_a, "First QASM circuit")->required();
  ver->add_option("--circuit-b", path_b, "Second QASM circuit");
  ver->add_option("--target", verify_target, "umat JSON unitary");
  ver->add_option("--tol", tol, "Equivalence threshold on Delta")->check(CLI::NonNegativeNumber);
  ver->add_option("--out", verify_report, "Write the JSON report here");

  try {
    const std::size_t env_workers = default_workers();
    inst_flags.workers = env_workers;
    opt_flags.workers = env_workers;
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }

    if (inst->parsed()) {
      inst_flags.finish();
      return cmd_instantiate(circuit_path, target_spec, out_circuit, inst_flags, out);
    }
    if (opt->parsed()) {
      opt_flags.finish();
      return cmd_optimize(opt_circuit, block_size, opt_out_circuit, verify, fixpoint, no_pair,
                          opt_flags, out, err);
    }
    if (gen->parsed()) return cmd_gen(family, qubits, depth, gen_seed, gen_out, gen_report, out);
    return cmd_verify(path_a, path_b, verify_target, tol, verify_report, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace unifactor::cli
