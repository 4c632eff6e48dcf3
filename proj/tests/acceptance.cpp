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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <json.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "unifactor/baseline.hpp"
#include "unifactor/compile.hpp"
#include "unifactor/distance.hpp"
#include "unifactor/qasm.hpp"
#include "unifactor/qfactor.hpp"

#ifndef UNIFACTOR_BIN
#error "UNIFACTOR_BIN must point at the command-line binary"
#endif
#ifndef UNIFACTOR_DATA_DIR
#error "UNIFACTOR_DATA_DIR must point at tests/data"
#endif

using namespace unifactor;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double re_tr(const ComplexMatrix& env, const ComplexMatrix& u) {
  return oracle::naive_trace(oracle::naive_matmul(env, u)).real();
}

std::vector<ComplexMatrix> gate_unitaries(const Circuit& c) {
  std::vector<ComplexMatrix> out;
  for (const auto& g : c.gates) out.push_back(gate_unitary(g));
  return out;
}

struct Shell {
  int code;
  std::string output;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string("'") + UNIFACTOR_BIN + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "popen failed"};
  std::string output;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. ||U - V||_F^2 against the trace identity.
Outcome cost_identity() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = std::size_t{1} << (1 + i % 4);
    const auto u = oracle::random_unitary(dim, rng);
    const auto v = oracle::random_unitary(dim, rng);
    double direct = 0.0;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) direct += std::norm(u(r, c) - v(r, c));
    const double n = static_cast<double>(dim);
    const double identity = 2.0 * n * (1.0 - oracle::element_hs(v, u).real() / n);
    worst = std::max({worst, std::abs(direct - identity), std::abs(direct - frob_cost(u, v))});
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 5.0,
          "max error " + fmt("%.2e", worst) + ", " + fmt("%.2f", secs) + " s"};
}

// 2. The SVD update beats random unitaries and attains the singular-value sum.
Outcome local_update_optimality() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1002);
  double worst_margin = 1e300, worst_sum = 0.0;
  const std::size_t dims[] = {2, 4, 8};
  for (int i = 0; i < 100; ++i) {
    const std::size_t dim = dims[i % 3];
    const std::size_t m = dim == 2 ? 1 : dim == 4 ? 2 : 3;
    std::vector<std::size_t> loc(m);
    for (std::size_t q = 0; q < m; ++q) loc[q] = q;
    const auto env = oracle::random_matrix(dim, dim, rng);
    const auto gate = LocatedGate::variable(ComplexMatrix::identity(dim), loc);
    const auto best = optimize_gate(gate, gate.matrix, env, 0.0);
    const double got = re_tr(env, best);
    for (int j = 0; j < 1000; ++j) {
      worst_margin = std::min(worst_margin, got - re_tr(env, oracle::random_unitary(dim, rng)));
    }
    double sum = 0.0;
    for (double s : complex_svd(env).singular) sum += s;
    worst_sum = std::max(worst_sum, std::abs(got - sum));
  }
  const double secs = seconds_since(t0);
  return {worst_margin >= -1e-10 && worst_sum <= 1e-8 && secs < 30.0,
          "min margin " + fmt("%.3g", worst_margin) + ", max |value - sum D| " +
              fmt("%.2e", worst_sum) + ", " + fmt("%.2f", secs) + " s"};
}

// 3. Every gate environment reproduces the dense global trace.
Outcome environment_correctness() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t gates = 1 + rng() % 20;
    const Circuit c = oracle::random_circuit(3, gates, rng, true, true);
    const auto target = oracle::random_unitary(8, rng);
    const cplx expected = oracle::element_hs(target, oracle::dense_circuit_unitary(c));
    auto units = gate_unitaries(c);
    auto ct = init_circuit_tensor(target, c, units);
    for (std::size_t k = c.gates.size(); k-- > 0;) {
      ct.apply_left(units[k], c.gates[k].location, true);
      const auto env = ct.env_matrix(c.gates[k].location);
      worst = std::max(worst, std::abs(oracle::naive_trace(oracle::naive_matmul(env, units[k])) -
                                       expected));
      ct.apply_right(units[k], c.gates[k].location);
    }
  }
  return {worst <= 1e-9, "max deviation " + fmt("%.2e", worst)};
}

// Largest decrease of Re Tr(V^dagger U) over `sweeps` sweeps.
double worst_decrease(const Circuit& c, const ComplexMatrix& target, std::uint64_t seed,
                      double beta, int sweeps) {
  auto units = gate_unitaries(random_init(c, seed));
  auto ct = init_circuit_tensor(target, c, units);
  double prev = ct.trace_all().real(), worst = 0.0;
  for (int s = 0; s < sweeps; ++s) {
    two_sided_sweep(ct, c, units, beta);
    const double cur = ct.trace_all().real();
    worst = std::max(worst, prev - cur);
    prev = cur;
  }
  return worst;
}

// 4. beta = 0 sweeps never lower the real trace.
Outcome sweep_monotonicity() {
  std::mt19937_64 rng(1004);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const Circuit c = oracle::random_circuit(3, 15, rng, true, rep % 4 == 0);
    worst = std::max(worst, worst_decrease(c, oracle::random_unitary(8, rng), rep, 0.0, 100));
  }
  return {worst <= 1e-9, "largest decrease " + fmt("%.2e", worst)};
}

// 5. Self-instantiation success rate on random 3-qubit circuits.
Outcome self_instantiation_rate() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1005);
  int ok = 0;
  const int total = 50;
  for (int rep = 0; rep < total; ++rep) {
    const std::size_t gates = 10 + rng() % 21;
    const Circuit c = oracle::random_circuit(3, gates, rng);
    HyperParams h;
    h.seed = 5000 + 16 * static_cast<std::uint64_t>(rep);
    const auto r = multistart_instantiate(c, circuit_unitary(c), h);
    ok += r.termination == Termination::DistTol && r.distance_delta <= 1e-10;
  }
  const double rate = static_cast<double>(ok) / total;
  const double secs = seconds_since(t0);
  return {rate >= 0.90 && secs < 120.0, std::to_string(ok) + "/" + std::to_string(total) +
                                            " succeeded, " + fmt("%.2f", secs) + " s"};
}

// 6. Closed-form RZ angle against a dense grid.
Outcome rz_update() {
  std::mt19937_64 rng(1006);
  double worst = 1e300;
  for (int rep = 0; rep < 100; ++rep) {
    const auto env = oracle::random_matrix(2, 2, rng);
    const auto u = optimize_gate(LocatedGate::rz(0, 0.0), rz_matrix(0.0), env, 0.0);
    const double got = re_tr(env, u);
    for (int i = 0; i < 10000; ++i) {
      const double th = -std::numbers::pi + 2.0 * std::numbers::pi * i / 10000.0;
      worst = std::min(worst, got - re_tr(env, rz_matrix(th)));
    }
  }
  return {worst >= -1e-9, "min margin over grid " + fmt("%.3g", worst)};
}

// 7. Analytic baseline gradient against central differences.
Outcome baseline_gradient() {
  std::mt19937_64 rng(1007);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  double worst = 0.0;
  int pairs = 0;
  while (pairs < 200) {
    const std::size_t n = 1 + pairs % 3;
    const Circuit c = oracle::random_circuit(n, 3 + rng() % 10, rng);
    if (c.num_params() == 0) continue;
    const auto target = oracle::random_unitary(std::size_t{1} << n, rng);
    std::vector<double> x(c.num_params());
    for (auto& v : x) v = ang(rng);
    const auto g = cost_and_grad(c, x, target).grad;
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double fd = oracle::central_difference(
          [&](double v) {
            auto y = x;
            y[i] = v;
            return cost_and_grad(c, y, target).cost;
          },
          x[i]);
      diff += (g[i] - fd) * (g[i] - fd);
      norm += fd * fd;
    }
    worst = std::max(worst, std::sqrt(diff) / std::max(std::sqrt(norm), 1e-300));
    ++pairs;
  }
  return {worst <= 1e-5, "max relative error " + fmt("%.2e", worst)};
}

// 8. beta = 1 freezes every gate; beta = 0.5 stays monotone.
Outcome beta_semantics() {
  std::mt19937_64 rng(1008);
  double moved = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const Circuit c = oracle::random_circuit(3, 12, rng, true, true);
    auto units = gate_unitaries(c);
    const auto before = units;
    auto ct = init_circuit_tensor(oracle::random_unitary(8, rng), c, units);
    two_sided_sweep(ct, c, units, 1.0);
    for (std::size_t k = 0; k < units.size(); ++k)
      moved = std::max(moved, max_abs_diff(units[k], before[k]));
  }
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const Circuit c = oracle::random_circuit(3, 12, rng, true, rep % 3 == 0);
    worst = std::max(worst, worst_decrease(c, oracle::random_unitary(8, rng), 70 + rep, 0.5, 100));
  }
  return {moved <= 1e-10 && worst <= 1e-8, "beta=1 max change " + fmt("%.2e", moved) +
                                               ", beta=0.5 largest decrease " +
                                               fmt("%.2e", worst)};
}

// 9. Rebuilding the tensor every sweep does not change the outcome.
Outcome reset_stability() {
  std::mt19937_64 rng(1009);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const Circuit c = oracle::random_circuit(3, 10 + rep, rng);
    const Circuit start = random_init(c, 900 + rep);
    const auto target = circuit_unitary(c);
    HyperParams a, b;
    a.reset_iter = 1;
    b.reset_iter = 40;
    const double da = qfactor_instantiate(start, target, a).distance_delta;
    const double db = qfactor_instantiate(start, target, b).distance_delta;
    worst = std::max(worst, std::abs(da - db));
  }
  return {worst <= 1e-8, "max final Delta gap " + fmt("%.2e", worst)};
}

// 10. Partition + deletion + reassembly preserves the unitary.
Outcome compile_flow() {
  std::vector<std::pair<std::string, Circuit>> suite = {
      {"tfim(4,2)", gen_benchmark(BenchmarkFamily::Tfim, 4, 2, 1)},
      {"tfim(6,2)", gen_benchmark(BenchmarkFamily::Tfim, 6, 2, 2)},
      {"tfim(8,2)", gen_benchmark(BenchmarkFamily::Tfim, 8, 2, 3)},
      {"qaoa_ring(3,2)", gen_benchmark(BenchmarkFamily::QaoaRing, 3, 2, 4)},
      {"qaoa_ring(5,1)", gen_benchmark(BenchmarkFamily::QaoaRing, 5, 1, 5)},
      {"qaoa_ring(8,1)", gen_benchmark(BenchmarkFamily::QaoaRing, 8, 1, 6)},
      {"random(4,10)", gen_benchmark(BenchmarkFamily::Random, 4, 10, 7)},
      {"random(6,8)", gen_benchmark(BenchmarkFamily::Random, 6, 8, 8)},
      {"random(8,5)", gen_benchmark(BenchmarkFamily::Random, 8, 5, 9)},
  };
  {
    const Circuit base = gen_benchmark(BenchmarkFamily::Random, 5, 6, 10);
    Circuit c(5);
    for (std::size_t i = 0; i < base.gates.size(); ++i) {
      if (i == base.gates.size() / 2) {
        c.append(LocatedGate::cnot(1, 2)).append(LocatedGate::cnot(1, 2));
      }
      c.append(base.gates[i]);
    }
    suite.emplace_back("random(5,6)+cancelling cx pair", c);
  }
  bool ok = true, saw_cancellation = false;
  std::string worst_name;
  double worst_ratio = 0.0;
  std::size_t deleted_total = 0;
  for (const auto& [name, c] : suite) {
    CompileOptions o;
    o.block_size = 3;
    o.hyper.seed = 77;
    const auto r = optimize_circuit(c, o);
    const double budget = static_cast<double>(r.report.partitions.size()) * o.hyper.dist_tol;
    if (!r.report.full_delta || *r.report.full_delta > budget) {
      ok = false;
      std::cout << "  " << name << ": full Delta "
                << (r.report.full_delta ? *r.report.full_delta : -1.0) << " over budget "
                << budget << "\n";
    }
    if (r.report.full_delta && budget > 0.0) {
      const double ratio = *r.report.full_delta / budget;
      if (ratio >= worst_ratio) worst_ratio = ratio, worst_name = name;
    }
    const std::size_t before = r.report.before.u3 + r.report.before.cnot;
    const std::size_t after = r.report.after.u3 + r.report.after.cnot;
    if (after > before) ok = false;
    deleted_total += r.report.before.total() - r.report.after.total();
    if (name.find("cancelling") != std::string::npos &&
        r.report.before.total() - r.report.after.total() >= 2) {
      saw_cancellation = true;
    }
  }
  return {ok && saw_cancellation,
          std::to_string(suite.size()) + " circuits, " + std::to_string(deleted_total) +
              " gates deleted, worst Delta/budget " + fmt("%.3g", worst_ratio) + " (" +
              worst_name + "), cancellation " + (saw_cancellation ? "seen" : "missing")};
}

// 11. Parser corpus round trips; malformed files fail with distinct messages.
Outcome parser_corpus(const fs::path& tmp) {
  std::mt19937_64 rng(1011);
  int roundtrips = 0, failures = 0;
  auto roundtrip = [&](const fs::path& file) {
    try {
      const Circuit first = parse_qasm(slurp(file));
      const Circuit second = parse_qasm(write_qasm(first));
      if (first == second) {
        ++roundtrips;
        return;
      }
    } catch (const std::exception& e) {
      std::cout << "  " << file.filename().string() << ": " << e.what() << "\n";
    }
    ++failures;
  };
  for (int i = 0; i < 100; ++i) {
    Circuit c;
    if (i % 2 == 0) {
      c = gen_benchmark(static_cast<BenchmarkFamily>(i % 3), 2 + i % 7, 1 + i % 3,
                        static_cast<std::uint64_t>(i));
    } else {
      c = oracle::random_circuit(1 + i % 8, 1 + i % 40, rng);
    }
    const fs::path file = tmp / ("gen" + std::to_string(i) + ".qasm");
    std::ofstream(file) << write_qasm(c);
    roundtrip(file);
  }
  const fs::path data = UNIFACTOR_DATA_DIR;
  int hand = 0;
  for (const auto& entry : fs::directory_iterator(data / "qasm" / "valid")) {
    roundtrip(entry.path());
    ++hand;
  }
  std::set<std::string> diagnostics;
  int malformed = 0, bad_exit = 0;
  for (const auto& entry : fs::directory_iterator(data / "qasm" / "malformed")) {
    const std::string p = entry.path().string();
    const Shell s = shell("verify --circuit-a '" + p + "' --circuit-b '" + p + "'");
    ++malformed;
    if (s.code != 1) ++bad_exit;
    // compare the message itself, not the file name in front of it
    std::string msg = s.output;
    if (const auto at = msg.find(p); at != std::string::npos) msg.erase(0, at + p.size());
    diagnostics.insert(msg);
  }
  const bool pass = roundtrips == 100 + hand && hand == 10 && failures == 0 && malformed == 10 &&
                    bad_exit == 0 && diagnostics.size() == 10;
  return {pass, std::to_string(roundtrips) + " round trips (" + std::to_string(hand) +
                    " hand-written), " + std::to_string(diagnostics.size()) +
                    " distinct diagnostics from " + std::to_string(malformed) +
                    " malformed files, " + std::to_string(bad_exit) + " wrong exit codes"};
}

// 12. Reports are identical across repeated runs with a fixed seed.
Outcome cli_determinism(const fs::path& tmp) {
  const std::string circ = (tmp / "det.qasm").string();
  const std::string target = (tmp / "det_target.json").string();
  std::ofstream(target) << R"({"n": 1, "re": [[0, 1], [1, 0]], "im": [[0, 0], [0, 0]]})";
  const std::string one = (tmp / "det_one.qasm").string();
  std::ofstream(one) << "OPENQASM 2.0;\nqreg q[1];\nu3(0.1,0.2,0.3) q[0];\n";
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen", "gen --family qaoa_ring --qubits 4 --depth 2 --seed 3 --out '" + circ +
                  "' --report"},
      {"instantiate", "instantiate --circuit '" + circ + "' --target self --seed 4 --out"},
      {"instantiate lbfgs", "instantiate --circuit '" + one + "' --target '" + target +
                                "' --optimizer lbfgs --seed 5 --out"},
      {"optimize", "optimize --circuit '" + circ + "' --block-size 3 --seed 6 --verify --out"},
      {"verify", "verify --circuit-a '" + circ + "' --circuit-b '" + circ + "' --out"},
  };
  int same = 0;
  std::string detail;
  for (const auto& [name, args] : commands) {
    std::vector<nlohmann::json> reports;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path report = tmp / ("report_" + std::to_string(rep) + ".json");
      const Shell s = shell(args + " '" + report.string() + "'");
      if (s.code != 0 && s.code != 2) {
        detail += " " + name + " exited " + std::to_string(s.code) + ";";
        break;
      }
      auto j = nlohmann::json::parse(slurp(report));
      j.erase("timings_ms");
      reports.push_back(std::move(j));
    }
    if (reports.size() == 2 && reports[0] == reports[1]) {
      ++same;
    } else {
      detail += " " + name + " differs;";
    }
  }
  return {same == static_cast<int>(commands.size()),
          std::to_string(same) + "/" + std::to_string(commands.size()) +
              " commands reproducible" + detail};
}

}  // namespace

int main() {
  const fs::path tmp = fs::temp_directory_path() / "unifactor_acceptance";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cost identity", cost_identity},
      {"local update optimality", local_update_optimality},
      {"environment correctness", environment_correctness},
      {"sweep monotonicity", sweep_monotonicity},
      {"self-instantiation success rate", self_instantiation_rate},
      {"RZ analytic update", rz_update},
      {"baseline gradient", baseline_gradient},
      {"beta semantics", beta_semantics},
      {"reset stability", reset_stability},
      {"compile flow semantic preservation", compile_flow},
      {"parser corpus", [&] { return parser_corpus(tmp); }},
      {"CLI determinism", [&] { return cli_determinism(tmp); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": "
              << criteria[i].first << " - " << o.detail << std::endl;
  }
  fs::remove_all(tmp);
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
