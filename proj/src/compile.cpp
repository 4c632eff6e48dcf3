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

#include "unifactor/compile.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "unifactor/baseline.hpp"
#include "unifactor/distance.hpp"
#include "unifactor/multistart.hpp"
#include "unifactor/qfactor.hpp"

namespace unifactor {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Block {
  std::vector<std::size_t> qubits;  // unsorted while open
  std::vector<std::size_t> gates;
  bool open = true;
};

Partition make_partition(const Circuit& parent, Block block, std::size_t boundary) {
  Partition p;
  std::sort(block.qubits.begin(), block.qubits.end());
  std::sort(block.gates.begin(), block.gates.end());
  p.qubit_subset = block.qubits;
  p.gate_indices = block.gates;
  p.boundary = boundary;
  p.local_circuit = Circuit(p.qubit_subset.size());
  for (std::size_t gi : p.gate_indices) {
    LocatedGate g = parent.gates[gi];
    for (auto& q : g.location) {
      q = static_cast<std::size_t>(
          std::lower_bound(p.qubit_subset.begin(), p.qubit_subset.end(), q) -
          p.qubit_subset.begin());
    }
    p.local_circuit.append(std::move(g));
  }
  return p;
}

bool has_optimizable(const Circuit& c) {
  return std::any_of(c.gates.begin(), c.gates.end(),
                     [](const LocatedGate& g) { return g.is_optimizable(); });
}

bool overlaps(const LocatedGate& a, const LocatedGate& b) {
  for (std::size_t q : a.location) {
    if (std::find(b.location.begin(), b.location.end(), q) != b.location.end()) return true;
  }
  return false;
}

Circuit without(const Circuit& c, std::size_t i, std::size_t j = kNone) {
  Circuit out(c.num_qubits);
  for (std::size_t k = 0; k < c.gates.size(); ++k) {
    if (k != i && k != j) out.gates.push_back(c.gates[k]);
  }
  return out;
}

}  // namespace

std::vector<Partition> partition_circuit(const Circuit& circuit, std::size_t k) {
  circuit.validate();
  if (k == 0 || k > kMaxBlockSize) {
    throw std::invalid_argument("block size must be in [1, " + std::to_string(kMaxBlockSize) +
                                "], got " + std::to_string(k));
  }
  for (const auto& g : circuit.gates) {
    if (g.arity() > k) {
      throw std::invalid_argument("block size " + std::to_string(k) +
                                  " is smaller than a " + std::to_string(g.arity()) +
                                  "-qubit gate");
    }
  }

  std::vector<Block> blocks;
  std::vector<std::size_t> owner(circuit.num_qubits, kNone);
  std::vector<Partition> out;

  auto close = [&](std::size_t b) {
    for (std::size_t q : blocks[b].qubits) owner[q] = kNone;
    blocks[b].open = false;
    out.push_back(make_partition(circuit, std::move(blocks[b]), out.size()));
  };
  auto claim = [&](std::size_t b, const std::vector<std::size_t>& qs) {
    for (std::size_t q : qs) {
      if (owner[q] == kNone) {
        owner[q] = b;
        blocks[b].qubits.push_back(q);
      }
    }
  };
  auto open_new = [&](std::size_t gi) {
    blocks.push_back(Block{});
    const std::size_t b = blocks.size() - 1;
    claim(b, circuit.gates[gi].location);
    blocks[b].gates.push_back(gi);
  };

  for (std::size_t gi = 0; gi < circuit.gates.size(); ++gi) {
    const auto& loc = circuit.gates[gi].location;
    std::vector<std::size_t> cands;
    std::size_t free_count = 0;
    for (std::size_t q : loc) {
      if (owner[q] == kNone) {
        ++free_count;
      } else if (std::find(cands.begin(), cands.end(), owner[q]) == cands.end()) {
        cands.push_back(owner[q]);
      }
    }
    std::sort(cands.begin(), cands.end());

    if (cands.empty()) {
      std::size_t target = kNone;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].open && blocks[b].qubits.size() + loc.size() <= k) {
          target = b;
          break;
        }
      }
      if (target == kNone) {
        open_new(gi);
      } else {
        claim(target, loc);
        blocks[target].gates.push_back(gi);
      }
      continue;
    }

    std::size_t union_size = free_count;
    for (std::size_t b : cands) union_size += blocks[b].qubits.size();
    if (union_size <= k) {
      const std::size_t into = cands.front();
      for (std::size_t i = 1; i < cands.size(); ++i) {
        Block& from = blocks[cands[i]];
        for (std::size_t q : from.qubits) owner[q] = into;
        blocks[into].qubits.insert(blocks[into].qubits.end(), from.qubits.begin(),
                                   from.qubits.end());
        blocks[into].gates.insert(blocks[into].gates.end(), from.gates.begin(),
                                  from.gates.end());
        from = Block{{}, {}, false};
      }
      claim(into, loc);
      blocks[into].gates.push_back(gi);
    } else {
      for (std::size_t b : cands) close(b);
      open_new(gi);
    }
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].open) close(b);
  }
  return out;
}

Circuit reassemble(std::span<const Partition> partitions, std::size_t num_qubits) {
  Circuit out(num_qubits);
  for (const auto& p : partitions) {
    if (p.local_circuit.num_qubits != p.qubit_subset.size()) {
      throw std::invalid_argument("reassemble: partition register does not match its subset");
    }
    for (LocatedGate g : p.local_circuit.gates) {
      for (auto& q : g.location) q = p.qubit_subset.at(q);
      out.append(std::move(g));
    }
  }
  return out;
}

std::string_view optimizer_name(Optimizer o) {
  return o == Optimizer::QFactor ? "qfactor" : "lbfgs";
}

Optimizer parse_optimizer(std::string_view name) {
  if (name == "qfactor") return Optimizer::QFactor;
  if (name == "lbfgs") return Optimizer::Lbfgs;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) +
                              "' (expected qfactor or lbfgs)");
}

InstantiationResult instantiate_with(Optimizer optimizer, const Circuit& circuit,
                                     const ComplexMatrix& target, const HyperParams& hyper,
                                     const RunControl& control) {
  if (optimizer == Optimizer::QFactor) {
    return multistart_instantiate(circuit, target, hyper, control);
  }
  BaselineOptions opts;
  opts.hyper = hyper;
  return baseline_instantiate(circuit, target, opts, control);
}

DeletionResult delete_gates_pass(const Partition& partition, const DeletionOptions& opts,
                                 const RunControl& control) {
  opts.hyper.validate();
  if (partition.local_circuit.num_qubits > kMaxBlockSize) {
    throw std::invalid_argument("delete_gates_pass: partition is wider than " +
                                std::to_string(kMaxBlockSize) + " qubits");
  }
  const ComplexMatrix target = circuit_unitary(partition.local_circuit);
  const std::uint64_t base_seed = resolve_seed(opts.hyper);
  const double tol = opts.hyper.dist_tol;

  DeletionResult res;
  res.partition = partition;
  Circuit current = partition.local_circuit;

  // Returns the re-instantiated circuit when `candidate` reaches the target.
  auto try_candidate = [&](const Circuit& candidate) -> std::optional<Circuit> {
    const std::uint64_t attempt = res.attempts++;
    if (!has_optimizable(candidate)) {
      if (distance_delta(circuit_unitary(candidate), target) <= tol) return candidate;
      return std::nullopt;
    }
    HyperParams h = opts.hyper;
    h.seed = splitmix64(base_seed ^ splitmix64(attempt));
    try {
      InstantiationResult r = instantiate_with(opts.optimizer, candidate, target, h, control);
      if (r.distance_delta <= tol) return std::move(r.final_gates);
    } catch (const std::exception&) {
      // the gate stays
    }
    return std::nullopt;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t i = 0;
    while (i < current.gates.size()) {
      if (control.stop_requested()) {
        res.budget_exhausted = true;
        break;
      }
      if (auto next = try_candidate(without(current, i))) {
        current = std::move(*next);
        ++res.deleted;
        changed = true;
        continue;
      }
      const LocatedGate& g = current.gates[i];
      if (opts.pair_deletion && g.kind == GateKind::CNOT) {
        std::size_t j = i + 1;
        while (j < current.gates.size() && !overlaps(g, current.gates[j])) ++j;
        if (j < current.gates.size() && current.gates[j] == g) {
          if (auto next = try_candidate(without(current, i, j))) {
            current = std::move(*next);
            res.deleted += 2;
            changed = true;
            continue;
          }
        }
      }
      ++i;
    }
    if (!opts.fixpoint || res.budget_exhausted) break;
  }

  res.delta = distance_delta(circuit_unitary(current), target);
  res.partition.local_circuit = std::move(current);
  return res;
}

double CompileReport::u3_reduction_percent() const {
  if (before.u3 == 0) return 0.0;
  return 100.0 * (static_cast<double>(before.u3) - static_cast<double>(after.u3)) /
         static_cast<double>(before.u3);
}

double CompileReport::cnot_reduction_percent() const {
  if (before.cnot == 0) return 0.0;
  return 100.0 * (static_cast<double>(before.cnot) - static_cast<double>(after.cnot)) /
         static_cast<double>(before.cnot);
}

CompileResult optimize_circuit(const Circuit& circuit, const CompileOptions& opts,
                               const RunControl& control) {
  const auto start = std::chrono::steady_clock::now();
  opts.hyper.validate();
  std::vector<Partition> parts = partition_circuit(circuit, opts.block_size);

  CompileResult out;
  CompileReport& rep = out.report;
  rep.seed = resolve_seed(opts.hyper);
  rep.before = count_gates(circuit);
  rep.partitions.resize(parts.size());

  RunControl ctl = control;
  if (opts.time_budget) {
    const auto deadline = start + *opts.time_budget;
    ctl.deadline = ctl.deadline ? std::min(*ctl.deadline, deadline) : deadline;
  }

  std::vector<std::optional<DeletionResult>> results(parts.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= parts.size()) return;
      if (ctl.stop_requested()) continue;
      DeletionOptions d;
      d.optimizer = opts.optimizer;
      d.hyper = opts.hyper;
      d.hyper.workers = 1;
      d.hyper.seed = splitmix64(rep.seed + splitmix64(i));
      d.fixpoint = opts.fixpoint;
      d.pair_deletion = opts.pair_deletion;
      try {
        results[i] = delete_gates_pass(parts[i], d, ctl);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t pool = std::min(resolve_workers(opts.workers), std::max<std::size_t>(1, parts.size()));
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  for (std::size_t i = 0; i < parts.size(); ++i) {
    PartitionReport& pr = rep.partitions[i];
    pr.qubits = parts[i].qubit_subset;
    pr.gates_before = parts[i].local_circuit.gates.size();
    if (results[i]) {
      pr.processed = true;
      pr.delta = results[i]->delta;
      rep.budget_exhausted |= results[i]->budget_exhausted;
      parts[i] = std::move(results[i]->partition);
    } else {
      rep.budget_exhausted = true;
    }
    pr.gates_after = parts[i].local_circuit.gates.size();
  }

  out.circuit = reassemble(parts, circuit.num_qubits);
  rep.after = count_gates(out.circuit);
  if (opts.verify && circuit.num_qubits <= kMaxBlockSize) {
    rep.full_delta = distance_delta(circuit_unitary(circuit), circuit_unitary(out.circuit));
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

}  // namespace unifactor
