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

#include "unifactor/circuit.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "local_layout.hpp"

namespace unifactor {

namespace {

constexpr double kPi = std::numbers::pi;

void require_params(const LocatedGate& g) {
  if (g.params.size() != param_count(g.kind)) {
    throw std::invalid_argument(std::string(gate_kind_name(g.kind)) +
                                " expects " +
                                std::to_string(param_count(g.kind)) +
                                " parameters, got " +
                                std::to_string(g.params.size()));
  }
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::U3: return "u3";
    case GateKind::RZ: return "rz";
    case GateKind::CNOT: return "cx";
    case GateKind::ConstantUnitary: return "constant";
    case GateKind::VariableUnitary: return "variable";
  }
  return "?";
}

std::size_t param_count(GateKind kind) {
  switch (kind) {
    case GateKind::U3: return 3;
    case GateKind::RZ: return 1;
    default: return 0;
  }
}

LocatedGate LocatedGate::u3(std::size_t q, double theta, double phi,
                            double lambda) {
  return {GateKind::U3, {q}, {theta, phi, lambda}, {}};
}

LocatedGate LocatedGate::rz(std::size_t q, double theta) {
  return {GateKind::RZ, {q}, {theta}, {}};
}

LocatedGate LocatedGate::cnot(std::size_t control, std::size_t target) {
  return {GateKind::CNOT, {control, target}, {}, {}};
}

LocatedGate LocatedGate::constant(ComplexMatrix u,
                                  std::vector<std::size_t> location) {
  return {GateKind::ConstantUnitary, std::move(location), {}, std::move(u)};
}

LocatedGate LocatedGate::variable(ComplexMatrix u,
                                  std::vector<std::size_t> location) {
  return {GateKind::VariableUnitary, std::move(location), {}, std::move(u)};
}

Circuit& Circuit::append(LocatedGate g) {
  detail::check_location(g.location, num_qubits);
  gates.push_back(std::move(g));
  return *this;
}

std::size_t Circuit::num_params() const {
  std::size_t k = 0;
  for (const auto& g : gates) k += param_count(g.kind);
  return k;
}

std::vector<double> Circuit::params() const {
  std::vector<double> out;
  out.reserve(num_params());
  for (const auto& g : gates) out.insert(out.end(), g.params.begin(), g.params.end());
  return out;
}

void Circuit::set_params(std::span<const double> values) {
  if (values.size() != num_params()) {
    throw std::invalid_argument("set_params: expected " +
                                std::to_string(num_params()) + " values, got " +
                                std::to_string(values.size()));
  }
  std::size_t at = 0;
  for (auto& g : gates) {
    for (auto& p : g.params) p = values[at++];
  }
}

void Circuit::validate() const {
  for (const auto& g : gates) {
    detail::check_location(g.location, num_qubits);
    require_params(g);
    const std::size_t expected_arity =
        g.kind == GateKind::CNOT ? 2 : (g.is_parameterized() ? 1 : g.arity());
    if (g.arity() != expected_arity || g.arity() == 0) {
      throw std::invalid_argument(std::string(gate_kind_name(g.kind)) +
                                  " has wrong arity " + std::to_string(g.arity()));
    }
    if (g.kind == GateKind::ConstantUnitary || g.kind == GateKind::VariableUnitary) {
      const std::size_t dim = std::size_t{1} << g.arity();
      if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
        throw std::invalid_argument("unitary gate matrix does not match its location");
      }
    }
  }
}

GateCounts count_gates(const Circuit& c) {
  GateCounts counts;
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::U3: ++counts.u3; break;
      case GateKind::CNOT: ++counts.cnot; break;
      case GateKind::RZ: ++counts.rz; break;
      default: ++counts.other; break;
    }
  }
  return counts;
}

ComplexMatrix u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {{c, -std::polar(s, lambda)},
          {std::polar(s, phi), std::polar(c, phi + lambda)}};
}

ComplexMatrix rz_matrix(double theta) {
  return {{1.0, 0.0}, {0.0, std::polar(1.0, theta)}};
}

ComplexMatrix cnot_matrix() {
  return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
}

ComplexMatrix gate_unitary(const LocatedGate& g) {
  require_params(g);
  switch (g.kind) {
    case GateKind::U3: return u3_matrix(g.params[0], g.params[1], g.params[2]);
    case GateKind::RZ: return rz_matrix(g.params[0]);
    case GateKind::CNOT: return cnot_matrix();
    case GateKind::ConstantUnitary:
    case GateKind::VariableUnitary: return g.matrix;
  }
  throw std::logic_error("gate_unitary: unknown kind");
}

std::vector<ComplexMatrix> gate_grad(const LocatedGate& g) {
  require_params(g);
  const cplx i{0.0, 1.0};
  if (g.kind == GateKind::RZ) {
    return {ComplexMatrix{{0.0, 0.0}, {0.0, i * std::polar(1.0, g.params[0])}}};
  }
  if (g.kind != GateKind::U3) {
    throw std::invalid_argument("gate_grad: " + std::string(gate_kind_name(g.kind)) +
                                " has no parameters");
  }
  const double theta = g.params[0];
  const double phi = g.params[1];
  const double lambda = g.params[2];
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const cplx el = std::polar(1.0, lambda);
  const cplx ep = std::polar(1.0, phi);
  const cplx epl = std::polar(1.0, phi + lambda);
  return {
      ComplexMatrix{{-s / 2.0, -el * c / 2.0}, {ep * c / 2.0, -epl * s / 2.0}},
      ComplexMatrix{{0.0, 0.0}, {i * ep * s, i * epl * c}},
      ComplexMatrix{{0.0, -i * el * s}, {0.0, i * epl * c}},
  };
}

ComplexMatrix expand_to_n_qubits(const ComplexMatrix& u,
                                 std::span<const std::size_t> location,
                                 std::size_t n) {
  detail::check_location(location, n);
  const std::size_t m = location.size();
  if (u.rows() != (std::size_t{1} << m) || !u.is_square()) {
    throw DimensionError("expand_to_n_qubits: matrix does not match location");
  }
  const std::size_t dim = std::size_t{1} << n;
  std::size_t mask = 0;
  for (auto q : location) mask |= detail::qubit_bit(q, n);
  auto local_index = [&](std::size_t idx) {
    std::size_t a = 0;
    for (std::size_t k = 0; k < m; ++k) {
      a = (a << 1) | ((idx & detail::qubit_bit(location[k], n)) ? 1 : 0);
    }
    return a;
  };
  ComplexMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      out(r, c) = u(local_index(r), local_index(c));
    }
  }
  return out;
}

ComplexMatrix circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.num_qubits;
  ComplexMatrix out = ComplexMatrix::identity(dim);
  std::vector<cplx> gathered;
  for (const auto& g : c.gates) {
    const ComplexMatrix u = gate_unitary(g);
    const auto layout = detail::make_layout(g.location, c.num_qubits);
    const std::size_t local = layout.offsets.size();
    gathered.resize(local);
    for (std::size_t col = 0; col < dim; ++col) {
      for (const std::size_t base : layout.rest) {
        for (std::size_t a = 0; a < local; ++a)
          gathered[a] = out(base + layout.offsets[a], col);
        for (std::size_t a = 0; a < local; ++a) {
          cplx s = 0.0;
          for (std::size_t b = 0; b < local; ++b) s += u(a, b) * gathered[b];
          out(base + layout.offsets[a], col) = s;
        }
      }
    }
  }
  return out;
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

U3Angles unitary_to_u3(const ComplexMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u, 1e-9)) {
    throw std::invalid_argument("unitary_to_u3: input is not a 2x2 unitary");
  }
  const double cos_half = std::abs(u(0, 0));
  const double sin_half = std::abs(u(1, 0));
  U3Angles out;
  out.theta = 2.0 * std::atan2(sin_half, cos_half);
  // The phase of u00 fixes the global phase; it is ill-conditioned when
  // cos(theta/2) is small, but then it only enters entries of that size.
  const double g = std::arg(u(0, 0));
  if (sin_half >= cos_half) {
    out.phi = std::arg(u(1, 0)) - g;
    out.lambda = std::arg(-u(0, 1)) - g;
  } else {
    out.phi = sin_half > 0.0 ? std::arg(u(1, 0)) - g : 0.0;
    const double sum = std::arg(u(1, 1)) - g;
    out.lambda = sum - out.phi;
  }
  out.global_phase = wrap_angle(g);
  out.phi = wrap_angle(out.phi);
  out.lambda = wrap_angle(out.lambda);
  return out;
}

BenchmarkFamily parse_benchmark_family(std::string_view name) {
  if (name == "tfim") return BenchmarkFamily::Tfim;
  if (name == "qaoa_ring") return BenchmarkFamily::QaoaRing;
  if (name == "random") return BenchmarkFamily::Random;
  throw std::invalid_argument("unknown benchmark family '" + std::string(name) +
                              "' (expected tfim, qaoa_ring or random)");
}

std::size_t benchmark_gate_count(BenchmarkFamily family, std::size_t n,
                                 std::size_t depth) {
  switch (family) {
    case BenchmarkFamily::Tfim: return depth * (4 * n - 3);
    case BenchmarkFamily::QaoaRing: {
      const std::size_t edges = n > 2 ? n : 1;
      return n + depth * (3 * edges + n);
    }
    case BenchmarkFamily::Random: return depth * n;
  }
  return 0;
}

Circuit gen_benchmark(BenchmarkFamily family, std::size_t n, std::size_t depth,
                      std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_benchmark: need at least 2 qubits");
  if (depth < 1) throw std::invalid_argument("gen_benchmark: depth must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  Circuit c(n);
  auto coupling = [&](std::size_t a, std::size_t b, double theta) {
    c.append(LocatedGate::cnot(a, b));
    c.append(LocatedGate::rz(b, theta));
    c.append(LocatedGate::cnot(a, b));
  };
  switch (family) {
    case BenchmarkFamily::Tfim:
      for (std::size_t layer = 0; layer < depth; ++layer) {
        for (std::size_t q = 0; q < n; ++q) {
          const double t = angle(rng), p = angle(rng), l = angle(rng);
          c.append(LocatedGate::u3(q, t, p, l));
        }
        for (std::size_t q = 0; q + 1 < n; ++q) coupling(q, q + 1, angle(rng));
      }
      break;
    case BenchmarkFamily::QaoaRing: {
      for (std::size_t q = 0; q < n; ++q)
        c.append(LocatedGate::u3(q, kPi / 2.0, 0.0, kPi));
      const std::size_t edges = n > 2 ? n : 1;
      for (std::size_t layer = 0; layer < depth; ++layer) {
        const double gamma = angle(rng);
        const double beta = angle(rng);
        for (std::size_t e = 0; e < edges; ++e) coupling(e, (e + 1) % n, gamma);
        for (std::size_t q = 0; q < n; ++q)
          c.append(LocatedGate::u3(q, beta, -kPi / 2.0, kPi / 2.0));
      }
      break;
    }
    case BenchmarkFamily::Random: {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      std::bernoulli_distribution coin(0.5);
      for (std::size_t i = 0; i < depth * n; ++i) {
        if (coin(rng)) {
          const std::size_t q = pick(rng);
          const double t = angle(rng), p = angle(rng), l = angle(rng);
          c.append(LocatedGate::u3(q, t, p, l));
        } else {
          const std::size_t a = pick(rng);
          std::size_t b = pick(rng);
          while (b == a) b = pick(rng);
          c.append(LocatedGate::cnot(a, b));
        }
      }
      break;
    }
  }
  return c;
}

}  // namespace unifactor
