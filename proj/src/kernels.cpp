// Copyright 2026 The qboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qboost/kernels.hpp"

#include "qboost/parallel.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <type_traits>

namespace qboost::kernels {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline cplx phase_at(const PauliMasks& m, std::uint64_t b) {
  return (std::popcount(b & m.z) & 1) ? -m.phase : m.phase;
}

inline std::uint64_t highest_bit(std::uint64_t x) { return std::uint64_t{1} << (63 - std::countl_zero(x)); }

// Offsets of the 2^k local basis states over `bits`.
template <class Container>
void local_offsets(std::span<const int> bits, Container& off) {
  const std::size_t k = bits.size();
  for (std::size_t j = 0; j < (std::size_t{1} << k); ++j) {
    std::uint64_t o = 0;
    for (std::size_t t = 0; t < k; ++t)
      if ((j >> (k - 1 - t)) & 1U) o |= std::uint64_t{1} << bits[t];
    off[j] = o;
  }
}

std::uint64_t mask_of(std::span<const int> bits) {
  std::uint64_t m = 0;
  for (int b : bits) m |= std::uint64_t{1} << b;
  return m;
}

Matrix pauli_rotation_local(char axis, double angle) {
  return pauli_rotation_matrix(PauliString(std::string(1, axis)), angle);
}

LocalOp make_local(std::vector<int> bits, Matrix u) {
  Matrix adj = u.adjoint();
  return LocalOp{std::move(bits), std::move(u), std::move(adj)};
}

Matrix observable(const MeasurementSpec& meas, std::span<const double> w) {
  const Matrix& p0 = meas.projectors().front();
  Matrix obs = Matrix::Zero(p0.rows(), p0.cols());
  for (std::size_t d = 0; d < meas.projectors().size(); ++d) obs += w[d] * meas.projectors()[d];
  return obs;
}

std::vector<int> measured_bits(const MeasurementSpec& meas, int n) {
  std::vector<int> bits;
  for (int q : meas.measured_qubits()) {
    if (q < 0 || q >= n) throw DomainError("measured qubit out of range");
    bits.push_back(bit_of(q, n));
  }
  return bits;
}

std::vector<cplx> to_density_buffer(const QuantumInput& input) {
  if (const auto* psi = std::get_if<StateVector>(&input)) {
    const std::size_t d = psi->dim();
    std::vector<cplx> rho(d * d);
    const Vector& a = psi->amplitudes();
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r)
        rho[r + c * d] = a[static_cast<Eigen::Index>(r)] * std::conj(a[static_cast<Eigen::Index>(c)]);
    return rho;
  }
  const Matrix& m = std::get<DensityMatrix>(input).matrix();
  return std::vector<cplx>(m.data(), m.data() + m.size());
}

int input_qubits(const QuantumInput& input) {
  return std::visit([](const auto& s) { return s.num_qubits(); }, input);
}

}  // namespace

PauliMasks pauli_masks(const PauliString& p, int start_qubit, int num_qubits) {
  PauliMasks m;
  for (int i = 0; i < p.length(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << bit_of(start_qubit + i, num_qubits);
    switch (p.letters()[static_cast<std::size_t>(i)]) {
      case 'X': m.x |= bit; break;
      case 'Y':
        m.x |= bit;
        m.z |= bit;
        m.phase *= cplx(0, 1);
        break;
      case 'Z': m.z |= bit; break;
      default: break;
    }
  }
  return m;
}

PauliMasks column_masks(const PauliMasks& m, int num_qubits) {
  return PauliMasks{m.x << num_qubits, m.z << num_qubits, std::conj(m.phase)};
}

void rotate(cplx* v, int nbits, const PauliMasks& m, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const std::uint64_t size = std::uint64_t{1} << nbits;
  const cplx mis = cplx(0, -s) * m.phase;  // -i sin * phase
  if (m.x == 0) {
    const cplx plus = c + mis, minus = c - mis;
    for (std::uint64_t b = 0; b < size; ++b) v[b] *= (std::popcount(b & m.z) & 1) ? minus : plus;
    return;
  }
  const std::uint64_t hb = highest_bit(m.x);
  for (std::uint64_t hi = 0; hi < size; hi += 2 * hb)
    for (std::uint64_t b = hi; b < hi + hb; ++b) {
      const std::uint64_t b2 = b ^ m.x;
      const cplx a = v[b], a2 = v[b2];
      const cplx t_b = (std::popcount(b2 & m.z) & 1) ? -mis : mis;
      const cplx t_b2 = (std::popcount(b & m.z) & 1) ? -mis : mis;
      v[b] = c * a + t_b * a2;
      v[b2] = c * a2 + t_b2 * a;
    }
}

cplx pauli_overlap(const cplx* u, const cplx* v, int nbits, const PauliMasks& m, std::uint64_t filter_mask,
                   std::uint64_t filter_value) {
  const std::uint64_t size = std::uint64_t{1} << nbits;
  cplx acc = 0.0;
  for (std::uint64_t b = 0; b < size; ++b) {
    if ((b & filter_mask) != filter_value) continue;
    const std::uint64_t src = b ^ m.x;
    acc += std::conj(u[b]) * phase_at(m, src) * v[src];
  }
  return acc;
}

void apply_local(cplx* v, int nbits, std::span<const int> bits, const Matrix& u) {
  const std::size_t k = bits.size();
  const std::size_t dl = std::size_t{1} << k;
  if (static_cast<std::size_t>(u.rows()) != dl) throw DimensionError("apply_local: matrix size");
  const std::uint64_t size = std::uint64_t{1} << nbits;
  const std::uint64_t tmask = mask_of(bits);
  if (k <= 4) {
    std::array<std::uint64_t, 16> off{};
    std::array<cplx, 16> g{};
    local_offsets(bits, off);
    for (std::uint64_t b = 0; b < size; ++b) {
      if (b & tmask) continue;
      for (std::size_t j = 0; j < dl; ++j) g[j] = v[b | off[j]];
      for (std::size_t i = 0; i < dl; ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < dl; ++j) acc += u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * g[j];
        v[b | off[i]] = acc;
      }
    }
    return;
  }
  std::vector<std::uint64_t> off(dl);
  local_offsets(bits, off);
  Vector g(static_cast<Eigen::Index>(dl));
  for (std::uint64_t b = 0; b < size; ++b) {
    if (b & tmask) continue;
    for (std::size_t j = 0; j < dl; ++j) g[static_cast<Eigen::Index>(j)] = v[b | off[j]];
    const Vector r = u * g;
    for (std::size_t i = 0; i < dl; ++i) v[b | off[i]] = r[static_cast<Eigen::Index>(i)];
  }
}

void dm_rotate(cplx* rho, int n, const PauliMasks& m, double angle) {
  rotate(rho, 2 * n, m, angle);
  rotate(rho, 2 * n, column_masks(m, n), -angle);
}

void dm_local(cplx* rho, int n, std::span<const int> bits, const Matrix& u) {
  apply_local(rho, 2 * n, bits, u);
  std::array<int, 16> shifted{};
  std::vector<int> big;
  std::span<const int> col_bits;
  if (bits.size() <= shifted.size()) {
    for (std::size_t i = 0; i < bits.size(); ++i) shifted[i] = bits[i] + n;
    col_bits = std::span<const int>(shifted.data(), bits.size());
  } else {
    for (int b : bits) big.push_back(b + n);
    col_bits = big;
  }
  apply_local(rho, 2 * n, col_bits, u.conjugate());
}

void dm_superop(cplx* rho, int n, int bit, const Matrix4& s) {
  const std::uint64_t d = std::uint64_t{1} << n;
  const std::uint64_t mb = std::uint64_t{1} << bit;
  for (std::uint64_t c0 = 0; c0 < d; ++c0) {
    if (c0 & mb) continue;
    const std::uint64_t c1 = c0 | mb;
    for (std::uint64_t r0 = 0; r0 < d; ++r0) {
      if (r0 & mb) continue;
      const std::uint64_t r1 = r0 | mb;
      cplx* p00 = rho + r0 + c0 * d;
      cplx* p01 = rho + r0 + c1 * d;
      cplx* p10 = rho + r1 + c0 * d;
      cplx* p11 = rho + r1 + c1 * d;
      const cplx v0 = *p00, v1 = *p01, v2 = *p10, v3 = *p11;
      *p00 = s(0, 0) * v0 + s(0, 1) * v1 + s(0, 2) * v2 + s(0, 3) * v3;
      *p01 = s(1, 0) * v0 + s(1, 1) * v1 + s(1, 2) * v2 + s(1, 3) * v3;
      *p10 = s(2, 0) * v0 + s(2, 1) * v1 + s(2, 2) * v2 + s(2, 3) * v3;
      *p11 = s(3, 0) * v0 + s(3, 1) * v1 + s(3, 2) * v2 + s(3, 3) * v3;
    }
  }
}

void dm_dephase(cplx* rho, int n, int bit) {
  const std::uint64_t d = std::uint64_t{1} << n;
  const std::uint64_t mb = std::uint64_t{1} << bit;
  for (std::uint64_t c = 0; c < d; ++c)
    for (std::uint64_t r = 0; r < d; ++r)
      if ((r ^ c) & mb) rho[r + c * d] = 0.0;
}

Program compile(const ParamCircuit& circuit, std::span<const double> theta, const NoiseModel* noise) {
  if (static_cast<int>(theta.size()) != circuit.num_params())
    throw DimensionError("parameter vector length does not match the circuit");
  const int n = circuit.num_qubits();
  const bool noisy = noise != nullptr && noise->active();
  Program prog;
  prog.num_qubits = n;
  prog.num_params = circuit.num_params();
  prog.mixed = noisy;

  for (const Gate& gate : circuit.gates()) {
    std::visit(
        Overloaded{
            [&](const TrainableRotation& g) {
              prog.ops.emplace_back(RotationOp{pauli_masks(g.pauli, g.start_qubit, n),
                                               theta[static_cast<std::size_t>(g.param_index)], g.param_index});
            },
            [&](const FixedRotation& g) {
              prog.ops.emplace_back(RotationOp{pauli_masks(g.pauli, g.start_qubit, n), g.angle, -1});
            },
            [&](const Cnot& g) {
              Matrix u = Matrix::Zero(4, 4);
              u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
              prog.ops.emplace_back(make_local({bit_of(g.control, n), bit_of(g.target, n)}, std::move(u)));
            },
            [&](const FixedUnitary& g) {
              std::vector<int> bits;
              for (Eigen::Index i = 0; (Eigen::Index{1} << i) < g.matrix.rows(); ++i)
                bits.push_back(bit_of(g.start_qubit + static_cast<int>(i), n));
              prog.ops.emplace_back(make_local(std::move(bits), g.matrix));
            },
            [&](const PoolingUnit& g) {
              Matrix u = Matrix::Zero(4, 4);
              u.block(0, 0, 2, 2) = pauli_rotation_local(g.axis, theta[static_cast<std::size_t>(g.param_indices[0])]);
              u.block(2, 2, 2, 2) = pauli_rotation_local(g.axis, theta[static_cast<std::size_t>(g.param_indices[1])]);
              PoolOp op{bit_of(g.measured_qubit, n),
                        bit_of(g.kept_qubit, n),
                        pauli_masks(PauliString(std::string(1, g.axis)), g.kept_qubit, n),
                        {g.param_indices[0], g.param_indices[1]},
                        make_local({bit_of(g.measured_qubit, n), bit_of(g.kept_qubit, n)}, std::move(u))};
              prog.ops.emplace_back(std::move(op));
            },
        },
        gate);

    if (!noisy) continue;
    const bool is_pool = std::holds_alternative<PoolingUnit>(gate);
    if (is_pool && !noise->noisy_pooling) continue;
    const auto touched = touched_qubits(gate);
    if (touched.size() < 2) continue;
    for (int q : touched)
      prog.ops.emplace_back(NoiseOp{bit_of(q, n), noise->two_qubit_gate_channel.superoperator(),
                                    noise->two_qubit_gate_channel.adjoint_superoperator()});
  }
  return prog;
}

void run_pure(const Program& prog, cplx* psi) {
  const int n = prog.num_qubits;
  for (const Op& op : prog.ops) {
    std::visit(Overloaded{
                   [&](const RotationOp& o) { rotate(psi, n, o.masks, o.angle); },
                   [&](const LocalOp& o) { apply_local(psi, n, o.bits, o.u); },
                   [&](const PoolOp& o) { apply_local(psi, n, o.controlled.bits, o.controlled.u); },
                   [&](const NoiseOp&) { throw Error("run_pure: program contains noise"); },
               },
               op);
  }
}

namespace {

void step_mixed(const Op& op, cplx* rho, int n) {
  std::visit(Overloaded{
                 [&](const RotationOp& o) { dm_rotate(rho, n, o.masks, o.angle); },
                 [&](const LocalOp& o) { dm_local(rho, n, o.bits, o.u); },
                 [&](const PoolOp& o) {
                   dm_local(rho, n, o.controlled.bits, o.controlled.u);
                   dm_dephase(rho, n, o.meas_bit);
                 },
                 [&](const NoiseOp& o) { dm_superop(rho, n, o.bit, o.super); },
             },
             op);
}

}  // namespace

void run_mixed(const Program& prog, cplx* rho) {
  for (const Op& op : prog.ops) step_mixed(op, rho, prog.num_qubits);
}

Matrix reduced_pure(const cplx* psi, int n, std::span<const int> qubits) {
  std::vector<int> bits;
  for (int q : qubits) bits.push_back(bit_of(q, n));
  const std::size_t dl = std::size_t{1} << bits.size();
  std::vector<std::uint64_t> off(dl);
  local_offsets(bits, off);
  const std::uint64_t tmask = mask_of(bits);
  Matrix red = Matrix::Zero(static_cast<Eigen::Index>(dl), static_cast<Eigen::Index>(dl));
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << n); ++rest) {
    if (rest & tmask) continue;
    for (std::size_t a = 0; a < dl; ++a) {
      const cplx va = psi[rest | off[a]];
      for (std::size_t b = 0; b < dl; ++b)
        red(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += va * std::conj(psi[rest | off[b]]);
    }
  }
  return red;
}

Matrix reduced_mixed(const cplx* rho, int n, std::span<const int> qubits) {
  std::vector<int> bits;
  for (int q : qubits) bits.push_back(bit_of(q, n));
  const std::size_t dl = std::size_t{1} << bits.size();
  std::vector<std::uint64_t> off(dl);
  local_offsets(bits, off);
  const std::uint64_t tmask = mask_of(bits);
  const std::uint64_t d = std::uint64_t{1} << n;
  Matrix red = Matrix::Zero(static_cast<Eigen::Index>(dl), static_cast<Eigen::Index>(dl));
  for (std::uint64_t rest = 0; rest < d; ++rest) {
    if (rest & tmask) continue;
    for (std::size_t a = 0; a < dl; ++a)
      for (std::size_t b = 0; b < dl; ++b)
        red(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += rho[(rest | off[a]) + (rest | off[b]) * d];
  }
  return red;
}

std::vector<double> readout(const Matrix& reduced, const MeasurementSpec& meas) {
  std::vector<double> p;
  p.reserve(meas.projectors().size());
  for (const Matrix& proj : meas.projectors()) p.push_back((proj * reduced).trace().real());
  return p;
}

std::vector<double> probabilities(const Program& prog, const QuantumInput& input, const MeasurementSpec& meas) {
  const int n = prog.num_qubits;
  if (input_qubits(input) != n) throw DimensionError("input width does not match the circuit");
  if (!prog.mixed) {
    if (const auto* psi = std::get_if<StateVector>(&input)) {
      std::vector<cplx> v(psi->amplitudes().data(), psi->amplitudes().data() + psi->dim());
      run_pure(prog, v.data());
      return readout(reduced_pure(v.data(), n, meas.measured_qubits()), meas);
    }
  }
  std::vector<cplx> rho = to_density_buffer(input);
  run_mixed(prog, rho.data());
  return readout(reduced_mixed(rho.data(), n, meas.measured_qubits()), meas);
}

std::vector<double> probabilities_and_gradient(const Program& prog, const QuantumInput& input,
                                               const MeasurementSpec& meas, const CoefficientFn& coeffs,
                                               std::span<double> grad) {
  const int n = prog.num_qubits;
  if (input_qubits(input) != n) throw DimensionError("input width does not match the circuit");
  if (static_cast<int>(grad.size()) != prog.num_params) throw DimensionError("gradient buffer length");
  const std::vector<int> mbits = measured_bits(meas, n);

  const auto* pure_in = std::get_if<StateVector>(&input);
  if (!prog.mixed && pure_in != nullptr) {
    std::vector<cplx> psi(pure_in->amplitudes().data(), pure_in->amplitudes().data() + pure_in->dim());
    run_pure(prog, psi.data());
    const std::vector<double> p = readout(reduced_pure(psi.data(), n, meas.measured_qubits()), meas);
    const std::vector<double> w = coeffs(p);
    std::vector<cplx> lambda = psi;
    apply_local(lambda.data(), n, mbits, observable(meas, w));

    for (auto it = prog.ops.rbegin(); it != prog.ops.rend(); ++it) {
      std::visit(Overloaded{
                     [&](const RotationOp& o) {
                       if (o.param >= 0)
                         grad[static_cast<std::size_t>(o.param)] +=
                             pauli_overlap(lambda.data(), psi.data(), n, o.masks).imag();
                       rotate(psi.data(), n, o.masks, -o.angle);
                       rotate(lambda.data(), n, o.masks, -o.angle);
                     },
                     [&](const LocalOp& o) {
                       apply_local(psi.data(), n, o.bits, o.u_adj);
                       apply_local(lambda.data(), n, o.bits, o.u_adj);
                     },
                     [&](const PoolOp& o) {
                       const std::uint64_t fm = std::uint64_t{1} << o.meas_bit;
                       for (std::uint64_t m = 0; m < 2; ++m)
                         grad[static_cast<std::size_t>(o.param[m])] +=
                             pauli_overlap(lambda.data(), psi.data(), n, o.kept, fm, m ? fm : 0).imag();
                       apply_local(psi.data(), n, o.controlled.bits, o.controlled.u_adj);
                       apply_local(lambda.data(), n, o.controlled.bits, o.controlled.u_adj);
                     },
                     [&](const NoiseOp&) { throw Error("pure gradient: program contains noise"); },
                 },
                 *it);
    }
    return p;
  }

  // Mixed path: keep the state right after every parameterised operation.
  const std::uint64_t d = std::uint64_t{1} << n;
  std::vector<cplx> rho = to_density_buffer(input);
  std::vector<std::vector<cplx>> after(prog.ops.size());
  for (std::size_t i = 0; i < prog.ops.size(); ++i) {
    step_mixed(prog.ops[i], rho.data(), n);
    const Op& op = prog.ops[i];
    const bool has_param = std::holds_alternative<PoolOp>(op) ||
                           (std::holds_alternative<RotationOp>(op) && std::get<RotationOp>(op).param >= 0);
    if (has_param) after[i] = rho;
  }
  const std::vector<double> p = readout(reduced_mixed(rho.data(), n, meas.measured_qubits()), meas);
  const std::vector<double> w = coeffs(p);

  const Matrix wl = observable(meas, w);
  const std::size_t dl = std::size_t{1} << mbits.size();
  std::vector<std::uint64_t> off(dl);
  local_offsets(std::span<const int>(mbits), off);
  const std::uint64_t tmask = mask_of(mbits);
  std::vector<cplx> obs(d * d, cplx(0.0));
  for (std::uint64_t rest = 0; rest < d; ++rest) {
    if (rest & tmask) continue;
    for (std::size_t a = 0; a < dl; ++a)
      for (std::size_t b = 0; b < dl; ++b)
        obs[(rest | off[a]) + (rest | off[b]) * d] = wl(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }

  for (std::size_t i = prog.ops.size(); i-- > 0;) {
    std::visit(Overloaded{
                   [&](const RotationOp& o) {
                     if (o.param >= 0)
                       grad[static_cast<std::size_t>(o.param)] +=
                           pauli_overlap(obs.data(), after[i].data(), 2 * n, o.masks).imag();
                     dm_rotate(obs.data(), n, o.masks, -o.angle);
                   },
                   [&](const LocalOp& o) { dm_local(obs.data(), n, o.bits, o.u_adj); },
                   [&](const PoolOp& o) {
                     const std::uint64_t fm = std::uint64_t{1} << o.meas_bit;
                     for (std::uint64_t m = 0; m < 2; ++m)
                       grad[static_cast<std::size_t>(o.param[m])] +=
                           pauli_overlap(obs.data(), after[i].data(), 2 * n, o.kept, fm, m ? fm : 0).imag();
                     dm_local(obs.data(), n, o.controlled.bits, o.controlled.u_adj);
                     dm_dephase(obs.data(), n, o.meas_bit);
                   },
                   [&](const NoiseOp& o) { dm_superop(obs.data(), n, o.bit, o.adjoint); },
               },
               prog.ops[i]);
  }
  return p;
}

}  // namespace qboost::kernels

namespace qboost::kernels {

std::vector<std::vector<double>> batch_probabilities(const Program& prog, std::span<const QuantumInput> inputs,
                                                     const MeasurementSpec& meas) {
  std::vector<std::vector<double>> out(inputs.size());
  const auto count = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = probabilities(prog, inputs[static_cast<std::size_t>(i)], meas);
  return out;
}

std::vector<std::vector<double>> batch_probabilities_and_gradient(const Program& prog,
                                                                  std::span<const QuantumInput> inputs,
                                                                  const MeasurementSpec& meas,
                                                                  const SampleCoefficientFn& coeffs,
                                                                  std::span<double> grad) {
  const std::size_t k = static_cast<std::size_t>(prog.num_params);
  if (grad.size() != k) throw DimensionError("gradient buffer length");
  std::vector<std::vector<double>> out(inputs.size());
  std::vector<double> slots(inputs.size() * k, 0.0);
  const auto count = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto s = static_cast<std::size_t>(i);
    CoefficientFn fn = [&coeffs, s](std::span<const double> p) { return coeffs(s, p); };
    out[s] = probabilities_and_gradient(prog, inputs[s], meas, fn, std::span<double>(slots.data() + s * k, k));
  }
  for (std::size_t s = 0; s < inputs.size(); ++s)
    for (std::size_t j = 0; j < k; ++j) grad[j] += slots[s * k + j];
  return out;
}

}  // namespace qboost::kernels
