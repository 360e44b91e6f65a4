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

#include "qboost/circuit.hpp"

#include "qboost/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qboost {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int local_qubits(const Matrix& m) {
  int k = 0;
  while ((Eigen::Index{1} << k) < m.rows()) ++k;
  return k;
}

}  // namespace

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw DomainError("PauliString: empty");
  for (char c : letters_)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw DomainError(std::string("PauliString: invalid letter '") + c + "'");
}

int PauliString::weight() const {
  return static_cast<int>(std::count_if(letters_.begin(), letters_.end(), [](char c) { return c != 'I'; }));
}

bool PauliString::z_only() const {
  return std::all_of(letters_.begin(), letters_.end(), [](char c) { return c == 'I' || c == 'Z'; });
}

Matrix PauliString::matrix() const {
  Matrix m = pauli::letter(letters_[0]);
  for (std::size_t i = 1; i < letters_.size(); ++i) m = kron(m, Matrix(pauli::letter(letters_[i])));
  return m;
}

std::vector<int> PauliString::support(int start) const {
  std::vector<int> s;
  for (int i = 0; i < length(); ++i)
    if (letters_[static_cast<std::size_t>(i)] != 'I') s.push_back(start + i);
  return s;
}

std::vector<int> touched_qubits(const Gate& gate) {
  std::vector<int> q = std::visit(
      Overloaded{
          [](const TrainableRotation& g) { return g.pauli.support(g.start_qubit); },
          [](const FixedRotation& g) { return g.pauli.support(g.start_qubit); },
          [](const Cnot& g) { return std::vector<int>{g.control, g.target}; },
          [](const FixedUnitary& g) {
            std::vector<int> v;
            for (int i = 0; i < local_qubits(g.matrix); ++i) v.push_back(g.start_qubit + i);
            return v;
          },
          [](const PoolingUnit& g) { return std::vector<int>{g.measured_qubit, g.kept_qubit}; },
      },
      gate);
  std::sort(q.begin(), q.end());
  return q;
}

std::vector<int> gate_params(const Gate& gate) {
  if (const auto* r = std::get_if<TrainableRotation>(&gate)) return {r->param_index};
  if (const auto* p = std::get_if<PoolingUnit>(&gate)) return {p->param_indices[0], p->param_indices[1]};
  return {};
}

ParamCircuit::ParamCircuit(int num_qubits, std::vector<Gate> gates)
    : num_qubits_(num_qubits), gates_(std::move(gates)) {
  if (num_qubits < 1 || num_qubits > 12) throw DimensionError("ParamCircuit: unsupported width");
  auto in_range = [&](int q) { return q >= 0 && q < num_qubits_; };
  std::vector<int> seen;
  std::set<int> pooled;

  for (const Gate& gate : gates_) {
    std::visit(
        Overloaded{
            [&](const TrainableRotation& g) {
              if (g.pauli.is_identity()) throw DomainError("rotation about the identity string");
              if (g.start_qubit < 0 || g.start_qubit + g.pauli.length() > num_qubits_)
                throw DomainError("rotation exceeds circuit width");
            },
            [&](const FixedRotation& g) {
              if (g.pauli.is_identity()) throw DomainError("rotation about the identity string");
              if (g.start_qubit < 0 || g.start_qubit + g.pauli.length() > num_qubits_)
                throw DomainError("rotation exceeds circuit width");
            },
            [&](const Cnot& g) {
              if (!in_range(g.control) || !in_range(g.target) || g.control == g.target)
                throw DomainError("invalid CNOT qubits");
            },
            [&](const FixedUnitary& g) {
              const int k = local_qubits(g.matrix);
              if (g.matrix.rows() != g.matrix.cols() || (Eigen::Index{1} << k) != g.matrix.rows() || k < 1)
                throw DimensionError("fixed unitary is not 2^k x 2^k");
              if (g.start_qubit < 0 || g.start_qubit + k > num_qubits_)
                throw DomainError("fixed unitary exceeds circuit width");
              const Matrix id = Matrix::Identity(g.matrix.rows(), g.matrix.cols());
              if ((g.matrix.adjoint() * g.matrix - id).cwiseAbs().maxCoeff() > 1e-10)
                throw InvariantError("fixed gate is not unitary");
            },
            [&](const PoolingUnit& g) {
              if (!in_range(g.measured_qubit) || !in_range(g.kept_qubit) || g.measured_qubit == g.kept_qubit)
                throw DomainError("invalid pooling qubits");
              if (g.axis != 'X' && g.axis != 'Y' && g.axis != 'Z') throw DomainError("invalid pooling axis");
            },
        },
        gate);
    for (int q : touched_qubits(gate))
      if (pooled.count(q)) throw DomainError("gate acts on a qubit that was already pooled out");
    if (const auto* p = std::get_if<PoolingUnit>(&gate)) pooled.insert(p->measured_qubit);
    for (int k : gate_params(gate)) seen.push_back(k);
  }

  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != static_cast<int>(i))
      throw DomainError("parameter indices must cover 0..K-1 with each index used once");
  num_params_ = static_cast<int>(seen.size());
  pooled_.assign(pooled.begin(), pooled.end());
}

CircuitBuilder& CircuitBuilder::rotation(const std::string& pauli, int start_qubit) {
  gates_.emplace_back(TrainableRotation{PauliString(pauli), start_qubit, next_param_++});
  return *this;
}

CircuitBuilder& CircuitBuilder::pair_rotation(char first, char second, int a, int b) {
  if (b <= a) throw DomainError("pair_rotation expects a < b");
  std::string letters(static_cast<std::size_t>(b - a + 1), 'I');
  letters.front() = first;
  letters.back() = second;
  return rotation(letters, a);
}

CircuitBuilder& CircuitBuilder::fixed_rotation(const std::string& pauli, int start_qubit, double angle) {
  gates_.emplace_back(FixedRotation{PauliString(pauli), start_qubit, angle});
  return *this;
}

CircuitBuilder& CircuitBuilder::cnot(int control, int target) {
  gates_.emplace_back(Cnot{control, target});
  return *this;
}

CircuitBuilder& CircuitBuilder::unitary(Matrix m, int start_qubit) {
  gates_.emplace_back(FixedUnitary{std::move(m), start_qubit});
  return *this;
}

CircuitBuilder& CircuitBuilder::pool(int measured, int kept, char axis) {
  PoolingUnit p{measured, kept, {next_param_, next_param_ + 1}, axis};
  next_param_ += 2;
  gates_.emplace_back(p);
  return *this;
}

ParamCircuit CircuitBuilder::build() && { return ParamCircuit(num_qubits_, std::move(gates_)); }

MeasurementSpec::MeasurementSpec(std::vector<int> measured_qubits, std::vector<Matrix> projectors,
                                 ReadoutMode mode)
    : measured_(std::move(measured_qubits)), projectors_(std::move(projectors)), mode_(mode) {
  if (measured_.empty()) throw DomainError("MeasurementSpec: no measured qubits");
  if (std::set<int>(measured_.begin(), measured_.end()).size() != measured_.size())
    throw DomainError("MeasurementSpec: repeated measured qubit");
  const auto d = static_cast<Eigen::Index>(dim_of(static_cast<int>(measured_.size())));
  if (projectors_.size() < 2) throw DomainError("MeasurementSpec: need at least two projectors");
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t a = 0; a < projectors_.size(); ++a) {
    const Matrix& pa = projectors_[a];
    if (pa.rows() != d || pa.cols() != d) throw DimensionError("MeasurementSpec: projector dimension");
    if (hermiticity_residue(pa) > Tolerances::hermitian || (pa * pa - pa).cwiseAbs().maxCoeff() > 1e-10)
      throw InvariantError("MeasurementSpec: not an orthogonal projector");
    for (std::size_t b = 0; b < a; ++b)
      if ((pa * projectors_[b]).cwiseAbs().maxCoeff() > Tolerances::projector_orthogonality)
        throw InvariantError("MeasurementSpec: projectors are not pairwise orthogonal");
    sum += pa;
  }
  resolves_identity_ = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12;
  if (mode_ == ReadoutMode::kSignOfZ && (measured_.size() != 1 || projectors_.size() != 2))
    throw DomainError("MeasurementSpec: sign mode reads exactly one qubit");
  if (mode_ == ReadoutMode::kArgmax && dim_of(static_cast<int>(measured_.size())) == projectors_.size() &&
      !resolves_identity_)
    throw InvariantError("MeasurementSpec: 2^m projectors must sum to identity");
}

MeasurementSpec MeasurementSpec::computational(std::vector<int> measured, int num_classes) {
  const auto d = static_cast<Eigen::Index>(dim_of(static_cast<int>(measured.size())));
  if (num_classes < 2 || num_classes > d) throw DomainError("computational readout: class count");
  std::vector<Matrix> proj;
  for (int c = 0; c < num_classes; ++c) {
    Matrix p = Matrix::Zero(d, d);
    p(c, c) = 1.0;
    proj.push_back(std::move(p));
  }
  return MeasurementSpec(std::move(measured), std::move(proj), ReadoutMode::kArgmax);
}

MeasurementSpec MeasurementSpec::sign_of_z(int qubit) {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return MeasurementSpec({qubit}, {p0, p1}, ReadoutMode::kSignOfZ);
}

Matrix pauli_rotation_matrix(const PauliString& pauli, double angle) {
  if (pauli.is_identity()) throw DomainError("pauli_rotation_matrix: identity generator");
  const Matrix p = pauli.matrix();
  const Matrix id = Matrix::Identity(p.rows(), p.cols());
  return std::cos(angle / 2) * id - cplx(0, std::sin(angle / 2)) * p;
}

std::vector<Gate> decompose_rotation(const Gate& rotation) {
  const PauliString* pauli = nullptr;
  int start = 0;
  if (const auto* r = std::get_if<TrainableRotation>(&rotation)) {
    pauli = &r->pauli;
    start = r->start_qubit;
  } else if (const auto* f = std::get_if<FixedRotation>(&rotation)) {
    pauli = &f->pauli;
    start = f->start_qubit;
  } else {
    throw DomainError("decompose_rotation: not a rotation gate");
  }
  if (!pauli->z_only() || pauli->is_identity())
    throw DomainError("decompose_rotation: only Z-string rotations are supported");

  const std::vector<int> sup = pauli->support(start);
  const int last = sup.back();
  std::vector<Gate> out;
  for (std::size_t i = 0; i + 1 < sup.size(); ++i) out.emplace_back(Cnot{sup[i], sup[i + 1]});
  if (const auto* r = std::get_if<TrainableRotation>(&rotation))
    out.emplace_back(TrainableRotation{PauliString("Z"), last, r->param_index});
  else
    out.emplace_back(FixedRotation{PauliString("Z"), last, std::get<FixedRotation>(rotation).angle});
  for (std::size_t i = sup.size() - 1; i > 0; --i) out.emplace_back(Cnot{sup[i - 1], sup[i]});
  return out;
}

ParamCircuit decompose_circuit(const ParamCircuit& circuit) {
  std::vector<Gate> out;
  for (const Gate& g : circuit.gates()) {
    const PauliString* p = nullptr;
    if (const auto* r = std::get_if<TrainableRotation>(&g)) p = &r->pauli;
    if (const auto* f = std::get_if<FixedRotation>(&g)) p = &f->pauli;
    if (p && p->weight() > 1 && p->z_only()) {
      auto parts = decompose_rotation(g);
      out.insert(out.end(), parts.begin(), parts.end());
    } else {
      out.push_back(g);
    }
  }
  return ParamCircuit(circuit.num_qubits(), std::move(out));
}

std::vector<ConvStep> parse_conv_unit(const std::string& text) {
  std::vector<ConvStep> unit;
  std::stringstream ss(text);
  std::string tok;
  auto is_letter = [](char c) { return c == 'X' || c == 'Y' || c == 'Z'; };
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
    if (tok.size() != 2 || !is_letter(tok[0])) throw DomainError("conv unit: bad step '" + tok + "'");
    if (tok[1] == '0' || tok[1] == '1')
      unit.push_back({tok[1] == '0' ? ConvStep::Target::kFirst : ConvStep::Target::kSecond, tok.substr(0, 1)});
    else if (is_letter(tok[1]))
      unit.push_back({ConvStep::Target::kPair, tok});
    else
      throw DomainError("conv unit: bad step '" + tok + "'");
  }
  if (unit.empty()) throw DomainError("conv unit: empty");
  return unit;
}

std::string format_conv_unit(const std::vector<ConvStep>& unit) {
  std::string s;
  for (const auto& st : unit) {
    if (!s.empty()) s += ',';
    s += st.pauli;
    if (st.target == ConvStep::Target::kFirst) s += '0';
    if (st.target == ConvStep::Target::kSecond) s += '1';
  }
  return s;
}

QcnnModel build_qcnn(int num_qubits, const QcnnConfig& config) {
  if (num_qubits != 4 && num_qubits != 6 && num_qubits != 8)
    throw DomainError("build_qcnn: width must be 4, 6 or 8");
  if (config.blocks < 1) throw DomainError("build_qcnn: need at least one block");

  CircuitBuilder b(num_qubits);
  std::vector<int> active(static_cast<std::size_t>(num_qubits));
  for (int q = 0; q < num_qubits; ++q) active[static_cast<std::size_t>(q)] = q;
  std::vector<std::vector<int>> history{active};

  for (char axis : config.prelayer)
    for (int q : active) b.rotation(std::string(1, axis), q);

  auto conv_unit = [&](int a, int c) {
    for (const auto& st : config.conv_unit) {
      switch (st.target) {
        case ConvStep::Target::kFirst: b.rotation(st.pauli, a); break;
        case ConvStep::Target::kSecond: b.rotation(st.pauli, c); break;
        case ConvStep::Target::kPair: b.pair_rotation(st.pauli[0], st.pauli[1], a, c); break;
      }
    }
  };

  for (int blk = 0; blk < config.blocks; ++blk) {
    if (active.size() < 2) throw DomainError("build_qcnn: too many blocks for this width");
    for (std::size_t i = 0; i + 1 < active.size(); i += 2) conv_unit(active[i], active[i + 1]);
    for (std::size_t i = 1; i + 1 < active.size(); i += 2) conv_unit(active[i], active[i + 1]);
    std::vector<int> next;
    for (std::size_t i = 0; i < active.size(); i += 2) {
      if (i + 1 < active.size()) b.pool(active[i + 1], active[i], config.pool_axis);
      next.push_back(active[i]);
    }
    active = std::move(next);
    history.push_back(active);
  }

  ParamCircuit circuit = std::move(b).build();
  if (config.mode == ReadoutMode::kSignOfZ)
    return {std::move(circuit), MeasurementSpec::sign_of_z(active.front()), std::move(history)};

  int m = 0;
  while ((1 << m) < config.num_classes) ++m;
  if (m > static_cast<int>(active.size())) throw DomainError("build_qcnn: not enough surviving qubits to read out");
  std::vector<int> measured(active.begin(), active.begin() + m);
  return {std::move(circuit), MeasurementSpec::computational(std::move(measured), config.num_classes),
          std::move(history)};
}

}  // namespace qboost
