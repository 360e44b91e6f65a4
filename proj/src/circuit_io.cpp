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

#include "qboost/circuit_io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace qboost {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw DomainError("circuit text: bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw DomainError("circuit text: bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string qubit_range(int start, int len) {
  std::string s;
  for (int i = 0; i < len; ++i) {
    if (i) s += ',';
    s += std::to_string(start + i);
  }
  return s;
}

int consecutive_start(const std::vector<std::string>& qs) {
  const int start = parse_int(qs.at(0));
  for (std::size_t i = 1; i < qs.size(); ++i)
    if (parse_int(qs[i]) != start + static_cast<int>(i)) throw DomainError("circuit text: qubits must be consecutive");
  return start;
}

}  // namespace

std::string serialize_circuit(const ParamCircuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.num_qubits() << '\n';
  for (const Gate& gate : circuit.gates()) {
    if (const auto* g = std::get_if<TrainableRotation>(&gate)) {
      out << "rot " << g->pauli.letters() << ' ' << qubit_range(g->start_qubit, g->pauli.length()) << ' '
          << g->param_index << '\n';
    } else if (const auto* g = std::get_if<FixedRotation>(&gate)) {
      out << "frot " << g->pauli.letters() << ' ' << qubit_range(g->start_qubit, g->pauli.length()) << ' '
          << fmt(g->angle) << '\n';
    } else if (const auto* g = std::get_if<Cnot>(&gate)) {
      out << "cnot - " << g->control << ',' << g->target << " -\n";
    } else if (const auto* g = std::get_if<FixedUnitary>(&gate)) {
      int k = 0;
      while ((Eigen::Index{1} << k) < g->matrix.rows()) ++k;
      out << "unitary - " << qubit_range(g->start_qubit, k) << ' ';
      for (Eigen::Index r = 0; r < g->matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < g->matrix.cols(); ++c) {
          if (r || c) out << ';';
          out << fmt(g->matrix(r, c).real()) << ':' << fmt(g->matrix(r, c).imag());
        }
      out << '\n';
    } else if (const auto* g = std::get_if<PoolingUnit>(&gate)) {
      out << "pool " << g->axis << ' ' << g->measured_qubit << ',' << g->kept_qubit << ' ' << g->param_indices[0]
          << ',' << g->param_indices[1] << '\n';
    }
  }
  return out.str();
}

ParamCircuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<Gate> gates;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind, pauli, qubits, last, extra;
    ls >> kind;
    if (kind == "qubits") {
      ls >> last;
      n = parse_int(last);
      continue;
    }
    if (!(ls >> pauli >> qubits >> last) || (ls >> extra)) throw DomainError("circuit text: malformed line '" + line + "'");
    const auto qs = split(qubits, ',');
    if (kind == "rot") {
      PauliString p(pauli);
      if (static_cast<int>(qs.size()) != p.length()) throw DomainError("circuit text: qubit count mismatch");
      gates.emplace_back(TrainableRotation{p, consecutive_start(qs), parse_int(last)});
    } else if (kind == "frot") {
      PauliString p(pauli);
      if (static_cast<int>(qs.size()) != p.length()) throw DomainError("circuit text: qubit count mismatch");
      gates.emplace_back(FixedRotation{p, consecutive_start(qs), parse_double(last)});
    } else if (kind == "cnot") {
      if (qs.size() != 2) throw DomainError("circuit text: cnot needs two qubits");
      gates.emplace_back(Cnot{parse_int(qs[0]), parse_int(qs[1])});
    } else if (kind == "unitary") {
      const auto entries = split(last, ';');
      const Eigen::Index d = Eigen::Index{1} << qs.size();
      if (static_cast<Eigen::Index>(entries.size()) != d * d) throw DomainError("circuit text: unitary entry count");
      Matrix m(d, d);
      for (Eigen::Index i = 0; i < d * d; ++i) {
        const auto parts = split(entries[static_cast<std::size_t>(i)], ':');
        if (parts.size() != 2) throw DomainError("circuit text: unitary entry must be re:im");
        m(i / d, i % d) = cplx(parse_double(parts[0]), parse_double(parts[1]));
      }
      gates.emplace_back(FixedUnitary{std::move(m), consecutive_start(qs)});
    } else if (kind == "pool") {
      const auto ps = split(last, ',');
      if (qs.size() != 2 || ps.size() != 2 || pauli.size() != 1) throw DomainError("circuit text: malformed pool");
      gates.emplace_back(PoolingUnit{parse_int(qs[0]), parse_int(qs[1]), {parse_int(ps[0]), parse_int(ps[1])}, pauli[0]});
    } else {
      throw DomainError("circuit text: unknown gate kind '" + kind + "'");
    }
  }
  if (n < 1) throw DomainError("circuit text: missing 'qubits' line");
  return ParamCircuit(n, std::move(gates));
}

}  // namespace qboost
