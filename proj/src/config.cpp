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

#include "qboost/config.hpp"

#include "qboost/images.hpp"

#include "qboost/common.hpp"
#include "qboost/csv.hpp"
#include "qboost/noise.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace qboost {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw DomainError("config: bad value '" + v + "' for " + key);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw DomainError("config: bad boolean '" + v + "' for " + key);
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& v) {
  std::vector<T> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(key, trim(item)));
  return out;
}

std::string fmt_num(double v) { return csv::num(v); }
std::string fmt_num(int v) { return std::to_string(v); }

template <class T>
std::string fmt_list(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += fmt_num(v[i]);
  }
  return s;
}

struct Field {
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

using FieldTable = std::vector<std::pair<std::string, Field>>;

template <class T>
Field number_field(T ExperimentConfig::*m) {
  return {[m](const ExperimentConfig& c) { return fmt_num(c.*m); },
          [m](ExperimentConfig& c, const std::string& v) { c.*m = parse_number<T>("value", v); }};
}

Field string_field(std::string ExperimentConfig::*m) {
  return {[m](const ExperimentConfig& c) { return c.*m; }, [m](ExperimentConfig& c, const std::string& v) { c.*m = v; }};
}

Field bool_field(bool ExperimentConfig::*m) {
  return {[m](const ExperimentConfig& c) { return std::string(c.*m ? "true" : "false"); },
          [m](ExperimentConfig& c, const std::string& v) { c.*m = parse_bool("value", v); }};
}

template <class T>
Field list_field(std::vector<T> ExperimentConfig::*m) {
  return {[m](const ExperimentConfig& c) { return fmt_list(c.*m); },
          [m](ExperimentConfig& c, const std::string& v) { c.*m = parse_list<T>("value", v); }};
}

const FieldTable& fields() {
  static const FieldTable table = [] {
    FieldTable t;
    t.emplace_back("task", string_field(&ExperimentConfig::task));
    t.emplace_back("dataset", string_field(&ExperimentConfig::dataset));
    t.emplace_back("num_qubits", number_field(&ExperimentConfig::num_qubits));
    t.emplace_back("n_train", number_field(&ExperimentConfig::n_train));
    t.emplace_back("n_test", number_field(&ExperimentConfig::n_test));
    t.emplace_back("rounds", number_field(&ExperimentConfig::rounds));
    t.emplace_back("repeats", number_field(&ExperimentConfig::repeats));
    t.emplace_back("seed", Field{[](const ExperimentConfig& c) { return c.seed ? std::to_string(*c.seed) : ""; },
                                 [](ExperimentConfig& c, const std::string& v) {
                                   c.seed = parse_number<std::uint64_t>("seed", v);
                                 }});
    t.emplace_back("noise", string_field(&ExperimentConfig::noise));
    t.emplace_back("noise_rate", number_field(&ExperimentConfig::noise_rate));
    t.emplace_back("noisy_pooling", bool_field(&ExperimentConfig::noisy_pooling));
    t.emplace_back("learning_rate", number_field(&ExperimentConfig::learning_rate));
    t.emplace_back("iterations", number_field(&ExperimentConfig::iterations));
    t.emplace_back("adam_beta1", number_field(&ExperimentConfig::adam_beta1));
    t.emplace_back("adam_beta2", number_field(&ExperimentConfig::adam_beta2));
    t.emplace_back("adam_eps", number_field(&ExperimentConfig::adam_eps));
    t.emplace_back("prob_floor", number_field(&ExperimentConfig::prob_floor));
    t.emplace_back("max_retries", number_field(&ExperimentConfig::max_retries));
    t.emplace_back("epsilon_stop", number_field(&ExperimentConfig::epsilon_stop));
    t.emplace_back("blocks", number_field(&ExperimentConfig::blocks));
    t.emplace_back("readout", string_field(&ExperimentConfig::readout));
    t.emplace_back("prelayer", string_field(&ExperimentConfig::prelayer));
    t.emplace_back("conv_unit", string_field(&ExperimentConfig::conv_unit));
    t.emplace_back("pool_axis", Field{[](const ExperimentConfig& c) { return std::string(1, c.pool_axis); },
                                      [](ExperimentConfig& c, const std::string& v) {
                                        if (v.size() != 1) throw DomainError("config: pool_axis is one letter");
                                        c.pool_axis = v[0];
                                      }});
    t.emplace_back("sweep_samples", list_field(&ExperimentConfig::sweep_samples));
    t.emplace_back("delta", number_field(&ExperimentConfig::delta));
    t.emplace_back("mnist_images", string_field(&ExperimentConfig::mnist_images));
    t.emplace_back("mnist_labels", string_field(&ExperimentConfig::mnist_labels));
    t.emplace_back("classes", list_field(&ExperimentConfig::classes));
    t.emplace_back("image_width", number_field(&ExperimentConfig::image_width));
    t.emplace_back("image_height", number_field(&ExperimentConfig::image_height));
    t.emplace_back("resample", string_field(&ExperimentConfig::resample));
    t.emplace_back("bagging", bool_field(&ExperimentConfig::bagging));
    t.emplace_back("qcnn_best", bool_field(&ExperimentConfig::qcnn_best));
    t.emplace_back("bounds_gates", list_field(&ExperimentConfig::bounds_gates));
    t.emplace_back("bounds_samples", list_field(&ExperimentConfig::bounds_samples));
    t.emplace_back("bounds_delta", list_field(&ExperimentConfig::bounds_delta));
    t.emplace_back("bounds_epsilon", list_field(&ExperimentConfig::bounds_epsilon));
    t.emplace_back("bounds_rounds", number_field(&ExperimentConfig::bounds_rounds));
    t.emplace_back("out", string_field(&ExperimentConfig::out));
    return t;
  }();
  return table;
}

const Field& field(const std::string& key) {
  for (const auto& [k, f] : fields())
    if (k == key) return f;
  throw DomainError("config: unknown key '" + key + "'");
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  try {
    field(key).set(*this, trim(value));
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " (key " + key + ")");
  }
}

std::string ExperimentConfig::get(const std::string& key) const { return field(key).get(*this); }

const std::vector<std::string>& ExperimentConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> v;
    for (const auto& f : fields()) v.push_back(f.first);
    return v;
  }();
  return k;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  // A file carrying "#cfg" lines is an emitted output; only its header counts.
  const bool header_only = text.rfind("#cfg ", 0) == 0 || text.find("\n#cfg ") != std::string::npos;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.rfind("#cfg ", 0) == 0) {
      body = trim(body.substr(5));
    } else if (header_only || body.empty() || body[0] == '#') {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    c.set(trim(body.substr(0, eq)), body.substr(eq + 1));
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::snapshot() const {
  std::string s;
  for (const auto& [k, f] : fields()) {
    if (k == "out") continue;
    s += "#cfg " + k + " = " + f.get(*this) + "\n";
  }
  return s;
}

std::string ExperimentConfig::resolved_dataset() const {
  if (!dataset.empty()) return dataset;
  if (task == "annni-binary") return "annni";
  return "mnist";
}

void ExperimentConfig::validate() const {
  static const char* kTasks[] = {"annni-binary", "mnist-multiclass", "noise-compare", "bagging-compare", "bounds"};
  bool known = false;
  for (const char* t : kTasks) known = known || task == t;
  if (!known) throw DomainError("config: unknown task '" + task + "'");
  if (!seed) throw DomainError("config: seed is required");
  if (task == "bounds") return;
  if (num_qubits < 1 || n_train < 1 || n_test < 1 || rounds < 1 || repeats < 1 || iterations < 1 || blocks < 1)
    throw DomainError("config: counts must be positive");
  if (readout != "sign" && readout != "argmax") throw DomainError("config: readout must be sign or argmax");
  if (resolved_dataset() != "annni" && resolved_dataset() != "mnist") throw DomainError("config: unknown dataset");
  parse_noise_kind(noise);
  parse_resample(resample);
  if (resolved_dataset() == "mnist" && classes.size() < 2) throw DomainError("config: need at least two classes");
  if (task == "noise-compare" && noise == "none") throw DomainError("config: noise-compare needs a noise kind");
  for (int n : sweep_samples)
    if (n < 1) throw DomainError("config: sweep sizes must be positive");
}

}  // namespace qboost
