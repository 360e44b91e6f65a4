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

#include "qboost/experiments.hpp"

#include "qboost/annni.hpp"
#include "qboost/csv.hpp"
#include "qboost/images.hpp"
#include "qboost/rng.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

namespace qboost {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TaskData {
  WeightedDataset train;
  WeightedDataset test;
};

struct MnistSource {
  std::vector<RawImage> images;
  std::vector<std::uint8_t> labels;
};

struct RepeatOptions {
  bool boost = true;
  bool bagging = false;
  bool qcnn_best = false;
  bool noiseless_best = false;
};

class Context {
 public:
  explicit Context(const ExperimentConfig& cfg) : cfg_(cfg) {
    if (cfg.noise != "none") noise_ = make_noise_model(parse_noise_kind(cfg.noise), cfg.noise_rate);
    if (noise_) noise_->noisy_pooling = cfg.noisy_pooling;
    if (cfg.resolved_dataset() == "mnist") {
      mnist_.images = parse_idx_images(read_file_bytes(cfg.mnist_images));
      mnist_.labels = parse_idx_labels(read_file_bytes(cfg.mnist_labels));
    }
  }

  const ExperimentConfig& cfg() const { return cfg_; }
  const NoiseModel* noise() const { return noise_ ? &*noise_ : nullptr; }

  TaskData data(std::uint64_t seed, std::size_t n_train) const {
    const auto n_test = static_cast<std::size_t>(cfg_.n_test);
    auto train = std::make_shared<std::vector<QuantumInput>>();
    auto test = std::make_shared<std::vector<QuantumInput>>();
    std::vector<int> ytrain, ytest;
    if (cfg_.resolved_dataset() == "annni") {
      auto points = generate_annni_dataset(cfg_.num_qubits, n_train + n_test, seed);
      for (std::size_t i = 0; i < points.size(); ++i) {
        auto& dst = i < n_train ? *train : *test;
        (i < n_train ? ytrain : ytest).push_back(points[i].label);
        dst.emplace_back(std::move(points[i].state));
      }
      return {WeightedDataset(train, ytrain, LabelScheme::kBinary, 2),
              WeightedDataset(test, ytest, LabelScheme::kBinary, 2)};
    }
    MnistTaskConfig mc;
    mc.classes = cfg_.classes;
    mc.target_width = cfg_.image_width;
    mc.target_height = cfg_.image_height;
    mc.resample = parse_resample(cfg_.resample);
    mc.num_qubits = cfg_.num_qubits;
    mc.n_train = n_train;
    mc.n_test = n_test;
    mc.seed = seed;
    MnistTask task = build_mnist_task(mnist_.images, mnist_.labels, mc);
    for (auto& s : task.train) {
      ytrain.push_back(s.label);
      train->emplace_back(std::move(s.state));
    }
    for (auto& s : task.test) {
      ytest.push_back(s.label);
      test->emplace_back(std::move(s.state));
    }
    const int d = static_cast<int>(cfg_.classes.size());
    return {WeightedDataset(train, ytrain, LabelScheme::kMulticlass, d),
            WeightedDataset(test, ytest, LabelScheme::kMulticlass, d)};
  }

 private:
  const ExperimentConfig& cfg_;
  std::optional<NoiseModel> noise_;
  MnistSource mnist_;
};

TrainConfig train_config(const ExperimentConfig& c) {
  TrainConfig t;
  t.learning_rate = c.learning_rate;
  t.iterations = c.iterations;
  t.adam_beta1 = c.adam_beta1;
  t.adam_beta2 = c.adam_beta2;
  t.adam_eps = c.adam_eps;
  t.prob_floor = c.prob_floor;
  return t;
}

double error_rate(std::span<const int> pred, std::span<const int> labels) {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) wrong += pred[i] != labels[i];
  return pred.empty() ? 0.0 : static_cast<double>(wrong) / static_cast<double>(pred.size());
}

double accuracy(std::span<const int> pred, std::span<const int> labels) { return 1.0 - error_rate(pred, labels); }

std::uint64_t repeat_seed(const ExperimentConfig& cfg, int repeat, std::size_t n) {
  return Rng::derive(*cfg.seed, Stream::kRepeat, static_cast<std::uint64_t>(repeat), n).next_u64();
}

BestRecord train_best(const Model& model, const TaskData& data, const ExperimentConfig& cfg, std::uint64_t seed,
                      const NoiseModel* noise) {
  TrainConfig tc = train_config(cfg);
  tc.iterations = cfg.iterations * cfg.rounds;
  tc.init_seed = Rng::derive(seed, Stream::kInit, 0, 0, 2).next_u64();
  std::vector<double> test_acc;
  auto on_iteration = [&](int, std::span<const double> theta) {
    BaseClassifier clf{model.circuit, std::vector<double>(theta.begin(), theta.end()), model.meas,
                       noise ? std::optional<NoiseModel>(*noise) : std::nullopt, data.test.scheme()};
    test_acc.push_back(accuracy(predict_all(clf, data.test.samples()), data.test.labels()));
  };
  const TrainResult tr = train_base(model.circuit, model.meas, data.train, tc, noise, on_iteration);
  BestRecord best;
  best.test_accuracy = -1.0;
  for (std::size_t i = 0; i < test_acc.size(); ++i)
    if (test_acc[i] > best.test_accuracy) {
      best.test_accuracy = test_acc[i];
      best.iteration = static_cast<int>(i);
      best.train_accuracy = 1.0 - tr.history[i].weighted_error;
    }
  return best;
}

RepeatRecord run_repeat(Context& ctx, int repeat, std::size_t n_train, const RepeatOptions& opt) {
  const ExperimentConfig& cfg = ctx.cfg();
  RepeatRecord rec;
  rec.repeat = repeat;
  rec.seed = repeat_seed(cfg, repeat, n_train);
  rec.n_train = n_train;
  const TaskData data = ctx.data(rec.seed, n_train);
  rec.n_test = data.test.size();
  const Model model = build_model(cfg);
  rec.num_params = model.circuit.num_params();
  const ModelFactory factory = [&model](int) { return model; };

  if (opt.boost) {
    BoostConfig bc;
    bc.train = train_config(cfg);
    bc.rounds = cfg.rounds;
    bc.max_retries = cfg.max_retries;
    bc.epsilon_stop = cfg.epsilon_stop;
    bc.seed = rec.seed;
    BoostResult br = data.train.scheme() == LabelScheme::kBinary
                         ? boost_binary(data.train, factory, bc, ctx.noise())
                         : boost_multiclass(data.train, factory, bc, ctx.noise());
    std::vector<std::vector<int>> test_pred;
    std::vector<double> alphas;
    for (const auto& m : br.ensemble.members) {
      test_pred.push_back(predict_all(m.classifier, data.test.samples()));
      alphas.push_back(m.alpha);
      rec.member_test_accuracy.push_back(accuracy(test_pred.back(), data.test.labels()));
    }
    for (std::size_t t = 1; t <= br.ensemble.members.size(); ++t) {
      const auto& e = br.ensemble;
      rec.train_error.push_back(
          error_rate(combine_votes(e.mode, e.num_classes, alphas, br.train_predictions, t), data.train.labels()));
      rec.test_error.push_back(
          error_rate(combine_votes(e.mode, e.num_classes, alphas, test_pred, t), data.test.labels()));
      rec.train_accuracy.push_back(1.0 - rec.train_error.back());
      rec.test_accuracy.push_back(1.0 - rec.test_error.back());
    }
    if (br.ensemble.mode == EnsembleMode::kBinary && !br.report.rounds.empty()) {
      const auto eps = br.report.epsilons();
      rec.risk_bound = full_risk_bound(BoundInputs{rec.num_params, static_cast<long long>(n_train), cfg.delta, eps});
    }
    rec.report = std::move(br.report);
  }

  if (opt.bagging) {
    const Ensemble bag = bagging(data.train, factory, train_config(cfg), cfg.rounds, rec.seed, ctx.noise());
    std::vector<std::vector<int>> tr, te;
    for (const auto& m : bag.members) {
      tr.push_back(predict_all(m.classifier, data.train.samples()));
      te.push_back(predict_all(m.classifier, data.test.samples()));
    }
    const std::vector<double> ones(bag.members.size(), 1.0);
    for (std::size_t t = 1; t <= bag.members.size(); ++t) {
      rec.bagging_train_accuracy.push_back(
          accuracy(combine_votes(bag.mode, bag.num_classes, ones, tr, t), data.train.labels()));
      rec.bagging_test_accuracy.push_back(
          accuracy(combine_votes(bag.mode, bag.num_classes, ones, te, t), data.test.labels()));
    }
  }

  if (opt.qcnn_best) rec.qcnn_best = train_best(model, data, cfg, rec.seed, ctx.noise());
  if (opt.noiseless_best) rec.noiseless_best = train_best(model, data, cfg, rec.seed, nullptr);
  return rec;
}

// ---------------------------------------------------------------- output

class Output {
 public:
  Output(const ExperimentConfig& cfg, bool enabled) : cfg_(cfg), enabled_(enabled) {
    if (enabled_) std::filesystem::create_directories(cfg.out);
  }

  bool enabled() const { return enabled_; }

  std::string header() const { return "# " + std::string(kVersion) + "\n" + cfg_.snapshot(); }

  void write(const std::string& name, const std::string& body) const {
    if (!enabled_) return;
    std::ofstream out(std::filesystem::path(cfg_.out) / name, std::ios::binary);
    if (!out) throw Error("cannot write " + name);
    out << body;
  }

 private:
  const ExperimentConfig& cfg_;
  bool enabled_;
};

std::string num(double v) { return csv::num(v); }

std::string opt_num(const std::vector<double>& v, std::size_t i) { return i < v.size() ? num(v[i]) : "nan"; }

std::string rounds_csv(const Output& out, const std::vector<RepeatRecord>& reps) {
  std::ostringstream s;
  s << out.header();
  s << "round,epsilon,alpha,train_error,train_bound,repeat,n_train,z,redistributed_error,test_error,"
       "train_accuracy,test_accuracy,member_test_accuracy,bagging_train_accuracy,bagging_test_accuracy,attempts,"
       "best_iteration\n";
  for (const auto& r : reps) {
    const std::size_t rows = std::max(r.report.rounds.size(), r.bagging_test_accuracy.size());
    for (std::size_t t = 0; t < rows; ++t) {
      const bool b = t < r.report.rounds.size();
      const RoundRecord rr = b ? r.report.rounds[t] : RoundRecord{};
      s << (t + 1) << ',' << (b ? num(rr.epsilon) : "nan") << ',' << (b ? num(rr.alpha) : "nan") << ','
        << opt_num(r.train_error, t) << ',' << (b ? num(rr.train_bound) : "nan") << ','
        << r.repeat << ',' << r.n_train << ',' << (b ? num(rr.z) : "nan") << ','
        << (b ? num(rr.redistributed_error) : "nan") << ',' << opt_num(r.test_error, t) << ','
        << opt_num(r.train_accuracy, t) << ',' << opt_num(r.test_accuracy, t) << ','
        << opt_num(r.member_test_accuracy, t) << ',' << opt_num(r.bagging_train_accuracy, t) << ','
        << opt_num(r.bagging_test_accuracy, t) << ',' << (b ? rr.attempts : 0) << ','
        << (b ? rr.best_iteration : -1) << '\n';
    }
  }
  return s.str();
}

std::string history_csv(const Output& out, const RepeatRecord& r) {
  std::ostringstream s;
  s << out.header();
  s << "iteration,loss,weighted_error,round\n";
  for (const auto& rr : r.report.rounds)
    for (const auto& h : rr.history)
      s << h.iteration << ',' << num(h.loss) << ',' << num(h.weighted_error) << ',' << rr.round << '\n';
  return s.str();
}

std::string history_name(const RepeatRecord& r, bool sweep) {
  return sweep ? "history_n" + std::to_string(r.n_train) + "_" + std::to_string(r.repeat) + ".csv"
               : "history_" + std::to_string(r.repeat) + ".csv";
}

struct Stat {
  double mean = 0.0;
  double sd = 0.0;
};

Stat stat(const std::vector<double>& v) {
  Stat s;
  if (v.empty()) return s;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

std::string pm(const std::vector<double>& v) {
  const Stat s = stat(v);
  std::ostringstream o;
  o << std::fixed << std::setprecision(4) << s.mean << " +- " << s.sd;
  return o.str();
}

std::string summary_text(const Output& out, const RunRecord& run) {
  std::ostringstream s;
  s << out.header() << "\n";
  const auto& reps = run.repeats;
  std::vector<double> ada_tr, ada_te, bag_tr, bag_te, best_tr, best_te, clean_tr, clean_te, member_best;
  for (const auto& r : reps) {
    if (!r.train_accuracy.empty()) {
      ada_tr.push_back(r.train_accuracy.back());
      ada_te.push_back(r.test_accuracy.back());
      member_best.push_back(*std::max_element(r.member_test_accuracy.begin(), r.member_test_accuracy.end()));
    }
    if (!r.bagging_test_accuracy.empty()) {
      bag_tr.push_back(r.bagging_train_accuracy.back());
      bag_te.push_back(r.bagging_test_accuracy.back());
    }
    if (r.qcnn_best) {
      best_tr.push_back(r.qcnn_best->train_accuracy);
      best_te.push_back(r.qcnn_best->test_accuracy);
    }
    if (r.noiseless_best) {
      clean_tr.push_back(r.noiseless_best->train_accuracy);
      clean_te.push_back(r.noiseless_best->test_accuracy);
    }
  }
  struct Column {
    std::string name;
    const std::vector<double>* train;
    const std::vector<double>* test;
  };
  const std::string noisy = run.config.noise == "none" ? "" : " (noisy)";
  std::vector<Column> cols;
  auto add = [&](std::string name, const std::vector<double>& tr, const std::vector<double>& te) {
    if (!te.empty()) cols.push_back({std::move(name), &tr, &te});
  };
  add("adaboost" + noisy, ada_tr, ada_te);
  add("bagging" + noisy, bag_tr, bag_te);
  add("qcnn-best" + noisy, best_tr, best_te);
  add("qcnn-best (noiseless)", clean_tr, clean_te);
  s << "accuracy, mean +- sd over " << reps.size() << " runs\n";
  s << std::left << std::setw(8) << "";
  for (const auto& c : cols) s << " | " << std::setw(22) << c.name;
  s << '\n';
  for (const char* row : {"train", "test"}) {
    s << std::left << std::setw(8) << row;
    for (const auto& c : cols) s << " | " << std::setw(22) << pm(row[1] == 'r' ? *c.train : *c.test);
    s << '\n';
  }
  if (!member_best.empty()) s << "best single member, test: " << pm(member_best) << '\n';
  if (!best_te.empty())
    s << "note: qcnn-best picks its checkpoint by test accuracy, so it is an optimistic baseline\n";

  for (const auto& r : reps) {
    s << "\nrun repeat=" << r.repeat << " n_train=" << r.n_train << " seed=" << r.seed << " K=" << r.num_params
      << " rounds=" << r.report.rounds.size() << '\n';
    if (r.report.weak_learner_failure) s << "  warning: weak learner failure: " << r.report.failure_message << '\n';
    if (r.report.early_stopped) s << "  early stop: perfect fit\n";
    if (r.risk_bound) {
      const RiskBound& b = *r.risk_bound;
      s << "  risk bound (delta=" << num(run.config.delta) << "): training " << num(b.training) << " + complexity "
        << num(b.complexity) << " + scale " << num(b.scale) << " + confidence " << num(b.confidence) << " = "
        << num(b.total) << '\n';
    }
    auto cross = [&](const char* what, const std::optional<BestRecord>& ref) {
      if (!ref || r.test_accuracy.empty()) return;
      const auto c = r.crossing_round(ref->test_accuracy);
      s << "  crossing round vs " << what << ": " << (c ? std::to_string(*c) : "none") << '\n';
    };
    if (run.config.task == "noise-compare") {
      cross("qcnn-best (noisy)", r.qcnn_best);
      cross("qcnn-best (noiseless)", r.noiseless_best);
    }
  }
  if (!run.generalization.empty()) {
    s << "\ngeneralization: n, mean |test - train| error, 1/sqrt(n)\n";
    for (const auto& g : run.generalization) s << "  " << g.n << ' ' << num(g.mean_abs_gap) << ' ' << num(g.inv_sqrt_n) << '\n';
  }
  return s.str();
}

void write_timing(const Output& out, const RunRecord& run) {
  std::ostringstream s;
  s << "wall_seconds " << std::fixed << std::setprecision(3) << run.wall_seconds << '\n';
  out.write("timing.txt", s.str());
}

template <class Fn>
RunRecord timed(const ExperimentConfig& cfg, Fn fn) {
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord run;
  run.config = cfg;
  fn(run);
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

RunRecord run_repeats(const ExperimentConfig& cfg, bool write_files, const RepeatOptions& opt) {
  return timed(cfg, [&](RunRecord& run) {
    Context ctx(cfg);
    Output out(cfg, write_files);
    const bool sweep = !cfg.sweep_samples.empty();
    const std::vector<int> sizes = sweep ? cfg.sweep_samples : std::vector<int>{cfg.n_train};
    for (int n : sizes) {
      GeneralizationRow g;
      g.n = n;
      g.inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
      for (int r = 0; r < cfg.repeats; ++r) {
        run.repeats.push_back(run_repeat(ctx, r, static_cast<std::size_t>(n), opt));
        const RepeatRecord& rec = run.repeats.back();
        if (!rec.train_accuracy.empty()) {
          g.train_error.push_back(rec.train_error.back());
          g.test_error.push_back(rec.test_error.back());
        }
        out.write(history_name(rec, sweep), history_csv(out, rec));
        out.write("rounds.csv", rounds_csv(out, run.repeats));
      }
      double gap = 0.0;
      for (std::size_t i = 0; i < g.train_error.size(); ++i) gap += std::abs(g.test_error[i] - g.train_error[i]);
      g.mean_abs_gap = g.train_error.empty() ? kNaN : gap / static_cast<double>(g.train_error.size());
      if (sweep) run.generalization.push_back(std::move(g));
    }

    if (sweep) {
      std::ostringstream s;
      s << out.header() << "n,mean_train_error,mean_test_error,mean_abs_gen_error,inv_sqrt_n\n";
      for (const auto& g : run.generalization)
        s << g.n << ',' << num(stat(g.train_error).mean) << ',' << num(stat(g.test_error).mean) << ','
          << num(g.mean_abs_gap) << ',' << num(g.inv_sqrt_n) << '\n';
      out.write("generalization.csv", s.str());
    }
    if (cfg.task == "noise-compare") {
      std::ostringstream s;
      s << out.header()
        << "round,repeat,noisy_boosted_test_accuracy,noisy_best_test_accuracy,noiseless_best_test_accuracy\n";
      for (const auto& r : run.repeats)
        for (std::size_t t = 0; t < r.test_accuracy.size(); ++t)
          s << (t + 1) << ',' << r.repeat << ',' << num(r.test_accuracy[t]) << ','
            << num(r.qcnn_best ? r.qcnn_best->test_accuracy : kNaN) << ','
            << num(r.noiseless_best ? r.noiseless_best->test_accuracy : kNaN) << '\n';
      out.write("comparison.csv", s.str());
    }
    out.write("summary.txt", summary_text(out, run));
  });
}

}  // namespace

std::optional<int> RepeatRecord::crossing_round(double reference) const {
  for (std::size_t t = 0; t < test_accuracy.size(); ++t)
    if (test_accuracy[t] > reference) return static_cast<int>(t) + 1;
  return std::nullopt;
}

Model build_model(const ExperimentConfig& cfg) {
  QcnnConfig qc;
  qc.blocks = cfg.blocks;
  const bool mnist = cfg.resolved_dataset() == "mnist";
  qc.mode = !mnist && cfg.readout == "sign" ? ReadoutMode::kSignOfZ : ReadoutMode::kArgmax;
  qc.num_classes = mnist ? static_cast<int>(cfg.classes.size()) : 2;
  qc.prelayer = cfg.prelayer;
  qc.conv_unit = parse_conv_unit(cfg.conv_unit);
  qc.pool_axis = cfg.pool_axis;
  QcnnModel m = build_qcnn(cfg.num_qubits, qc);
  return Model{std::move(m.circuit), std::move(m.meas)};
}

RunRecord run_annni_binary(const ExperimentConfig& cfg, bool write_files) {
  return run_repeats(cfg, write_files, RepeatOptions{true, cfg.bagging, false, false});
}

RunRecord run_mnist_multiclass(const ExperimentConfig& cfg, bool write_files) {
  return run_repeats(cfg, write_files, RepeatOptions{true, cfg.bagging, cfg.qcnn_best, false});
}

RunRecord run_noise_compare(const ExperimentConfig& cfg, bool write_files) {
  return run_repeats(cfg, write_files, RepeatOptions{true, false, true, true});
}

RunRecord run_bagging_compare(const ExperimentConfig& cfg, bool write_files) {
  return run_repeats(cfg, write_files, RepeatOptions{true, true, false, false});
}

RunRecord run_bounds(const ExperimentConfig& cfg, bool write_files) {
  return timed(cfg, [&](RunRecord& run) {
    Output out(cfg, write_files);
    for (int k : cfg.bounds_gates)
      for (int n : cfg.bounds_samples)
        for (double d : cfg.bounds_delta)
          for (double e : cfg.bounds_epsilon) {
            const std::vector<double> eps(static_cast<std::size_t>(cfg.bounds_rounds), e);
            run.bounds.push_back(
                {k, n, d, e, cfg.bounds_rounds, full_risk_bound(BoundInputs{k, n, d, eps}), rademacher_bound(k, n)});
          }
    std::ostringstream s;
    s << out.header() << "K,n,delta,epsilon,rounds,training,complexity,scale,confidence,total,rademacher\n";
    for (const auto& b : run.bounds)
      s << b.num_gates << ',' << b.num_samples << ',' << num(b.delta) << ',' << num(b.epsilon) << ',' << b.rounds
        << ',' << num(b.bound.training) << ',' << num(b.bound.complexity) << ',' << num(b.bound.scale) << ','
        << num(b.bound.confidence) << ',' << num(b.bound.total) << ',' << num(b.rademacher) << '\n';
    out.write("bounds.csv", s.str());
  });
}

RunRecord run_experiment(const ExperimentConfig& cfg, bool write_files) {
  cfg.validate();
  RunRecord run;
  if (cfg.task == "annni-binary") run = run_annni_binary(cfg, write_files);
  else if (cfg.task == "mnist-multiclass") run = run_mnist_multiclass(cfg, write_files);
  else if (cfg.task == "noise-compare") run = run_noise_compare(cfg, write_files);
  else if (cfg.task == "bagging-compare") run = run_bagging_compare(cfg, write_files);
  else run = run_bounds(cfg, write_files);
  if (write_files) write_timing(Output(cfg, true), run);
  return run;
}

}  // namespace qboost
