// Copyright 2026 The adenet Authors.
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

#include "check/gradsuite.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

#include "autodiff/gradcheck.h"
#include "data/fixture.h"
#include "util/rng.h"

namespace adenet {

namespace {

Tensor random_tensor(Shape shape, Rng& rng, double lo = -1.0, double hi = 1.0) {
  Tensor t(std::move(shape));
  for (double& v : t.data()) v = rng.uniform(lo, hi);
  return t;
}

// Projects y onto fixed random weights so every output coordinate matters.
Var weighted(Tape& tape, Var y, std::uint64_t seed) {
  Rng rng(seed);
  Tensor w = random_tensor(y.shape(), rng);
  return ad::sum(ad::mul(y, tape.constant(std::move(w))));
}

class OpChecker {
 public:
  OpChecker(std::uint64_t seed, const ParamStore* params) : rng_(seed), params_(params) {}

  // Checks f with respect to one input tensor; merges into the row `name`.
  void check(const std::string& name, const Tensor& x,
             const std::function<Var(Tape&, Var)>& f) {
    const std::uint64_t wseed = rng_.next();
    auto objective = [&](Tape& tape, Var in) { return weighted(tape, f(tape, in), wseed); };
    const GradCheckResult r = finite_diff_check(objective, x, 1e-5, params_);
    GradRow* row = nullptr;
    for (auto& existing : rows_) {
      if (existing.name == name) row = &existing;
    }
    if (row == nullptr) {
      rows_.push_back({name, 0.0, kOpTolerance, 0});
      row = &rows_.back();
    }
    row->max_rel_error = std::max(row->max_rel_error, r.max_rel_error);
    row->coordinates += x.size();
  }

  Tensor rand(Shape shape, double lo = -1.0, double hi = 1.0) {
    return random_tensor(std::move(shape), rng_, lo, hi);
  }
  Rng& rng() { return rng_; }
  std::vector<GradRow> rows() const { return rows_; }

 private:
  Rng rng_;
  const ParamStore* params_;
  std::vector<GradRow> rows_;
};

void check_primitives(OpChecker& c) {
  using namespace ad;
  const Tensor a = c.rand({3, 4}), b = c.rand({4, 2}), v4 = c.rand({4}), v3 = c.rand({3});
  const Tensor u4 = c.rand({4});
  c.check("matmul", a, [&](Tape& t, Var x) { return matmul(x, t.constant(b)); });
  c.check("matmul", b, [&](Tape& t, Var x) { return matmul(t.constant(a), x); });
  c.check("matvec", a, [&](Tape& t, Var x) { return matvec(x, t.constant(v4)); });
  c.check("matvec", v4, [&](Tape& t, Var x) { return matvec(t.constant(a), x); });
  c.check("matvec_t", a, [&](Tape& t, Var x) { return matvec_t(x, t.constant(v3)); });
  c.check("matvec_t", v3, [&](Tape& t, Var x) { return matvec_t(t.constant(a), x); });
  c.check("add", v4, [&](Tape& t, Var x) { return add(x, t.constant(u4)); });
  c.check("add", v4, [&](Tape&, Var x) { return add(x, x); });
  c.check("mul", v4, [&](Tape& t, Var x) { return mul(x, t.constant(u4)); });
  c.check("mul", v4, [&](Tape&, Var x) { return mul(x, x); });
  c.check("scale", v4, [&](Tape&, Var x) { return scale(x, -1.7); });
  c.check("tanh", v4, [&](Tape&, Var x) { return ad::tanh(x); });
  c.check("sigmoid", c.rand({5}, -4.0, 4.0), [&](Tape&, Var x) { return sigmoid(x); });
  c.check("concat", v4, [&](Tape& t, Var x) { return concat({t.constant(v3), x, x}); });
  const Tensor rows2 = c.rand({2, 4});
  c.check("concat", a, [&](Tape& t, Var x) { return concat({x, t.constant(rows2)}, 0); });
  c.check("slice", v4, [&](Tape&, Var x) { return slice(x, 1, 2); });
  c.check("stack", v4, [&](Tape& t, Var x) { return stack({x, t.constant(u4), x}); });
  c.check("softmax", c.rand({5}, -2.0, 2.0), [&](Tape&, Var x) { return softmax(x); });
  const Mask mask = {1, 0, 1, 1, 0};
  c.check("softmax_masked", c.rand({5}, -2.0, 2.0), [&](Tape&, Var x) { return softmax(x, mask); });
  c.check("lookup", c.rand({4, 3}), [&](Tape&, Var x) { return add(lookup(x, 2), lookup(x, 0)); });
  const std::uint64_t drop_seed = c.rng().next();
  c.check("dropout", c.rand({8}), [&](Tape&, Var x) {
    Rng r(drop_seed);
    return dropout(x, 0.5, true, r);
  });
  c.check("cross_entropy", c.rand({5}), [&](Tape&, Var x) {
    return cross_entropy(softmax(x), 3);
  });
  c.check("sum", a, [&](Tape&, Var x) { return sum(x); });
  c.check("add_n", v4, [&](Tape& t, Var x) { return add_n({x, t.constant(u4), mul(x, x)}); });
  const Tensor chars = c.rand({5, 3}), filt = c.rand({4, 6}), bias = c.rand({4});
  c.check("conv_max", chars, [&](Tape& t, Var x) {
    return conv_max(x, t.constant(filt), t.constant(bias), 2);
  });
  c.check("conv_max", filt, [&](Tape& t, Var x) {
    return conv_max(t.constant(chars), x, t.constant(bias), 2);
  });
  c.check("conv_max", bias, [&](Tape& t, Var x) {
    return conv_max(t.constant(chars), t.constant(filt), x, 2);
  });
}

// The LSTM cell and attention step, differentiated through their inputs.
void check_composites(OpChecker& c, const Model& model) {
  const std::size_t h = model.config().hidden;
  const std::size_t d = model.config().embedding.feature_dim();
  const Tensor x = c.rand({d}), h0 = c.rand({h}), c0 = c.rand({h});
  auto cell = [&](Tape& t, Var in, Var hp, Var cp) {
    LstmState s = model.lstm_cell(t, model.lstm_forward(), in, {hp, cp});
    return ad::concat({s.h, s.c});
  };
  c.check("lstm_cell", x, [&](Tape& t, Var v) { return cell(t, v, t.constant(h0), t.constant(c0)); });
  c.check("lstm_cell", h0, [&](Tape& t, Var v) { return cell(t, t.constant(x), v, t.constant(c0)); });
  c.check("lstm_cell", c0, [&](Tape& t, Var v) { return cell(t, t.constant(x), t.constant(h0), v); });

  // Four states packed into one vector; the last position is padding.
  const Tensor states = c.rand({4 * 2 * h});
  c.check("attention", states, [&](Tape& t, Var m) {
    EncodedSequence enc;
    for (std::size_t i = 0; i < 4; ++i) enc.states.push_back(ad::slice(m, i * 2 * h, 2 * h));
    enc.matrix = ad::stack(enc.states);
    enc.mask = {1, 1, 1, 0};
    return model.attend(t, enc, 1).context;
  });
}

}  // namespace

ModelConfig tiny_model_config() {
  ModelConfig m;
  m.embedding.word_dim = 3;
  m.embedding.char_dim = 5;
  m.embedding.pos_dim = 2;
  m.embedding.label_dim = 2;
  m.embedding.char_widths = {1, 2};
  m.embedding.char_filters_per_width = 2;
  m.hidden = 4;
  m.combine_dim = 5;
  m.dropout = 0.5;
  return m;
}

bool GradSuiteReport::pass() const {
  for (const auto& r : ops) {
    if (!r.pass()) return false;
  }
  return end_to_end.pass();
}

nlohmann::ordered_json GradSuiteReport::to_json() const {
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  auto row_json = [](const GradRow& r) {
    return nlohmann::ordered_json{{"name", r.name},
                                  {"max_rel_error", r.max_rel_error},
                                  {"tolerance", r.tolerance},
                                  {"coordinates", r.coordinates},
                                  {"pass", r.pass()}};
  };
  for (const auto& r : ops) rows.push_back(row_json(r));
  j["ops"] = std::move(rows);
  j["end_to_end"] = row_json(end_to_end);
  j["seconds"] = seconds;
  j["pass"] = pass();
  return j;
}

std::string GradSuiteReport::table() const {
  std::string out = "op                 max_rel_error  tolerance  coords  result\n";
  char line[128];
  auto add = [&](const GradRow& r) {
    std::snprintf(line, sizeof line, "%-18s %13.3e  %9.0e  %6zu  %s\n", r.name.c_str(),
                  r.max_rel_error, r.tolerance, r.coordinates, r.pass() ? "PASS" : "FAIL");
    out += line;
  };
  for (const auto& r : ops) add(r);
  add(end_to_end);
  return out;
}

GradSuiteReport run_gradient_suite(std::uint64_t seed, std::size_t sampled) {
  const auto t0 = std::chrono::steady_clock::now();
  GradSuiteReport report;
  const Fixture fixture = make_fixture(4, 0);
  Model model(tiny_model_config(), Vocab::build(fixture.train));
  model.init_uniform(0.5, derive_seed(seed, 0));

  OpChecker checker(derive_seed(seed, 1), &model.params());
  check_primitives(checker);
  check_composites(checker, model);
  report.ops = checker.rows();

  // End to end: mean loss of two samples, teacher-forced so the label path
  // is smooth, dropout masks replayed from a fixed seed, padded sequences.
  std::vector<EncodedSample> batch;
  for (std::size_t i = 0; i < 2; ++i) batch.push_back(model.encode_sample(fixture.train[i]));
  const std::uint64_t drop_seed = derive_seed(seed, 2);
  auto loss = [&](Gradients* grads) {
    double total = 0.0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      Tape tape(&model.params());
      Rng rng(derive_seed(drop_seed, i));
      ForwardOptions opt;
      opt.pad_to = batch[i].size() + 2;
      ForwardResult fr = model.forward(tape, batch[i], ForwardMode::kTeacherForced, &rng, opt);
      total += fr.loss.value().item();
      if (grads != nullptr) {
        tape.backward(fr.loss);
        grads->merge(tape.param_grads());
      }
    }
    return total;
  };
  Gradients grads(model.params().size());
  loss(&grads);

  std::vector<ParamId> trainable;
  for (ParamId id = 0; id < model.params().size(); ++id) {
    if (model.params()[id].trainable) trainable.push_back(id);
  }
  Rng pick(derive_seed(seed, 3));
  const std::size_t offset = pick.below(trainable.size());
  const double h = 1e-5;
  report.end_to_end = {"end_to_end", 0.0, kEndToEndTolerance, 0};
  for (std::size_t k = 0; k < sampled; ++k) {
    const ParamId id = trainable[(offset + k) % trainable.size()];
    Tensor& value = model.params()[id].value;
    const Gradients::Slot& slot = grads.slot(id);
    std::size_t index = 0;
    if (slot.dense.empty() && !slot.rows.empty()) {
      // Embedding tables: only rows the batch touches carry signal.
      auto it = slot.rows.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(pick.below(slot.rows.size())));
      index = it->first * value.shape().back() + pick.below(value.shape().back());
    } else {
      index = pick.below(value.size());
    }
    const double analytic = grads.to_dense(id, value)[index];
    const double orig = value[index];
    value[index] = orig + h;
    const double up = loss(nullptr);
    value[index] = orig - h;
    const double down = loss(nullptr);
    value[index] = orig;
    const double numeric = (up - down) / (2.0 * h);
    report.end_to_end.max_rel_error =
        std::max(report.end_to_end.max_rel_error, relative_error(analytic, numeric));
    ++report.end_to_end.coordinates;
  }

  for (std::size_t i = 0; i < batch.size(); ++i) {
    ForwardOptions opt;
    opt.pad_to = batch[i].size() + 3;
    report.traces.push_back(model.predict(batch[i], opt));
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace adenet
